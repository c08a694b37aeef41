//! Minkowski four-vectors and dense rank-2 / rank-4 tensors.
//!
//! Signature is fixed to (+, -, -, -). Vectors are stored with upper
//! (contravariant) components; tensors are stored fully covariant. Raising a
//! tensor index is always explicit through [`Metric`].

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real Lorentz four-vector with components ordered (t, x, y, z).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector([f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_array([t, x, y, z])
    }

    pub fn from_array(components: [f64; 4]) -> Result<Self> {
        match components.iter().find(|c| !c.is_finite()) {
            Some(&bad) => Err(Error::NonFinite(bad)),
            None => Ok(FourVector(components)),
        }
    }

    /// Builds a vector from components already known to be finite
    /// (trigonometric values, sums of finite vectors).
    pub(crate) const fn from_finite(components: [f64; 4]) -> Self {
        FourVector(components)
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Minkowski square `v.v`.
    pub fn square(&self) -> f64 {
        minkowski_dot(self, self)
    }
}

impl Index<usize> for FourVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;

    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = FourVector;

    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;

    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;

    fn mul(self, rhs: FourVector) -> FourVector {
        FourVector(rhs.0.map(|c| self * c))
    }
}

/// The flat metric `eta = diag(+1, -1, -1, -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric;

impl Metric {
    pub const SIGNATURE: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    /// `eta_{mu nu}`; numerically identical to `eta^{mu nu}`.
    #[inline]
    pub fn component(mu: usize, nu: usize) -> f64 {
        if mu == nu {
            Self::SIGNATURE[mu]
        } else {
            0.0
        }
    }

    /// Raise both indices of a covariant rank-2 tensor.
    pub fn raise_rank2(t: &Rank2Tensor) -> Rank2Tensor {
        Rank2Tensor(std::array::from_fn(|mu| {
            std::array::from_fn(|nu| Self::SIGNATURE[mu] * Self::SIGNATURE[nu] * t.0[mu][nu])
        }))
    }
}

pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

/// Covariant components `v_mu = eta_{mu nu} v^nu`.
pub fn lower_index(v: &FourVector) -> FourVector {
    FourVector(std::array::from_fn(|mu| Metric::SIGNATURE[mu] * v.0[mu]))
}

/// Dense 4x4 real tensor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Rank2Tensor(pub [[f64; 4]; 4]);

impl Rank2Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Which two index positions of a rank-4 tensor a pair of vectors is
/// contracted into. `first` receives the first vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotPair {
    first: usize,
    second: usize,
}

impl SlotPair {
    pub fn new(first: usize, second: usize) -> Result<Self> {
        if first == second || first > 3 || second > 3 {
            return Err(Error::InvalidSlots(first, second));
        }
        Ok(SlotPair { first, second })
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn second(&self) -> usize {
        self.second
    }

    /// The two free positions, in increasing order.
    fn free(&self) -> (usize, usize) {
        let mut it = (0..4).filter(|&k| k != self.first && k != self.second);
        // exactly two remain
        (it.next().unwrap(), it.next().unwrap())
    }
}

/// Dense 4x4x4x4 real tensor, all indices covariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank4Tensor {
    data: Box<[f64; 256]>,
}

impl Default for Rank4Tensor {
    fn default() -> Self {
        Self::zero()
    }
}

impl Rank4Tensor {
    pub fn zero() -> Self {
        Rank4Tensor {
            data: Box::new([0.0; 256]),
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Result<Self> {
        let mut t = Self::zero();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = f(a, b, c, d);
                        if !v.is_finite() {
                            return Err(Error::NonFinite(v));
                        }
                        t.data[Self::offset(a, b, c, d)] = v;
                    }
                }
            }
        }
        Ok(t)
    }

    #[inline]
    fn offset(a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * 4 + b) * 4 + c) * 4 + d
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[Self::offset(a, b, c, d)]
    }

    pub fn set(&mut self, idx: [usize; 4], value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        self.data[Self::offset(idx[0], idx[1], idx[2], idx[3])] = value;
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..]
    }

    pub fn scaled(&self, factor: f64) -> Rank4Tensor {
        Rank4Tensor {
            data: Box::new(self.data.map(|v| v * factor)),
        }
    }

    /// `sum_{mu nu rho sigma} left[mu][nu] T[mu nu rho sigma] right[rho][sigma]`,
    /// with no metric factors inserted. Callers raise indices beforehand.
    pub fn sandwich(&self, left: &Rank2Tensor, right: &Rank2Tensor) -> f64 {
        let mut acc = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let l = left.0[mu][nu];
                if l == 0.0 {
                    continue;
                }
                let mut inner = 0.0;
                for rho in 0..4 {
                    for sigma in 0..4 {
                        inner += self.get(mu, nu, rho, sigma) * right.0[rho][sigma];
                    }
                }
                acc += l * inner;
            }
        }
        acc
    }
}

/// Contract two contravariant vectors into the selected covariant slots of `t`.
///
/// The remaining two indices, in their original order, index the result.
/// Since `t` is stored covariant and the vectors contravariant, the
/// contraction needs no explicit metric factor.
pub fn contract_rank4_vectors(
    t: &Rank4Tensor,
    a: &FourVector,
    b: &FourVector,
    slots: SlotPair,
) -> Rank2Tensor {
    let (fi, fj) = slots.free();
    let mut out = Rank2Tensor::zero();
    let mut idx = [0usize; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for k in 0..4 {
                for l in 0..4 {
                    idx[fi] = i;
                    idx[fj] = j;
                    idx[slots.first] = k;
                    idx[slots.second] = l;
                    acc += t.get(idx[0], idx[1], idx[2], idx[3]) * a.0[k] * b.0[l];
                }
            }
            out.0[i][j] = acc;
        }
    }
    out
}

//! Independent oracles for the tensor kernels, the diagram evaluator and the
//! cross-section identities.

use std::f64::consts::{FRAC_PI_2, PI};

use gravgamma_core::cross_sections::{
    dcs_averaged, dcs_averaged_from_matrix, dcs_entangled_pqg, dcs_general_state, StateParams,
    TwoPhotonPolState,
};
use gravgamma_core::kinematics::{com_config, gauge_shift, PolPattern};
use gravgamma_core::lorentz::{contract_rank4_vectors, FourVector, Rank4Tensor, SlotPair};
use gravgamma_core::pqg::{
    closed_form_matrix, vertex_tensor, AmplitudeMatrix, FeynmanRules, DIAGRAM_TO_CLOSED_FORM_SIGN,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type V4 = [f64; 4];
type M4 = [[f64; 4]; 4];

const SIG: V4 = [1.0, -1.0, -1.0, -1.0];

fn random_tensor(rng: &mut impl Rng) -> Rank4Tensor {
    Rank4Tensor::from_fn(|_, _, _, _| rng.gen_range(-1.0..1.0)).unwrap()
}

fn random_vector(rng: &mut impl Rng) -> FourVector {
    FourVector::from_array(std::array::from_fn(|_| rng.gen_range(-2.0..2.0))).unwrap()
}

/// Quadruple loop over all index assignments, with no slot bookkeeping shared
/// with the library.
fn brute_force(t: &Rank4Tensor, a: &FourVector, b: &FourVector, sa: usize, sb: usize) -> M4 {
    let free: Vec<usize> = (0..4).filter(|k| *k != sa && *k != sb).collect();
    let mut out = [[0.0; 4]; 4];
    for i0 in 0..4 {
        for i1 in 0..4 {
            for i2 in 0..4 {
                for i3 in 0..4 {
                    let idx = [i0, i1, i2, i3];
                    out[idx[free[0]]][idx[free[1]]] +=
                        t.get(i0, i1, i2, i3) * a[idx[sa]] * b[idx[sb]];
                }
            }
        }
    }
    out
}

#[test]
fn contraction_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let slot_choices = [(2, 3), (0, 1), (3, 0), (1, 2), (0, 3), (2, 1)];
    for n in 0..100 {
        let t = random_tensor(&mut rng);
        let (a, b) = (random_vector(&mut rng), random_vector(&mut rng));
        let (sa, sb) = slot_choices[n % slot_choices.len()];
        let got = contract_rank4_vectors(&t, &a, &b, SlotPair::new(sa, sb).unwrap());
        let want = brute_force(&t, &a, &b, sa, sb);
        let scale = want.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..4 {
            for j in 0..4 {
                assert!((got.get(i, j) - want[i][j]).abs() <= 1e-13 * scale);
            }
        }
    }
}

proptest! {
    #[test]
    fn contraction_is_bilinear(seed in any::<u64>(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tensor(&mut rng);
        let (a, a2, b) = (random_vector(&mut rng), random_vector(&mut rng), random_vector(&mut rng));
        let slots = SlotPair::new(1, 3).unwrap();
        let lhs = contract_rank4_vectors(&t, &(alpha * a + beta * a2), &b, slots);
        let ra = contract_rank4_vectors(&t, &a, &b, slots);
        let rb = contract_rank4_vectors(&t, &a2, &b, slots);
        let scale = lhs.max_abs().max(ra.max_abs()).max(rb.max_abs());
        for i in 0..4 {
            for j in 0..4 {
                let rhs = alpha * ra.get(i, j) + beta * rb.get(i, j);
                prop_assert!((lhs.get(i, j) - rhs).abs() <= 1e-12 * scale.max(1.0));
            }
        }
    }
}

// ---- field-strength route -------------------------------------------------
//
// For transverse polarizations the contracted vertex equals the polarized
// electromagnetic stress tensor
//   F_{mu l} F'^l_nu + F'_{mu l} F^l_nu + (1/2) eta_{mu nu} F_{ab} F'^{ab},
// with F_{mu nu} = p_mu eps_nu - p_nu eps_mu. The graviton propagator is
// applied through P(V, W) = (V.W + V.W^T - trV trW) / 2.

fn lower(v: V4) -> V4 {
    std::array::from_fn(|i| SIG[i] * v[i])
}

fn field_strength(p: V4, eps: V4) -> M4 {
    let (pl, el) = (lower(p), lower(eps));
    std::array::from_fn(|m| std::array::from_fn(|n| pl[m] * el[n] - pl[n] * el[m]))
}

/// Polarized stress tensor with lower indices.
fn stress(f: &M4, g: &M4) -> M4 {
    let mut fg = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            fg += f[a][b] * g[a][b] * SIG[a] * SIG[b];
        }
    }
    std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            let mut s = 0.0;
            for l in 0..4 {
                s += SIG[l] * (f[m][l] * g[l][n] + g[m][l] * f[l][n]);
            }
            s + if m == n { 0.5 * SIG[m] * fg } else { 0.0 }
        })
    })
}

fn propagate(v: &M4, w: &M4) -> f64 {
    // indices raised with the diagonal metric
    let (mut vw, mut vwt, mut trv, mut trw) = (0.0, 0.0, 0.0, 0.0);
    for m in 0..4 {
        trv += SIG[m] * v[m][m];
        trw += SIG[m] * w[m][m];
        for n in 0..4 {
            let r = SIG[m] * SIG[n];
            vw += r * v[m][n] * w[m][n];
            vwt += r * v[m][n] * w[n][m];
        }
    }
    0.5 * (vw + vwt - trv * trw)
}

fn dot(a: V4, b: V4) -> f64 {
    (0..4).map(|i| SIG[i] * a[i] * b[i]).sum()
}

fn sub(a: V4, b: V4) -> V4 {
    std::array::from_fn(|i| a[i] - b[i])
}

fn add(a: V4, b: V4) -> V4 {
    std::array::from_fn(|i| a[i] + b[i])
}

/// Raw diagram sum rebuilt from field strengths.
fn field_strength_amplitude(momenta: [V4; 4], eps: [V4; 4]) -> f64 {
    let f: Vec<M4> = (0..4).map(|i| field_strength(momenta[i], eps[i])).collect();
    let pairs = [
        ((2, 0), (3, 1), sub(momenta[0], momenta[2])),
        ((3, 0), (2, 1), sub(momenta[0], momenta[3])),
        ((1, 0), (3, 2), add(momenta[0], momenta[1])),
    ];
    pairs
        .iter()
        .map(|&((a, b), (c, d), q)| {
            -propagate(&stress(&f[a], &f[b]), &stress(&f[c], &f[d])) / dot(q, q)
        })
        .sum()
}

fn raw_kinematics(theta: f64) -> ([V4; 4], [[V4; 2]; 4]) {
    let (s, c) = theta.sin_cos();
    let perp = [0.0, 0.0, 1.0, 0.0];
    (
        [
            [1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, -1.0],
            [1.0, s, 0.0, c],
            [1.0, -s, 0.0, -c],
        ],
        [
            [perp, [0.0, 1.0, 0.0, 0.0]],
            [perp, [0.0, -1.0, 0.0, 0.0]],
            [perp, [0.0, c, 0.0, -s]],
            [perp, [0.0, -c, 0.0, s]],
        ],
    )
}

#[test]
fn diagrams_match_field_strength_route() {
    let rules = FeynmanRules::default();
    for k in 1..40 {
        let theta = PI * k as f64 / 40.0;
        let cfg = com_config(theta).unwrap();
        let (momenta, pols) = raw_kinematics(theta);
        for pattern in PolPattern::all() {
            let idx = pattern.0.map(|p| p.index());
            let eps = std::array::from_fn(|i| pols[i][idx[i]]);
            let oracle = field_strength_amplitude(momenta, eps);
            let got = rules.amplitude_sum(&cfg, pattern).unwrap();
            let scale = closed_form_matrix(theta).unwrap().largest_abs();
            assert!(
                (got.re - oracle).abs() <= 1e-12 * scale,
                "theta {theta} pattern {pattern}: {} vs {oracle}",
                got.re
            );
        }
    }
}

#[test]
fn contracted_vertex_is_stress_tensor() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let slots = SlotPair::new(2, 3).unwrap();
    for _ in 0..50 {
        let mut photon = || {
            let n: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            let e = rng.gen_range(0.5..2.0);
            let p = [e, e * n[0] / norm, e * n[1] / norm, e * n[2] / norm];
            let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let along = (w[0] * p[1] + w[1] * p[2] + w[2] * p[3]) / (e * e);
            let eps = [
                0.0,
                w[0] - along * p[1],
                w[1] - along * p[2],
                w[2] - along * p[3],
            ];
            (p, eps)
        };
        let (p, eps) = photon();
        let (pp, epsp) = photon();
        let t = vertex_tensor(
            &FourVector::from_array(pp).unwrap(),
            &FourVector::from_array(p).unwrap(),
        );
        let v = contract_rank4_vectors(
            &t,
            &FourVector::from_array(epsp).unwrap(),
            &FourVector::from_array(eps).unwrap(),
            slots,
        );
        let s = stress(&field_strength(pp, epsp), &field_strength(p, eps));
        for m in 0..4 {
            for n in 0..4 {
                assert!((v.get(m, n) - s[m][n]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn diagram_matrix_equals_closed_form() {
    let rules = FeynmanRules::default();
    for k in 0..100 {
        let theta = 0.05 + (k as f64 + 0.5) * (PI - 0.1) / 100.0;
        let diag = rules.amplitude_matrix(theta).unwrap();
        let closed = closed_form_matrix(theta).unwrap();
        let scale = closed.largest_abs();
        for p in PolPattern::all() {
            let (d, c) = (diag.get(p), closed.get(p));
            if c.norm() > 0.0 {
                assert!((d - c).norm() <= 1e-9 * c.norm(), "{p} at {theta}");
            } else {
                assert!(d.norm() <= 1e-9 * scale, "{p} at {theta}");
            }
        }
    }
    assert_eq!(DIAGRAM_TO_CLOSED_FORM_SIGN, -1.0);
}

#[test]
fn identical_particle_relation() {
    for k in 1..100 {
        let theta = PI * k as f64 / 100.0;
        let a = closed_form_matrix(theta).unwrap();
        let b = closed_form_matrix(PI - theta).unwrap();
        for p in PolPattern::all() {
            let (x, y) = (a.get(p), b.get(p.swap_outgoing()));
            assert!(
                (x - y).norm() <= 1e-12 * x.norm().max(1.0),
                "{p} at {theta}"
            );
        }
    }
}

proptest! {
    #[test]
    fn summed_amplitude_is_gauge_invariant(theta in 0.05f64..(PI - 0.05), leg in 0usize..4, xi in -10.0f64..10.0, pick in 0usize..16) {
        let rules = FeynmanRules::default();
        let cfg = com_config(theta).unwrap();
        let pattern = PolPattern::all().nth(pick).unwrap();
        let eps = cfg.polarizations_for(pattern);
        let base = rules.sum_with_polarizations(&cfg, &eps).unwrap();
        let mut shifted = eps;
        shifted[leg] = gauge_shift(&eps[leg], &cfg.momentum(leg), xi);
        let moved = rules.sum_with_polarizations(&cfg, &shifted).unwrap();
        let scale = closed_form_matrix(theta).unwrap().largest_abs();
        prop_assert!((moved - base).norm() <= 1e-9 * scale);
    }
}

// ---- cross-section identities ---------------------------------------------

#[test]
fn averaged_identity_on_grid() {
    for k in 0..200 {
        let theta = 0.01 + (PI - 0.02) * k as f64 / 199.0;
        let m = closed_form_matrix(theta).unwrap();
        let a = dcs_averaged_from_matrix(&m);
        let b = dcs_averaged(theta).unwrap();
        assert!((a - b).abs() <= 1e-12 * b, "theta {theta}: {a} vs {b}");
    }
}

#[test]
fn entangled_identity_on_lattice() {
    for i in 0..12 {
        let theta = 0.02 + (PI - 0.04) * i as f64 / 11.0;
        let m = closed_form_matrix(theta).unwrap();
        for j in 0..12 {
            let phi = FRAC_PI_2 * j as f64 / 11.0;
            for k in 0..12 {
                let rho = -FRAC_PI_2 + 2.0 * PI * k as f64 / 12.0;
                let st = StateParams::new(phi, rho).unwrap();
                let general = dcs_general_state(&st.coefficients(), &m);
                let closed = dcs_entangled_pqg(theta, &st).unwrap();
                let floor = dcs_entangled_pqg(theta, &StateParams::product()).unwrap();
                assert!(
                    (general - closed).abs() <= 1e-12 * closed.max(floor),
                    "({theta}, {phi}, {rho}): {general} vs {closed}"
                );
            }
        }
    }
}

type U2 = [[Complex64; 2]; 2];

/// Haar-ish random 2x2 unitary from Euler angles and phases.
fn random_unitary(rng: &mut impl Rng) -> U2 {
    let a = rng.gen_range(0.0..FRAC_PI_2);
    let (p, q, r) = (
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    );
    let e = |x: f64| Complex64::from_polar(1.0, x);
    [
        [e(p) * a.cos(), e(q) * a.sin()],
        [-e(r - q) * a.sin(), e(r - p) * a.cos()],
    ]
}

fn dagger(u: &U2) -> U2 {
    std::array::from_fn(|i| std::array::from_fn(|j| u[j][i].conj()))
}

/// Rotate the state into a new basis and the amplitude's initial slots back.
fn rotate(
    state: &TwoPhotonPolState,
    m: &AmplitudeMatrix,
    u: &U2,
    v: &U2,
) -> (TwoPhotonPolState, AmplitudeMatrix) {
    let c = state.coefficients();
    let zero = Complex64::new(0.0, 0.0);
    let mut c2 = [[zero; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    c2[a][b] += u[a][i] * v[b][j] * c[i][j];
                }
            }
        }
    }
    let (ud, vd) = (dagger(u), dagger(v));
    let mut m2 = AmplitudeMatrix::zero(m.theta);
    for a in 0..2 {
        for b in 0..2 {
            for x3 in 0..2 {
                for x4 in 0..2 {
                    let mut s = zero;
                    for i in 0..2 {
                        for j in 0..2 {
                            s += m.at(i, j, x3, x4) * ud[i][a] * vd[j][b];
                        }
                    }
                    m2.set_at([a, b, x3, x4], s);
                }
            }
        }
    }
    (TwoPhotonPolState::from_coefficients(c2).unwrap(), m2)
}

/// Apply a unitary to the final-state slots: sum over final polarizations
/// must not notice.
fn rotate_final(m: &AmplitudeMatrix, u: &U2, v: &U2) -> AmplitudeMatrix {
    let mut out = AmplitudeMatrix::zero(m.theta);
    for a in 0..2 {
        for b in 0..2 {
            for x3 in 0..2 {
                for x4 in 0..2 {
                    let mut s = Complex64::new(0.0, 0.0);
                    for k in 0..2 {
                        for l in 0..2 {
                            s += u[x3][k] * v[x4][l] * m.at(a, b, k, l);
                        }
                    }
                    out.set_at([a, b, x3, x4], s);
                }
            }
        }
    }
    out
}

#[test]
fn basis_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 0..100 {
        let theta = rng.gen_range(0.05..PI - 0.05);
        let st = StateParams::new(
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(-FRAC_PI_2..1.5 * PI),
        )
        .unwrap()
        .coefficients();
        let m = closed_form_matrix(theta).unwrap();
        let reference = dcs_general_state(&st, &m);
        let (u, v) = (random_unitary(&mut rng), random_unitary(&mut rng));
        let (st2, m2) = rotate(&st, &m, &u, &v);
        let rotated = dcs_general_state(&st2, &m2);
        let final_rotated = dcs_general_state(&st, &rotate_final(&m, &u, &v));
        let scale = reference.max(dcs_averaged(theta).unwrap());
        assert!((rotated - reference).abs() <= 1e-10 * scale, "case {n}");
        assert!(
            (final_rotated - reference).abs() <= 1e-10 * scale,
            "case {n}"
        );
    }
}

#[test]
fn small_angle_entanglement_independence() {
    for k in 1..=50 {
        let theta = 0.05 * k as f64 / 50.0;
        let plus = dcs_entangled_pqg(theta, &StateParams::psi_plus()).unwrap();
        let prod = dcs_entangled_pqg(theta, &StateParams::product()).unwrap();
        assert!((plus / prod - 1.0).abs() <= 0.01, "theta {theta}");
    }
}

use thiserror::Error;

use crate::pqg::Channel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite four-vector component {0}")]
    NonFinite(f64),

    #[error("invalid contraction slots ({0}, {1}): slots must be distinct and < 4")]
    InvalidSlots(usize, usize),

    #[error("scattering angle {0} rad is outside the open interval (0, pi)")]
    ThetaOutOfRange(f64),

    #[error("{channel:?} propagator pole: |q^2| = {q2:e} below tolerance")]
    Pole { channel: Channel, q2: f64 },

    #[error("state is not normalized: sum |c|^2 = {0}")]
    NotNormalized(f64),

    #[error("relative phase undefined: amplitude vanishes at theta = {0}")]
    UndefinedPhase(f64),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}

use thiserror::Error;

/// Errors raised by state validation, the frontier formulas and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state vector is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("state vector is zero")]
    ZeroVector,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("Bloch vector lies outside the unit ball (norm {0})")]
    OutsideBlochBall(f64),

    #[error("operation needs between 1 and 4 Kraus operators, got {0}")]
    KrausCount(usize),

    #[error("operation is not trace non-increasing (largest effect eigenvalue {0})")]
    TraceIncreasing(f64),

    #[error("outcome almost never occurs (probability {0:e})")]
    NegligibleProbability(f64),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("degenerate target pair: targets are indistinguishable but inputs are not")]
    DegenerateTargets,

    #[error("input states are linearly dependent (overlap {0})")]
    DegenerateInputs(f64),

    #[error("target overlap {s_phi} exceeds input overlap {s_psi}")]
    TargetsLessDistinguishable { s_psi: f64, s_phi: f64 },

    #[error("probability {p} is not achievable (largest effect eigenvalue {norm})")]
    Infeasible { p: f64, norm: f64 },

    #[error("pairs are not in a common symmetric configuration (mismatch {0:e})")]
    NotSymmetric(f64),

    #[error("tilt exceeds the symmetry axis: fidelity {f} below minimum {min}")]
    TiltTooLarge { f: f64, min: f64 },

    #[error("input annihilated by the contraction")]
    Annihilated,

    #[error("degenerate contraction: beta = 0 cannot be inverted with nonvanishing fidelity")]
    DegenerateContraction,

    #[error("curve needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("curve is not a valid frontier: {0}")]
    InvalidCurve(&'static str),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    check_range(name, value, 0.0, 1.0, "[0, 1]")
}

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PwError {
    #[error("bandwidth must be a finite positive number, got {0}")]
    InvalidBandwidth(f64),

    #[error(
        "symbol phi(z) = {c}z + ({d}) is not admissible: C_phi is bounded on PW_a only for phi(z) = cz + d with c real, 0 < |c| <= 1 and d complex"
    )]
    InadmissibleSymbol { c: f64, d: Complex64 },

    #[error("no fixed point for pure translation (c = 1, d = {0})")]
    NoFixedPoint(Complex64),

    #[error("bandwidth mismatch: {left} vs {right}")]
    BandwidthMismatch { left: f64, right: f64 },

    #[error("sample sequence of length {0} is not of the form 2N+1")]
    InvalidLength(usize),

    #[error("window half-width must be at least {min}, got {got}")]
    WindowTooSmall { min: usize, got: usize },

    #[error("window half-width {0} exceeds the supported maximum")]
    WindowTooLarge(usize),

    #[error("overflow guard: log-norm exponent {exponent} exceeds {limit}")]
    OverflowGuard { exponent: f64, limit: f64 },

    #[error(
        "norm estimate did not converge after {iterations} iterations (last {estimate}, residual {residual:e})"
    )]
    NotConverged {
        estimate: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("input must not be the zero function")]
    ZeroFunction,

    #[error("f vanishes at translated witness point {0}")]
    VanishingWitness(Complex64),

    #[error("level set empty at level {0}")]
    EmptyLevelSet(f64),

    #[error("seed vanishes at fixed point {0}")]
    SeedVanishesAtFixedPoint(Complex64),

    #[error("operation requires c != 1")]
    TranslationSymbol,

    #[error("operation requires 0 < |c| < 1, got c = {0}")]
    NotContractive(f64),

    #[error("operation requires c = 1 and Im d != 0")]
    NotImaginaryTranslation,

    #[error("no iterate reached norm 2 within cap {cap} (growth constant {delta})")]
    CapExceeded { cap: usize, delta: f64 },

    #[error("orbit supremum {sup} exceeds bound {bound}")]
    BoundExceeded { sup: f64, bound: f64 },

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, PwError>;

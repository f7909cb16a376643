use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the series, operator, radius, oracle and criterion layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has a vanishing constant term (|a0| = {0:e})")]
    ZeroConstantTerm(f64),

    #[error("series constant term is not 1 (a0 = {0})")]
    NotUnitConstant(Complex64),

    #[error("inner series has a nonzero constant term (b0 = {0})")]
    NonzeroInnerConstant(Complex64),

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("series order must be at least 1")]
    EmptySeries,

    #[error("function is not normalized: f(0) = {a0}, f'(0) = {a1}")]
    NotNormalized { a0: Complex64, a1: Complex64 },

    #[error("{name} out of {range}: got {value}")]
    ParamOutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("point {z} lies within {eps:e} of an excluded point {near}")]
    NearSingularity {
        z: Complex64,
        near: Complex64,
        eps: f64,
    },

    #[error(
        "|z| = {modulus} exceeds the series trust radius {trust} and no closed form is available"
    )]
    OutsideTrustRadius { modulus: f64, trust: f64 },

    #[error("requested {requested} terms but the series only has order {order}")]
    InsufficientOrder { requested: usize, order: usize },

    #[error("polynomial has no sign change on [{lo}, {hi}]")]
    NoRootInInterval { lo: f64, hi: f64 },

    #[error("invalid bracket [{lo}, {hi}]: p(lo) = {p_lo}, p(hi) = {p_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        p_lo: f64,
        p_hi: f64,
    },

    #[error("{count} sign changes found in ({lo}, {hi}); expected exactly one")]
    MultipleRoots { count: usize, lo: f64, hi: f64 },

    #[error("distinctness threshold {delta:e} is not resolvable against image scale {scale:e}")]
    GridTooCoarse { delta: f64, scale: f64 },

    #[error("Newton iteration failed from every seed although |F'| = {min_abs:e} at {at}")]
    NewtonDiverged { min_abs: f64, at: Complex64 },

    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown zoo id '{0}'")]
    UnknownZooId(String),

    #[error("coefficient file line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("jet orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("jet order {requested} exceeds the supported maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },

    #[error("the expansion variable needs a jet of order at least 1")]
    ZeroOrderVariable,

    #[error("division by a jet with zero constant term")]
    DivisionByZero,

    #[error("square root of a jet with non-positive constant term {0}")]
    NonPositiveSqrt(f64),

    #[error("derivative of order {k} requested from a jet of order {order}")]
    DerivativeOutOfRange { k: usize, order: usize },

    #[error("invalid symbol query: {0}")]
    InvalidQuery(String),

    #[error("expansion variable a = {0} outside [0, 2)")]
    ExpansionVariableOutOfRange(f64),

    #[error("L1 is undefined at zero frequency")]
    ZeroFrequency,

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("integrand declared radial but differs under rotation ({0:e} relative)")]
    NotRadial(f64),

    #[error("resolution {nodes_per_unit} nodes per unit is below the oscillation floor {required} for t = {t}")]
    UnderResolved {
        nodes_per_unit: f64,
        required: f64,
        t: f64,
    },

    #[error(
        "cutoff {cutoff} leaves a tail bound {tail:e} above the allowed fraction of {value:e}"
    )]
    CutoffTooSmall { cutoff: f64, tail: f64, value: f64 },

    #[error("oracle time {0} outside the supported range (0, 50]")]
    OracleRange(f64),

    #[error("step {step} violates the stability bound {bound}")]
    StepTooLarge { step: f64, bound: f64 },

    #[error("gamma = {gamma} violates the admissibility condition for n = {n}")]
    ConditionViolated { n: usize, gamma: f64 },

    #[error("rate fit needs {0}")]
    InvalidSamples(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

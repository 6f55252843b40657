use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("{method} did not converge: {detail}")]
    NoConvergence { method: &'static str, detail: String },

    #[error("operator breaks parity: max cross-sector entry {max_entry:e} at ({row}, {col})")]
    ParityViolation { max_entry: f64, row: usize, col: usize },

    #[error("degenerate unperturbed level: {0}")]
    Degenerate(String),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("no interior extremum: {0}")]
    NoExtremum(String),

    #[error("requested order {requested} exceeds {limit}")]
    OrderCap { requested: usize, limit: usize },

    #[error("precision exhausted: only {certified} digits agree, {required} required")]
    PrecisionExhausted { certified: u32, required: u32 },

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// Stable machine-readable tag of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidTruncation(_) => "invalid_truncation",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::DimensionCap { .. } => "dimension_cap",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ParityViolation { .. } => "parity_violation",
            Error::Degenerate(_) => "degenerate",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NoExtremum(_) => "no_extremum",
            Error::OrderCap { .. } => "order_cap",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::Numeric(_) => "numeric",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

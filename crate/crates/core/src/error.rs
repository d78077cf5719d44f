use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("element has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("division by zero")]
    ZeroDivision,
    #[error("element of valuation {0} is not a unit of the valuation ring")]
    NotUnitInO(i64),
    #[error("coefficient models differ")]
    ConfigMismatch,
    #[error("polynomials live in different variable namespaces ({left} vs {right})")]
    NamespaceMismatch { left: String, right: String },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("series is not additive: {0}")]
    InvalidSeries(String),
    #[error("invalid exponent {exponent}: {reason}")]
    InvalidExponent { exponent: u64, reason: String },
    #[error("series coefficients are not all powers of the uniformizer")]
    SeriesNotTPowerForm,
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid curve data: {0}")]
    InvalidCurve(String),
    #[error("curve fails the classification conditions: {0}")]
    ConditionsNotMet(String),
    #[error("action does not stabilize the coordinate ring")]
    NotStable,
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "invalid_prime",
            Error::NegativeValuation(_) => "negative_valuation",
            Error::ZeroDivision => "zero_division",
            Error::NotUnitInO(_) => "not_unit_in_o",
            Error::ConfigMismatch => "config_mismatch",
            Error::NamespaceMismatch { .. } => "namespace_mismatch",
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::NotZeroDimensional => "not_zero_dimensional",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidSeries(_) => "invalid_series",
            Error::InvalidExponent { .. } => "invalid_exponent",
            Error::SeriesNotTPowerForm => "series_not_t_power_form",
            Error::BoundExceeded(_) => "bound_exceeded",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::ConditionsNotMet(_) => "conditions_not_met",
            Error::NotStable => "not_stable",
            Error::Input(_) => "input",
        }
    }
}

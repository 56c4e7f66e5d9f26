use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid gnu parameters: {0}")]
    InvalidParams(String),

    /// The partial-trace representation needs `t < g` and `t < n`.
    #[error("t must be < min(g,n) (got g={g}, n={n}, t={t})")]
    ErasureHypothesis { g: u64, n: u64, t: u64 },

    #[error("binomial moment exponent {0} unsupported (only 0..=4)")]
    UnsupportedMoment(u32),

    #[error("generator moment power {0} unsupported (only 1 or 2)")]
    UnsupportedPower(u32),

    #[error("closed-form erasure asymptotics exist only for t = 1, 2 (got t={0})")]
    UnsupportedErasureAsymptotic(u64),

    #[error("{name} = {value} outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("oracle limited to {max} qubits (requested {requested})")]
    OracleTooLarge { requested: usize, max: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("cannot parse number {0:?}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {p} rejected: {reason}")]
    InvalidModulus { p: u64, reason: String },

    #[error("modulus {p} exceeds the table limit {limit}")]
    ModulusTooLarge { p: u64, limit: u64 },

    #[error("character index {index} out of range for modulus {p}")]
    InvalidCharacterIndex { index: u64, p: u64 },

    #[error("the principal character is not allowed here")]
    PrincipalCharacter,

    #[error("invalid interval: need beta > alpha >= 0, got alpha={alpha}, beta={beta}")]
    InvalidInterval { alpha: f64, beta: f64 },

    #[error("the range (alpha*p, beta*p] contains no integer (alpha={alpha}, beta={beta}, p={p})")]
    EmptyRange { alpha: f64, beta: f64, p: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid size {requested} exceeds the cap {cap}")]
    GridTooLarge { requested: usize, cap: usize },

    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("roots of a factored polynomial must be distinct mod p (root {0} repeated)")]
    RepeatedRoot(u64),

    #[error("polynomial is a {d}-th power, the character sum bound does not apply")]
    DthPower { d: u64 },

    #[error("prescription set is empty (predicted size {predicted:.3})")]
    EmptyPrescription { predicted: f64 },

    #[error("predicted prescription set size {predicted:.3} is below the minimum {minimum}")]
    PrescriptionTooSmall { predicted: f64, minimum: f64 },

    #[error("k={k} is not a member of the prescription set")]
    NotInPrescription { k: u64 },

    #[error("|F~| = {value} fell below the analytic minorant {minorant}")]
    MinorantViolated { value: f64, minorant: f64 },

    #[error("{excluded} of {total} grid points vanish, log-quadrature is untrustworthy")]
    TooManyZeros { excluded: usize, total: usize },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit status: 2 for rejected input, 3 for failures during a run.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidModulus { .. }
            | Error::InvalidCharacterIndex { .. }
            | Error::PrincipalCharacter
            | Error::InvalidInterval { .. }
            | Error::EmptyRange { .. }
            | Error::InvalidParameter(_)
            | Error::NotPowerOfTwo(_)
            | Error::RepeatedRoot(_)
            | Error::DthPower { .. } => 2,
            Error::GridTooLarge { .. }
            | Error::ModulusTooLarge { .. }
            | Error::EmptyPrescription { .. }
            | Error::PrescriptionTooSmall { .. }
            | Error::NotInPrescription { .. }
            | Error::MinorantViolated { .. }
            | Error::TooManyZeros { .. }
            | Error::Overflow(_)
            | Error::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

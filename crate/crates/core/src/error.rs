use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit code 2
/// except where a subcommand documents otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator index {index} out of range for {strands} strands (valid: 1..={max})", max = strands.saturating_sub(1))]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("operation needs {expected} strands, word has {found}")]
    WrongStrandCount { expected: usize, found: usize },

    #[error("operation needs at least {min} strands, got {found}")]
    TooFewStrands { min: usize, found: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid modulus {0}: must be >= 1")]
    InvalidModulus(i64),

    #[error("word contains a virtual crossing t{index}; this representation is defined on classical words only")]
    VirtualCrossing { index: usize },

    #[error("evaluating a Laurent polynomial with negative powers at t = {t0} leaves Z")]
    NonIntegralEvaluation { t0: i64 },

    #[error("matrix is not invertible modulo {modulus}")]
    NotInvertible { modulus: u64 },

    #[error("budget exceeded: {explored} items explored, budget {budget}")]
    BudgetExceeded { explored: u64, budget: u64 },

    #[error("level {0} is even; the decomposition needs an odd level")]
    EvenLevel(u64),

    #[error("word is not in the kernel of q_{m}")]
    NotInKernel { m: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors surfaced by the exact-arithmetic layers and the engines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a root of unity of order dividing {d}")]
    NotARootOfUnity { d: u32 },
    #[error("incompatible cyclotomic orders {a} and {b}")]
    OrderIncompatible { a: u32, b: u32 },
    #[error("group closure exceeded cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element is not a member of the group")]
    ElementNotInGroup,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("polynomial is not semi-invariant (witness element index {witness})")]
    NotSemiInvariant { witness: usize },
    #[error("ideal data is not monomial")]
    NotMonomial,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("contact order {b} exceeds jet level {m}")]
    LevelTooSmall { b: u32, m: u32 },
    #[error("computation budget exceeded ({what})")]
    BudgetExceeded { what: String },
    #[error("group contains a pseudo-reflection (element index {witness})")]
    PseudoReflection { witness: usize },
    #[error("ideal vanishes identically on the subvariety")]
    IdealVanishesOnY,
    #[error("point does not lie on the subvariety")]
    PointNotOnY,
    #[error("presentation rejected by validation")]
    ValidationRejected,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("descriptor parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("ring of size {size} exceeds the configured bound of {max} elements")]
    SizeOverflow { size: u64, max: usize },

    #[error("{0} is not a catalog field")]
    NotAField(String),

    #[error("element index {index} does not belong to a ring of size {size}")]
    ForeignElement { index: usize, size: usize },

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("{0} is not a unit")]
    NotAUnit(String),

    #[error("not a two-sided ideal: {0}")]
    NotAnIdeal(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("matrix {0} is not invertible")]
    NotInvertible(String),

    #[error("pair {0} is not admissible")]
    NotAdmissible(String),

    #[error("point index {index} is not on a line with {len} points")]
    ForeignPoint { index: usize, len: usize },

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("{0} lies outside the domain of the induced map")]
    OutsideDomain(String),

    #[error("{0} is not in the Jacobson radical")]
    NotInRadical(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("wrong algebra: {0}")]
    WrongAlgebra(String),

    #[error("matrix is not a member of group {0}")]
    NotGroupMember(String),

    #[error("the parameter t must be nonzero")]
    ZeroParameter,

    #[error("the field with two elements is excluded from parabola models")]
    Gf2Excluded,

    #[error("malformed range {0:?}")]
    MalformedRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad ring spec `{0}`")]
    BadRingSpec(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ring has {0} elements, the limit is 4096")]
    RingTooLarge(u64),
    #[error("table does not define a ring: {0}")]
    NotARing(String),
    #[error("ring is not local: the non-units are not closed under addition")]
    NotLocal,
    #[error("operation requires a chain ring")]
    NotChainRing,
    #[error("unknown ring element `{0}`")]
    UnknownElement(String),
    #[error("cannot scale a row by the non-unit {0}")]
    ScaleByNonUnit(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("row index {0} out of range")]
    RowOutOfRange(usize),
    #[error("column `{0}` is zero")]
    ZeroColumn(String),
    #[error("{cols} columns exceed the {rows} available rows")]
    TooManyColumns { rows: usize, cols: usize },
    #[error("closure exceeds the limit of {0} vectors")]
    ClosureTooLarge(u64),
    #[error("search space exceeds the limit of {0} vectors")]
    SearchSpaceTooLarge(u64),
    #[error("|V|/|mV| = {0} is not a power of the residue field size {1}")]
    NonIntegralDimension(u64, usize),
    #[error("ground set has {0} elements, the limit is {1}")]
    GroundSetTooLarge(usize, usize),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("family is not an independence system: {0}")]
    NotIndependenceSystem(String),
    #[error("cannot contract a set containing a circuit")]
    ContractDependentSet,
    #[error("projection onto `{0}` is zero")]
    ZeroProjection(String),
    #[error("code is not contractible by the given set")]
    NotContractible,
    #[error("code is not free")]
    NotFree,
    #[error("torsion index {0} outside 1..={1}")]
    BadTorsionIndex(u32, u32),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown gallery entry `{0}`")]
    UnknownEntry(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of {max}", max = crate::gf::MAX_ORDER)]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree {0} > 1 requires a primitive polynomial")]
    MissingPoly(u32),
    #[error("a prime field takes no polynomial")]
    SpuriousPoly,
    #[error("malformed polynomial: {0}")]
    InvalidPoly(String),
    #[error("polynomial {0} is reducible over Z_{1}")]
    PolyNotIrreducible(String, u32),
    #[error("polynomial {poly} is irreducible but not primitive: x has order {order} < {needed}")]
    PolyNotPrimitive { poly: String, order: u64, needed: u64 },
    #[error("element index {index} is out of range for a field of order {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("t out of range: need 1 <= t and 2t <= q-2 (t={t}, q={q})")]
    BadExponent { t: u64, q: u32 },
    #[error("exponent pair too large: need t1+t2 <= q-2 (t1={t1}, t2={t2}, q={q})")]
    ExponentPairTooLarge { t1: u64, t2: u64, q: u32 },
    #[error("scale r must be nonzero")]
    ZeroScale,
    #[error("no element squares to -1 in {0}")]
    NoAntiRoot(String),
    #[error("Hadamard order {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("not a Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("matrix is not weighted orthogonal: {0}")]
    NotWeighted(String),
    #[error(
        "byte {byte} at offset {offset} does not fit a field of order {q}; \
         choose a prime >= {min_q} (p=257 covers every byte value)"
    )]
    SymbolOutOfRange { byte: u32, offset: usize, q: u32, min_q: u32 },
    #[error("symbol {0} is not a byte value")]
    NotAByte(u32),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

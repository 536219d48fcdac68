use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no complex conjugation: modulus {0} must exceed 2")]
    NoComplexConjugation(u64),

    #[error("cyclotomic character undefined at this level: {p}^{n} does not divide {f}")]
    CyclotomicCharacterUndefined { f: u64, p: u64, n: u32 },

    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: i64, m: u64 },

    #[error("primitive character required (conductor {conductor}, modulus {modulus})")]
    PrimitiveRequired { conductor: u64, modulus: u64 },

    #[error("exact channel is non-positive only (got j = {0})")]
    NonPositiveOnly(i64),

    #[error("pole at s = 1")]
    Pole,

    #[error("invalid places: {0}")]
    InvalidPlaces(String),

    #[error("not p-integral: coefficient of sigma_{label} is {value} (p = {p})")]
    NotIntegral { label: u64, value: String, p: u64 },

    #[error("outside verified regime: {0}")]
    OutsideVerifiedRegime(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rational descent failed: coefficient of sigma_{0} is not rational")]
    RationalDescent(u64),

    #[error("config error: {0}")]
    Config(String),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime (need a prime p <= 97)")]
    NotPrime(u32),
    #[error("zero has no inverse in F_{0}")]
    ZeroInverse(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: F_{0} vs F_{1}")]
    ModulusMismatch(u32, u32),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("no superelliptic curve of genus {g} with p = {p}: (p - 1) does not divide 2g")]
    Infeasible { g: u64, p: u32 },
    #[error("invalid multiplicity vector: {0}")]
    InvalidVector(String),
    #[error("duplicate branch point {0}")]
    DuplicatePoints(String),
    #[error("invalid branch configuration: {0}")]
    InvalidConfiguration(String),
    #[error("the last exponent is 0 mod {0}, so D_(m-1) cannot be eliminated")]
    NonInvertibleLeading(u32),
    #[error("divisor classes live on different configurations")]
    ConfigMismatch,
    #[error("pairing indices must differ (got {0} twice)")]
    EqualIndices(usize),
    #[error("configuration is not normalized: {0}")]
    NotNormalized(String),
    #[error("genus {0} is outside the hyperelliptic range (need g > 1)")]
    DomainWarning(u64),
    #[error("non-integral count: {0}")]
    NonIntegral(String),
    #[error("permutation is not a generator of the automorphism group: {0}")]
    UnknownGenerator(String),
    #[error("permutation does not preserve the exponent pattern: {0}")]
    NotAnAutomorphism(String),
    #[error("Psi is not injective on A_m for m = {m_vector}: |A_m| = {expected}, image order = {found}")]
    NotInjective {
        m_vector: String,
        expected: u64,
        found: u64,
    },
    #[error("unknown verification suite {0:?} (expected weil, psi, embedding, formula or all)")]
    UnknownSuite(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

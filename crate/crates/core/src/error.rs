use thiserror::Error;

/// Errors raised anywhere in the library. The CLI maps these onto
/// machine-readable error records and exit status 2.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus below 2^32")]
    NotPrime(u64),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coset enumeration exceeded capacity of {0} cosets")]
    Capacity(usize),
    #[error("word is not in the subgroup (ends at coset {0})")]
    NotInSubgroup(usize),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("relator {0} is violated by the given images")]
    RelatorViolated(String),
    #[error("action is not transitive ({0} orbits)")]
    Intransitive(usize),
    #[error("kernel has torsion: element orders {found:?} differ from type {expected:?}")]
    Torsion { expected: (u32, u32, u32), found: (u32, u32, u32) },
    #[error("base hypermap is chiral, so it has no mirror involution")]
    NotReflexible,
    #[error("subspace is not invariant under the group action")]
    NotInvariant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search exhausted without finding a hypermap of type {0:?} within degree {1}")]
    NotFound((u32, u32, u32), usize),
    #[error("{0} exceeds the bound {1}")]
    TooLarge(String, u128),
    #[error("Riemann-Hurwitz count is inconsistent for type {kind:?} at index {index}")]
    Inconsistent { kind: (u32, u32, u32), index: u128 },
    #[error("mismatched extension contexts")]
    ContextMismatch,
    #[error("malformed record: {0}")]
    Record(String),
    #[error("invalid usage: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable short tag used in error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::NotSquare { .. } => "not-square",
            Error::Dimension(_) => "dimension",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::Parse { .. } => "parse",
            Error::Capacity(_) => "capacity",
            Error::NotInSubgroup(_) => "not-in-subgroup",
            Error::NotNormal(_) => "not-normal",
            Error::RelatorViolated(_) => "relator-violated",
            Error::Intransitive(_) => "intransitive",
            Error::Torsion { .. } => "torsion",
            Error::NotReflexible => "not-reflexible",
            Error::NotInvariant => "not-invariant",
            Error::Precondition(_) => "precondition",
            Error::Unsupported(_) => "unsupported",
            Error::NotFound(..) => "not-found",
            Error::TooLarge(..) => "too-large",
            Error::Inconsistent { .. } => "inconsistent",
            Error::ContextMismatch => "context-mismatch",
            Error::Record(_) => "record",
            Error::Usage(_) => "usage",
            Error::Io(_) => "io",
        }
    }
}

use thiserror::Error;

/// Errors surfaced by construction, reduction, search and certificate handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("division by zero in the golden field")]
    DivisionByZero,

    #[error("cannot canonicalize the zero vector")]
    ZeroVector,

    #[error("ray index {0} out of range 1..=300")]
    RayIndexOutOfRange(u32),

    #[error("unknown 24-cell label {0:?} (expected e.g. \"A'B\" or \"BA'\")")]
    UnknownCellLabel(String),

    #[error("unknown basis id {0} in this system")]
    UnknownBasisId(u32),

    #[error("operator {operator} is not a symmetry of the ray set: image of ray {ray} matches no ray")]
    NotASymmetry { operator: char, ray: u32 },

    #[error("image of basis {{{basis:?}}} under {operator} is not a basis of the host system")]
    ImageNotABasis { operator: char, basis: [u32; 4] },

    #[error("kernel dimension {dim} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("proof fails parity verification; refusing to proceed")]
    ProofNotVerified,

    #[error("target_bases must be odd and >= 1, got {0}")]
    InvalidTarget(u32),

    #[error("certificate violates invariant `{invariant}`: {detail}")]
    CertificateInvariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("cannot parse {0:?} as a golden-field number")]
    MalformedGolden(String),

    #[error("cannot parse {0:?} as a proof symbol (expected e.g. \"38_2-19_4\")")]
    MalformedSymbol(String),

    #[error("unknown search mode {0:?} (expected incremental, kernel_enumerate, or hybrid)")]
    UnknownSearchMode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

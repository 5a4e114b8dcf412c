use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("class is not integral: {0}")]
    NotIntegral(String),

    #[error("adjunction bound not applicable: S^2 = {0} < 0")]
    BoundNotApplicable(String),

    #[error("w not characteristic-compatible: {0}")]
    NotCharacteristic(String),

    #[error("(w, Sigma) is not an allowable pair: {0}")]
    NotAllowable(String),

    #[error("malformed two-sector series: {}", .0.join("; "))]
    MalformedSectors(Vec<String>),

    #[error("invalid manifold record: {}", .0.join("; "))]
    InvalidRecord(Vec<String>),

    #[error("invalid gluing configuration: {0}")]
    Gluing(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("regression: {0}")]
    Regression(String),
}

impl Error {
    /// Short stable tag for machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::LatticeMismatch { .. } => "lattice-mismatch",
            Error::InvalidLattice(_) => "invalid-lattice",
            Error::NotIntegral(_) => "not-integral",
            Error::BoundNotApplicable(_) => "bound-not-applicable",
            Error::NotCharacteristic(_) => "not-characteristic",
            Error::NotAllowable(_) => "not-allowable",
            Error::MalformedSectors(_) => "malformed-sectors",
            Error::InvalidRecord(_) => "invalid-record",
            Error::Gluing(_) => "gluing",
            Error::Singular(_) => "singular",
            Error::UnknownEntry(_) => "unknown-entry",
            Error::Parse(_) => "parse",
            Error::Regression(_) => "regression",
        }
    }
}

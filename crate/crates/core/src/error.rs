use thiserror::Error;

/// Library-wide error type.
///
/// The variants map onto the CLI exit codes: domain/validation/parse
/// problems exit with 1, resource-cap violations with 2.
#[derive(Debug, Error)]
pub enum FfhError {
    /// Mathematically meaningless request (valuation of 0, x = y in a
    /// pairwise intersection, nonzero generic degree where 0 is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid input data (bad matrix shape, inconsistent
    /// incidence tables, off-curve point, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A configured cap would be exceeded (enumeration size, iteration count).
    #[error("resource error: {0}")]
    Resource(String),

    /// Text or JSON input that does not parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Valid input outside the supported fragment (ramified extensions,
    /// point search in characteristic 2, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl FfhError {
    pub fn domain(msg: impl Into<String>) -> Self {
        FfhError::Domain(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        FfhError::Validation(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        FfhError::Resource(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        FfhError::Parse(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        FfhError::Unsupported(msg.into())
    }

    /// Process exit code for the CLI: 1 for domain/validation/parse, 2 for resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            FfhError::Resource(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FfhError::Domain(_) => "domain",
            FfhError::Validation(_) => "validation",
            FfhError::Resource(_) => "resource",
            FfhError::Parse(_) => "parse",
            FfhError::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, FfhError>;

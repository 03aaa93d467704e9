use serde::Serialize;
use thiserror::Error;

/// Everything the front end can fail with.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("invalid JSON in {path}: {reason}")]
    Parse { path: String, reason: String },

    #[error(transparent)]
    Lib(#[from] torus_shadow::Error),
}

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

impl CliError {
    /// Stable machine-readable code, one per rejection class.
    pub fn code(&self) -> &'static str {
        use torus_shadow::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Lib(e) => match e {
                E::Schema(_) => "schema",
                E::InvalidType { .. } => "invalid_type",
                E::DimensionMismatch { .. } => "dimension_mismatch",
                E::NotDominant { .. } => "not_dominant",
                E::LevelBound { .. } => "level_bound",
                E::OutsideAlphabet { .. } => "outside_alphabet",
                E::Assumption(_) => "assumption",
                E::UnknownFace(_) => "unknown_face",
                E::Singular(_) => "singular",
                E::Mismatch(_) => "mismatch",
                E::Constraint(_) => "constraint",
                E::Oracle(_) => "oracle",
                E::Overflow(_) => "overflow",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        use torus_shadow::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => EXIT_PARSE,
            CliError::Lib(E::Schema(_)) => EXIT_PARSE,
            CliError::Lib(E::Oracle(_) | E::Overflow(_)) => EXIT_INTERNAL,
            CliError::Lib(_) => EXIT_PRECONDITION,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PARSE => "parse",
            EXIT_PRECONDITION => "precondition",
            _ => "internal",
        }
    }

    pub fn record(&self) -> ErrorRecord {
        ErrorRecord {
            code: self.code(),
            kind: self.kind(),
            message: self.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub code: &'static str,
    pub kind: &'static str,
    pub message: String,
}

use std::path::PathBuf;

use thiserror::Error;

use crate::difficulty::GradeKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("criterion `{id}` has no Bloom levels mapped")]
    InvalidCriterion { id: String },

    #[error("invalid criterion id {0:?}: expected a single token without whitespace or `|,:`")]
    InvalidId(String),

    #[error("course `{course}` references unknown criterion `{id}`")]
    UnresolvedCriterion { course: String, id: String },

    #[error("course `{course}` has no criteria")]
    EmptyCriteria { course: String },

    #[error("course `{course}`: {message}")]
    InvalidCourse { course: String, message: String },

    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },

    #[error("Bloom level `{value}` is not one of 1-6 or a level name")]
    LevelOutOfRange { value: String },

    #[error("{kind} grade value {value} outside {}", kind.range_label())]
    InvalidGrade { kind: GradeKind, value: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("outcome `{criterion}` contains no Bloom action words; classify it manually")]
    NoActionWords { criterion: String },

    #[error("invalid lexicon: {0}")]
    InvalidLexicon(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),

    /// A domain error raised while reading a specific record of an input.
    #[error("{origin}: {locator}: {error}")]
    At {
        origin: String,
        locator: String,
        error: Box<Error>,
    },

    #[error("{origin}: {locator}: {message}")]
    Parse {
        origin: String,
        locator: String,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn at(self, origin: &str, locator: impl Into<String>) -> Error {
        Error::At {
            origin: origin.to_string(),
            locator: locator.into(),
            error: Box::new(self),
        }
    }

    pub(crate) fn parse(origin: &str, locator: impl Into<String>, message: impl ToString) -> Error {
        Error::Parse {
            origin: origin.to_string(),
            locator: locator.into(),
            message: message.to_string(),
        }
    }

    /// The underlying error with any record-location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { error, .. } => error.root(),
            other => other,
        }
    }

    /// True when the input could not be read or decoded at all, as opposed
    /// to decoded data that violates a domain rule.
    pub fn is_input_failure(&self) -> bool {
        matches!(self.root(), Error::Parse { .. } | Error::Io { .. })
    }
}

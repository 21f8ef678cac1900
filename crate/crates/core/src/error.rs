use std::fmt;

/// Errors raised by dataset ingestion, encoding documents and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("points must have at least one coordinate")]
    ZeroDimension,

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed encoding document at line {line}, column {column}: {message}")]
    Document {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid encoding: {0}")]
    InvalidEncoding(String),

    #[error("encoding does not decode to its input ({0})")]
    Lossy(String),

    #[error("corpus contains no pieces")]
    EmptyCorpus,

    #[error("{piece}: {source}")]
    Piece {
        piece: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: message.to_string(),
        }
    }

    pub(crate) fn in_piece(self, piece: &str) -> Self {
        Error::Piece {
            piece: piece.to_owned(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

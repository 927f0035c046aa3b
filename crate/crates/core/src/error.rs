use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol {label:?} at position {position}")]
    UnknownSymbol { label: String, position: usize },

    #[error("sequence of length {len} is too short for order {order}")]
    SequenceTooShort { len: usize, order: usize },

    #[error("words of length {word_len} over {alphabet_size} symbols overflow the 64-bit word code")]
    OrderTooLarge { alphabet_size: usize, word_len: usize },

    #[error("count table is empty")]
    EmptyTable,

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedFasta { line: usize, reason: String },

    #[error("cannot parse {what}: {reason}")]
    Parse { what: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the caller's configuration rather than by
    /// the input data.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig(_)
                | Error::InvalidParameter(_)
                | Error::InvalidAlphabet(_)
                | Error::OrderTooLarge { .. }
        )
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        match err.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Parse {
                what: "csv".into(),
                reason: format!("{other:?}"),
            },
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse {
            what: "json".into(),
            reason: err.to_string(),
        }
    }
}

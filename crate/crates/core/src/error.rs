use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
///
/// The CLI maps `Domain`/`Classification`/`Configuration` to exit status 2 and
/// `Accuracy`/`Range`/`Solver` to exit status 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("accuracy error: {message} (partial estimate {estimate:e})")]
    Accuracy { message: String, estimate: f64 },
    #[error("classification error: {0}")]
    Classification(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("solver error: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(msg: impl Into<String>, estimate: f64) -> Self {
        Error::Accuracy {
            message: msg.into(),
            estimate,
        }
    }

    /// Prefix the message with index context, keeping the variant.
    pub fn context(self, ctx: impl std::fmt::Display) -> Self {
        match self {
            Error::Domain(m) => Error::Domain(format!("{ctx}: {m}")),
            Error::Range(m) => Error::Range(format!("{ctx}: {m}")),
            Error::Accuracy { message, estimate } => Error::Accuracy {
                message: format!("{ctx}: {message}"),
                estimate,
            },
            Error::Classification(m) => Error::Classification(format!("{ctx}: {m}")),
            Error::Configuration(m) => Error::Configuration(format!("{ctx}: {m}")),
            Error::Solver(m) => Error::Solver(format!("{ctx}: {m}")),
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Classification(_) | Error::Configuration(_)
        )
    }
}

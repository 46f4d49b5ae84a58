use thiserror::Error;

/// Errors produced by tree construction, parsing, rewriting and counting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid parameters, wrong number of children, or an operand/leaf count
    /// that is not congruent to 1 modulo `m - 1`.
    #[error("arity error{}: {message}", at(*.offset))]
    Arity {
        message: String,
        offset: Option<usize>,
    },

    /// Malformed expression text.
    #[error("parse error at offset {offset}: {message}")]
    Parse { message: String, offset: usize },

    /// Malformed Dyck path text or a tuple violating the path invariants.
    #[error("format error: {0}")]
    Format(String),

    /// The rotation pattern does not match at the requested site.
    #[error("no rotation site: {0}")]
    Site(String),

    /// Operands of different sizes were compared.
    #[error("size mismatch: {left} vs {right}")]
    Size { left: usize, right: usize },

    /// Arguments outside the domain of a counting operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Full enumeration would exceed the configured budget.
    #[error("enumeration of {required} objects exceeds the budget of {budget}")]
    Budget { required: String, budget: u64 },

    /// A result that must hold by construction did not.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

fn at(offset: Option<usize>) -> String {
    match offset {
        Some(o) => format!(" at offset {o}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn arity(message: impl Into<String>) -> Self {
        Error::Arity {
            message: message.into(),
            offset: None,
        }
    }

    pub(crate) fn arity_at(message: impl Into<String>, offset: usize) -> Self {
        Error::Arity {
            message: message.into(),
            offset: Some(offset),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

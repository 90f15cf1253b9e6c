use std::fmt;

/// Errors raised by the library.
///
/// Semantic validation problems (a module whose `st` does not vanish, a graph
/// with a bad height) are reported as lists of violations by the `validate`
/// functions rather than through this type; `Error` is for operations that
/// cannot proceed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("size guard: {what} would enumerate {size} elements (limit {limit})")]
    SizeGuard { what: String, size: u128, limit: u128 },
    #[error("index out of window: {0}")]
    IndexOutOfWindow(String),
    #[error("invalid string index: {0}")]
    InvalidIndex(String),
    #[error("element must be nonzero: {0}")]
    ZeroElement(String),
    #[error("not a submodule (fails at degree {0})")]
    NotSubmodule(usize),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("no retraction found for {0}")]
    NoRetraction(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not basic: {0}")]
    NotBasic(String),
    #[error("graph-invalid: recovered heights violate the graph rules ({0})")]
    GraphInvalid(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on anything enumerated element by element.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

pub(crate) fn guard(what: impl fmt::Display, size: u128) -> Result<()> {
    if size > ENUMERATION_LIMIT {
        Err(Error::SizeGuard {
            what: what.to_string(),
            size,
            limit: ENUMERATION_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// A boolean answer computed inside a finite degree window.
///
/// `window_uncertain` is set when the answer depends on degrees above the
/// window of a module whose `extends` flag is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub value: bool,
    pub window_uncertain: bool,
}

impl Verdict {
    pub fn certain(value: bool) -> Self {
        Verdict {
            value,
            window_uncertain: false,
        }
    }

    pub fn uncertain(value: bool) -> Self {
        Verdict {
            value,
            window_uncertain: true,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if self.window_uncertain {
            write!(f, " (window-uncertain)")?;
        }
        Ok(())
    }
}

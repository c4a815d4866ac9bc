use std::fmt;

use banach_mp::Error;

/// Why a command did not succeed, and the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Unreadable file, malformed matrix, bad flag value. Exit 2.
    Parse(String),
    /// Numerical verdicts could not be trusted at the requested tolerance. Exit 3.
    Tolerance(String),
    /// Input does not satisfy what the command requires. Exit 4.
    Precondition(String),
    /// The command ran but at least one check failed. Exit 1.
    Checks(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Checks(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Tolerance(_) => 3,
            Failure::Precondition(_) => 4,
        }
    }

    /// Wraps a library error, naming the input it concerns.
    pub fn from_core(subject: &str, e: Error) -> Self {
        let msg = format!("{subject}: {e}");
        match e {
            Error::ToleranceBreakdown(_) => Failure::Tolerance(msg),
            Error::NonFinite { .. } | Error::BadLength { .. } | Error::UnknownNorm(_) => Failure::Parse(msg),
            _ => Failure::Precondition(msg),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Tolerance(m) => write!(f, "tolerance breakdown: {m}"),
            Failure::Precondition(m) => write!(f, "precondition violated: {m}"),
            Failure::Checks(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for Failure {}

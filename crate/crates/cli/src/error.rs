use std::fmt;

use fuzzyq_core::Error;

use crate::dsl::ParseError;

/// Process exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Data,
    Cap,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 2,
            ExitKind::Data => 3,
            ExitKind::Cap => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Usage,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Data,
            message: message.into(),
        }
    }

    pub fn context(mut self, what: impl fmt::Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::CapExceeded { .. } => ExitKind::Cap,
            Error::NumericDomain { .. } | Error::InvalidArgument(_) | Error::BaseSetMismatch => {
                ExitKind::Data
            }
            Error::InvalidParameter(_) | Error::ArityMismatch { .. } | Error::Unsupported(_) => {
                ExitKind::Usage
            }
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::usage(e.to_string())
    }
}

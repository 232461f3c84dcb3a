use thiserror::Error;

/// Failures split by exit code: bad input (1) versus a mathematical negative
/// outcome within the configured bounds (2).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
        }
    }

    pub fn from_core_at(path: &str, e: isostrata::Error) -> Self {
        match CliError::from(e) {
            CliError::Input(m) => CliError::Input(format!("{path}: {m}")),
            CliError::Math(m) => CliError::Math(format!("{path}: {m}")),
        }
    }
}

impl From<isostrata::Error> for CliError {
    fn from(e: isostrata::Error) -> Self {
        use isostrata::Error as E;
        match e {
            E::NoSolutionWithinBound(_)
            | E::TargetNotMonodromyInvariant(_)
            | E::NotAnIsotropyClass
            | E::SizeCapExceeded { .. }
            | E::GroupNotFiniteWithinCap(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

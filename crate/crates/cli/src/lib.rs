//! Command line front end: session files in, exact reports out.

pub mod commands;
pub mod error;
pub mod session;

pub use commands::{Format, Report};
pub use error::CliError;
pub use session::{parse_session, Session};

/// Environment variable overriding the group closure cap.
pub const CAP_ENV: &str = "TOOL_CAP_GROUP_ORDER";

/// Reads the closure cap override from the environment.
pub fn cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(CAP_ENV) {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{CAP_ENV} must be a positive integer, got `{s}`"))),
    }
}

use pwlab::PwError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] PwError),

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for failed checks and runtime errors, 2 for invalid configuration, 3 for the
    /// overflow guard.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                PwError::InvalidBandwidth(_)
                | PwError::InadmissibleSymbol { .. }
                | PwError::WindowTooSmall { .. }
                | PwError::WindowTooLarge(_)
                | PwError::BandwidthMismatch { .. } => 2,
                PwError::OverflowGuard { .. } => 3,
                _ => 1,
            },
            CliError::Write { .. } => 1,
        }
    }
}

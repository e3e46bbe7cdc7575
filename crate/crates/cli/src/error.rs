// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<dtcm_core::Error> for CliError {
    fn from(e: dtcm_core::Error) -> Self {
        use dtcm_core::Error as E;
        match e {
            E::InvalidArgument { name, reason } => CliError::Config(ConfigError::new(name, reason)),
            E::Configuration(msg) => CliError::Config(ConfigError::new("field", msg)),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

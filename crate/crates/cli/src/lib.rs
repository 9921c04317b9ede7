//! Command-line front end: TOML run configurations in, CSV or JSON tables out.

pub mod config;
pub mod presets;
pub mod report;
pub mod run;

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;
use wqed_eit::Error as LibError;

pub use config::{parse_config, Format, Grid, Mode, Parsed, RunConfig};
pub use report::Report;
pub use run::run;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::InvalidConfig(_)
            | LibError::RequiresRegularArray(_)
            | LibError::NearDegenerate { .. }
            | LibError::InvalidGrid { .. }
            | LibError::DimensionTooLarge { .. }
            | LibError::Unsupported(_) => CliError::Config(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Write `contents` to `path` through a sibling temporary file, so a failed
/// run never leaves a partial output behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = std::path::PathBuf::from(tmp);
    let result = fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents.as_bytes())?;
            f.sync_all()
        })
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(io(e));
    }
    Ok(())
}

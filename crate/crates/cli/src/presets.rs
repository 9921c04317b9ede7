//! Figure-reproduction presets shipped with the binary.

use crate::config::{parse_config, RunConfig};
use crate::CliError;

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        pub const PRESETS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../presets/", $name, ".toml"))),)*
        ];
    };
}

presets!(
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c",
    "fig4d", "fig5a", "fig5b", "fig5c",
);

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parsed preset by name; warnings (the off-centre presets) are dropped.
pub fn load(name: &str) -> Result<RunConfig, CliError> {
    let text = source(name).ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?;
    Ok(parse_config(text)?.config)
}

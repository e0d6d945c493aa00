use std::env;
use std::fs;
use std::path::PathBuf;

use freedyn::IterationConfig;

use crate::CliError;

pub const CONFIG_ENV: &str = "FREEDYN_CONFIG";

/// Budgets from the TOML file named by `FREEDYN_CONFIG`, if set.
///
/// ```toml
/// max_iterations = 300
/// target_prefix = 200
/// ```
pub fn from_env() -> Result<IterationConfig, CliError> {
    match env::var_os(CONFIG_ENV) {
        Some(path) if !path.is_empty() => load(PathBuf::from(path)),
        _ => Ok(IterationConfig::default()),
    }
}

pub fn load(path: PathBuf) -> Result<IterationConfig, CliError> {
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    parse(&text).map_err(|message| CliError::Config { path, message })
}

fn parse(text: &str) -> Result<IterationConfig, String> {
    toml::from_str(text).map_err(|e: toml::de::Error| e.message().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let cfg = parse("target_prefix = 120\n").unwrap();
        assert_eq!(cfg.target_prefix, 120);
        assert_eq!(cfg.max_iterations, IterationConfig::default().max_iterations);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(parse("max_iter = 3").unwrap_err().contains("max_iter"));
        assert!(parse("target_prefix = -1").is_err());
    }
}

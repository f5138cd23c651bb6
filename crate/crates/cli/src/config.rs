use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Deserialize;

use degroot::census::DEFAULT_CENSUS_CAP;
use degroot::MAX_CARRIER;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_n: usize,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_n: DEFAULT_CENSUS_CAP,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cache_dir: None,
            output_format: OutputFormat::Table,
        }
    }
}

/// Optional TOML file; any key may be left out.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub max_n: Option<usize>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Command-line values; they win over the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub max_n: Option<usize>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub output_format: Option<OutputFormat>,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: Overrides) -> anyhow::Result<Self> {
        let base = RunConfig::default();
        let config = RunConfig {
            max_n: flags.max_n.or(file.max_n).unwrap_or(base.max_n),
            jobs: flags.jobs.or(file.jobs).unwrap_or(base.jobs),
            cache_dir: flags.cache_dir.or(file.cache_dir),
            output_format: flags.output_format.or(file.output_format).unwrap_or(base.output_format),
        };
        if config.jobs == 0 {
            bail!("jobs must be at least 1");
        }
        if config.max_n > MAX_CARRIER {
            bail!("max_n must be at most {MAX_CARRIER}");
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = toml::from_str("max_n = 4\njobs = 2\noutput_format = \"csv\"").unwrap();
        let flags = Overrides { jobs: Some(3), ..Default::default() };
        let c = RunConfig::resolve(file, flags).unwrap();
        assert_eq!((c.max_n, c.jobs, c.output_format), (4, 3, OutputFormat::Csv));
    }

    #[test]
    fn rejects_bad_values() {
        let zero_jobs = Overrides { jobs: Some(0), ..Default::default() };
        assert!(RunConfig::resolve(ConfigFile::default(), zero_jobs).is_err());
        let big = Overrides { max_n: Some(8), ..Default::default() };
        assert!(RunConfig::resolve(ConfigFile::default(), big).is_err());
        assert!(toml::from_str::<ConfigFile>("colour = 1").is_err());
    }
}

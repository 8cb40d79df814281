use std::fs;
use std::path::{Path, PathBuf};

use foulkes_core::characters::{TableCache, DEFAULT_MAX_TABLE_DEGREE};
use foulkes_core::perm::DEFAULT_GROUP_CAP;
use foulkes_core::setpart::DEFAULT_ENUMERATION_CAP;
use serde::Deserialize;

pub const CACHE_DIR_ENV: &str = "FOULKES_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".foulkes-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: PathBuf,
    pub read_only_cache: bool,
    pub enumeration_cap: u64,
    pub group_cap: u64,
    pub max_degree: usize,
    pub output: Output,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: PathBuf::from(DEFAULT_CACHE_DIR),
            read_only_cache: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            max_degree: DEFAULT_MAX_TABLE_DEGREE,
            output: Output::Text,
        }
    }
}

/// Contents of an optional TOML config file; every key may be omitted.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    pub read_only_cache: Option<bool>,
    pub enumeration_cap: Option<u64>,
    pub group_cap: Option<u64>,
    pub max_degree: Option<usize>,
    pub output: Option<Output>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cache_dir: Option<PathBuf>,
    pub read_only_cache: bool,
    pub enumeration_cap: Option<u64>,
    pub group_cap: Option<u64>,
    pub max_degree: Option<usize>,
    pub json: bool,
}

impl Config {
    /// Layers flags over the environment (cache dir only), the file, and
    /// the defaults.
    pub fn resolve(file: FileConfig, env_cache_dir: Option<PathBuf>, flags: Overrides) -> Result<Self, String> {
        let d = Config::default();
        let config = Config {
            cache_dir: flags
                .cache_dir
                .or(env_cache_dir)
                .or(file.cache_dir)
                .unwrap_or(d.cache_dir),
            read_only_cache: flags.read_only_cache || file.read_only_cache.unwrap_or(d.read_only_cache),
            enumeration_cap: flags.enumeration_cap.or(file.enumeration_cap).unwrap_or(d.enumeration_cap),
            group_cap: flags.group_cap.or(file.group_cap).unwrap_or(d.group_cap),
            max_degree: flags.max_degree.or(file.max_degree).unwrap_or(d.max_degree),
            output: if flags.json {
                Output::Json
            } else {
                file.output.unwrap_or(d.output)
            },
        };
        if config.enumeration_cap == 0 || config.group_cap == 0 || config.max_degree == 0 {
            return Err("caps and max_degree must be positive".into());
        }
        Ok(config)
    }

    pub fn cache(&self) -> TableCache {
        if self.read_only_cache {
            TableCache::read_only(&self.cache_dir)
        } else {
            TableCache::new(&self.cache_dir)
        }
    }

    pub fn json(&self) -> bool {
        self.output == Output::Json
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file: FileConfig = toml::from_str("cache_dir = \"from-file\"\ngroup_cap = 10\noutput = \"json\"").unwrap();
        let c = Config::resolve(file.clone(), None, Overrides::default()).unwrap();
        assert_eq!(c.cache_dir, PathBuf::from("from-file"));
        assert_eq!(c.group_cap, 10);
        assert_eq!(c.enumeration_cap, DEFAULT_ENUMERATION_CAP);
        assert!(c.json());

        let c = Config::resolve(file.clone(), Some("from-env".into()), Overrides::default()).unwrap();
        assert_eq!(c.cache_dir, PathBuf::from("from-env"));

        let flags = Overrides {
            cache_dir: Some("from-flag".into()),
            group_cap: Some(7),
            ..Default::default()
        };
        let c = Config::resolve(file, Some("from-env".into()), flags).unwrap();
        assert_eq!(c.cache_dir, PathBuf::from("from-flag"));
        assert_eq!(c.group_cap, 7);
    }

    #[test]
    fn defaults_and_rejections() {
        let c = Config::resolve(FileConfig::default(), None, Overrides::default()).unwrap();
        assert_eq!(c.enumeration_cap, 10_000_000);
        assert_eq!(c.group_cap, 4_000_000);
        assert_eq!(c.max_degree, 24);
        assert_eq!(c.output, Output::Text);
        let zero = Overrides {
            group_cap: Some(0),
            ..Default::default()
        };
        assert!(Config::resolve(FileConfig::default(), None, zero).is_err());
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}

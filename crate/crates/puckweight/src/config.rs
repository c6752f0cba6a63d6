//! Run configuration: a flat `key = value` file overridden by flags.
//!
//! Blank lines and lines starting with `#` are ignored. Keys use the long
//! flag names with `-` or `_` (`min-shots` and `min_shots` are the same key).

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formats::read_file;

/// Every key a config file may set.
pub const KNOWN_KEYS: &[&str] = &[
    "events",
    "shifts",
    "model",
    "out",
    "output",
    "out_dir",
    "format",
    "strengths",
    "venue",
    "min_shots",
    "top",
    "features",
    "league_sv_pct",
    "entity",
    "side",
    "stat",
    "target",
    "plot_data",
    "lambda",
    "lambda_grid",
    "folds",
    "separate",
    "no_zones",
    "design",
    "design_outcome",
    "design_situation",
    "player",
    "outcome",
    "situation",
    "seed",
    "games",
    "teams",
    "players_per_team",
    "goalie_skill_sd",
    "player_offense_sd",
    "shot_rate",
    "penalty_rate",
    "rebound_probability",
    "max_slot_share",
];

fn normalise(key: &str) -> String {
    key.trim().replace('-', "_")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |m: String| Error::Config(format!("{source}:{}: {m}", i + 1));
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let key = normalise(k);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(err(format!("unknown key `{}`", k.trim())));
            }
            if values.insert(key, v.trim().to_string()).is_some() {
                return Err(err(format!("duplicate key `{}`", k.trim())));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_file(path)?, &path.display().to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Flag,
    File,
    Default,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Flag => "flag",
            Source::File => "file",
            Source::Default => "default",
        }
    }
}

/// Resolves settings from flags, then the config file, then defaults, and
/// records what was used.
#[derive(Debug, Default)]
pub struct Resolver {
    file: ConfigFile,
    used: BTreeMap<String, (String, Source)>,
}

impl Resolver {
    pub fn new(file: ConfigFile) -> Self {
        Self {
            file,
            used: BTreeMap::new(),
        }
    }

    fn file_value<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.file.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| Error::Config(format!("config key `{key}`: cannot parse `{raw}`: {e}"))),
        }
    }

    /// Flag value, else file value, else `None`.
    pub fn opt<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        debug_assert!(KNOWN_KEYS.contains(&key), "{key}");
        let (value, source) = match flag {
            Some(v) => (Some(v), Source::Flag),
            None => (self.file_value(key)?, Source::File),
        };
        if let Some(v) = &value {
            self.used.insert(key.to_string(), (v.to_string(), source));
        }
        Ok(value)
    }

    pub fn or<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T::Err: Display,
    {
        match self.opt(key, flag)? {
            Some(v) => Ok(v),
            None => {
                self.used.insert(key.to_string(), (default.to_string(), Source::Default));
                Ok(default)
            }
        }
    }

    pub fn required<T: FromStr + Display>(&mut self, key: &str, flag: Option<T>) -> Result<T>
    where
        T::Err: Display,
    {
        self.opt(key, flag)?.ok_or_else(|| {
            Error::Usage(format!(
                "missing required setting `{}` (flag --{} or config key)",
                key,
                key.replace('_', "-")
            ))
        })
    }

    /// A boolean switch: set by the flag, or by `true`/`false` in the file.
    pub fn switch(&mut self, key: &str, flag: bool) -> Result<bool> {
        let v = if flag { Some(true) } else { None };
        self.or(key, v, false)
    }

    /// `config key=value (source)` lines in key order.
    pub fn log_lines(&self, command: &str) -> Vec<String> {
        let mut out = vec![format!("config command={command}")];
        out.extend(
            self.used
                .iter()
                .map(|(k, (v, s))| format!("config {k}={v} ({})", s.name())),
        );
        out
    }
}

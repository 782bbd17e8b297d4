use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GroupFamily {
    /// unitriangular `UT_n(F_p)`
    Ut,
    /// triangular `T_n(F_p)`
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Group,
    Algebra,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Ns,
    Nps,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    UtTable,
    TTable,
    VerifyTheory,
    Orbits,
    HopfMult,
    HopfCoprod,
    HopfVerify,
    HopfTower,
    Acceptance,
}

/// Everything a run needs. A config file supplies any subset of the fields;
/// command-line flags override it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub n: Option<usize>,
    pub p: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub verify_oracle: bool,
    pub verify_kirillov: bool,
    pub max_order: Option<u64>,
    pub jobs: Option<usize>,
    pub builtin: Option<String>,
    pub theory: Option<PathBuf>,
    pub group: Option<GroupFamily>,
    pub ambient: Option<Ambient>,
    pub algebra: Option<Algebra>,
    pub y: Option<u32>,
    pub basis: Vec<String>,
    pub nmax: Option<usize>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// `self` with every field that `flags` sets replaced.
    pub fn overridden_by(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            command: flags.command.or(self.command),
            n: flags.n.or(self.n),
            p: flags.p.or(self.p),
            out: flags.out.or(self.out),
            format: flags.format.or(self.format),
            verify_oracle: flags.verify_oracle || self.verify_oracle,
            verify_kirillov: flags.verify_kirillov || self.verify_kirillov,
            max_order: flags.max_order.or(self.max_order),
            jobs: flags.jobs.or(self.jobs),
            builtin: flags.builtin.or(self.builtin),
            theory: flags.theory.or(self.theory),
            group: flags.group.or(self.group),
            ambient: flags.ambient.or(self.ambient),
            algebra: flags.algebra.or(self.algebra),
            y: flags.y.or(self.y),
            basis: if flags.basis.is_empty() { self.basis } else { flags.basis },
            nmax: flags.nmax.or(self.nmax),
        }
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => Err(CliError::Usage("--n must be at least 1".into())),
            None => Err(CliError::Usage("--n is required".into())),
        }
    }

    pub fn require_p(&self) -> Result<u32, CliError> {
        self.p.ok_or_else(|| CliError::Usage("--p is required".into()))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file: RunConfig = serde_json::from_str(r#"{"command": "ut-table", "n": 3, "p": 2, "format": "csv"}"#).unwrap();
        let flags = RunConfig {
            n: Some(4),
            ..RunConfig::default()
        };
        let merged = file.overridden_by(flags);
        assert_eq!(merged.command, Some(Command::UtTable));
        assert_eq!(merged.n, Some(4));
        assert_eq!(merged.p, Some(2));
        assert_eq!(merged.format(), Format::Csv);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"nn": 3}"#).is_err());
    }
}

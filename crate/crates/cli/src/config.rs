use std::path::Path;

use serde::Deserialize;

use realav_core::search::SearchConfig;

use crate::error::CliError;

/// Settings shared by every subcommand. Precedence: flags, then the
/// `--config` file, then the library defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub search: SearchConfig,
    pub seed: u64,
    pub threads: Option<usize>,
}

/// Every key is optional; unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub tol_fix: Option<f64>,
    pub tol_res: Option<f64>,
    pub tol_fstable: Option<f64>,
    pub denom_bound: Option<u64>,
    pub max_iters: Option<usize>,
    pub max_escalations: Option<u32>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }

    /// Overlays `top` on `self`, keeping `self` where `top` is unset.
    pub fn overlay(self, top: ConfigFile) -> ConfigFile {
        ConfigFile {
            tol_fix: top.tol_fix.or(self.tol_fix),
            tol_res: top.tol_res.or(self.tol_res),
            tol_fstable: top.tol_fstable.or(self.tol_fstable),
            denom_bound: top.denom_bound.or(self.denom_bound),
            max_iters: top.max_iters.or(self.max_iters),
            max_escalations: top.max_escalations.or(self.max_escalations),
            seed: top.seed.or(self.seed),
            threads: top.threads.or(self.threads),
        }
    }

    pub fn resolve(self) -> Result<Config, CliError> {
        let mut c = Config::default();
        let s = &mut c.search;
        s.tol_fix = self.tol_fix.unwrap_or(s.tol_fix);
        s.tol_res = self.tol_res.unwrap_or(s.tol_res);
        s.tol_fstable = self.tol_fstable.unwrap_or(s.tol_fstable);
        s.denom_bound = self.denom_bound.unwrap_or(s.denom_bound);
        s.max_iters = self.max_iters.unwrap_or(s.max_iters);
        s.max_escalations = self.max_escalations.unwrap_or(s.max_escalations);
        s.validate()?;
        c.seed = self.seed.unwrap_or(c.seed);
        if self.threads == Some(0) {
            return Err(CliError::input("threads must be at least 1"));
        }
        c.threads = self.threads;
        Ok(c)
    }
}

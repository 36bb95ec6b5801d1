//! TOML configuration mirroring the command-line flags.
//!
//! ```toml
//! [params]
//! alpha-sq = 50
//! g1 = 1
//! g2 = 5
//!
//! [sweep]
//! scheme = "sui"
//! param = "g2"
//! start = 0.1
//! stop = 50
//! count = 200
//! scale = "log"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;
use suilab_core::{ModulationSignal, SchemeParams};

use crate::args::{ModeArg, ParamArgs, Scale};
use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub params: ParamSection,
    #[serde(default)]
    pub eval: TargetSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ParamSection {
    pub alpha_sq: Option<f64>,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub g: Option<f64>,
    pub t: Option<f64>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub theta: Option<f64>,
    pub k: Option<f64>,
    pub loss_internal: Option<f64>,
    pub loss_detect: Option<f64>,
    pub phase: Option<f64>,
    pub split_angles: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct TargetSection {
    pub scheme: Option<String>,
    pub circuit: Option<PathBuf>,
    pub mode: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SweepSection {
    pub scheme: Option<String>,
    pub circuit: Option<PathBuf>,
    pub param: Option<String>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
    pub scale: Option<String>,
    pub mode: Option<String>,
    pub out: Option<PathBuf>,
}

pub fn load(path: &Path) -> CliResult<Config> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    toml::from_str(&text).map_err(|e| CliError::Config { path: path.to_owned(), msg: e.to_string() })
}

pub fn load_opt(path: Option<&Path>) -> CliResult<Config> {
    path.map_or_else(|| Ok(Config::default()), load)
}

pub fn parse_mode(s: &str) -> CliResult<ModeArg> {
    match s {
        "analytic" => Ok(ModeArg::Analytic),
        "numeric" => Ok(ModeArg::Numeric),
        _ => Err(CliError::Usage(format!("mode must be analytic or numeric, got '{s}'"))),
    }
}

pub fn parse_scale(s: &str) -> CliResult<Scale> {
    match s {
        "linear" => Ok(Scale::Linear),
        "log" => Ok(Scale::Log),
        _ => Err(CliError::Usage(format!("scale must be linear or log, got '{s}'"))),
    }
}

/// Flag values with config values filling the gaps.
pub fn merge(flags: &ParamArgs, cfg: &ParamSection) -> ParamSection {
    ParamSection {
        alpha_sq: flags.alpha_sq.or(cfg.alpha_sq),
        g1: flags.g1.or(cfg.g1),
        g2: flags.g2.or(cfg.g2),
        g: flags.g.or(cfg.g),
        t: flags.t.or(cfg.t),
        eps: flags.eps.or(cfg.eps),
        delta: flags.delta.or(cfg.delta),
        gamma: flags.gamma.or(cfg.gamma),
        theta: flags.theta.or(cfg.theta),
        k: flags.k.or(cfg.k),
        loss_internal: flags.loss_internal.or(cfg.loss_internal),
        loss_detect: flags.loss_detect.or(cfg.loss_detect),
        phase: flags.phase.or(cfg.phase),
        split_angles: flags.split_angles.clone().or_else(|| cfg.split_angles.clone()),
    }
}

pub const DEFAULT_DEPTH: f64 = 1e-3;

impl ParamSection {
    pub fn has_signal(&self) -> bool {
        self.eps.is_some() || self.delta.is_some() || self.gamma.is_some() || self.theta.is_some()
    }

    pub fn scheme_params(&self) -> CliResult<SchemeParams<f64>> {
        let d = SchemeParams::<f64>::default();
        let split_angles = match &self.split_angles {
            None => d.split_angles,
            Some(v) => <[f64; 3]>::try_from(v.as_slice())
                .map_err(|_| CliError::Usage(format!("split-angles needs 3 values, got {}", v.len())))?,
        };
        let p = SchemeParams {
            alpha_sq: self.alpha_sq.unwrap_or(d.alpha_sq),
            g1: self.g1.unwrap_or(d.g1),
            g2: self.g2.unwrap_or(d.g2),
            g: self.g.unwrap_or(d.g),
            t: self.t.unwrap_or(d.t),
            phase: self.phase.unwrap_or(d.phase),
            loss_detect: self.loss_detect.unwrap_or(d.loss_detect),
            loss_internal: self.loss_internal.unwrap_or(d.loss_internal),
            k: self.k,
            split_angles,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn signal(&self) -> CliResult<ModulationSignal<f64>> {
        let polar = self.gamma.is_some() || self.theta.is_some();
        let cartesian = self.eps.is_some() || self.delta.is_some();
        match (polar, cartesian) {
            (true, true) => {
                Err(CliError::Usage("give either --eps/--delta or --gamma/--theta, not both".into()))
            }
            (true, false) => {
                Ok(ModulationSignal::polar(self.gamma.unwrap_or(DEFAULT_DEPTH), self.theta.unwrap_or(0.0)))
            }
            (false, true) => Ok(ModulationSignal::new(self.eps.unwrap_or(0.0), self.delta.unwrap_or(0.0))),
            (false, false) => Ok(ModulationSignal::new(DEFAULT_DEPTH, DEFAULT_DEPTH)),
        }
    }
}

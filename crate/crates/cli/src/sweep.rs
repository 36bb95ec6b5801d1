use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use suilab_core::dsl::format_number;
use suilab_core::EvalMode;

use crate::args::{ModeArg, Scale, SweepArgs};
use crate::config::{self, ParamSection};
use crate::error::{CliError, CliResult};
use crate::table::{param_comments, CsvTable, HEADER};
use crate::target::{self, evaluate_target, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    AlphaSq,
    G1,
    G2,
    G,
    T,
    Phase,
    LossDetect,
    LossInternal,
    K,
    Eps,
    Delta,
    Gamma,
    Theta,
}

impl SweepParam {
    const NAMES: [(&'static str, SweepParam); 13] = [
        ("alpha-sq", SweepParam::AlphaSq),
        ("g1", SweepParam::G1),
        ("g2", SweepParam::G2),
        ("g", SweepParam::G),
        ("t", SweepParam::T),
        ("phase", SweepParam::Phase),
        ("loss-detect", SweepParam::LossDetect),
        ("loss-internal", SweepParam::LossInternal),
        ("k", SweepParam::K),
        ("eps", SweepParam::Eps),
        ("delta", SweepParam::Delta),
        ("gamma", SweepParam::Gamma),
        ("theta", SweepParam::Theta),
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES.iter().find(|(_, p)| *p == self).map(|(n, _)| *n).unwrap_or("?")
    }

    /// Key of this parameter in the report's `params` object.
    fn report_key(self) -> &'static str {
        match self {
            SweepParam::AlphaSq => "alpha_sq",
            SweepParam::LossDetect => "loss_detect",
            SweepParam::LossInternal => "loss_internal",
            other => other.name(),
        }
    }

    /// Parameters a parsed circuit can still respond to.
    fn applies_to_circuits(self) -> bool {
        matches!(
            self,
            SweepParam::AlphaSq | SweepParam::Eps | SweepParam::Delta | SweepParam::Gamma | SweepParam::Theta
        )
    }

    pub fn set(self, p: &mut ParamSection, x: f64) {
        let slot = match self {
            SweepParam::AlphaSq => &mut p.alpha_sq,
            SweepParam::G1 => &mut p.g1,
            SweepParam::G2 => &mut p.g2,
            SweepParam::G => &mut p.g,
            SweepParam::T => &mut p.t,
            SweepParam::Phase => &mut p.phase,
            SweepParam::LossDetect => &mut p.loss_detect,
            SweepParam::LossInternal => &mut p.loss_internal,
            SweepParam::K => &mut p.k,
            SweepParam::Eps => &mut p.eps,
            SweepParam::Delta => &mut p.delta,
            SweepParam::Gamma => &mut p.gamma,
            SweepParam::Theta => &mut p.theta,
        };
        *slot = Some(x);
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let norm = s.replace('_', "-");
        Self::NAMES.iter().find(|(n, _)| *n == norm).map(|(_, p)| *p).ok_or_else(|| {
            let known: Vec<&str> = Self::NAMES.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!("unknown sweep parameter '{s}' (known: {})", known.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize, scale: Scale) -> CliResult<Self> {
        if count < 2 {
            return Err(CliError::Usage(format!("sweep count must be at least 2, got {count}")));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(CliError::Usage(format!("sweep needs start < stop, got {start} and {stop}")));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(CliError::Usage(format!("log sweep needs start > 0, got {start}")));
        }
        Ok(Self { start, stop, count, scale })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i + 1 == self.count {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

/// Fully resolved sweep request.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: Target,
    pub param: SweepParam,
    pub grid: Grid,
    pub mode: EvalMode,
    pub fixed: ParamSection,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    pub fn from_args(args: &SweepArgs) -> CliResult<Self> {
        let cfg = config::load_opt(args.config.as_deref())?;
        let s = &cfg.sweep;
        let cfg_dir = args.config.as_deref().and_then(Path::parent);
        let (scheme, circuit) = if args.scheme.is_some() || args.circuit.is_some() {
            (args.scheme.clone(), args.circuit.clone())
        } else {
            let circuit = s.circuit.as_ref().map(|c| match cfg_dir {
                Some(d) if c.is_relative() => d.join(c),
                _ => c.clone(),
            });
            (s.scheme.clone(), circuit)
        };
        let target = target::resolve(scheme.as_deref(), circuit.as_deref())?;
        let need = |name: &str| CliError::Usage(format!("sweep needs --{name}"));
        let param: SweepParam =
            args.param.as_deref().or(s.param.as_deref()).ok_or_else(|| need("param"))?.parse()?;
        if matches!(target, Target::Circuit { .. }) && !param.applies_to_circuits() {
            return Err(CliError::Usage(format!(
                "'{}' is fixed inside a circuit file; circuits sweep alpha-sq, eps, delta, gamma or theta",
                param.name()
            )));
        }
        let scale = match (args.scale, s.scale.as_deref()) {
            (Some(sc), _) => sc,
            (None, Some(sc)) => config::parse_scale(sc)?,
            (None, None) => Scale::Linear,
        };
        let grid = Grid::new(
            args.start.or(s.start).ok_or_else(|| need("start"))?,
            args.stop.or(s.stop).ok_or_else(|| need("stop"))?,
            args.count.or(s.count).ok_or_else(|| need("count"))?,
            scale,
        )?;
        let mode = match (args.mode, s.mode.as_deref()) {
            (Some(m), _) => m,
            (None, Some(m)) => config::parse_mode(m)?,
            (None, None) => match target {
                Target::Scheme(_) => ModeArg::Analytic,
                Target::Circuit { .. } => ModeArg::Numeric,
            },
        };
        Ok(Self {
            target,
            param,
            grid,
            mode: mode.into(),
            fixed: config::merge(&args.params, &cfg.params),
            out: args.out.clone().or_else(|| s.out.clone()),
        })
    }

    fn target_name(&self) -> String {
        match &self.target {
            Target::Scheme(id) => id.to_string(),
            Target::Circuit { path, .. } => path.display().to_string(),
        }
    }

    pub fn run(&self, pool: &rayon::ThreadPool) -> CliResult<CsvTable> {
        let xs = self.grid.points();
        let reports: Vec<_> = pool.install(|| {
            xs.par_iter()
                .map(|&x| {
                    let mut p = self.fixed.clone();
                    self.param.set(&mut p, x);
                    let params = p.scheme_params()?;
                    let signal = p.signal()?;
                    evaluate_target(&self.target, &params, &signal, p.has_signal(), self.mode)
                })
                .collect::<CliResult<Vec<_>>>()
        })?;

        let mut t = CsvTable::new(&HEADER);
        t.comment(format!(
            "sweep target={} mode={}",
            self.target_name(),
            match self.mode {
                EvalMode::Analytic => "analytic",
                EvalMode::Numeric => "numeric",
            }
        ));
        t.comment(format!(
            "param={} start={} stop={} count={} scale={}",
            self.param.name(),
            format_number(self.grid.start),
            format_number(self.grid.stop),
            self.grid.count,
            match self.grid.scale {
                Scale::Linear => "linear",
                Scale::Log => "log",
            }
        ));
        if let Some(first) = reports.first() {
            let skip: &[&str] = match self.param {
                SweepParam::Gamma | SweepParam::Theta => &["eps", "delta"],
                p => &[p.report_key()],
            };
            for c in param_comments(first, skip) {
                t.comment(c);
            }
        }
        for (x, r) in xs.iter().zip(&reports) {
            t.push_report(*x, r, None);
        }
        Ok(t)
    }
}

pub fn run(args: &SweepArgs, pool: &rayon::ThreadPool, out: &mut dyn Write) -> CliResult<()> {
    let spec = SweepSpec::from_args(args)?;
    let bytes = spec.run(pool)?.to_bytes()?;
    match &spec.out {
        Some(path) => std::fs::write(path, bytes).map_err(CliError::io(path)),
        None => out.write_all(&bytes).map_err(CliError::stdout),
    }
}

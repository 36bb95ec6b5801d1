use std::path::{Path, PathBuf};

use suilab_core::dsl;
use suilab_core::schemes::{build_circuit, evaluate, evaluate_circuit};
use suilab_core::{Circuit, EvalMode, ModulationSignal, SchemeId, SchemeParams, SchemeReport};

use crate::args::ModeArg;
use crate::error::{CliError, CliResult};

/// What gets evaluated: a built-in scheme or a parsed `.qnd` circuit.
#[derive(Debug, Clone)]
pub enum Target {
    Scheme(SchemeId),
    Circuit { path: PathBuf, circuit: Circuit<f64> },
}

pub fn load_circuit(path: &Path) -> CliResult<Circuit<f64>> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let ast = dsl::parse::<f64>(&text).map_err(|err| CliError::Parse { path: path.to_owned(), err })?;
    Ok(dsl::to_circuit(&ast)?)
}

pub fn resolve(scheme: Option<&str>, circuit: Option<&Path>) -> CliResult<Target> {
    match (scheme, circuit) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either a scheme or a circuit, not both".into())),
        (Some(s), None) => Ok(Target::Scheme(s.parse()?)),
        (None, Some(p)) => Ok(Target::Circuit { path: p.to_owned(), circuit: load_circuit(p)? }),
        (None, None) => Err(CliError::Usage("a scheme or a circuit is required".into())),
    }
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Analytic => EvalMode::Analytic,
            ModeArg::Numeric => EvalMode::Numeric,
        }
    }
}

/// Evaluates the target. For circuits, `signal` replaces the modulator
/// depths only when `override_signal` is set; the report is labelled with a
/// scheme id when the circuit is exactly that scheme's circuit.
pub fn evaluate_target(
    target: &Target,
    params: &SchemeParams<f64>,
    signal: &ModulationSignal<f64>,
    override_signal: bool,
    mode: EvalMode,
) -> CliResult<SchemeReport<f64>> {
    match target {
        Target::Scheme(id) => Ok(evaluate(*id, params, signal, mode)?),
        Target::Circuit { path, circuit } => {
            if mode == EvalMode::Analytic {
                return Err(CliError::Usage("closed-form evaluation needs a built-in scheme".into()));
            }
            let circuit = if override_signal { circuit.with_signal(signal) } else { circuit.clone() };
            let own = circuit.signal()?;
            let name = SchemeId::ALL
                .into_iter()
                .find(|id| build_circuit(*id, params, &own).is_ok_and(|c| c == circuit))
                .map(|id| id.as_str().to_owned())
                .unwrap_or_else(|| {
                    path.file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "circuit".into())
                });
            Ok(evaluate_circuit(&name, &circuit, params)?)
        }
    }
}

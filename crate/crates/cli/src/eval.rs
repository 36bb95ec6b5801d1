use std::io::Write;
use std::path::Path;

use crate::args::{EvalArgs, ModeArg};
use crate::config;
use crate::error::{CliError, CliResult};
use crate::report::write_table;
use crate::target::{self, evaluate_target};

pub fn run(args: &EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = config::load_opt(args.config.as_deref())?;
    let (scheme, circuit) = if args.scheme.is_some() || args.circuit.is_some() {
        (args.scheme.clone(), args.circuit.clone())
    } else {
        let dir = args.config.as_deref().and_then(Path::parent);
        let circuit = cfg.eval.circuit.as_ref().map(|c| match dir {
            Some(d) if c.is_relative() => d.join(c),
            _ => c.clone(),
        });
        (cfg.eval.scheme.clone(), circuit)
    };
    let target = target::resolve(scheme.as_deref(), circuit.as_deref())?;
    // Numeric by default so scheme and circuit reports are byte-identical.
    let mode = match (args.mode, cfg.eval.mode.as_deref()) {
        (Some(m), _) => m,
        (None, Some(m)) => config::parse_mode(m)?,
        (None, None) => ModeArg::Numeric,
    };
    let merged = config::merge(&args.params, &cfg.params);
    let params = merged.scheme_params()?;
    let signal = merged.signal()?;
    let report = evaluate_target(&target, &params, &signal, merged.has_signal(), mode.into())?;
    if args.json {
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Usage(format!("cannot serialise report: {e}")))?;
        writeln!(out, "{text}").map_err(CliError::stdout)
    } else {
        write_table(&report, out).map_err(CliError::stdout)
    }
}

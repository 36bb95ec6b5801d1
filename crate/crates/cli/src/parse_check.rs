use std::io::Write;

use suilab_core::dsl;

use crate::args::ParseCheckArgs;
use crate::error::{CliError, CliResult};

/// Checks every file, printing diagnostics to `err`; fails if any file is bad.
pub fn run(args: &ParseCheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut failed = 0usize;
    for path in &args.files {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        let diagnostic = match dsl::parse::<f64>(&text) {
            Err(e) => Some(CliError::Parse { path: path.clone(), err: e }.to_string()),
            Ok(ast) => match dsl::to_circuit(&ast) {
                Err(e) => Some(format!("{}: {e}", path.display())),
                Ok(c) => {
                    if args.render {
                        write!(out, "{}", dsl::render(&ast)).map_err(CliError::stdout)?;
                    } else {
                        writeln!(
                            out,
                            "{}: ok ({} modes, {} elements, {} readouts)",
                            path.display(),
                            c.n_modes(),
                            c.elements().len(),
                            c.readouts().len()
                        )
                        .map_err(CliError::stdout)?;
                    }
                    None
                }
            },
        };
        if let Some(d) = diagnostic {
            failed += 1;
            writeln!(err, "{d}").map_err(CliError::stdout)?;
        }
    }
    match failed {
        0 => Ok(()),
        n => Err(CliError::Usage(format!("{n} of {} file(s) failed to parse", args.files.len()))),
    }
}

use std::io::Write;

use suilab_core::SchemeReport;

fn g(x: f64) -> String {
    if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

fn db(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.2}")
    } else {
        format!("{x}")
    }
}

/// Aligned plain-text table; dB values to two decimals.
pub fn write_table(r: &SchemeReport<f64>, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "scheme  {}", r.scheme)?;
    writeln!(out, "I_ps    {}", g(r.i_ps))?;
    writeln!(out, "SQL     {} ({} dB)", g(r.sql), db(10.0 * r.sql.log10()))?;
    writeln!(out)?;
    let rows: Vec<[String; 7]> = r
        .observables
        .iter()
        .map(|o| {
            [
                o.label.clone(),
                g(o.snr),
                db(o.snr_db),
                db(o.enhancement_db),
                g(o.sql),
                g(o.signal_power),
                g(o.noise_power),
            ]
        })
        .collect();
    let header = ["observable", "snr", "snr_db", "enh_db", "sql", "signal", "noise"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in &rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

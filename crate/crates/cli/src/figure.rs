use std::path::Path;

use rayon::prelude::*;
use suilab_core::dsl::format_number;
use suilab_core::schemes::{evaluate, heisenberg_limit, sql_min_depth};
use suilab_core::{EvalMode, ModulationSignal, SchemeId, SchemeParams, SchemeReport};

use crate::args::{FigureArgs, FigureName, Scale};
use crate::error::{CliError, CliResult};
use crate::svg::{Plot, Series};
use crate::sweep::Grid;
use crate::table::{param_comments, CsvTable, HEADER};

/// Probe photons used by every SNR figure; with `I_ps eps^2 = 1/2` the SQL sits at SNR = 1.
pub const FIG_I_PS: f64 = 100.0;
pub const FIG7_G1: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];
pub const FIG10_LOSSES: [f64; 4] = [0.0, 0.01, 0.1, 0.3];

fn fig_signal() -> ModulationSignal<f64> {
    let d = (0.5 / FIG_I_PS).sqrt();
    ModulationSignal::new(d, d)
}

/// Detection efficiencies 0.30, 0.31, ..., 1.00.
fn efficiencies() -> Vec<f64> {
    (30..=100).map(|k| k as f64 / 100.0).collect()
}

/// Output file name and contents.
pub type Artifact = (String, Vec<u8>);

fn reports(
    pool: &rayon::ThreadPool,
    xs: &[f64],
    f: impl Fn(f64) -> suilab_core::Result<SchemeReport<f64>> + Sync,
) -> CliResult<Vec<SchemeReport<f64>>> {
    pool.install(|| xs.par_iter().map(|&x| f(x).map_err(CliError::from)).collect())
}

struct Curve {
    file: String,
    observables: Vec<&'static str>,
    xs: Vec<f64>,
    reports: Vec<SchemeReport<f64>>,
}

impl Curve {
    fn csv(&self, figure: &str, x_name: &str, skip: &[&str]) -> CliResult<Vec<u8>> {
        let mut t = CsvTable::new(&HEADER);
        t.comment(format!("figure={figure} param={x_name}"));
        if let Some(r) = self.reports.first() {
            t.comment(format!("scheme={} i_ps={}", r.scheme, format_number(r.i_ps)));
            for c in param_comments(r, skip) {
                t.comment(c);
            }
        }
        for (x, r) in self.xs.iter().zip(&self.reports) {
            t.push_report(*x, r, Some(&self.observables));
        }
        t.to_bytes()
    }

    fn series(
        &self,
        label: &str,
        prefix: &str,
        value: impl Fn(&suilab_core::schemes::ObservableReport<f64>) -> f64,
    ) -> Series {
        let points = self
            .xs
            .iter()
            .zip(&self.reports)
            .filter_map(|(x, r)| r.observable(label).map(|o| (*x, value(o))))
            .collect();
        Series::new(format!("{prefix} {label}"), points)
    }
}

pub fn fig4(pool: &rayon::ThreadPool) -> CliResult<Vec<Artifact>> {
    let xs = efficiencies();
    let signal = fig_signal();
    let curve = |file: &str, id: SchemeId, obs: &'static str, base: SchemeParams<f64>| -> CliResult<Curve> {
        let reports = reports(pool, &xs, |eta| {
            let p = SchemeParams { loss_detect: 1.0 - eta, ..base };
            evaluate(id, &p, &signal, EvalMode::Analytic)
        })?;
        Ok(Curve { file: file.into(), observables: vec![obs], xs: xs.clone(), reports })
    };
    let d = SchemeParams::default();
    let curves = [
        curve("fig4_bs", SchemeId::BeamSplit, "X_b1", SchemeParams { alpha_sq: FIG_I_PS, t: 0.5, ..d })?,
        curve("fig4_opa", SchemeId::OpaSplit, "X_s", SchemeParams { alpha_sq: FIG_I_PS, g: 5.0, ..d })?,
    ];
    let mut out = Vec::new();
    let mut plot = Plot {
        title: "Joint measurement SNR vs detection efficiency".into(),
        x_label: "detection efficiency".into(),
        y_label: "SNR (dB)".into(),
        ..Plot::default()
    };
    for (c, name) in curves.iter().zip(["BS", "OPA g=5"]) {
        out.push((format!("{}.csv", c.file), c.csv("fig4", "efficiency", &["loss_detect"])?));
        plot.series.push(c.series(c.observables[0], name, |o| o.snr_db));
    }
    out.push(("fig4.svg".into(), plot.render().into_bytes()));
    Ok(out)
}

/// Log grid of `g2` values with `g2 = g1` inserted exactly.
pub fn fig7_grid(g1: f64) -> Vec<f64> {
    let mut xs = Grid { start: 0.05, stop: 50.0, count: 241, scale: Scale::Log }.points();
    xs.retain(|x| (x - g1).abs() > 1e-9 * g1);
    xs.push(g1);
    xs.sort_by(f64::total_cmp);
    xs
}

pub fn fig7(pool: &rayon::ThreadPool) -> CliResult<Vec<Artifact>> {
    let signal = fig_signal();
    let mut out = Vec::new();
    let mut plot = Plot {
        title: "SU(1,1) noise and SNR vs second gain".into(),
        x_label: "g2".into(),
        y_label: "dB".into(),
        log_x: true,
        ..Plot::default()
    };
    let mut sql_db = 0.0;
    let mut all_x = Vec::new();
    for g1 in FIG7_G1 {
        let xs = fig7_grid(g1);
        let reports = reports(pool, &xs, |g2| {
            let p = SchemeParams { g1, g2, ..SchemeParams::default() }
                .with_probe_photons(SchemeId::Sui, FIG_I_PS);
            evaluate(SchemeId::Sui, &p, &signal, EvalMode::Analytic)
        })?;
        let c = Curve {
            file: format!("fig7_g1_{}", format_number(g1)),
            observables: vec!["X_s", "Y_i"],
            xs,
            reports,
        };
        out.push((format!("{}.csv", c.file), c.csv("fig7", "g2", &["g2", "alpha_sq"])?));
        let tag = format!("g1={}", format_number(g1));
        plot.series.push(c.series("X_s", &tag, |o| o.snr_db));
        plot.series.push(c.series("X_s", &format!("{tag} noise"), |o| 10.0 * o.noise_power.log10()).dashed());
        if let Some(r) = c.reports.first() {
            sql_db = 10.0 * r.sql.log10();
        }
        all_x.extend(c.xs);
    }
    let (lo, hi) =
        (all_x.iter().copied().fold(f64::INFINITY, f64::min), all_x.iter().copied().fold(0.0, f64::max));
    let mut t = CsvTable::new(&HEADER);
    t.comment("figure=fig7 reference lines: joint-measurement SQL (snr) and shot-noise level (noise)");
    let sql = 10f64.powf(sql_db / 10.0);
    for x in [lo, hi] {
        t.rows.push(vec![
            format_number(x),
            "SQL".into(),
            format_number(sql),
            format_number(1.0),
            format_number(sql),
            format_number(sql_db),
        ]);
    }
    out.push(("fig7_reference.csv".into(), t.to_bytes()?));
    plot.series.push(Series::new("SQL / SNL", vec![(lo, sql_db), (hi, sql_db)]).dashed());
    out.push(("fig7.svg".into(), plot.render().into_bytes()));
    Ok(out)
}

pub fn fig8(pool: &rayon::ThreadPool) -> CliResult<Vec<Artifact>> {
    let xs = efficiencies();
    let signal = fig_signal();
    let curve = |file: &str, id: SchemeId, obs: &'static str, base: SchemeParams<f64>| -> CliResult<Curve> {
        let base = base.with_probe_photons(id, FIG_I_PS);
        let reports = reports(pool, &xs, |eta| {
            let p = SchemeParams { loss_detect: 1.0 - eta, ..base };
            evaluate(id, &p, &signal, EvalMode::Analytic)
        })?;
        Ok(Curve { file: file.into(), observables: vec![obs], xs: xs.clone(), reports })
    };
    let d = SchemeParams::default();
    let curves = [
        (
            curve("fig8_sui_g2_5", SchemeId::Sui, "X_s", SchemeParams { g1: 1.5, g2: 5.0, ..d })?,
            "SUI g1=1.5 g2=5",
        ),
        (
            curve("fig8_sui_equal", SchemeId::Sui, "X_s", SchemeParams { g1: 1.5, g2: 1.5, ..d })?,
            "SUI g1=g2=1.5",
        ),
        (curve("fig8_dc", SchemeId::DenseCoding, "X_b1", SchemeParams { g: 1.5, ..d })?, "DC g=1.5"),
    ];
    let mut out = Vec::new();
    let mut plot = Plot {
        title: "Amplitude SNR vs detection efficiency".into(),
        x_label: "detection efficiency".into(),
        y_label: "SNR (dB)".into(),
        ..Plot::default()
    };
    for (c, name) in &curves {
        out.push((format!("{}.csv", c.file), c.csv("fig8", "efficiency", &["loss_detect"])?));
        plot.series.push(c.series(c.observables[0], name, |o| o.snr_db));
    }
    out.push(("fig8.svg".into(), plot.render().into_bytes()));
    Ok(out)
}

/// Log grid of probe photon numbers with 4 and 100 inserted exactly.
pub fn fig10_grid() -> Vec<f64> {
    let mut xs = Grid { start: 1.0, stop: 1e4, count: 81, scale: Scale::Log }.points();
    xs.retain(|x| [4.0, 100.0].iter().all(|k| (x - k).abs() > 1e-9 * k));
    xs.extend([4.0, 100.0]);
    xs.sort_by(f64::total_cmp);
    xs
}

fn loss_name(l: f64) -> String {
    format!("fig10_L{}", format_number(l))
}

pub fn fig10(pool: &rayon::ThreadPool) -> CliResult<Vec<Artifact>> {
    let xs = fig10_grid();
    let limits = |loss: f64| -> CliResult<Vec<(f64, f64)>> {
        pool.install(|| {
            xs.par_iter()
                .map(|&i| {
                    let m = heisenberg_limit(i.sqrt(), loss, 1.0)?;
                    Ok((m.eps_m, m.delta_m))
                })
                .collect()
        })
    };
    let lossless = limits(0.0)?;
    let mut out = Vec::new();
    let mut plot = Plot {
        title: "Minimum measurable modulation vs probe photons".into(),
        x_label: "I_ps".into(),
        y_label: "minimum depth".into(),
        log_x: true,
        log_y: true,
        ..Plot::default()
    };
    for loss in FIG10_LOSSES {
        let m = limits(loss)?;
        let mut t = CsvTable::new(&["i_ps", "eps_m", "delta_m", "ratio_to_lossless"]);
        t.comment(format!(
            "figure=fig10 unseeded SU(1,1), g2 -> infinity, g1^2 = i_ps, snr threshold 1, internal loss {}",
            format_number(loss)
        ));
        for ((i, (e, d)), (e0, _)) in xs.iter().zip(&m).zip(&lossless) {
            t.push_numbers(&[*i, *e, *d, e / e0]);
        }
        out.push((format!("{}.csv", loss_name(loss)), t.to_bytes()?));
        plot.series.push(Series::new(
            format!("L={}", format_number(loss)),
            xs.iter().copied().zip(m.iter().map(|p| p.0)).collect(),
        ));
    }
    let reference = |file: &str, comment: &str, f: &dyn Fn(f64) -> f64| -> CliResult<(Artifact, Series)> {
        let mut t = CsvTable::new(&["i_ps", "eps_m"]);
        t.comment(comment);
        let pts: Vec<(f64, f64)> = xs.iter().map(|&i| (i, f(i))).collect();
        for (i, e) in &pts {
            t.push_numbers(&[*i, *e]);
        }
        Ok((
            (format!("{file}.csv"), t.to_bytes()?),
            Series::new(file.trim_start_matches("fig10_").to_uppercase(), pts).dashed(),
        ))
    };
    for (file, comment, f) in [
        (
            "fig10_sql",
            "figure=fig10 joint-measurement SQL at snr 1",
            &(|i| sql_min_depth(i, 1.0)) as &dyn Fn(f64) -> f64,
        ),
        ("fig10_hl", "figure=fig10 Heisenberg scaling 1/(2 sqrt2 i_ps)", &|i: f64| {
            1.0 / (2.0 * std::f64::consts::SQRT_2 * i)
        }),
    ] {
        let (artifact, series) = reference(file, comment, f)?;
        out.push(artifact);
        plot.series.push(series);
    }
    out.push(("fig10.svg".into(), plot.render().into_bytes()));
    Ok(out)
}

pub fn build(name: FigureName, pool: &rayon::ThreadPool) -> CliResult<Vec<Artifact>> {
    Ok(match name {
        FigureName::Fig4 => fig4(pool)?,
        FigureName::Fig7 => fig7(pool)?,
        FigureName::Fig8 => fig8(pool)?,
        FigureName::Fig10 => fig10(pool)?,
        FigureName::All => {
            let mut all = fig4(pool)?;
            all.extend(fig7(pool)?);
            all.extend(fig8(pool)?);
            all.extend(fig10(pool)?);
            all
        }
    })
}

fn write_all(dir: &Path, artifacts: &[Artifact]) -> CliResult<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    artifacts
        .iter()
        .map(|(name, bytes)| {
            let path = dir.join(name);
            std::fs::write(&path, bytes).map_err(CliError::io(&path))?;
            Ok(path.display().to_string())
        })
        .collect()
}

pub fn run(args: &FigureArgs, pool: &rayon::ThreadPool, out: &mut dyn std::io::Write) -> CliResult<()> {
    let artifacts = build(args.name, pool)?;
    for path in write_all(&args.out, &artifacts)? {
        writeln!(out, "wrote {path}").map_err(CliError::stdout)?;
    }
    Ok(())
}

use std::path::Path;
use std::process::{Command, Output};

fn suilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suilab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn builtin(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/circuits")
        .join(format!("{name}.qnd"))
        .display()
        .to_string()
}

/// Data rows of a CSV written by the tool, comments skipped.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

const SUI_ARGS: [&str; 10] = ["--g1", "1", "--g2", "5", "--alpha-sq", "50", "--eps", "0.1", "--delta", "0.1"];

#[test]
fn eval_reports_the_idler_enhancement() {
    let mut args = vec!["eval", "--scheme", "sui"];
    args.extend(SUI_ARGS);
    let o = suilab(&args);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("Y_i")).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[3], "7.56", "{text}");

    args.push("--json");
    let v: serde_json::Value = serde_json::from_slice(&suilab(&args).stdout).unwrap();
    let enh = v["observables"][1]["enhancement_db"].as_f64().unwrap();
    assert!((enh - 7.5557).abs() < 1e-3, "{enh}");
    for key in ["scheme", "params", "i_ps", "sql", "observables"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn circuit_file_and_scheme_give_identical_json() {
    let path = builtin("sui");
    let mut a = vec!["eval", "--json", "--scheme", "sui"];
    a.extend(SUI_ARGS);
    let mut b = vec!["eval", "--json", "--circuit", &path];
    b.extend(SUI_ARGS);
    let (oa, ob) = (suilab(&a), suilab(&b));
    assert!(oa.status.success() && ob.status.success());
    assert_eq!(oa.stdout, ob.stdout);

    // Without depth flags the file's own modulators are used.
    let oc = suilab(&["eval", "--json", "--circuit", &path]);
    let od = suilab(&["eval", "--json", "--scheme", "sui"]);
    assert_eq!(oc.stdout, od.stdout);
}

#[test]
fn every_shipped_circuit_matches_its_scheme() {
    for id in [
        "direct",
        "beam_split",
        "opa_split",
        "dense_coding",
        "sui",
        "sui_split3",
        "post_detection",
        "dual_beam",
        "db_dc",
    ] {
        let path = builtin(id);
        let a = suilab(&["eval", "--json", "--scheme", id]);
        let b = suilab(&["eval", "--json", "--circuit", &path]);
        assert!(a.status.success(), "{id}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{id}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let o = suilab(&["eval"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    assert_eq!(suilab(&["eval", "--scheme", "nope"]).status.code(), Some(2));
    assert_eq!(suilab(&["eval", "--scheme", "sui", "--t", "1.5"]).status.code(), Some(2));
    assert_eq!(suilab(&["eval", "--scheme", "sui", "--eps", "0.1", "--gamma", "0.1"]).status.code(), Some(2));
    let o = suilab(&[
        "sweep", "--scheme", "sui", "--param", "g2", "--start", "0.1", "--stop", "50", "--count", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o =
        suilab(&["sweep", "--scheme", "sui", "--param", "g2", "--start", "5", "--stop", "1", "--count", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = suilab(&[
        "sweep", "--scheme", "sui", "--param", "bogus", "--start", "1", "--stop", "2", "--count", "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn io_failures_exit_3() {
    let o = suilab(&["eval", "--circuit", "/nonexistent/x.qnd"]);
    assert_eq!(o.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let o = suilab(&["figure", "fig4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_are_positioned_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qnd");
    std::fs::write(&bad, "modes s\nloss s l=1.5\n").unwrap();
    let o = suilab(&["parse-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.qnd:2:10:"), "{err}");

    let o = suilab(&["eval", "--circuit", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let good = builtin("sui");
    let o = suilab(&["parse-check", &good]);
    assert!(o.status.success());
    let o = suilab(&["parse-check", "--render", &good]);
    assert!(stdout(&o).starts_with("modes "));
}

fn g2_sweep(extra: &[&str]) -> Output {
    let mut args = vec![
        "sweep", "--scheme", "sui", "--param", "g2", "--start", "0.1", "--stop", "50", "--count", "400",
        "--scale", "log", "--g1", "1",
    ];
    args.extend(extra);
    suilab(&args)
}

#[test]
fn sweep_finds_the_optimum_second_gain() {
    let o = g2_sweep(&[]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "param,observable,signal_power,noise_power,snr,snr_db");
    let xs: Vec<(f64, f64)> = rows(&text)
        .iter()
        .filter(|r| r[1] == "X_s")
        .map(|r| (r[0].parse().unwrap(), r[4].parse().unwrap()))
        .collect();
    assert_eq!(xs.len(), 400);
    let best = xs.iter().copied().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    let step = (50f64 / 0.1).ln() / 399.0;
    let target = 2.0 * 2f64.sqrt();
    assert!((best.0.ln() - target.ln()).abs() <= step, "argmax {} vs {target}", best.0);
    assert!(xs.windows(2).all(|w| w[0].0 < w[1].0), "rows in grid order");
}

#[test]
fn sweeps_are_deterministic_across_thread_counts() {
    let a = g2_sweep(&[]);
    let b = g2_sweep(&[]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_suilab"))
        .env("SUILAB_THREADS", "1")
        .args([
            "sweep", "--scheme", "sui", "--param", "g2", "--start", "0.1", "--stop", "50", "--count", "400",
        ])
        .args(["--scale", "log", "--g1", "1"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_suilab"))
        .env("SUILAB_THREADS", "zero")
        .args(["sweep", "--scheme", "sui", "--param", "g2", "--start", "1", "--stop", "2", "--count", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sweep_writes_file_and_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[params]\ng1 = 1\n\n[sweep]\nscheme = \"sui\"\nparam = \"g2\"\nstart = 0.1\nstop = 50\ncount = 400\nscale = \"log\"\nout = \"unused.csv\"\n",
    )
    .unwrap();
    let out = dir.path().join("sweep.csv");
    let o = suilab(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let from_file = std::fs::read(&out).unwrap();
    assert_eq!(from_file, g2_sweep(&[]).stdout);

    std::fs::write(&cfg, "[params]\nbogus = 1\n").unwrap();
    let o = suilab(&["eval", "--scheme", "sui", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn circuit_sweeps_accept_only_free_parameters() {
    let path = builtin("sui");
    let o = suilab(&[
        "sweep",
        "--circuit",
        &path,
        "--param",
        "alpha-sq",
        "--start",
        "1",
        "--stop",
        "10",
        "--count",
        "3",
    ]);
    assert!(o.status.success());
    let snr: Vec<f64> =
        rows(&stdout(&o)).iter().filter(|r| r[1] == "Y_i").map(|r| r[4].parse().unwrap()).collect();
    assert!(snr[0] < snr[1] && snr[1] < snr[2]);
    let o = suilab(&[
        "sweep",
        "--circuit",
        &path,
        "--param",
        "g2",
        "--start",
        "1",
        "--stop",
        "10",
        "--count",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fig7_noise_touches_vacuum_and_fig4_bs_is_linear() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(suilab(&["figure", "fig7", "--out", out]).status.success());
    for g1 in ["0.5", "1", "1.5", "2", "3"] {
        let text = std::fs::read_to_string(dir.path().join(format!("fig7_g1_{g1}.csv"))).unwrap();
        let at = g1.parse::<f64>().unwrap();
        let hits: Vec<f64> = rows(&text)
            .iter()
            .filter(|r| r[0].parse::<f64>().unwrap() == at)
            .map(|r| r[3].parse().unwrap())
            .collect();
        assert_eq!(hits.len(), 2, "g1={g1}");
        for n in hits {
            assert!((n - 1.0).abs() < 1e-10, "g1={g1}: noise {n}");
        }
    }
    assert!(dir.path().join("fig7.svg").exists());

    assert!(suilab(&["figure", "fig4", "--out", out]).status.success());
    let text = std::fs::read_to_string(dir.path().join("fig4_bs.csv")).unwrap();
    let pts: Vec<(f64, f64)> =
        rows(&text).iter().map(|r| (r[0].parse().unwrap(), r[4].parse().unwrap())).collect();
    let slope = (pts.last().unwrap().1 - pts[0].1) / (pts.last().unwrap().0 - pts[0].0);
    for (x, y) in &pts {
        assert!((y - (pts[0].1 + slope * (x - pts[0].0))).abs() < 1e-12, "{x}");
    }
}

#[test]
fn figures_are_byte_identical_between_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert!(suilab(&["figure", "all", "--out", d.path().to_str().unwrap()]).status.success());
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 21);
    for n in names {
        assert_eq!(std::fs::read(a.path().join(&n)).unwrap(), std::fs::read(b.path().join(&n)).unwrap());
    }
}

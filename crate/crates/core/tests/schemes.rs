use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use proptest::prelude::*;
use suilab_core::encoding::ModulationSignal;
use suilab_core::gaussian::{CircuitElement, QuadratureTerm};
use suilab_core::scalar::to_db;
use suilab_core::schemes::*;

type P = SchemeParams<f64>;

fn big(g: f64) -> f64 {
    (1.0 + g * g).sqrt()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn eval(id: SchemeId, p: &P, s: ModulationSignal<f64>) -> SchemeReport<f64> {
    evaluate(id, p, &s, EvalMode::Analytic).unwrap()
}

fn snr(r: &SchemeReport<f64>, label: &str) -> f64 {
    r.observable(label).unwrap_or_else(|| panic!("no {label}")).snr
}

/// Hand-derived lossless SUI noise at the dark fringe.
fn oracle_sui_noise(g1: f64, g2: f64) -> f64 {
    (big(g2) * big(g1) - g1 * g2).powi(2) + (big(g1) * g2 - big(g2) * g1).powi(2)
}

fn sq(x: f64) -> f64 {
    x * x
}

// I_ps depth^2 = 1/2 with the given probe photon number.
fn half_depth(i_ps: f64) -> f64 {
    (0.5 / i_ps).sqrt()
}

#[test]
fn direct_measurement() {
    let p = P { alpha_sq: 50.0, ..Default::default() };
    let r = eval(SchemeId::Direct, &p, ModulationSignal::new(0.0, 0.1));
    assert!((snr(&r, "Y") - 2.0).abs() < 1e-12);
    assert!((r.observable("Y").unwrap().enhancement_db - 10.0 * 2.0f64.log10()).abs() < 1e-10);
    assert_eq!(snr(&r, "X"), 0.0);
}

#[test]
fn beam_splitter() {
    let d = 0.07;
    for t in [0.0, 0.2, 0.5, 0.9, 1.0] {
        let p = P { alpha_sq: 80.0, t, ..Default::default() };
        let r = eval(SchemeId::BeamSplit, &p, ModulationSignal::new(d, d));
        let total = snr(&r, "Y_b2") + snr(&r, "X_b1");
        assert!(rel(total, 4.0 * 80.0 * d * d) < 1e-14, "t={t}");
    }
    let p = P { alpha_sq: 80.0, t: 0.5, ..Default::default() };
    let r = eval(SchemeId::BeamSplit, &p, ModulationSignal::new(0.02, 0.03));
    assert!(rel(snr(&r, "Y_b2"), 2.0 * 80.0 * 0.03 * 0.03) < 1e-14);
    assert!(rel(snr(&r, "X_b1"), 2.0 * 80.0 * 0.02 * 0.02) < 1e-14);

    let lossy = P { loss_detect: 0.5, alpha_sq: 50.0, ..p };
    let r = eval(SchemeId::BeamSplit, &lossy, ModulationSignal::new(0.1, 0.0));
    assert!((snr(&r, "X_b1") - 0.5).abs() < 1e-12);
    assert!((r.observable("X_b1").unwrap().snr_db + 3.0103).abs() < 1e-4);
}

#[test]
fn opa_splitter() {
    let eps = half_depth(100.0);
    let s = ModulationSignal::new(eps, 0.0);
    let base = P { alpha_sq: 100.0, g: 5.0, ..Default::default() };
    let lossless = snr(&eval(SchemeId::OpaSplit, &base, s), "X_s");
    let lossy = snr(&eval(SchemeId::OpaSplit, &P { loss_detect: 0.5, ..base }, s), "X_s");
    let drop = to_db(lossy) - to_db(lossless);
    assert!((drop - 10.0 * (0.5f64 * 51.0 / 26.0).log10()).abs() < 1e-12);
    assert!((drop + 0.0845).abs() < 1e-3);

    for g in [0.0, 0.3, 1.0, 7.0, 40.0] {
        let r = eval(SchemeId::OpaSplit, &P { g, ..base }, ModulationSignal::new(0.01, 0.01));
        assert!(rel(snr(&r, "X_s") + snr(&r, "Y_i"), 4.0 * 100.0 * 1e-4) < 1e-14, "g={g}");
    }
    let r = eval(SchemeId::OpaSplit, &P { g: 0.0, ..base }, ModulationSignal::new(0.01, 0.01));
    assert_eq!(snr(&r, "Y_i"), 0.0);

    let r = eval(SchemeId::OpaSplit, &P { g: 1e3, ..base }, ModulationSignal::new(0.01, 0.02));
    assert!(rel(snr(&r, "X_s"), 2.0 * 100.0 * 1e-4) < 1e-5);
    assert!(rel(snr(&r, "Y_i"), 2.0 * 100.0 * 4e-4) < 1e-5);
}

#[test]
fn dense_coding() {
    let p = P { g: 0.0, alpha_sq: 30.0, ..Default::default() };
    let r = eval(SchemeId::DenseCoding, &p, ModulationSignal::new(0.01, 0.02));
    assert!(rel(snr(&r, "X_b1"), 2.0 * 30.0 * 1e-4) < 1e-14);
    assert!(rel(snr(&r, "Y_b2"), 2.0 * 30.0 * 4e-4) < 1e-14);

    let g = 1.5;
    let p = P { g, ..Default::default() }.with_probe_photons(SchemeId::DenseCoding, 100.0);
    let s = ModulationSignal::new(half_depth(100.0), 0.0);
    let r = eval(SchemeId::DenseCoding, &p, s);
    assert!(rel(snr(&r, "X_b1"), sq(big(g) + g)) < 1e-12);
    assert!(rel(r.observable("X_b1").unwrap().noise_power, 1.0 / sq(big(g) + g)) < 1e-12);
    let mut last = f64::INFINITY;
    for ld in [0.0, 0.05, 0.1, 0.2, 0.3] {
        let v = snr(&eval(SchemeId::DenseCoding, &P { loss_detect: ld, ..p }, s), "X_b1");
        assert!(v < last);
        last = v;
    }
    // Loss of 10% already costs more than half of the squeezing gain.
    let at10 = snr(&eval(SchemeId::DenseCoding, &P { loss_detect: 0.1, ..p }, s), "X_b1");
    assert!(at10 < 0.5 * sq(big(g) + g));
}

#[test]
fn sui_headline_and_limits() {
    let (g1, g2) = (1.0, 5.0);
    let p = P { g1, g2, ..Default::default() }.with_probe_photons(SchemeId::Sui, 50.0);
    let d = 0.1;
    let r = eval(SchemeId::Sui, &p, ModulationSignal::new(d, d));
    let n0 = oracle_sui_noise(g1, g2);
    let n_text = sq(26f64.sqrt() * 2f64.sqrt() - 5.0) + sq(5.0 * 2f64.sqrt() - 26f64.sqrt());
    assert!((n0 - n_text).abs() < 1e-12);
    assert!((n0 - 8.778).abs() < 1e-3);
    let y = r.observable("Y_i").unwrap();
    assert!(rel(y.noise_power, n0) < 1e-12);
    assert!(rel(y.snr, 50.0 / n0) < 1e-12);
    assert!((y.snr - 5.696).abs() < 1e-3);
    assert!((y.enhancement_db - 7.56).abs() < 0.01);

    let p = P { g1, g2: 1e3, ..Default::default() }.with_probe_photons(SchemeId::Sui, 50.0);
    let r = eval(SchemeId::Sui, &p, ModulationSignal::new(0.01, 0.02));
    let lim = |depth: f64| sui_limit_snr(g1, 50.0, depth);
    assert!(rel(snr(&r, "X_s"), lim(0.01)) < 1e-4);
    assert!(rel(snr(&r, "Y_i"), lim(0.02)) < 1e-4);
}

#[test]
fn sui_noise_is_flat_in_lo_angle_and_touches_vacuum_at_equal_gains() {
    for (g1, g2) in [(1.0, 1.0), (1.5, 1.5), (1.0, 5.0), (2.0, 0.5)] {
        let p = P { g1, g2, alpha_sq: 10.0, ..Default::default() };
        let c = build_circuit(SchemeId::Sui, &p, &ModulationSignal::zero()).unwrap();
        let st = c.output_state(10.0).unwrap();
        let reference = st.homodyne_stats(0, 0.0).unwrap().variance;
        for k in 0..64 {
            let phi = 2.0 * PI * k as f64 / 64.0;
            for m in 0..2 {
                let v = st.homodyne_stats(m, phi).unwrap().variance;
                assert!((v - reference).abs() < 1e-10, "g1={g1} g2={g2} m={m} phi={phi}");
            }
        }
        if g1 == g2 {
            assert!((reference - 1.0).abs() < 1e-10);
        } else {
            assert!(reference > 1.0);
        }
    }
}

#[test]
fn split_three_ways() {
    let (g1, g2) = (1.0, 5.0);
    let p = P { g1, g2, split_angles: [0.3, 1.1, 2.0], ..Default::default() }
        .with_probe_photons(SchemeId::SuiSplit3, 50.0);
    let r = eval(SchemeId::SuiSplit3, &p, ModulationSignal::polar(0.1, 0.7));
    let n0 = oracle_sui_noise(g1, g2);
    let split_db = to_db(2.0 * sq(big(g2)) / (n0 + 1.0));
    let idler_db = to_db(2.0 * sq(g2) / n0);
    let e = |l: &str| r.observable(l).unwrap().enhancement_db;
    assert!((e("X_s1") - split_db).abs() < 1e-10);
    assert!((e("X_s2") - split_db).abs() < 1e-10);
    assert!((e("X_i") - idler_db).abs() < 1e-10);
    assert!((e("X_s1") - 7.2575).abs() < 1e-3);
    assert!((e("X_i") - 7.5557).abs() < 1e-3);

    // Vacuum partition: no entanglement, halves add back to the whole.
    let p0 = P { g1: 0.0, g2: 0.0, split_angles: [0.0, 0.0, 0.0], alpha_sq: 40.0, ..Default::default() };
    let s = ModulationSignal::new(0.02, 0.0);
    let split = eval(SchemeId::SuiSplit3, &p0, s);
    let whole = eval(SchemeId::Sui, &p0, s);
    assert!((split.observable("X_s1").unwrap().noise_power - 1.0).abs() < 1e-12);
    assert!(rel(snr(&split, "X_s1") + snr(&split, "X_s2"), snr(&whole, "X_s")) < 1e-12);
}

#[test]
fn post_detection() {
    let p = P { g1: 1.2, g2: 3.0, k: Some(0.37), alpha_sq: 60.0, ..Default::default() };
    let combo = eval(SchemeId::PostDetection, &p, ModulationSignal::polar(0.01, 0.0));
    let sui = eval(SchemeId::Sui, &p, ModulationSignal::new(0.01, 0.0));
    assert!(rel(snr(&combo, "X_theta"), snr(&sui, "X_s")) < 1e-12);

    let p = P { g1: 1.0, g2: 1e3, ..Default::default() }.with_probe_photons(SchemeId::PostDetection, 50.0);
    let gamma = 0.01;
    let r = eval(SchemeId::PostDetection, &p, ModulationSignal::polar(gamma, FRAC_PI_3));
    assert!(rel(snr(&r, "X_theta"), 2.0 * sq(big(1.0) + 1.0) * 50.0 * gamma * gamma) < 1e-4);
}

#[test]
fn dual_beam() {
    let p = P { g1: 20.0, g2: 20.0, alpha_sq: 1.0, ..Default::default() };
    let r = eval(SchemeId::DualBeam, &p, ModulationSignal::new(0.01, 0.01));
    assert!(snr(&r, "X_i") / snr(&r, "Y_s") < 1e-3);

    let (g1, g2) = (10.0, 1e3);
    let d = 1e-3;
    let db = P { g1, g2, ..Default::default() }.with_probe_photons(SchemeId::DualBeam, 100.0);
    let sui = P { g1, g2, ..Default::default() }.with_probe_photons(SchemeId::Sui, 100.0);
    let r = eval(SchemeId::DualBeam, &db, ModulationSignal::new(d, d));
    let s = eval(SchemeId::Sui, &sui, ModulationSignal::new(d, d));
    assert!(rel(snr(&r, "Y_s"), snr(&s, "X_s") + snr(&s, "Y_i")) < 0.01);
    assert!(rel(snr(&r, "Y_i"), snr(&r, "Y_s")) < 0.01);
    assert!(rel(snr(&r, "Y_s"), dual_beam_limit_snr(g1, 100.0, d)) < 0.01);

    // Phase signal power at the signal port, in seed photons.
    let p = P { g1: 0.7, g2: 2.0, alpha_sq: 9.0, ..Default::default() };
    let r = eval(SchemeId::DualBeam, &p, ModulationSignal::new(0.0, 0.01));
    let expect = 4.0 * sq(big(0.7) * big(2.0) + 0.7 * 2.0) * 9.0 * 1e-4;
    assert!(rel(r.observable("Y_s").unwrap().signal_power, expect) < 1e-12);
    let r = eval(SchemeId::DualBeam, &p, ModulationSignal::new(0.01, 0.0));
    let expect = 4.0 * sq(big(0.7) * 2.0 - 0.7 * big(2.0)) * 9.0 * 1e-4;
    assert!(rel(r.observable("X_i").unwrap().signal_power, expect) < 1e-12);
}

#[test]
fn db_dc() {
    let g = 50.0;
    let d = 1e-3;
    let p = P { g, ..Default::default() }.with_probe_photons(SchemeId::DbDc, 100.0);
    let r = eval(SchemeId::DbDc, &p, ModulationSignal::new(d, d));
    assert!(rel(snr(&r, "Y_sum"), db_dc_limit_snr(g, 100.0, d)) < 1e-3);
    let exact = 2.0 * sq(sq(big(g) + g)) * 100.0 * d * d / (sq(big(g)) + g * g);
    assert!(rel(snr(&r, "Y_sum"), exact) < 1e-12);

    let dc = P { g, ..Default::default() }.with_probe_photons(SchemeId::DenseCoding, 100.0);
    let c = eval(SchemeId::DenseCoding, &dc, ModulationSignal::new(d, d));
    assert!(rel(snr(&c, "X_b1") + snr(&c, "Y_b2"), snr(&r, "Y_sum")) < 1e-3);

    let p = P { g: 0.0, alpha_sq: 100.0, ..Default::default() };
    let r = eval(SchemeId::DbDc, &p, ModulationSignal::new(0.0, d));
    assert!(rel(snr(&r, "Y_sum"), 2.0 * 100.0 * d * d) < 1e-12);
}

#[test]
fn optimum_gain_and_gap() {
    for (g1, expect) in [(1.0, 2.0 * 2f64.sqrt()), (3.0, 6.0 * 10f64.sqrt())] {
        let g2 = optimum_g2(g1, SuiPort::SignalX).unwrap().argmax().unwrap();
        assert!(rel(g2, expect) < 1e-6);
    }
    assert!((optimum_gap_db(50.0_f64).unwrap() - 3.01).abs() < 0.1);
    assert!(matches!(optimum_g2(2.0, SuiPort::IdlerY).unwrap(), OptimumG2::MonotoneIncreasing { .. }));
}

#[test]
fn heisenberg_limit_with_loss() {
    let ratio = |i_ps: f64| {
        let g1 = i_ps.sqrt();
        heisenberg_limit(g1, 0.1, 1.0).unwrap().eps_m / heisenberg_limit(g1, 0.0, 1.0).unwrap().eps_m
    };
    assert!((ratio(4.0) - 1.73).abs() < 0.01);
    assert!((ratio(100.0) - 6.76).abs() < 0.01);
    let m = heisenberg_limit(1e3, 0.0, 1.0).unwrap();
    assert!((m.eps_m * 2.0 * 2f64.sqrt() * m.i_ps - 1.0).abs() < 1e-3);
    assert_eq!(m.eps_m, m.delta_m);
    assert!(heisenberg_limit(2.0, 1.0, 1.0).is_err());
    assert!(heisenberg_limit(2.0, 0.1, 0.0).is_err());
    // Threshold enters as sqrt.
    let a = heisenberg_limit(2.0, 0.1, 1.0).unwrap().eps_m;
    let b = heisenberg_limit(2.0, 0.1, 4.0).unwrap().eps_m;
    assert!(rel(b, 2.0 * a) < 1e-14);
}

#[test]
fn enhancement_factor_over_opa_splitter() {
    let i_ps = 64.0;
    let g1 = 1.3;
    let s = ModulationSignal::new(1e-3, 0.0);
    let sui = P { g1, g2: 1e5, ..Default::default() }.with_probe_photons(SchemeId::Sui, i_ps);
    let opa = P { g: 1e5, ..Default::default() }.with_probe_photons(SchemeId::OpaSplit, i_ps);
    let ratio = snr(&eval(SchemeId::Sui, &sui, s), "X_s") / snr(&eval(SchemeId::OpaSplit, &opa, s), "X_s");
    assert!(rel(ratio, sq(big(g1) + g1)) < 1e-6);
}

#[test]
fn enhancement_does_not_depend_on_encoded_angle() {
    let p = P { g1: 1.0, g2: 5.0, alpha_sq: 25.0, ..Default::default() };
    let reference = eval(SchemeId::Sui, &p, ModulationSignal::new(0.01, 0.01));
    let (ex, ey) = (
        reference.observable("X_s").unwrap().enhancement_db,
        reference.observable("Y_i").unwrap().enhancement_db,
    );
    for k in 1..40 {
        let theta = -PI + 2.0 * PI * k as f64 / 40.0 + 0.01;
        let r = eval(SchemeId::Sui, &p, ModulationSignal::polar(0.01, theta));
        assert!((r.observable("X_s").unwrap().enhancement_db - ex).abs() < 1e-10);
        assert!((r.observable("Y_i").unwrap().enhancement_db - ey).abs() < 1e-10);
    }
}

#[test]
fn loss_robustness_ordering() {
    let i_ps = 100.0;
    let s = ModulationSignal::new(half_depth(i_ps), 0.0);
    let at = |id: SchemeId, p: P, label: &str| snr(&eval(id, &p.with_probe_photons(id, i_ps), s), label);
    let base = P { g1: 1.5, g: 1.5, loss_detect: 0.3, ..Default::default() };
    let high = at(SchemeId::Sui, P { g2: 15.0, ..base }, "X_s");
    let equal = at(SchemeId::Sui, P { g2: 1.5, ..base }, "X_s");
    let dc = at(SchemeId::DenseCoding, base, "X_b1");
    assert!(high > equal && equal > dc, "{high} {equal} {dc}");
}

#[test]
fn resource_sums_are_asymptotic() {
    // At finite gain the dual-beam phase SNR and the SUI sum differ by a
    // fixed gain ratio that only tends to 1.
    let (g1, g2) = (1.0, 5.0);
    let i_ps = 50.0;
    let d = 1e-3;
    let db = P { g1, g2, ..Default::default() }.with_probe_photons(SchemeId::DualBeam, i_ps);
    let sui = P { g1, g2, ..Default::default() }.with_probe_photons(SchemeId::Sui, i_ps);
    let y = snr(&eval(SchemeId::DualBeam, &db, ModulationSignal::new(d, d)), "Y_s");
    let s = eval(SchemeId::Sui, &sui, ModulationSignal::new(d, d));
    let ratio = y / (snr(&s, "X_s") + snr(&s, "Y_i"));
    let expect = sq(big(g1) * big(g2) + g1 * g2) / ((sq(big(g1)) + g1 * g1) * (sq(big(g2)) + g2 * g2));
    assert!(rel(ratio, expect) < 1e-12);
    assert!((ratio - 1.0).abs() > 1e-3);
}

#[test]
fn built_circuits_have_the_expected_layout() {
    let p = P { loss_internal: 0.1, ..Default::default() };
    let s = ModulationSignal::new(0.01, 0.02);
    let c = build_circuit(SchemeId::Sui, &p, &s).unwrap();
    let expect = vec![
        CircuitElement::opa(1.0, 0, 1).unwrap(),
        CircuitElement::loss(0.1, 0).unwrap(),
        CircuitElement::loss(0.1, 1).unwrap(),
        CircuitElement::modulator(0.01, 0.02, 0).unwrap(),
        CircuitElement::phase(PI, 1).unwrap(),
        CircuitElement::opa(5.0, 0, 1).unwrap(),
    ];
    let got: Vec<_> = c.elements().iter().map(|e| e.element).collect();
    assert_eq!(got, expect);
    assert_eq!(c.readout("Y_i").unwrap().terms, vec![QuadratureTerm::unit(1, FRAC_PI_2)]);

    let c = build_circuit(SchemeId::DenseCoding, &P::default(), &s).unwrap();
    assert_eq!(c.elements().last().unwrap().element, CircuitElement::beam_splitter(0.5, 0, 1).unwrap());
}

fn draw() -> impl Strategy<Value = (P, ModulationSignal<f64>)> {
    let depth = (1e-4..1e-2f64, any::<bool>()).prop_map(|(d, neg)| if neg { -d } else { d });
    (
        (10.0..1e4f64, 0.05..5.0f64, 0.05..5.0f64, 0.05..5.0f64),
        (0.0..=1.0f64, 0.0..0.5f64, 0.0..0.5f64, 0.1..3.0f64),
        (depth.clone(), depth),
    )
        .prop_map(|((alpha_sq, g1, g2, g), (t, ld, li, k), (eps, delta))| {
            (
                P {
                    alpha_sq,
                    g1,
                    g2,
                    g,
                    t,
                    loss_detect: ld,
                    loss_internal: li,
                    k: Some(k),
                    ..Default::default()
                },
                ModulationSignal::new(eps, delta),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn analytic_and_numeric_agree((p, s) in draw()) {
        for id in SchemeId::ALL {
            let p = if id.has_internal_arm() { p } else { P { loss_internal: 0.0, ..p } };
            let a = evaluate(id, &p, &s, EvalMode::Analytic).unwrap();
            let n = evaluate(id, &p, &s, EvalMode::Numeric).unwrap();
            prop_assert!(rel(a.i_ps, n.i_ps) < 1e-12);
            for (x, y) in a.observables.iter().zip(&n.observables) {
                prop_assert_eq!(&x.label, &y.label);
                prop_assert!(rel(x.snr, y.snr) < 1e-9, "{} {}: {} vs {}", id, x.label, x.snr, y.snr);
                prop_assert!(rel(x.noise_power, y.noise_power) < 1e-9);
            }
        }
    }

    #[test]
    fn classical_sum_rules_are_exact(i_ps in 1.0..1e4f64, t in 0.0..=1.0f64, g in 0.0..20.0f64, d in 1e-4..1e-2f64) {
        let s = ModulationSignal::new(d, d);
        let bs = eval(SchemeId::BeamSplit, &P { alpha_sq: i_ps, t, ..Default::default() }, s);
        let opa = eval(SchemeId::OpaSplit, &P { alpha_sq: i_ps, g, ..Default::default() }, s);
        let dm = 4.0 * i_ps * d * d;
        prop_assert!(rel(snr(&bs, "Y_b2") + snr(&bs, "X_b1"), dm) < 1e-12);
        prop_assert!(rel(snr(&opa, "X_s") + snr(&opa, "Y_i"), dm) < 1e-12);
    }

    #[test]
    fn enhancement_matches_sql_reference((p, s) in draw()) {
        for id in SchemeId::ALL {
            let p = if id.has_internal_arm() { p } else { P { loss_internal: 0.0, ..p } };
            let r = evaluate(id, &p, &s, EvalMode::Analytic).unwrap();
            for o in &r.observables {
                if o.snr > 0.0 && o.sql > 0.0 {
                    prop_assert!((o.enhancement_db - (o.snr_db - to_db(o.sql))).abs() < 1e-10);
                }
            }
        }
    }
}

use serde::Serialize;

use crate::encoding::ModulationSignal;
use crate::error::{invalid, Error, Result};
use crate::scalar::{big_gain, to_db, Real};

use super::analytic::{gain_difference, sui_noise};
use super::params::{SchemeId, SchemeParams};
use super::{evaluate, EvalMode};

/// SU(1,1) output port whose SNR is optimised over `g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiPort {
    /// Amplitude quadrature of the signal output.
    SignalX,
    /// Phase quadrature of the idler output.
    IdlerY,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OptimumG2<T> {
    /// Interior maximum. `gain` is `SNR / (4 I_ps depth^2)` there.
    Argmax { g2: T, gain: T },
    /// SNR increases with `g2` over the whole bracket; `supremum` is the
    /// `g2 -> infinity` value of the same normalised gain.
    MonotoneIncreasing { supremum: T },
}

impl<T: Real> OptimumG2<T> {
    pub fn argmax(&self) -> Option<T> {
        match self {
            OptimumG2::Argmax { g2, .. } => Some(*g2),
            OptimumG2::MonotoneIncreasing { .. } => None,
        }
    }
}

/// Lossless SUI SNR per `4 I_ps depth^2` at the dark fringe.
pub fn sui_port_gain<T: Real>(g1: T, g2: T, port: SuiPort) -> T {
    let num = match port {
        SuiPort::SignalX => {
            let big2 = big_gain(g2);
            big2 * big2
        }
        SuiPort::IdlerY => g2 * g2,
    };
    num / sui_noise(g1, g2)
}

fn log_gain_slope<T: Real>(g1: T, g2: T, port: SuiPort) -> T {
    let (big1, big2) = (big_gain(g1), big_gain(g2));
    let a = (T::one() + g1 * g1 + g2 * g2) / (big2 * big1 + g1 * g2);
    let b = gain_difference(g1, g2);
    let n0 = a * a + b * b;
    let two = T::lit(2.0);
    let num = match port {
        SuiPort::SignalX => two * g2 / (big2 * big2),
        SuiPort::IdlerY => two / g2,
    };
    num - two * two * a * b / (big2 * n0)
}

/// Maximises the lossless SUI SNR of `port` over `g2` in `[g1, 1e3 g1]`.
pub fn optimum_g2<T: Real>(g1: T, port: SuiPort) -> Result<OptimumG2<T>> {
    if !g1.is_finite() || g1 < T::zero() {
        return Err(invalid(format!("g1 must be finite and >= 0, got {g1}")));
    }
    if g1 == T::zero() {
        return Err(Error::NumericalDegeneracy(
            "g1 = 0: SNR does not depend on entanglement, no optimum in g2".into(),
        ));
    }
    let f = |u: T| sui_port_gain(g1, u.exp(), port);
    let lo = g1.ln();
    let hi = (g1 * T::lit(1e3)).ln();
    let n = 400;
    let step = (hi - lo) / T::lit(n as f64);
    let xs: Vec<T> = (0..=n).map(|k| lo + step * T::lit(k as f64)).collect();
    let ys: Vec<T> = xs.iter().map(|&u| f(u)).collect();
    let best =
        (0..=n).max_by(|&a, &b| ys[a].partial_cmp(&ys[b]).unwrap_or(std::cmp::Ordering::Equal)).unwrap_or(0);
    if best == n && ys.windows(2).all(|w| w[1] >= w[0]) {
        let supremum = match port {
            SuiPort::SignalX | SuiPort::IdlerY => {
                let s = big_gain(g1) + g1;
                s * s / T::lit(2.0)
            }
        };
        return Ok(OptimumG2::MonotoneIncreasing { supremum });
    }
    // The maximum is too flat to refine by comparing values, so bisect on
    // the sign of d ln(gain) / d g2 inside the grid bracket.
    let slope = |g2: T| log_gain_slope(g1, g2, port);
    let mut a = xs[best.saturating_sub(1)];
    let mut b = xs[(best + 1).min(n)];
    if slope(a.exp()) <= T::zero() {
        b = a;
    } else if slope(b.exp()) >= T::zero() {
        a = b;
    }
    for _ in 0..200 {
        let mid = (a + b) / T::lit(2.0);
        if (b - a).abs() <= T::epsilon() * T::lit(4.0) * mid.abs().max(T::one()) {
            break;
        }
        if slope(mid.exp()) > T::zero() {
            a = mid;
        } else {
            b = mid;
        }
    }
    let g2 = ((a + b) / T::lit(2.0)).exp();
    Ok(OptimumG2::Argmax { g2, gain: sui_port_gain(g1, g2, port) })
}

/// dB advantage of the optimal `g2` over `g2 = g1` on the signal port.
pub fn optimum_gap_db<T: Real>(g1: T) -> Result<T> {
    let opt = optimum_g2(g1, SuiPort::SignalX)?;
    let best = match opt {
        OptimumG2::Argmax { gain, .. } => gain,
        OptimumG2::MonotoneIncreasing { supremum } => supremum,
    };
    Ok(to_db(best) - to_db(sui_port_gain(g1, g1, SuiPort::SignalX)))
}

/// Minimum detectable modulation depths at a given SNR threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimumDetectable<T> {
    pub eps_m: T,
    pub delta_m: T,
    /// Probe photon number `g1^2` (unseeded first amplifier).
    pub i_ps: T,
}

fn check_limit_args<T: Real>(g1: T, loss: T, threshold: T) -> Result<()> {
    if !(g1 > T::zero()) || !g1.is_finite() {
        return Err(invalid(format!("g1 must be > 0, got {g1}")));
    }
    if !(loss >= T::zero() && loss < T::one()) {
        return Err(invalid(format!("internal loss must be in [0,1), got {loss}")));
    }
    if !(threshold > T::zero()) || !threshold.is_finite() {
        return Err(invalid(format!("SNR threshold must be > 0, got {threshold}")));
    }
    Ok(())
}

/// Unseeded SUI in the `g2 -> infinity` limit with internal loss `loss`:
/// the depth at which SNR reaches `threshold`.
pub fn heisenberg_limit<T: Real>(g1: T, loss: T, threshold: T) -> Result<MinimumDetectable<T>> {
    check_limit_args(g1, loss, threshold)?;
    let two = T::lit(2.0);
    let i_ps = g1 * g1;
    let s = big_gain(g1) + g1;
    let per_unit = T::one() / (two * i_ps * s * s) + loss / (two * (T::one() - loss) * i_ps);
    let m = (threshold * per_unit).sqrt();
    Ok(MinimumDetectable { eps_m: m, delta_m: m, i_ps })
}

/// Same quantity from the Gaussian circuit at finite `g2`.
///
/// The interferometer is run with a weak seed normalised to `I_ps = g1^2` and
/// the SNR per unit depth squared is inverted.
pub fn heisenberg_limit_circuit<T: Real>(
    g1: T,
    g2: T,
    loss: T,
    threshold: T,
) -> Result<MinimumDetectable<T>> {
    check_limit_args(g1, loss, threshold)?;
    let i_ps = g1 * g1;
    let base = SchemeParams { g1, g2, loss_internal: loss, ..SchemeParams::default() };
    let params = base.with_probe_photons(SchemeId::Sui, i_ps);
    let d = T::lit(1e-3);
    let depth_for = |signal: ModulationSignal<T>, label: &str| -> Result<T> {
        let report = evaluate(SchemeId::Sui, &params, &signal, EvalMode::Numeric)?;
        let obs = report.observable(label).ok_or_else(|| invalid(format!("missing readout {label}")))?;
        let per_unit = obs.snr / (d * d);
        Ok((threshold / per_unit).sqrt())
    };
    Ok(MinimumDetectable {
        eps_m: depth_for(ModulationSignal::new(d, T::zero()), "X_s")?,
        delta_m: depth_for(ModulationSignal::new(T::zero(), d), "Y_i")?,
        i_ps,
    })
}

/// Depth at which the joint-measurement SQL reaches `threshold`.
pub fn sql_min_depth<T: Real>(i_ps: T, threshold: T) -> T {
    (threshold / (T::lit(2.0) * i_ps)).sqrt()
}

/// `g2 -> infinity` SUI SNR, `2 (G1 + g1)^2 I_ps depth^2`.
pub fn sui_limit_snr<T: Real>(g1: T, i_ps: T, depth: T) -> T {
    let s = big_gain(g1) + g1;
    T::lit(2.0) * s * s * i_ps * depth * depth
}

/// High-gain dual-beam phase SNR, `4 (G1 + g1)^2 I_ps delta^2`.
pub fn dual_beam_limit_snr<T: Real>(g1: T, i_ps: T, delta: T) -> T {
    let s = big_gain(g1) + g1;
    T::lit(4.0) * s * s * i_ps * delta * delta
}

/// High-gain DB-DC phase SNR, `4 (G + g)^2 I_ps delta^2`.
pub fn db_dc_limit_snr<T: Real>(g: T, i_ps: T, delta: T) -> T {
    let s = big_gain(g) + g;
    T::lit(4.0) * s * s * i_ps * delta * delta
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimum_matches_closed_form_argmax() {
        for g1 in [0.3_f64, 1.0, 3.0, 10.0] {
            let g2 = optimum_g2(g1, SuiPort::SignalX).unwrap().argmax().unwrap();
            let expect = 2.0 * g1 * (1.0 + g1 * g1).sqrt();
            assert!((g2 / expect - 1.0).abs() < 1e-6, "g1={g1}: {g2} vs {expect}");
        }
    }

    #[test]
    fn idler_port_is_monotone() {
        match optimum_g2(1.0_f64, SuiPort::IdlerY).unwrap() {
            OptimumG2::MonotoneIncreasing { supremum } => {
                let s = 2.0_f64.sqrt() + 1.0;
                assert!((supremum - s * s / 2.0).abs() < 1e-12);
            }
            other => panic!("expected monotone, got {other:?}"),
        }
        assert!(matches!(optimum_g2(0.0_f64, SuiPort::SignalX), Err(Error::NumericalDegeneracy(_))));
    }

    #[test]
    fn limit_reduces_to_inverse_photon_number() {
        let m = heisenberg_limit(1e3_f64, 0.0, 1.0).unwrap();
        assert!((m.eps_m * 2.0 * 2.0_f64.sqrt() * m.i_ps - 1.0).abs() < 1e-3);
        assert!(heisenberg_limit(1.0_f64, 1.0, 1.0).is_err());
    }

    #[test]
    fn circuit_route_converges_to_limit() {
        let exact = heisenberg_limit(2.0_f64, 0.1, 1.0).unwrap();
        let num = heisenberg_limit_circuit(2.0_f64, 1e3, 0.1, 1.0).unwrap();
        assert!((num.eps_m / exact.eps_m - 1.0).abs() < 1e-3);
        assert!((num.delta_m / exact.delta_m - 1.0).abs() < 1e-3);
    }
}

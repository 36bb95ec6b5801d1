use crate::circuit::ReadoutEvaluation;
use crate::encoding::{ModulationSignal, SnrResult};
use crate::error::{invalid, Result};
use crate::scalar::{big_gain, Real};

use super::params::{SchemeId, SchemeParams};

/// Output noise of the lossless SU(1,1) interferometer at the dark fringe,
/// per quadrature and per port, in vacuum units.
pub fn sui_noise<T: Real>(g1: T, g2: T) -> T {
    let (big1, big2) = (big_gain(g1), big_gain(g2));
    // G2 G1 - g1 g2 and G1 g2 - G2 g1 without cancellation.
    let a = (T::one() + g1 * g1 + g2 * g2) / (big2 * big1 + g1 * g2);
    let b = gain_difference(g1, g2);
    a * a + b * b
}

/// `G1 g2 - g1 G2`, computed as `(g2^2 - g1^2) / (G1 g2 + g1 G2)`.
pub(crate) fn gain_difference<T: Real>(g1: T, g2: T) -> T {
    let den = big_gain(g1) * g2 + g1 * big_gain(g2);
    if den == T::zero() {
        return T::zero();
    }
    (g2 - g1) * (g2 + g1) / den
}

fn obs<T: Real>(label: &str, signal_power: T, noise_power: T, depth: T) -> Result<ReadoutEvaluation<T>> {
    Ok(ReadoutEvaluation { label: label.to_owned(), snr: SnrResult::new(signal_power, noise_power)?, depth })
}

fn require_dark_fringe<T: Real>(id: SchemeId, p: &SchemeParams<T>) -> Result<()> {
    if (p.phase - T::PI()).abs() > T::lit(1e-12) {
        return Err(invalid(format!(
            "closed form for '{id}' assumes phase = pi; use the circuit evaluation"
        )));
    }
    Ok(())
}

/// Closed-form readouts and probe photon number of a scheme.
pub fn closed_form<T: Real>(
    id: SchemeId,
    p: &SchemeParams<T>,
    signal: &ModulationSignal<T>,
) -> Result<(T, Vec<ReadoutEvaluation<T>>)> {
    p.validate_for(id)?;
    let one = T::one();
    let four = T::lit(4.0);
    let (eps, delta) = (signal.eps(), signal.delta());
    let (de, dd) = (eps.abs(), delta.abs());
    let eta_d = one - p.loss_detect;
    let eta_i = one - p.loss_internal;
    let l_d = p.loss_detect;
    let i_ps = id.probe_gain(p) * p.alpha_sq;
    let a = p.alpha_sq;

    // Noise of one SU(1,1) output port before and after detection loss.
    let sui_internal_noise = || {
        let (big2, g2) = (big_gain(p.g2), p.g2);
        eta_i * sui_noise(p.g1, p.g2) + p.loss_internal * (big2 * big2 + g2 * g2)
    };
    let sui_port_noise = || eta_d * sui_internal_noise() + l_d;

    let out = match id {
        SchemeId::Direct => vec![
            obs("X", four * eta_d * i_ps * eps * eps, one, de)?,
            obs("Y", four * eta_d * i_ps * delta * delta, one, dd)?,
        ],
        SchemeId::BeamSplit => {
            let r = one - p.t;
            vec![
                obs("Y_b2", four * p.t * eta_d * i_ps * delta * delta, one, dd)?,
                obs("X_b1", four * r * eta_d * i_ps * eps * eps, one, de)?,
            ]
        }
        SchemeId::OpaSplit => {
            let big = big_gain(p.g);
            let noise = eta_d * (big * big + p.g * p.g) + l_d;
            vec![
                obs("X_s", four * eta_d * big * big * i_ps * eps * eps, noise, de)?,
                obs("Y_i", four * eta_d * p.g * p.g * i_ps * delta * delta, noise, dd)?,
            ]
        }
        SchemeId::DenseCoding => {
            let big = big_gain(p.g);
            let epr = T::one() / ((big + p.g) * (big + p.g));
            let noise = eta_d * (eta_i * epr + p.loss_internal) + l_d;
            let two = T::lit(2.0);
            vec![
                obs("X_b1", two * eta_i * eta_d * i_ps * eps * eps, noise, de)?,
                obs("Y_b2", two * eta_i * eta_d * i_ps * delta * delta, noise, dd)?,
            ]
        }
        SchemeId::Sui => {
            require_dark_fringe(id, p)?;
            let big2 = big_gain(p.g2);
            let gain = four * eta_d * eta_i * i_ps;
            let noise = sui_port_noise();
            vec![
                obs("X_s", gain * big2 * big2 * eps * eps, noise, de)?,
                obs("Y_i", gain * p.g2 * p.g2 * delta * delta, noise, dd)?,
            ]
        }
        SchemeId::SuiSplit3 => {
            require_dark_fringe(id, p)?;
            let big2 = big_gain(p.g2);
            let gain = four * eta_d * eta_i * i_ps;
            let noise = sui_port_noise();
            let half = T::lit(0.5);
            let split_noise = eta_d * half * (sui_internal_noise() + one) + l_d;
            let [t1, t2, t3] = p.split_angles;
            let (x1, x2, x3) = (signal.component(t1), signal.component(t2), signal.component(t3));
            vec![
                obs("X_s1", half * gain * big2 * big2 * x1 * x1, split_noise, x1.abs())?,
                obs("X_i", gain * p.g2 * p.g2 * x2 * x2, noise, x2.abs())?,
                obs("X_s2", half * gain * big2 * big2 * x3 * x3, split_noise, x3.abs())?,
            ]
        }
        SchemeId::PostDetection => {
            require_dark_fringe(id, p)?;
            let k = p.k_or_default()?;
            let big2 = big_gain(p.g2);
            let theta = signal.angle();
            let (c, s) = (theta.cos(), theta.sin());
            let ca = big2 * c;
            let cb = k * p.g2 * s;
            let amp = ca * eps + cb * delta;
            let signal_power = four * eta_d * eta_i * i_ps * amp * amp;
            let noise = sui_port_noise() * (c * c + k * k * s * s);
            let grad = ca.hypot(cb);
            let depth = if grad > T::zero() { amp.abs() / grad } else { T::zero() };
            vec![obs("X_theta", signal_power, noise, depth)?]
        }
        SchemeId::DualBeam => {
            require_dark_fringe(id, p)?;
            let (big1, big2) = (big_gain(p.g1), big_gain(p.g2));
            let (g1, g2) = (p.g1, p.g2);
            let gain = four * eta_d * eta_i * a;
            let noise = sui_port_noise();
            let ys = big1 * big2 + g1 * g2;
            let xi = gain_difference(g1, g2);
            let yi = big2 * g1 + g2 * big1;
            vec![
                obs("Y_s", gain * ys * ys * delta * delta, noise, dd)?,
                obs("X_i", gain * xi * xi * eps * eps, noise, de)?,
                obs("Y_i", gain * yi * yi * delta * delta, noise, dd)?,
            ]
        }
        SchemeId::DbDc => {
            let big = big_gain(p.g);
            let two = T::lit(2.0);
            let plus = big + p.g;
            let minus = T::one() / plus;
            let noise = two * eta_d * minus * minus + two * l_d;
            vec![
                obs("Y_sum", four * eta_d * plus * plus * a * delta * delta, noise, dd)?,
                obs("X_diff", four * eta_d * minus * minus * a * eps * eps, noise, de)?,
            ]
        }
    };
    Ok((i_ps, out))
}

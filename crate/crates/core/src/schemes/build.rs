use crate::circuit::Circuit;
use crate::encoding::ModulationSignal;
use crate::error::Result;
use crate::gaussian::{CircuitElement as E, QuadratureTerm as Q};
use crate::scalar::Real;

use super::params::{SchemeId, SchemeParams};

/// Gaussian circuit realising a scheme, with modulators set to `signal`.
///
/// Readout labels match the observables of the closed-form evaluation.
pub fn build_circuit<T: Real>(
    id: SchemeId,
    params: &SchemeParams<T>,
    signal: &ModulationSignal<T>,
) -> Result<Circuit<T>> {
    params.validate_for(id)?;
    let (eps, delta) = (signal.eps(), signal.delta());
    let half_pi = T::FRAC_PI_2();
    let zero = T::zero();
    let c = match id {
        SchemeId::Direct => {
            let mut c = Circuit::new(["p"])?;
            c.push(None, E::modulator(eps, delta, 0)?)?;
            detection_loss(&mut c, params, &[0])?;
            c.add_readout("X", vec![Q::unit(0, zero)])?;
            c.add_readout("Y", vec![Q::unit(0, half_pi)])?;
            c
        }
        SchemeId::BeamSplit => {
            let mut c = Circuit::new(["p", "v"])?;
            c.push(None, E::modulator(eps, delta, 0)?)?;
            c.push(Some("BS"), E::beam_splitter(params.t, 0, 1)?)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("Y_b2", vec![Q::unit(0, half_pi)])?;
            c.add_readout("X_b1", vec![Q::unit(1, zero)])?;
            c
        }
        SchemeId::OpaSplit => {
            let mut c = Circuit::new(["s", "i"])?;
            c.push(None, E::modulator(eps, delta, 0)?)?;
            c.push(Some("OPA"), E::opa(params.g, 0, 1)?)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("X_s", vec![Q::unit(0, zero)])?;
            c.add_readout("Y_i", vec![Q::unit(1, half_pi)])?;
            c
        }
        SchemeId::DenseCoding => {
            let mut c = Circuit::new(["s", "i"])?;
            c.push(Some("OPA"), E::opa(params.g, 0, 1)?)?;
            if params.loss_internal > zero {
                c.push(None, E::loss(params.loss_internal, 0)?)?;
                c.push(None, E::loss(params.loss_internal, 1)?)?;
            }
            c.push(None, E::modulator(eps, delta, 0)?)?;
            c.push(Some("BS"), E::beam_splitter(T::lit(0.5), 0, 1)?)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("X_b1", vec![Q::unit(0, zero)])?;
            c.add_readout("Y_b2", vec![Q::unit(1, half_pi)])?;
            c
        }
        SchemeId::Sui => {
            let mut c = sui_core(params, signal, &["s", "i"], false)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("X_s", vec![Q::unit(0, zero)])?;
            c.add_readout("Y_i", vec![Q::unit(1, half_pi)])?;
            c
        }
        SchemeId::SuiSplit3 => {
            let mut c = sui_core(params, signal, &["s", "i", "v"], false)?;
            c.push(Some("BS"), E::beam_splitter(T::lit(0.5), 0, 2)?)?;
            detection_loss(&mut c, params, &[0, 1, 2])?;
            let [t1, t2, t3] = params.split_angles;
            c.add_readout("X_s1", vec![Q::unit(0, -t1)])?;
            c.add_readout("X_i", vec![Q::unit(1, t2)])?;
            c.add_readout("X_s2", vec![Q::unit(2, -t3)])?;
            c
        }
        SchemeId::PostDetection => {
            let k = params.k_or_default()?;
            let theta = signal.angle();
            let mut c = sui_core(params, signal, &["s", "i"], false)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout(
                "X_theta",
                vec![Q::new(0, zero, theta.cos()), Q::new(1, half_pi, k * theta.sin())],
            )?;
            c
        }
        SchemeId::DualBeam => {
            let mut c = sui_core(params, signal, &["s", "i"], true)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("Y_s", vec![Q::unit(0, half_pi)])?;
            c.add_readout("X_i", vec![Q::unit(1, zero)])?;
            c.add_readout("Y_i", vec![Q::unit(1, half_pi)])?;
            c
        }
        SchemeId::DbDc => {
            let mut c = Circuit::new(["s", "i"])?;
            c.push(Some("OPA"), E::opa(params.g, 0, 1)?)?;
            c.push(None, E::modulator(eps, delta, 0)?)?;
            c.push(None, E::modulator(eps, delta, 1)?)?;
            detection_loss(&mut c, params, &[0, 1])?;
            c.add_readout("Y_sum", vec![Q::unit(0, half_pi), Q::unit(1, half_pi)])?;
            c.add_readout("X_diff", vec![Q::unit(0, zero), Q::new(1, zero, -T::one())])?;
            c
        }
    };
    Ok(c)
}

/// OPA1, internal loss on both arms, modulator(s), idler phase, OPA2.
fn sui_core<T: Real>(
    params: &SchemeParams<T>,
    signal: &ModulationSignal<T>,
    modes: &[&str],
    dual: bool,
) -> Result<Circuit<T>> {
    let (eps, delta) = (signal.eps(), signal.delta());
    let mut c = Circuit::new(modes.iter().copied())?;
    c.push(Some("OPA1"), E::opa(params.g1, 0, 1)?)?;
    c.push(None, E::loss(params.loss_internal, 0)?)?;
    c.push(None, E::loss(params.loss_internal, 1)?)?;
    c.push(None, E::modulator(eps, delta, 0)?)?;
    if dual {
        c.push(None, E::modulator(eps, delta, 1)?)?;
    }
    c.push(None, E::phase(params.phase, 1)?)?;
    c.push(Some("OPA2"), E::opa(params.g2, 0, 1)?)?;
    Ok(c)
}

fn detection_loss<T: Real>(c: &mut Circuit<T>, params: &SchemeParams<T>, modes: &[usize]) -> Result<()> {
    if params.loss_detect > T::zero() {
        for &m in modes {
            c.push(None, E::loss(params.loss_detect, m)?)?;
        }
    }
    Ok(())
}

//! Modulation signals, SNR extraction, and the post-detection estimator.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{MeasurementStats, QuadratureTerm};
use crate::scalar::{to_db, Real};

/// Small-signal modulation carried by the probe.
///
/// `X_m` is the amplitude-modulation depth `eps` and `Y_m` the
/// phase-modulation depth `delta`; the polar form encodes
/// `X_m(theta) = X_m cos(theta) + Y_m sin(theta) = gamma` along `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ModulationSignal<T> {
    Cartesian { x_m: T, y_m: T },
    Polar { depth: T, angle: T },
}

impl<T: Real> ModulationSignal<T> {
    pub fn new(eps: T, delta: T) -> Self {
        ModulationSignal::Cartesian { x_m: eps, y_m: delta }
    }

    pub fn polar(depth: T, angle: T) -> Self {
        ModulationSignal::Polar { depth, angle }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Amplitude-modulation depth.
    pub fn eps(&self) -> T {
        match *self {
            ModulationSignal::Cartesian { x_m, .. } => x_m,
            ModulationSignal::Polar { depth, angle } => depth * angle.cos(),
        }
    }

    /// Phase-modulation depth.
    pub fn delta(&self) -> T {
        match *self {
            ModulationSignal::Cartesian { y_m, .. } => y_m,
            ModulationSignal::Polar { depth, angle } => depth * angle.sin(),
        }
    }

    pub fn depth(&self) -> T {
        match *self {
            ModulationSignal::Cartesian { x_m, y_m } => x_m.hypot(y_m),
            ModulationSignal::Polar { depth, .. } => depth,
        }
    }

    pub fn angle(&self) -> T {
        match *self {
            ModulationSignal::Cartesian { x_m, y_m } => y_m.atan2(x_m),
            ModulationSignal::Polar { angle, .. } => angle,
        }
    }

    /// Quadrature component `X_m(theta)`.
    pub fn component(&self, theta: T) -> T {
        self.eps() * theta.cos() + self.delta() * theta.sin()
    }

    pub fn to_cartesian(&self) -> Self {
        Self::new(self.eps(), self.delta())
    }

    pub fn to_polar(&self) -> Self {
        Self::polar(self.depth(), self.angle())
    }

    pub fn is_zero(&self) -> bool {
        self.eps() == T::zero() && self.delta() == T::zero()
    }
}

/// Readout angle at which a directly detected probe shows the component
/// `X_m(theta)`.
///
/// The modulator maps `alpha -> alpha (1 - eps + j delta)`, so the mean shift
/// of `X(phi)` is `2|alpha| (-eps cos(phi) + delta sin(phi))`, which is
/// `-2|alpha| X_m(-phi)`. Decoding `X_m(theta)` therefore needs `phi = -theta`.
pub fn direct_decoding_angle<T: Real>(theta: T) -> T {
    -theta
}

/// Signal power, noise power and their ratio for one readout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrResult<T> {
    pub signal_power: T,
    pub noise_power: T,
    pub snr: T,
    pub snr_db: T,
}

impl<T: Real> SnrResult<T> {
    pub fn new(signal_power: T, noise_power: T) -> Result<Self> {
        if !(noise_power > T::zero()) || !noise_power.is_finite() {
            return Err(Error::NumericalDegeneracy(format!(
                "noise power must be positive and finite, got {noise_power}"
            )));
        }
        if !(signal_power >= T::zero()) {
            return Err(Error::NumericalDegeneracy(format!(
                "signal power must be non-negative, got {signal_power}"
            )));
        }
        let snr = signal_power / noise_power;
        Ok(Self { signal_power, noise_power, snr, snr_db: to_db(snr) })
    }

    /// dB value of `self.snr / other.snr`.
    pub fn ratio_db(&self, other: &SnrResult<T>) -> T {
        to_db(self.snr / other.snr)
    }
}

/// SNR of a readout whose statistics depend on the encoded signal.
///
/// The signal is the mean shift relative to the zero-modulation run, so the
/// carrier does not count as signal; the noise is the zero-signal variance.
pub fn extract_snr<T, F>(circuit_eval: F, signal: &ModulationSignal<T>) -> Result<SnrResult<T>>
where
    T: Real,
    F: Fn(&ModulationSignal<T>) -> Result<MeasurementStats<T>>,
{
    if !signal.eps().is_finite() || !signal.delta().is_finite() {
        return Err(Error::InvalidArgument("signal depths must be finite".into()));
    }
    let off = circuit_eval(&ModulationSignal::zero())?;
    if signal.is_zero() {
        return SnrResult::new(T::zero(), off.variance);
    }
    let on = circuit_eval(signal)?;
    let shift = on.mean - off.mean;
    SnrResult::new(shift * shift, off.variance)
}

/// Readout plan for `X_theta = cos(theta) X_s + k sin(theta) Y_i`.
pub fn combined_estimator<T: Real>(
    theta: T,
    k: T,
    signal_mode: usize,
    idler_mode: usize,
) -> Vec<QuadratureTerm<T>> {
    vec![
        QuadratureTerm::new(signal_mode, T::zero(), theta.cos()),
        QuadratureTerm::new(idler_mode, T::FRAC_PI_2(), k * theta.sin()),
    ]
}

/// Joint-measurement standard quantum limit `2 I_ps depth^2`.
pub fn sql_joint<T: Real>(i_ps: T, depth: T) -> T {
    T::lit(2.0) * i_ps * depth * depth
}

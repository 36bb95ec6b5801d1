//! Network elements acting on Gaussian states.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::Mat;
use crate::scalar::{big_gain, Real};

fn check_finite<T: Real>(name: &str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite, got {v}")))
    }
}

fn check_unit_interval<T: Real>(name: &str, v: T) -> Result<()> {
    check_finite(name, v)?;
    if v < T::zero() || v > T::one() {
        return Err(invalid(format!("{name} out of [0,1]: {v}")));
    }
    Ok(())
}

fn check_distinct(a: usize, b: usize) -> Result<()> {
    if a == b {
        return Err(invalid(format!("two-mode element needs distinct modes, got {a} twice")));
    }
    Ok(())
}

/// Lossless beam splitter with transmissivity `t`.
///
/// Acts identically on both quadratures:
/// `a' = sqrt(T) a - sqrt(R) b`, `b' = sqrt(R) a + sqrt(T) b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamSplitter<T> {
    t: T,
    a: usize,
    b: usize,
}

impl<T: Real> BeamSplitter<T> {
    pub fn new(transmissivity: T, a: usize, b: usize) -> Result<Self> {
        check_unit_interval("transmissivity", transmissivity)?;
        check_distinct(a, b)?;
        Ok(Self { t: transmissivity, a, b })
    }

    pub fn transmissivity(&self) -> T {
        self.t
    }

    pub fn reflectivity(&self) -> T {
        T::one() - self.t
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

/// Non-degenerate parametric amplifier `a_s' = G a_s + g a_i^dag`,
/// parameterized by the amplitude gain `g` alone so that `G^2 - g^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeSqueezer<T> {
    g: T,
    signal: usize,
    idler: usize,
}

impl<T: Real> TwoModeSqueezer<T> {
    pub fn new(g: T, signal: usize, idler: usize) -> Result<Self> {
        check_finite("gain g", g)?;
        if g < T::zero() {
            return Err(invalid(format!("gain g must be >= 0, got {g}")));
        }
        check_distinct(signal, idler)?;
        Ok(Self { g, signal, idler })
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn big_g(&self) -> T {
        big_gain(self.g)
    }

    pub fn modes(&self) -> (usize, usize) {
        (self.signal, self.idler)
    }
}

/// Phase shift `a -> a e^{j phi}` on one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseShift<T> {
    angle: T,
    mode: usize,
}

impl<T: Real> PhaseShift<T> {
    pub fn new(angle: T, mode: usize) -> Result<Self> {
        check_finite("phase angle", angle)?;
        Ok(Self { angle, mode })
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn mode(&self) -> usize {
        self.mode
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SymplecticElement<T> {
    BeamSplitter(BeamSplitter<T>),
    TwoModeSqueezer(TwoModeSqueezer<T>),
    PhaseShift(PhaseShift<T>),
}

impl<T: Real> SymplecticElement<T> {
    /// Full `2n x 2n` symplectic matrix in `(X1, Y1, X2, Y2, ...)` ordering.
    pub fn matrix(&self, n_modes: usize) -> Result<Mat<T>> {
        self.check_modes(n_modes)?;
        let mut s = Mat::identity(2 * n_modes);
        match *self {
            SymplecticElement::BeamSplitter(bs) => {
                let st = bs.t.sqrt();
                let sr = bs.reflectivity().sqrt();
                for q in 0..2 {
                    let (ia, ib) = (2 * bs.a + q, 2 * bs.b + q);
                    s[(ia, ia)] = st;
                    s[(ia, ib)] = -sr;
                    s[(ib, ia)] = sr;
                    s[(ib, ib)] = st;
                }
            }
            SymplecticElement::TwoModeSqueezer(opa) => {
                let (big, g) = (opa.big_g(), opa.g);
                let (xs, ys) = (2 * opa.signal, 2 * opa.signal + 1);
                let (xi, yi) = (2 * opa.idler, 2 * opa.idler + 1);
                s[(xs, xs)] = big;
                s[(xs, xi)] = g;
                s[(ys, ys)] = big;
                s[(ys, yi)] = -g;
                s[(xi, xi)] = big;
                s[(xi, xs)] = g;
                s[(yi, yi)] = big;
                s[(yi, ys)] = -g;
            }
            SymplecticElement::PhaseShift(ps) => {
                let (sin, cos) = ps.angle.sin_cos();
                let (x, y) = (2 * ps.mode, 2 * ps.mode + 1);
                s[(x, x)] = cos;
                s[(x, y)] = -sin;
                s[(y, x)] = sin;
                s[(y, y)] = cos;
            }
        }
        Ok(s)
    }

    pub fn modes(&self) -> Vec<usize> {
        match self {
            SymplecticElement::BeamSplitter(bs) => vec![bs.a, bs.b],
            SymplecticElement::TwoModeSqueezer(opa) => vec![opa.signal, opa.idler],
            SymplecticElement::PhaseShift(ps) => vec![ps.mode],
        }
    }

    fn check_modes(&self, n_modes: usize) -> Result<()> {
        check_mode_list(&self.modes(), n_modes)
    }
}

pub(crate) fn check_mode_list(modes: &[usize], n_modes: usize) -> Result<()> {
    match modes.iter().find(|&&m| m >= n_modes) {
        Some(m) => Err(invalid(format!("mode {m} out of range for {n_modes} mode(s)"))),
        None => Ok(()),
    }
}

/// Pure-loss channel: a beam splitter of transmissivity `1 - L` coupling in vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossChannel<T> {
    loss: T,
    mode: usize,
}

impl<T: Real> LossChannel<T> {
    pub fn new(loss: T, mode: usize) -> Result<Self> {
        check_unit_interval("loss", loss)?;
        Ok(Self { loss, mode })
    }

    pub fn loss(&self) -> T {
        self.loss
    }

    pub fn mode(&self) -> usize {
        self.mode
    }
}

/// Small-signal amplitude/phase modulator, `alpha -> alpha (1 + j delta - eps)`.
///
/// Acts on the mean field only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Modulator<T> {
    eps: T,
    delta: T,
    mode: usize,
}

impl<T: Real> Modulator<T> {
    pub fn new(eps: T, delta: T, mode: usize) -> Result<Self> {
        check_finite("eps", eps)?;
        check_finite("delta", delta)?;
        Ok(Self { eps, delta, mode })
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn mode(&self) -> usize {
        self.mode
    }

    pub(crate) fn with_depths(self, eps: T, delta: T) -> Self {
        Self { eps, delta, ..self }
    }
}

/// Anything that can sit in a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CircuitElement<T> {
    Symplectic(SymplecticElement<T>),
    Loss(LossChannel<T>),
    Modulator(Modulator<T>),
}

impl<T: Real> CircuitElement<T> {
    pub fn beam_splitter(t: T, a: usize, b: usize) -> Result<Self> {
        Ok(BeamSplitter::new(t, a, b)?.into())
    }

    pub fn opa(g: T, signal: usize, idler: usize) -> Result<Self> {
        Ok(TwoModeSqueezer::new(g, signal, idler)?.into())
    }

    pub fn phase(angle: T, mode: usize) -> Result<Self> {
        Ok(PhaseShift::new(angle, mode)?.into())
    }

    pub fn loss(loss: T, mode: usize) -> Result<Self> {
        Ok(LossChannel::new(loss, mode)?.into())
    }

    pub fn modulator(eps: T, delta: T, mode: usize) -> Result<Self> {
        Ok(Modulator::new(eps, delta, mode)?.into())
    }

    pub fn modes(&self) -> Vec<usize> {
        match self {
            CircuitElement::Symplectic(s) => s.modes(),
            CircuitElement::Loss(l) => vec![l.mode],
            CircuitElement::Modulator(m) => vec![m.mode],
        }
    }
}

impl<T> From<SymplecticElement<T>> for CircuitElement<T> {
    fn from(s: SymplecticElement<T>) -> Self {
        CircuitElement::Symplectic(s)
    }
}

impl<T> From<BeamSplitter<T>> for CircuitElement<T> {
    fn from(s: BeamSplitter<T>) -> Self {
        CircuitElement::Symplectic(SymplecticElement::BeamSplitter(s))
    }
}

impl<T> From<TwoModeSqueezer<T>> for CircuitElement<T> {
    fn from(s: TwoModeSqueezer<T>) -> Self {
        CircuitElement::Symplectic(SymplecticElement::TwoModeSqueezer(s))
    }
}

impl<T> From<PhaseShift<T>> for CircuitElement<T> {
    fn from(s: PhaseShift<T>) -> Self {
        CircuitElement::Symplectic(SymplecticElement::PhaseShift(s))
    }
}

impl<T> From<LossChannel<T>> for CircuitElement<T> {
    fn from(l: LossChannel<T>) -> Self {
        CircuitElement::Loss(l)
    }
}

impl<T> From<Modulator<T>> for CircuitElement<T> {
    fn from(m: Modulator<T>) -> Self {
        CircuitElement::Modulator(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_domain_parameters() {
        assert!(BeamSplitter::new(1.2_f64, 0, 1).is_err());
        assert!(BeamSplitter::new(-0.1_f64, 0, 1).is_err());
        assert!(BeamSplitter::new(0.5_f64, 1, 1).is_err());
        assert!(TwoModeSqueezer::new(-1e-9_f64, 0, 1).is_err());
        assert!(LossChannel::new(1.5_f64, 0).is_err());
        assert!(LossChannel::new(f64::NAN, 0).is_err());
        assert!(PhaseShift::new(f64::INFINITY, 0).is_err());
    }

    #[test]
    fn reflectivity_complements_transmissivity() {
        let bs = BeamSplitter::new(0.3_f64, 0, 1).unwrap();
        assert_eq!(bs.transmissivity() + bs.reflectivity(), 1.0);
    }

    #[test]
    fn squeezer_gain_identity() {
        let opa = TwoModeSqueezer::new(2.5_f64, 0, 1).unwrap();
        let (big, g) = (opa.big_g(), opa.g());
        assert!((big * big - g * g - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matrix_rejects_mode_out_of_range() {
        let s = SymplecticElement::PhaseShift(PhaseShift::new(0.1_f64, 3).unwrap());
        assert!(s.matrix(2).is_err());
    }
}

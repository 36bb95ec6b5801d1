//! Ordered element lists with a homodyne readout plan.

use num_complex::Complex;
use serde::Serialize;

use crate::encoding::{extract_snr, ModulationSignal, SnrResult};
use crate::error::{invalid, Result};
use crate::gaussian::{CircuitElement, GaussianState, MeasurementStats, Modulator, QuadratureTerm};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlacedElement<T> {
    pub label: Option<String>,
    pub element: CircuitElement<T>,
}

/// A named photocurrent combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Readout<T> {
    pub label: String,
    pub terms: Vec<QuadratureTerm<T>>,
}

/// An optical network: named modes, elements in propagation order, readouts.
///
/// The input is a real coherent seed on mode 0 and vacuum everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit<T> {
    modes: Vec<String>,
    elements: Vec<PlacedElement<T>>,
    readouts: Vec<Readout<T>>,
}

/// SNR of one readout plus the modulation depth it responds to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReadoutEvaluation<T> {
    pub label: String,
    pub snr: SnrResult<T>,
    /// Projection of the encoded signal on the readout's sensitivity axis in
    /// the `(eps, delta)` plane.
    pub depth: T,
}

impl<T: Real> Circuit<T> {
    pub fn new<S: Into<String>>(modes: impl IntoIterator<Item = S>) -> Result<Self> {
        let modes: Vec<String> = modes.into_iter().map(Into::into).collect();
        if modes.is_empty() {
            return Err(invalid("circuit needs at least one mode"));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(invalid(format!("duplicate mode name '{m}'")));
            }
        }
        Ok(Self { modes, elements: Vec::new(), readouts: Vec::new() })
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn elements(&self) -> &[PlacedElement<T>] {
        &self.elements
    }

    pub fn readouts(&self) -> &[Readout<T>] {
        &self.readouts
    }

    pub fn mode_index(&self, name: &str) -> Result<usize> {
        self.modes.iter().position(|m| m == name).ok_or_else(|| invalid(format!("unknown mode '{name}'")))
    }

    pub fn push(&mut self, label: Option<&str>, element: CircuitElement<T>) -> Result<&mut Self> {
        if let Some(m) = element.modes().into_iter().find(|&m| m >= self.n_modes()) {
            return Err(invalid(format!("element references mode {m} of {}", self.n_modes())));
        }
        self.elements.push(PlacedElement { label: label.map(str::to_owned), element });
        Ok(self)
    }

    pub fn add_readout(
        &mut self,
        label: impl Into<String>,
        terms: Vec<QuadratureTerm<T>>,
    ) -> Result<&mut Self> {
        let label = label.into();
        if terms.is_empty() {
            return Err(invalid(format!("readout '{label}' has no terms")));
        }
        if self.readouts.iter().any(|r| r.label == label) {
            return Err(invalid(format!("duplicate readout '{label}'")));
        }
        if let Some(t) = terms.iter().find(|t| t.mode >= self.n_modes()) {
            return Err(invalid(format!("readout '{label}' references mode {}", t.mode)));
        }
        self.readouts.push(Readout { label, terms });
        Ok(self)
    }

    pub fn readout(&self, label: &str) -> Result<&Readout<T>> {
        self.readouts
            .iter()
            .find(|r| r.label == label)
            .ok_or_else(|| invalid(format!("unknown readout '{label}'")))
    }

    fn modulators(&self) -> impl Iterator<Item = &Modulator<T>> {
        self.elements.iter().filter_map(|p| match &p.element {
            CircuitElement::Modulator(m) => Some(m),
            _ => None,
        })
    }

    /// The modulation shared by every modulator; zero when there are none.
    pub fn signal(&self) -> Result<ModulationSignal<T>> {
        let mut it = self.modulators();
        let Some(first) = it.next() else {
            return Ok(ModulationSignal::zero());
        };
        if it.any(|m| m.eps() != first.eps() || m.delta() != first.delta()) {
            return Err(invalid("modulators carry different depths; one common signal is required"));
        }
        Ok(ModulationSignal::new(first.eps(), first.delta()))
    }

    /// Copy of the circuit with every modulator set to `signal`.
    pub fn with_signal(&self, signal: &ModulationSignal<T>) -> Self {
        let (eps, delta) = (signal.eps(), signal.delta());
        let mut out = self.clone();
        for p in &mut out.elements {
            if let CircuitElement::Modulator(m) = &mut p.element {
                *m = m.with_depths(eps, delta);
            }
        }
        out
    }

    pub fn input_state(&self, alpha_sq: T) -> Result<GaussianState<T>> {
        if !(alpha_sq >= T::zero()) || !alpha_sq.is_finite() {
            return Err(invalid(format!("seed photon number must be >= 0, got {alpha_sq}")));
        }
        let mut alphas = vec![Complex::new(T::zero(), T::zero()); self.n_modes()];
        alphas[0] = Complex::new(alpha_sq.sqrt(), T::zero());
        GaussianState::coherent(&alphas)
    }

    pub fn output_state(&self, alpha_sq: T) -> Result<GaussianState<T>> {
        self.input_state(alpha_sq)?.propagate(self.elements.iter().map(|p| &p.element))
    }

    /// Probe photon number at the sensing point: coherent photons of every
    /// modulated mode, evaluated where that mode first meets a modulator.
    /// Loss channels upstream of the modulators are skipped, so `I_ps` counts
    /// the photons delivered by the source rather than those that survive.
    pub fn probe_photon_number(&self, alpha_sq: T) -> Result<T> {
        let mut state = self.input_state(alpha_sq)?;
        let mut seen = vec![false; self.n_modes()];
        let mut total = T::zero();
        for p in &self.elements {
            match &p.element {
                CircuitElement::Modulator(m) => {
                    if !seen[m.mode()] {
                        seen[m.mode()] = true;
                        total = total + state.coherent_photon_number(m.mode())?;
                    }
                }
                CircuitElement::Loss(_) => {}
                el => state = state.apply_element(el)?,
            }
        }
        Ok(total)
    }

    /// Runs one readout with the circuit's modulators set to `signal`.
    pub fn readout_stats(
        &self,
        alpha_sq: T,
        readout: &Readout<T>,
        signal: &ModulationSignal<T>,
    ) -> Result<MeasurementStats<T>> {
        self.with_signal(signal).output_state(alpha_sq)?.combined_stats(&readout.terms)
    }

    /// SNR of every readout for the circuit's own modulation.
    pub fn evaluate(&self, alpha_sq: T) -> Result<Vec<ReadoutEvaluation<T>>> {
        let signal = self.signal()?;
        let state_of = |s: &ModulationSignal<T>| self.with_signal(s).output_state(alpha_sq);
        let states = [
            state_of(&ModulationSignal::zero())?,
            state_of(&signal)?,
            state_of(&ModulationSignal::new(T::one(), T::zero()))?,
            state_of(&ModulationSignal::new(T::zero(), T::one()))?,
        ];
        self.readouts
            .iter()
            .map(|r| {
                let stats: Vec<MeasurementStats<T>> =
                    states.iter().map(|st| st.combined_stats(&r.terms)).collect::<Result<_>>()?;
                let snr = extract_snr(
                    |s: &ModulationSignal<T>| Ok(if s.is_zero() { stats[0] } else { stats[1] }),
                    &signal,
                )?;
                // Means are affine in (eps, delta), so these are exact gradients.
                let a = stats[2].mean - stats[0].mean;
                let b = stats[3].mean - stats[0].mean;
                let grad = a.hypot(b);
                let depth = if grad > T::zero() {
                    (a * signal.eps() + b * signal.delta()).abs() / grad
                } else {
                    T::zero()
                };
                Ok(ReadoutEvaluation { label: r.label.clone(), snr, depth })
            })
            .collect()
    }

    pub fn cast<U: Real>(&self) -> Result<Circuit<U>> {
        let mut out = Circuit::new(self.modes.clone())?;
        let c = |x: T| U::lit(x.to_f64_lossy());
        for p in &self.elements {
            use crate::gaussian::SymplecticElement as S;
            let el = match &p.element {
                CircuitElement::Symplectic(S::BeamSplitter(bs)) => {
                    let (a, b) = bs.modes();
                    CircuitElement::beam_splitter(c(bs.transmissivity()), a, b)?
                }
                CircuitElement::Symplectic(S::TwoModeSqueezer(o)) => {
                    let (s, i) = o.modes();
                    CircuitElement::opa(c(o.g()), s, i)?
                }
                CircuitElement::Symplectic(S::PhaseShift(ps)) => {
                    CircuitElement::phase(c(ps.angle()), ps.mode())?
                }
                CircuitElement::Loss(l) => CircuitElement::loss(c(l.loss()), l.mode())?,
                CircuitElement::Modulator(m) => {
                    CircuitElement::modulator(c(m.eps()), c(m.delta()), m.mode())?
                }
            };
            out.push(p.label.as_deref(), el)?;
        }
        for r in &self.readouts {
            let terms =
                r.terms.iter().map(|t| QuadratureTerm::new(t.mode, c(t.angle), c(t.weight))).collect();
            out.add_readout(r.label.clone(), terms)?;
        }
        Ok(out)
    }
}

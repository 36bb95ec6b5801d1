//! Gaussian-state engine: states, network elements, and homodyne statistics.

mod element;
mod state;

pub use element::{
    BeamSplitter, CircuitElement, LossChannel, Modulator, PhaseShift, SymplecticElement, TwoModeSqueezer,
};
pub use state::{GaussianState, MeasurementStats, QuadratureTerm, SYMMETRY_TOL, UNCERTAINTY_TOL};

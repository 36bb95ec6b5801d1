//! Gaussian-state simulation of quantum-enhanced joint measurement of
//! amplitude and phase modulation.
//!
//! Quadratures follow `X = a + a†`, `Y = i(a† - a)` with vacuum variance 1.

// `!(x > 0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod dsl;
pub mod encoding;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod scalar;
pub mod schemes;

pub use circuit::{Circuit, PlacedElement, Readout, ReadoutEvaluation};
pub use encoding::{ModulationSignal, SnrResult};
pub use error::{Error, Result};
pub use gaussian::{CircuitElement, GaussianState, MeasurementStats, QuadratureTerm};
pub use scalar::Real;
pub use schemes::{EvalMode, SchemeId, SchemeParams, SchemeReport};

pub type GaussianStateF64 = GaussianState<f64>;
pub type GaussianStateF32 = GaussianState<f32>;
pub type CircuitF64 = Circuit<f64>;
pub type CircuitF32 = Circuit<f32>;
pub type SchemeParamsF64 = SchemeParams<f64>;
pub type SchemeReportF64 = SchemeReport<f64>;
pub type ModulationSignalF64 = ModulationSignal<f64>;

//! Measurement schemes in closed form and as Gaussian circuits.

mod analytic;
mod build;
mod limits;
mod params;

use serde::Serialize;

pub use analytic::{closed_form, sui_noise};
pub use build::build_circuit;
pub use limits::{
    db_dc_limit_snr, dual_beam_limit_snr, heisenberg_limit, heisenberg_limit_circuit, optimum_g2,
    optimum_gap_db, sql_min_depth, sui_limit_snr, sui_port_gain, MinimumDetectable, OptimumG2, SuiPort,
};
pub use params::{SchemeId, SchemeParams};

use crate::circuit::{Circuit, ReadoutEvaluation};
use crate::encoding::{sql_joint, ModulationSignal};
use crate::error::Result;
use crate::scalar::{to_db, Real};

/// Closed-form expressions or Gaussian-circuit propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Analytic,
    Numeric,
}

/// Scheme parameters plus the encoded depths, as echoed in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParams<T> {
    #[serde(flatten)]
    pub params: SchemeParams<T>,
    pub eps: T,
    pub delta: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableReport<T> {
    pub label: String,
    pub snr: T,
    pub snr_db: T,
    pub enhancement_db: T,
    pub signal_power: T,
    pub noise_power: T,
    /// Joint-measurement SQL at this readout's depth.
    pub sql: T,
}

/// Per-observable SNRs of one scheme at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeReport<T> {
    pub scheme: String,
    pub params: ReportParams<T>,
    pub i_ps: T,
    /// SQL of the first observable.
    pub sql: T,
    pub observables: Vec<ObservableReport<T>>,
}

impl<T: Real> SchemeReport<T> {
    pub fn from_readouts(
        scheme: impl Into<String>,
        params: &SchemeParams<T>,
        signal: &ModulationSignal<T>,
        i_ps: T,
        readouts: Vec<ReadoutEvaluation<T>>,
    ) -> Self {
        let observables: Vec<ObservableReport<T>> = readouts
            .into_iter()
            .map(|r| {
                let sql = sql_joint(i_ps, r.depth);
                ObservableReport {
                    label: r.label,
                    snr: r.snr.snr,
                    snr_db: r.snr.snr_db,
                    enhancement_db: r.snr.snr_db - to_db(sql),
                    signal_power: r.snr.signal_power,
                    noise_power: r.snr.noise_power,
                    sql,
                }
            })
            .collect();
        Self {
            scheme: scheme.into(),
            params: ReportParams { params: *params, eps: signal.eps(), delta: signal.delta() },
            i_ps,
            sql: observables.first().map_or(T::zero(), |o| o.sql),
            observables,
        }
    }

    pub fn observable(&self, label: &str) -> Option<&ObservableReport<T>> {
        self.observables.iter().find(|o| o.label == label)
    }
}

/// Evaluates a scheme in the requested mode.
pub fn evaluate<T: Real>(
    id: SchemeId,
    params: &SchemeParams<T>,
    signal: &ModulationSignal<T>,
    mode: EvalMode,
) -> Result<SchemeReport<T>> {
    let (i_ps, readouts) = match mode {
        EvalMode::Analytic => closed_form(id, params, signal)?,
        EvalMode::Numeric => {
            let circuit = build_circuit(id, params, signal)?;
            (circuit.probe_photon_number(params.alpha_sq)?, circuit.evaluate(params.alpha_sq)?)
        }
    };
    Ok(SchemeReport::from_readouts(id.as_str(), params, signal, i_ps, readouts))
}

/// Numeric report for an arbitrary circuit. The signal is read from its modulators.
pub fn evaluate_circuit<T: Real>(
    name: &str,
    circuit: &Circuit<T>,
    params: &SchemeParams<T>,
) -> Result<SchemeReport<T>> {
    let signal = circuit.signal()?;
    let i_ps = circuit.probe_photon_number(params.alpha_sq)?;
    let readouts = circuit.evaluate(params.alpha_sq)?;
    Ok(SchemeReport::from_readouts(name, params, &signal, i_ps, readouts))
}

macro_rules! scheme_fns {
    ($($name:ident => $id:ident),* $(,)?) => {$(
        pub fn $name<T: Real>(
            params: &SchemeParams<T>,
            signal: &ModulationSignal<T>,
            mode: EvalMode,
        ) -> Result<SchemeReport<T>> {
            evaluate(SchemeId::$id, params, signal, mode)
        }
    )*};
}

scheme_fns! {
    snr_direct => Direct,
    snr_beam_split => BeamSplit,
    snr_opa_split => OpaSplit,
    snr_dense_coding => DenseCoding,
    snr_sui => Sui,
    snr_sui_split3 => SuiSplit3,
    snr_post_detection => PostDetection,
    snr_dual_beam => DualBeam,
    snr_db_dc => DbDc,
}

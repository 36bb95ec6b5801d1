use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::{big_gain, Real};

/// Measurement schemes with both a closed-form and a circuit evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeId {
    /// Homodyne on the modulated coherent probe.
    Direct,
    /// Probe split by a beam splitter, one quadrature per output.
    BeamSplit,
    /// Phase-insensitive OPA used as the splitter.
    OpaSplit,
    /// EPR pair recombined on a 50/50 beam splitter.
    DenseCoding,
    /// SU(1,1) interferometer, signal arm sensing.
    Sui,
    /// SU(1,1) interferometer with the signal output split three ways.
    SuiSplit3,
    /// SU(1,1) outputs recombined as `cos(theta) X_s + k sin(theta) Y_i`.
    PostDetection,
    /// SU(1,1) interferometer with both arms sensing.
    DualBeam,
    /// Co-propagating EPR beams read by photocurrent sum and difference.
    DbDc,
}

impl SchemeId {
    pub const ALL: [SchemeId; 9] = [
        SchemeId::Direct,
        SchemeId::BeamSplit,
        SchemeId::OpaSplit,
        SchemeId::DenseCoding,
        SchemeId::Sui,
        SchemeId::SuiSplit3,
        SchemeId::PostDetection,
        SchemeId::DualBeam,
        SchemeId::DbDc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeId::Direct => "direct",
            SchemeId::BeamSplit => "beam_split",
            SchemeId::OpaSplit => "opa_split",
            SchemeId::DenseCoding => "dense_coding",
            SchemeId::Sui => "sui",
            SchemeId::SuiSplit3 => "sui_split3",
            SchemeId::PostDetection => "post_detection",
            SchemeId::DualBeam => "dual_beam",
            SchemeId::DbDc => "db_dc",
        }
    }

    /// Whether the scheme has an arm between two nonlinear elements where
    /// internal loss can be placed.
    pub fn has_internal_arm(&self) -> bool {
        matches!(
            self,
            SchemeId::DenseCoding
                | SchemeId::Sui
                | SchemeId::SuiSplit3
                | SchemeId::PostDetection
                | SchemeId::DualBeam
        )
    }

    /// `I_ps / |alpha|^2` for this scheme's probe bookkeeping.
    pub fn probe_gain<T: Real>(&self, params: &SchemeParams<T>) -> T {
        match self {
            SchemeId::Direct | SchemeId::BeamSplit | SchemeId::OpaSplit => T::one(),
            SchemeId::DenseCoding => {
                let big = big_gain(params.g);
                big * big
            }
            SchemeId::Sui | SchemeId::SuiSplit3 | SchemeId::PostDetection => {
                let big = big_gain(params.g1);
                big * big
            }
            SchemeId::DualBeam => {
                let big = big_gain(params.g1);
                big * big + params.g1 * params.g1
            }
            SchemeId::DbDc => {
                let big = big_gain(params.g);
                big * big + params.g * params.g
            }
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| {
            let known: Vec<_> = SchemeId::ALL.iter().map(|i| i.as_str()).collect();
            invalid(format!("unknown scheme '{s}' (known: {})", known.join(", ")))
        })
    }
}

/// Parameters shared by all schemes; each scheme reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemeParams<T> {
    /// Seed photon number `|alpha|^2`.
    pub alpha_sq: T,
    /// Amplitude gain of the first SU(1,1) amplifier.
    pub g1: T,
    /// Amplitude gain of the second SU(1,1) amplifier.
    pub g2: T,
    /// Amplitude gain of single-amplifier schemes.
    pub g: T,
    /// Beam-splitter transmissivity.
    pub t: T,
    /// Interferometer phase on the idler arm; `pi` is the dark fringe.
    pub phase: T,
    pub loss_detect: T,
    pub loss_internal: T,
    /// Post-detection idler weight; `None` means `G2 / g2`.
    pub k: Option<T>,
    /// Decoded quadrature angles of the three detectors of the split scheme.
    pub split_angles: [T; 3],
}

impl<T: Real> Default for SchemeParams<T> {
    fn default() -> Self {
        Self {
            alpha_sq: T::lit(100.0),
            g1: T::one(),
            g2: T::lit(5.0),
            g: T::one(),
            t: T::lit(0.5),
            phase: T::PI(),
            loss_detect: T::zero(),
            loss_internal: T::zero(),
            k: None,
            split_angles: [T::zero(), T::FRAC_PI_2(), T::FRAC_PI_4()],
        }
    }
}

impl<T: Real> SchemeParams<T> {
    pub fn validate(&self) -> Result<()> {
        let nonneg = |name: &str, v: T| {
            if v.is_finite() && v >= T::zero() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be finite and >= 0, got {v}")))
            }
        };
        let unit = |name: &str, v: T| {
            if v.is_finite() && v >= T::zero() && v <= T::one() {
                Ok(())
            } else {
                Err(invalid(format!("{name} out of [0,1]: {v}")))
            }
        };
        nonneg("alpha_sq", self.alpha_sq)?;
        nonneg("g1", self.g1)?;
        nonneg("g2", self.g2)?;
        nonneg("g", self.g)?;
        unit("t", self.t)?;
        unit("loss_detect", self.loss_detect)?;
        unit("loss_internal", self.loss_internal)?;
        if !self.phase.is_finite() {
            return Err(invalid("phase must be finite"));
        }
        if let Some(k) = self.k {
            if !k.is_finite() {
                return Err(invalid("k must be finite"));
            }
        }
        if self.split_angles.iter().any(|a| !a.is_finite()) {
            return Err(invalid("split angles must be finite"));
        }
        Ok(())
    }

    pub(crate) fn validate_for(&self, id: SchemeId) -> Result<()> {
        self.validate()?;
        if !id.has_internal_arm() && self.loss_internal != T::zero() {
            return Err(invalid(format!("scheme '{id}' has no internal arm; loss_internal must be 0")));
        }
        Ok(())
    }

    /// Post-detection idler weight, defaulting to `G2 / g2`.
    pub fn k_or_default(&self) -> Result<T> {
        match self.k {
            Some(k) => Ok(k),
            None if self.g2 > T::zero() => Ok(big_gain(self.g2) / self.g2),
            None => Err(invalid("default k = G2/g2 needs g2 > 0")),
        }
    }

    /// Copy with `alpha_sq` chosen so that the scheme's probe photon number is `i_ps`.
    pub fn with_probe_photons(&self, id: SchemeId, i_ps: T) -> Self {
        Self { alpha_sq: i_ps / id.probe_gain(self), ..*self }
    }
}

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::element::{check_mode_list, CircuitElement, SymplecticElement};
use crate::error::{invalid, Error, Result};
use crate::linalg::Mat;
use crate::scalar::Real;

/// Absolute entrywise tolerance on covariance symmetry.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Allowed undershoot of the smallest symplectic eigenvalue below 1.
pub const UNCERTAINTY_TOL: f64 = 1e-9;

/// Mean and variance of one (possibly combined) quadrature readout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementStats<T> {
    pub mean: T,
    pub variance: T,
}

/// One weighted homodyne term `w * X_m(phi)` of a photocurrent combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureTerm<T> {
    pub mode: usize,
    pub angle: T,
    pub weight: T,
}

impl<T: Real> QuadratureTerm<T> {
    pub fn new(mode: usize, angle: T, weight: T) -> Self {
        Self { mode, angle, weight }
    }

    pub fn unit(mode: usize, angle: T) -> Self {
        Self::new(mode, angle, T::one())
    }
}

/// Gaussian state of `n` bosonic modes.
///
/// Quadratures are `X = a + a^dag` and `Y = i(a^dag - a)`, so the vacuum has
/// unit variance along every direction and a coherent amplitude `alpha`
/// shows up as the mean `(2 Re alpha, 2 Im alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T> {
    mean: Vec<T>,
    cov: Mat<T>,
}

impl<T: Real> GaussianState<T> {
    /// Builds a state after checking symmetry and the uncertainty bound.
    pub fn new(mean: Vec<T>, cov: Mat<T>) -> Result<Self> {
        if mean.is_empty() || !mean.len().is_multiple_of(2) {
            return Err(invalid(format!("mean vector must have even, non-zero length, got {}", mean.len())));
        }
        if cov.dim() != mean.len() {
            return Err(invalid(format!(
                "covariance is {0}x{0} but mean has length {1}",
                cov.dim(),
                mean.len()
            )));
        }
        if mean.iter().any(|x| !x.is_finite()) {
            return Err(invalid("mean vector has non-finite entries"));
        }
        let state = Self { mean, cov };
        state.check_physical()?;
        Ok(state)
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(invalid("vacuum needs at least one mode"));
        }
        Ok(Self { mean: vec![T::zero(); 2 * n_modes], cov: Mat::identity(2 * n_modes) })
    }

    pub fn coherent(alphas: &[Complex<T>]) -> Result<Self> {
        if alphas.is_empty() {
            return Err(invalid("coherent state needs at least one amplitude"));
        }
        let two = T::lit(2.0);
        let mut mean = Vec::with_capacity(2 * alphas.len());
        for a in alphas {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(invalid(format!("non-finite coherent amplitude {a}")));
            }
            mean.push(two * a.re);
            mean.push(two * a.im);
        }
        let n = alphas.len();
        Ok(Self { mean, cov: Mat::identity(2 * n) })
    }

    pub fn n_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    pub fn cov(&self) -> &Mat<T> {
        &self.cov
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        check_mode_list(&[mode], self.n_modes())
    }

    /// Symplectic eigenvalues, ascending. Fails if the covariance is not
    /// positive definite.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<T>> {
        let l = self
            .cov
            .cholesky()
            .ok_or_else(|| Error::InvalidState("covariance is not positive definite".into()))?;
        let omega = Mat::symplectic_form(self.n_modes());
        // A = L^T Omega L is antisymmetric with eigenvalues +-i nu_k, so
        // A^T A has eigenvalues nu_k^2, each twice.
        let a = omega.congruence(&l.transpose());
        let ata = &a.transpose() * &a;
        let ev = ata.symmetric_eigenvalues();
        Ok(ev.iter().step_by(2).map(|x| x.max(T::zero()).sqrt()).collect())
    }

    fn check_physical(&self) -> Result<()> {
        let asym = self.cov.asymmetry();
        if !(asym <= T::lit(SYMMETRY_TOL)) {
            return Err(Error::InvalidState(format!("covariance asymmetric by {asym}")));
        }
        let nu = self.symplectic_eigenvalues()?;
        let min = nu.iter().copied().fold(T::infinity(), T::min);
        if min < T::one() - T::lit(UNCERTAINTY_TOL) {
            return Err(Error::InvalidState(format!(
                "uncertainty bound violated: smallest symplectic eigenvalue {min}"
            )));
        }
        Ok(())
    }

    /// Propagates the state through one element and returns the new state.
    pub fn apply_element(&self, element: &CircuitElement<T>) -> Result<Self> {
        check_mode_list(&element.modes(), self.n_modes())?;
        match element {
            CircuitElement::Symplectic(s) => Ok(self.apply_symplectic(s)?),
            CircuitElement::Loss(l) => {
                let eta = T::one() - l.loss();
                let root = eta.sqrt();
                let mut k = Mat::identity(self.cov.dim());
                let mut mean = self.mean.clone();
                for q in [2 * l.mode(), 2 * l.mode() + 1] {
                    k[(q, q)] = root;
                    mean[q] = mean[q] * root;
                }
                let mut cov = self.cov.congruence(&k);
                for q in [2 * l.mode(), 2 * l.mode() + 1] {
                    cov[(q, q)] = cov[(q, q)] + l.loss();
                }
                Ok(Self { mean, cov })
            }
            CircuitElement::Modulator(m) => {
                let (x, y) = (2 * m.mode(), 2 * m.mode() + 1);
                let re = T::one() - m.eps();
                let im = m.delta();
                let mut mean = self.mean.clone();
                mean[x] = re * self.mean[x] - im * self.mean[y];
                mean[y] = im * self.mean[x] + re * self.mean[y];
                Ok(Self { mean, cov: self.cov.clone() })
            }
        }
    }

    fn apply_symplectic(&self, element: &SymplecticElement<T>) -> Result<Self> {
        let s = element.matrix(self.n_modes())?;
        Ok(Self { mean: s.mul_vec(&self.mean), cov: self.cov.congruence(&s) })
    }

    /// Applies a sequence of elements in order.
    pub fn propagate<'a, I>(&self, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a CircuitElement<T>>,
    {
        let mut state = self.clone();
        for el in elements {
            state = state.apply_element(el)?;
        }
        Ok(state)
    }

    /// Statistics of `X_mode(phi) = cos(phi) X + sin(phi) Y`. The state is
    /// not conditioned on the outcome.
    pub fn homodyne_stats(&self, mode: usize, angle: T) -> Result<MeasurementStats<T>> {
        self.combined_stats(&[QuadratureTerm::unit(mode, angle)])
    }

    fn direction(&self, terms: &[QuadratureTerm<T>]) -> Result<Vec<T>> {
        if terms.is_empty() {
            return Err(invalid("combined readout needs at least one term"));
        }
        let mut v = vec![T::zero(); self.mean.len()];
        for t in terms {
            self.check_mode(t.mode)?;
            if !t.angle.is_finite() || !t.weight.is_finite() {
                return Err(invalid("readout angle and weight must be finite"));
            }
            let (sin, cos) = t.angle.sin_cos();
            v[2 * t.mode] = v[2 * t.mode] + t.weight * cos;
            v[2 * t.mode + 1] = v[2 * t.mode + 1] + t.weight * sin;
        }
        Ok(v)
    }

    /// Statistics of the photocurrent combination `sum_k w_k X_{m_k}(phi_k)`,
    /// cross-correlations included.
    pub fn combined_stats(&self, terms: &[QuadratureTerm<T>]) -> Result<MeasurementStats<T>> {
        let v = self.direction(terms)?;
        let mean = v.iter().zip(&self.mean).map(|(a, b)| *a * *b).sum();
        let variance = self.cov.quadratic_form(&v).max(T::zero());
        Ok(MeasurementStats { mean, variance })
    }

    /// Draws i.i.d. outcomes of a combined readout. Deterministic in `seed`.
    pub fn sample_outcomes(
        &self,
        terms: &[QuadratureTerm<T>],
        n_samples: usize,
        seed: u64,
    ) -> Result<Vec<T>> {
        if n_samples == 0 {
            return Err(invalid("n_samples must be at least 1"));
        }
        let stats = self.combined_stats(terms)?;
        let mean = stats.mean.to_f64_lossy();
        let sd = stats.variance.to_f64_lossy().sqrt();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        Ok((0..n_samples)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                T::lit(mean + sd * z)
            })
            .collect())
    }

    /// Mean photon number `<a^dag a>`: coherent part plus thermal excess.
    pub fn photon_number(&self, mode: usize) -> Result<T> {
        self.check_mode(mode)?;
        Ok(self.coherent_photon_number(mode)? + self.excess_photon_number(mode)?)
    }

    /// `|<a>|^2` of one mode.
    pub fn coherent_photon_number(&self, mode: usize) -> Result<T> {
        self.check_mode(mode)?;
        let (x, y) = (self.mean[2 * mode], self.mean[2 * mode + 1]);
        Ok((x * x + y * y) / T::lit(4.0))
    }

    fn excess_photon_number(&self, mode: usize) -> Result<T> {
        let (x, y) = (2 * mode, 2 * mode + 1);
        Ok((self.cov[(x, x)] + self.cov[(y, y)] - T::lit(2.0)) / T::lit(4.0))
    }

    pub fn cast<U: Real>(&self) -> GaussianState<U> {
        GaussianState {
            mean: self.mean.iter().map(|x| U::lit(x.to_f64_lossy())).collect(),
            cov: self.cov.cast(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn tmsv(g: f64) -> GaussianState<f64> {
        GaussianState::vacuum(2).unwrap().apply_element(&CircuitElement::opa(g, 0, 1).unwrap()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn vacuum_is_phase_insensitive() {
        let v = GaussianState::<f64>::vacuum(1).unwrap();
        assert_eq!(v.mean(), &[0.0, 0.0]);
        assert_eq!(v.cov(), &Mat::identity(2));
        let s = v.homodyne_stats(0, 0.73).unwrap();
        assert_eq!(s.mean, 0.0);
        assert!(close(s.variance, 1.0, 1e-15));
        let s = v.homodyne_stats(0, PI / 3.0).unwrap();
        assert!(close(s.variance, 1.0, 1e-15));
        assert_eq!(GaussianState::<f64>::vacuum(2).unwrap().cov(), &Mat::identity(4));
    }

    #[test]
    fn vacuum_rejects_zero_modes() {
        assert!(matches!(GaussianState::<f64>::vacuum(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn coherent_means() {
        let c = GaussianState::coherent(&[Complex::new(3.0_f64, 0.0)]).unwrap();
        assert_eq!(c.mean(), &[6.0, 0.0]);
        assert!(close(c.photon_number(0).unwrap(), 9.0, 1e-12));
        let z = GaussianState::coherent(&[Complex::new(0.0_f64, 0.0)]).unwrap();
        assert_eq!(z, GaussianState::vacuum(1).unwrap());
        let rot = GaussianState::coherent(&[Complex::from_polar(2.0_f64, FRAC_PI_2)]).unwrap();
        assert!(close(rot.mean()[0], 0.0, 1e-15));
        assert!(close(rot.mean()[1], 4.0, 1e-15));
        assert!(GaussianState::<f64>::coherent(&[]).is_err());
    }

    #[test]
    fn coherent_homodyne() {
        let c = GaussianState::coherent(&[Complex::new(5.0_f64, 0.0)]).unwrap();
        let s = c.homodyne_stats(0, 0.0).unwrap();
        assert_eq!((s.mean, s.variance), (10.0, 1.0));
    }

    #[test]
    fn tmsv_variances() {
        let g = 1.5;
        let big = (1.0_f64 + g * g).sqrt();
        let st = tmsv(g);
        for phi in [0.0, 0.4, FRAC_PI_2, 2.0] {
            let s = st.homodyne_stats(0, phi).unwrap();
            assert!(close(s.mean, 0.0, 1e-15));
            assert!(close(s.variance, big * big + g * g, 1e-12));
            assert!(close(s.variance, 5.5, 1e-12));
        }
        let diff = st
            .combined_stats(&[QuadratureTerm::new(0, 0.0, 1.0), QuadratureTerm::new(1, 0.0, -1.0)])
            .unwrap();
        assert!(close(diff.variance, 2.0 * (big - g).powi(2), 1e-12));
        let sum = st
            .combined_stats(&[QuadratureTerm::new(0, FRAC_PI_2, 1.0), QuadratureTerm::new(1, FRAC_PI_2, 1.0)])
            .unwrap();
        assert!(close(sum.variance, 2.0 / (big + g).powi(2), 1e-12));
        // EPR difference noise 1/(G+g)^2 per port after the 1/sqrt(2) scaling.
        assert!(close(diff.variance / 2.0, 1.0 / (big + g).powi(2), 1e-12));
    }

    #[test]
    fn zero_gain_squeezer_is_identity() {
        let c = GaussianState::coherent(&[Complex::new(1.2_f64, -0.3), Complex::new(0.0, 0.7)]).unwrap();
        let out = c.apply_element(&CircuitElement::opa(0.0, 0, 1).unwrap()).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn loss_scales_mean_keeps_vacuum_noise() {
        let c = GaussianState::coherent(&[Complex::new(2.0_f64, 1.0)]).unwrap();
        let out = c.apply_element(&CircuitElement::loss(0.36, 0).unwrap()).unwrap();
        assert!(close(out.mean()[0], 0.8 * 4.0, 1e-14));
        assert!(close(out.mean()[1], 0.8 * 2.0, 1e-14));
        assert!(out.cov().max_abs_diff(&Mat::identity(2)) < 1e-15);
    }

    #[test]
    fn zero_loss_is_identity() {
        let st = tmsv(0.8);
        let out = st.apply_element(&CircuitElement::loss(0.0, 1).unwrap()).unwrap();
        assert_eq!(out, st);
    }

    #[test]
    fn modulator_touches_mean_only() {
        let c = GaussianState::coherent(&[Complex::new(3.0_f64, 0.0)]).unwrap();
        let out = c.apply_element(&CircuitElement::modulator(0.1, 0.2, 0).unwrap()).unwrap();
        assert!(close(out.mean()[0], 6.0 * 0.9, 1e-14));
        assert!(close(out.mean()[1], 6.0 * 0.2, 1e-14));
        assert_eq!(out.cov(), c.cov());
        let id = c.apply_element(&CircuitElement::modulator(0.0, 0.0, 0).unwrap()).unwrap();
        assert_eq!(id, c);
    }

    #[test]
    fn photon_numbers() {
        assert_eq!(GaussianState::<f64>::vacuum(1).unwrap().photon_number(0).unwrap(), 0.0);
        let st = tmsv(2.0);
        assert!(close(st.photon_number(0).unwrap(), 4.0, 1e-12));
        assert!(close(st.photon_number(1).unwrap(), 4.0, 1e-12));
    }

    #[test]
    fn single_term_combination_matches_homodyne() {
        let st = tmsv(0.9).apply_element(&CircuitElement::modulator(0.0, 0.0, 0).unwrap()).unwrap();
        let a = st.homodyne_stats(1, 0.37).unwrap();
        let b = st.combined_stats(&[QuadratureTerm::unit(1, 0.37)]).unwrap();
        assert_eq!(a, b);
        assert!(st.combined_stats(&[]).is_err());
    }

    #[test]
    fn index_errors() {
        let v = GaussianState::<f64>::vacuum(2).unwrap();
        assert!(v.homodyne_stats(2, 0.0).is_err());
        assert!(v.photon_number(5).is_err());
        assert!(v.apply_element(&CircuitElement::opa(1.0, 0, 2).unwrap()).is_err());
        assert!(v.sample_outcomes(&[QuadratureTerm::unit(0, 0.0)], 0, 1).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_unit_variance_for_vacuum() {
        let v = GaussianState::<f64>::vacuum(1).unwrap();
        let terms = [QuadratureTerm::unit(0, 0.0)];
        let a = v.sample_outcomes(&terms, 100_000, 7).unwrap();
        let b = v.sample_outcomes(&terms, 100_000, 7).unwrap();
        assert_eq!(a, b);
        let n = a.len() as f64;
        let m = a.iter().sum::<f64>() / n;
        let var = a.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((var - 1.0).abs() < 0.02, "sample variance {var}");
    }

    #[test]
    fn rejects_unphysical_covariance() {
        let mut cov = Mat::identity(2);
        cov[(0, 0)] = 0.5;
        cov[(1, 1)] = 0.5;
        assert!(GaussianState::new(vec![0.0_f64, 0.0], cov).is_err());
        let mut sq = Mat::identity(2);
        sq[(0, 0)] = 0.25;
        sq[(1, 1)] = 4.0;
        assert!(GaussianState::new(vec![0.0_f64, 0.0], sq).is_ok());
    }

    #[test]
    fn symplectic_eigenvalues_of_tmsv_are_one() {
        let nu = tmsv(3.0).symplectic_eigenvalues().unwrap();
        for x in nu {
            assert!(close(x, 1.0, 1e-9), "nu = {x}");
        }
    }

    #[test]
    fn works_in_single_precision() {
        let st = GaussianState::<f32>::vacuum(2)
            .unwrap()
            .apply_element(&CircuitElement::opa(1.5_f32, 0, 1).unwrap())
            .unwrap();
        let s = st.homodyne_stats(0, 0.0).unwrap();
        assert!((s.variance - 5.5).abs() < 1e-5);
    }
}

//! Qubit measurements on subsystem A: projective bases parametrized by Bloch
//! angles, and two-outcome weak measurements of tunable strength x that
//! interpolate between the identity channel (x=0) and the projective limit
//! (x→∞).

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::state::DensityMatrix;

/// The pair of orthonormal qubit kets for Bloch angles (θ, φ):
///
///   |0′⟩ = cos(θ/2)|0⟩ − e^{−iφ} sin(θ/2)|1⟩
///   |1′⟩ = e^{iφ} sin(θ/2)|0⟩ + cos(θ/2)|1⟩
///
/// The phase convention is fixed (including the −e^{−iφ} sign) so that
/// operator-level golden tests are reproducible; projectors built from these
/// kets are insensitive to it.
pub(crate) fn kets_from_angles(theta: f64, phi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let (half_sin, half_cos) = (theta / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, phi);
    let k0 = [
        Complex64::new(half_cos, 0.0),
        -phase.conj() * half_sin,
    ];
    let k1 = [phase * half_sin, Complex64::new(half_cos, 0.0)];
    (k0, k1)
}

/// A projective qubit basis described by Bloch angles θ ∈ [0, π], φ ∈ [0, 2π).
///
/// Angles are not wrapped: out-of-range input is rejected so that every basis
/// has exactly one representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !phi.is_finite() || phi < 0.0 || phi >= std::f64::consts::TAU {
            return Err(Error::InvalidParameter(format!(
                "phi must lie in [0, 2*pi), got {phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// The computational basis (θ=0, φ=0): |0′⟩ = |0⟩, |1′⟩ = |1⟩.
    pub fn computational() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn kets(&self) -> ([Complex64; 2], [Complex64; 2]) {
        kets_from_angles(self.theta, self.phi)
    }

    /// The rank-1 projectors (P₀, P₁) onto the basis kets; orthogonal and
    /// complete by construction.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let (k0, k1) = self.kets();
        (
            ComplexMatrix::outer_product(&k0),
            ComplexMatrix::outer_product(&k1),
        )
    }
}

/// Weak measurements of strength beyond this behave identically to projective
/// ones at f64 precision (sech 500 ≈ 1e-217), so x is clamped here to keep
/// downstream hyperbolic functions away from under/overflow corners.
pub const MAX_WEAK_STRENGTH: f64 = 500.0;

/// A two-outcome weak measurement built from the projectors (M₀, M₁) of a
/// qubit basis:
///
///   q(+x) = √((1−tanh x)/2) M₀ + √((1+tanh x)/2) M₁
///   q(−x) = √((1+tanh x)/2) M₀ + √((1−tanh x)/2) M₁
///
/// satisfying q(+x)†q(+x) + q(−x)†q(−x) = I. The basis defaults to
/// computational in most call sites; the choice is immaterial for the state
/// family studied here (verified numerically by the property suite, since the
/// closed forms carry no angle).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakMeasurement {
    x: f64,
    basis: MeasurementBasis,
}

impl WeakMeasurement {
    pub fn new(x: f64, basis: MeasurementBasis) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "measurement strength x must be >= 0, got {x}"
            )));
        }
        Ok(Self {
            x: x.min(MAX_WEAK_STRENGTH),
            basis,
        })
    }

    /// Strength x in the computational basis.
    pub fn computational(x: f64) -> Result<Self> {
        Self::new(x, MeasurementBasis::computational())
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn basis(&self) -> &MeasurementBasis {
        &self.basis
    }

    /// The operator pair (q(+x), q(−x)).
    pub fn operators(&self) -> (ComplexMatrix, ComplexMatrix) {
        let (m0, m1) = self.basis.projectors();
        let th = self.x.tanh();
        let lo = ((1.0 - th) / 2.0).sqrt();
        let hi = ((1.0 + th) / 2.0).sqrt();
        let mut plus = m0.scale(lo);
        plus.add_scaled(&m1, hi);
        let mut minus = m0.scale(hi);
        minus.add_scaled(&m1, lo);
        (plus, minus)
    }
}

/// Apply K⊗I_d · ρ · (K⊗I_d)† for each operator and sum — the common shape of
/// both measurement channels below.
fn kraus_sum_on_a(rho: &DensityMatrix, ops: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let eye_b = ComplexMatrix::identity(rho.dim_b());
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in ops {
        let big = k.tensor_product(&eye_b);
        out.add_scaled(&big.matmul(rho.matrix()).matmul(&big.adjoint()), 1.0);
    }
    DensityMatrix::new(out.symmetrized(), rho.dim_a(), rho.dim_b())
}

/// Post-measurement state Σ_j (P_j ⊗ I) ρ (P_j ⊗ I) for a projective
/// measurement on the qubit side. Trace-preserving, positive, and idempotent
/// for a fixed basis.
pub fn projective_post_state(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<DensityMatrix> {
    assert_eq!(rho.dim_a(), 2, "measurement acts on a qubit subsystem");
    let (p0, p1) = basis.projectors();
    kraus_sum_on_a(rho, &[p0, p1])
}

/// Post-measurement state Σ_± [q(±x) ⊗ I] ρ [q(±x) ⊗ I]† for a weak
/// measurement on the qubit side. Returns ρ unchanged at x=0 and converges to
/// [`projective_post_state`] as x→∞.
pub fn weak_post_state(rho: &DensityMatrix, weak: &WeakMeasurement) -> Result<DensityMatrix> {
    assert_eq!(rho.dim_a(), 2, "measurement acts on a qubit subsystem");
    let (plus, minus) = weak.operators();
    kraus_sum_on_a(rho, &[plus, minus])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eigenvalues;
    use crate::state::build_two_param_state;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta_zero_gives_computational_projectors() {
        let (p0, p1) = MeasurementBasis::new(0.0, 1.234).unwrap().projectors();
        assert!(p0.max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(p1.max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn equator_projectors_match_direct_substitution() {
        let (p0, p1) = MeasurementBasis::new(FRAC_PI_2, 0.0).unwrap().projectors();
        let want0 = ComplexMatrix::from_fn(2, |i, j| c(if i == j { 0.5 } else { -0.5 }, 0.0));
        let want1 = ComplexMatrix::from_fn(2, |_, _| c(0.5, 0.0));
        assert!(p0.max_abs_diff(&want0) < 1e-15);
        assert!(p1.max_abs_diff(&want1) < 1e-15);
    }

    #[test]
    fn antipodal_point_swaps_projectors() {
        let (p0, p1) = MeasurementBasis::new(PI, 0.0).unwrap().projectors();
        assert!(p0.max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 1.0])) < 1e-15);
        assert!(p1.max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn projectors_are_orthogonal_and_complete() {
        let b = MeasurementBasis::new(0.7, 2.9).unwrap();
        let (p0, p1) = b.projectors();
        assert!(p0.matmul(&p1).max_abs_diff(&ComplexMatrix::zeros(2)) < 1e-15);
        assert!(p0.add(&p1).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(p0.matmul(&p0).max_abs_diff(&p0) < 1e-15);
    }

    #[test]
    fn out_of_range_angles_are_rejected() {
        assert!(MeasurementBasis::new(-0.1, 0.0).is_err());
        assert!(MeasurementBasis::new(PI + 0.1, 0.0).is_err());
        assert!(MeasurementBasis::new(0.5, -0.1).is_err());
        assert!(MeasurementBasis::new(0.5, std::f64::consts::TAU).is_err());
        assert!(MeasurementBasis::new(PI, 0.0).is_ok());
    }

    #[test]
    fn zero_strength_operators_are_scaled_identity() {
        let w = WeakMeasurement::computational(0.0).unwrap();
        let (plus, minus) = w.operators();
        let half = ComplexMatrix::identity(2).scale(std::f64::consts::FRAC_1_SQRT_2);
        assert!(plus.max_abs_diff(&half) < 1e-15);
        assert!(minus.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn strong_limit_recovers_projectors() {
        let basis = MeasurementBasis::new(1.1, 0.4).unwrap();
        let (m0, m1) = basis.projectors();
        let (plus, minus) = WeakMeasurement::new(40.0, basis).unwrap().operators();
        assert!(plus.max_abs_diff(&m1) < 1e-12);
        assert!(minus.max_abs_diff(&m0) < 1e-12);
    }

    #[test]
    fn weak_coefficients_at_x_08() {
        let (plus, _) = WeakMeasurement::computational(0.8).unwrap().operators();
        let tanh = 0.6640367702678489_f64;
        assert!((plus.get(0, 0).re - ((1.0 - tanh) / 2.0).sqrt()).abs() < 1e-12);
        assert!((plus.get(1, 1).re - ((1.0 + tanh) / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weak_operators_satisfy_completeness() {
        for (theta, phi, x) in [(0.3, 1.1, 0.8), (2.9, 5.0, 3.0), (1.57, 0.0, 0.05)] {
            let w = WeakMeasurement::new(x, MeasurementBasis::new(theta, phi).unwrap()).unwrap();
            let (plus, minus) = w.operators();
            let sum = plus
                .adjoint()
                .matmul(&plus)
                .add(&minus.adjoint().matmul(&minus));
            assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        }
    }

    #[test]
    fn strength_is_clamped_not_rejected() {
        let w = WeakMeasurement::computational(1e6).unwrap();
        assert_eq!(w.x(), MAX_WEAK_STRENGTH);
        assert!(WeakMeasurement::computational(-1.0).is_err());
    }

    #[test]
    fn family_post_measurement_spectrum_is_angle_independent() {
        let rho = build_two_param_state(0.05, 0.45, 3).unwrap();
        let want = [0.05, 0.05, 0.15, 0.15, 0.3, 0.3];
        for (theta, phi) in [(0.3, 1.1), (1.7, 2.2), (0.0, 0.0), (PI, 4.0)] {
            let basis = MeasurementBasis::new(theta, phi).unwrap();
            let post = projective_post_state(&rho, &basis).unwrap();
            let evs = hermitian_eigenvalues(post.matrix()).unwrap();
            for (g, w) in evs.iter().zip(want) {
                assert!((g - w).abs() < 1e-12, "spectrum {evs:?} at ({theta},{phi})");
            }
        }
    }

    #[test]
    fn maximally_mixed_is_fixed_by_any_measurement() {
        let rho = DensityMatrix::new(ComplexMatrix::identity(6).scale(1.0 / 6.0), 2, 3).unwrap();
        let basis = MeasurementBasis::new(0.9, 3.3).unwrap();
        let post = projective_post_state(&rho, &basis).unwrap();
        assert!(post.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn projective_measurement_is_idempotent() {
        let rho = build_two_param_state(0.07, 0.3, 4).unwrap();
        let basis = MeasurementBasis::new(1.2, 0.8).unwrap();
        let once = projective_post_state(&rho, &basis).unwrap();
        let twice = projective_post_state(&once, &basis).unwrap();
        assert!(twice.matrix().max_abs_diff(once.matrix()) < 1e-12);
    }

    #[test]
    fn weak_at_zero_strength_is_identity_channel() {
        let rho = build_two_param_state(0.05, 0.45, 3).unwrap();
        let post = weak_post_state(&rho, &WeakMeasurement::computational(0.0).unwrap()).unwrap();
        assert!(post.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn weak_post_spectrum_matches_sech_form() {
        // {½(s+t ± (s−t)·sech x), s, s, r, r} at (r,t,d) = (0.05, 0.45, 3).
        let rho = build_two_param_state(0.05, 0.45, 3).unwrap();
        let post = weak_post_state(&rho, &WeakMeasurement::computational(0.8).unwrap()).unwrap();
        let evs = hermitian_eigenvalues(post.matrix()).unwrap();
        let want = [0.05, 0.05, 0.15, 0.15, 0.18784501226438706, 0.41215498773561294];
        for (g, w) in evs.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "spectrum {evs:?}");
        }
    }

    #[test]
    fn weak_strong_limit_matches_projective_spectrum() {
        let rho = build_two_param_state(0.05, 0.45, 3).unwrap();
        let basis = MeasurementBasis::computational();
        let weak = weak_post_state(&rho, &WeakMeasurement::new(40.0, basis).unwrap()).unwrap();
        let proj = projective_post_state(&rho, &basis).unwrap();
        let we = hermitian_eigenvalues(weak.matrix()).unwrap();
        let pe = hermitian_eigenvalues(proj.matrix()).unwrap();
        for (a, b) in we.iter().zip(pe.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

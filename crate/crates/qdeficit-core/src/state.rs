//! Bipartite 2⊗d states: validated density matrices, embedded Bell projectors,
//! and the two-parameter (r,t) family whose correlation measures this crate
//! studies.

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};

/// Validation tolerances for density matrices: Hermiticity and trace within
/// 1e-10, smallest eigenvalue no lower than −1e-10.
pub const DENSITY_TOL: f64 = 1e-10;

/// A ComplexMatrix validated as a 2⊗d (more generally dim_a⊗dim_b) quantum
/// state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl DensityMatrix {
    /// Validate and wrap; fails with the offending magnitude on Hermiticity,
    /// trace, or positivity violations.
    pub fn new(mat: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        assert!(dim_a >= 1 && dim_b >= 1, "subsystem dimensions must be positive");
        assert_eq!(mat.dim(), dim_a * dim_b, "dimension factorization mismatch");
        let herm = mat.hermiticity_deviation();
        if herm > DENSITY_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let trace_dev = (mat.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > DENSITY_TOL {
            return Err(Error::TraceNotOne { deviation: trace_dev });
        }
        let evs = hermitian_eigenvalues(&mat)?;
        let min = evs.first().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { mat, dim_a, dim_b })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// Validate a raw matrix as a dim_a⊗dim_b state. Same semantics as
/// [`DensityMatrix::new`]; kept as a free function for call-site symmetry with
/// the other constructors.
pub fn validate_density_matrix(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(m, dim_a, dim_b)
}

/// The four maximally entangled two-qubit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// Rank-1 projector onto a Bell state, embedded in 2⊗d on the span of
/// |00⟩,|01⟩,|10⟩,|11⟩ (requires d ≥ 2).
pub fn bell_projector(which: BellLabel, d: usize) -> ComplexMatrix {
    assert!(d >= 2, "Bell embedding needs d >= 2");
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * d];
    // |i,j⟩ sits at flat index i·d + j.
    let (first, second, sign) = match which {
        BellLabel::PhiPlus => (0, d + 1, 1.0),   // (|00⟩+|11⟩)/√2
        BellLabel::PhiMinus => (0, d + 1, -1.0), // (|00⟩−|11⟩)/√2
        BellLabel::PsiPlus => (1, d, 1.0),       // (|01⟩+|10⟩)/√2
        BellLabel::PsiMinus => (1, d, -1.0),     // (|01⟩−|10⟩)/√2
    };
    v[first] = Complex64::new(amp, 0.0);
    v[second] = Complex64::new(sign * amp, 0.0);
    ComplexMatrix::outer_product(&v)
}

/// Parameters (r, t, d) of the two-parameter 2⊗d family
///
///   ρ_{r,t} = r Σ_{i=0,1; j=2..d−1} |ij⟩⟨ij| + s (P_φ⁺ + P_φ⁻ + P_ψ⁺) + t P_ψ⁻,
///
/// with s derived from the normalization constraint 2(d−2)r + 3s + t = 1, so
/// the constraint cannot be violated by rounding. Requires d ≥ 3 (at d=2 the
/// r-sector is empty and the parametrization degenerates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoParamState {
    r: f64,
    s: f64,
    t: f64,
    d: usize,
}

/// Slack for boundary parameters: values within this of a bound are accepted
/// and clamped, so e.g. t=1 (which forces s=r=0 up to float dust) is valid.
const PARAM_TOL: f64 = 1e-12;

impl TwoParamState {
    pub fn new(r: f64, t: f64, d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(format!(
                "family requires d >= 3, got d={d}"
            )));
        }
        let r_max = 1.0 / (2.0 * d as f64 - 4.0);
        if !r.is_finite() || r < -PARAM_TOL || r > r_max + PARAM_TOL {
            return Err(Error::InvalidParameter(format!(
                "r must lie in [0, {r_max:.6}], got {r}"
            )));
        }
        if !t.is_finite() || t < -PARAM_TOL || t > 1.0 + PARAM_TOL {
            return Err(Error::InvalidParameter(format!(
                "t must lie in [0, 1], got {t}"
            )));
        }
        let r = r.clamp(0.0, r_max);
        let t = t.clamp(0.0, 1.0);
        let s = (1.0 - 2.0 * (d as f64 - 2.0) * r - t) / 3.0;
        if s < -PARAM_TOL {
            return Err(Error::InvalidParameter(format!(
                "weights must be nonnegative: s = (1 - 2(d-2)r - t)/3 = {s:.6} < 0"
            )));
        }
        Ok(Self {
            r,
            s: s.max(0.0),
            t,
            d,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The derived Bell-sector weight s = (1 − 2(d−2)r − t)/3.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Materialize the state. The spectrum is {r ×2(d−2), s ×3, t} by
    /// construction and the result always passes validation.
    pub fn density_matrix(&self) -> DensityMatrix {
        let d = self.d;
        let mut m = ComplexMatrix::zeros(2 * d);
        for i in 0..2 {
            for j in 2..d {
                let k = i * d + j;
                m.set(k, k, Complex64::new(self.r, 0.0));
            }
        }
        m.add_scaled(&bell_projector(BellLabel::PhiPlus, d), self.s);
        m.add_scaled(&bell_projector(BellLabel::PhiMinus, d), self.s);
        m.add_scaled(&bell_projector(BellLabel::PsiPlus, d), self.s);
        m.add_scaled(&bell_projector(BellLabel::PsiMinus, d), self.t);
        DensityMatrix::new(m, 2, d).expect("family construction yields a valid state")
    }
}

/// Build ρ_{r,t} in one call (parameter validation + materialization).
pub fn build_two_param_state(r: f64, t: f64, d: usize) -> Result<DensityMatrix> {
    Ok(TwoParamState::new(r, t, d)?.density_matrix())
}

//! Dephasing channels acting independently on the qubit (A) and qutrit (B)
//! subsystems, with the exponential-decay parametrization γ = 1 − e^{−τΓ}.
//!
//! The channel damps off-diagonal entries and fixes diagonals; for the state
//! family's single coherence this yields the exact damping factor
//! √((1−γ_A)(1−γ_B)), which is what makes the dephased correlation measures
//! closed-form.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;

/// Dephasing probabilities (γ_A, γ_B) ∈ [0,1]². γ = 1 is full dephasing
/// (the τ→∞ limit); infinities never enter the API.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DephasingParams {
    gamma_a: f64,
    gamma_b: f64,
}

impl DephasingParams {
    pub fn new(gamma_a: f64, gamma_b: f64) -> Result<Self> {
        for (name, g) in [("gamma_a", gamma_a), ("gamma_b", gamma_b)] {
            if !g.is_finite() || !(0.0..=1.0).contains(&g) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [0, 1], got {g}"
                )));
            }
        }
        Ok(Self { gamma_a, gamma_b })
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    /// The coherence damping factor √((1−γ_A)(1−γ_B)).
    pub fn damping_factor(&self) -> f64 {
        ((1.0 - self.gamma_a) * (1.0 - self.gamma_b)).sqrt()
    }
}

/// Elapsed time τ and per-subsystem decay rates (Γ_A, Γ_B).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayRates {
    tau: f64,
    rate_a: f64,
    rate_b: f64,
}

impl DecayRates {
    pub fn new(tau: f64, rate_a: f64, rate_b: f64) -> Result<Self> {
        for (name, v) in [("tau", tau), ("rate_a", rate_a), ("rate_b", rate_b)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a finite nonnegative number, got {v}"
                )));
            }
        }
        Ok(Self { tau, rate_a, rate_b })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// γ = 1 − e^{−τΓ} componentwise; evaluated via exp_m1 so small τΓ keeps full
/// precision. Monotone nondecreasing in τ with γ(0) = 0.
pub fn gamma_from_decay(rates: &DecayRates) -> DephasingParams {
    let gamma = |rate: f64| -(-rates.tau * rate).exp_m1();
    DephasingParams {
        gamma_a: gamma(rates.rate_a),
        gamma_b: gamma(rates.rate_b),
    }
}

/// The Kraus operators of the product dephasing channel: two on the qubit,
/// three on the qutrit.
#[derive(Clone, Debug, PartialEq)]
pub struct DephasingKraus {
    pub qubit: Vec<ComplexMatrix>,
    pub qudit: Vec<ComplexMatrix>,
}

impl DephasingKraus {
    /// All joint operators E_i ⊗ F_j.
    pub fn joint_operators(&self) -> Vec<ComplexMatrix> {
        let mut out = Vec::with_capacity(self.qubit.len() * self.qudit.len());
        for e in &self.qubit {
            for f in &self.qudit {
                out.push(e.tensor_product(f));
            }
        }
        out
    }
}

/// The qubit⊗qutrit dephasing Kraus set:
///
///   E₀ = diag(1, √(1−γ_A)), E₁ = diag(0, √γ_A)
///   F₀ = diag(1, √(1−γ_B), √(1−γ_B)), F₁ = diag(0, √γ_B, 0), F₂ = diag(0, 0, √γ_B)
///
/// Completeness Σ E_i†E_i = I₂ and Σ F_j†F_j = I₃ holds exactly. Only d = 3 is
/// supported here; see [`generalized_qudit_dephasing_kraus`] for the
/// experimental d > 3 extension.
pub fn dephasing_kraus(p: &DephasingParams, d: usize) -> DephasingKraus {
    assert_eq!(d, 3, "the B-side dephasing operators are defined for qutrits");
    let ka = (1.0 - p.gamma_a).sqrt();
    let sa = p.gamma_a.sqrt();
    let kb = (1.0 - p.gamma_b).sqrt();
    let sb = p.gamma_b.sqrt();
    DephasingKraus {
        qubit: vec![
            ComplexMatrix::diagonal(&[1.0, ka]),
            ComplexMatrix::diagonal(&[0.0, sa]),
        ],
        qudit: vec![
            ComplexMatrix::diagonal(&[1.0, kb, kb]),
            ComplexMatrix::diagonal(&[0.0, sb, 0.0]),
            ComplexMatrix::diagonal(&[0.0, 0.0, sb]),
        ],
    }
}

/// Experimental extrapolation of the B-side dephasing to d > 3 levels:
/// F₀ = diag(1, √(1−γ), …, √(1−γ)) and one √γ operator per level ≥ 1.
/// The qutrit form above is the only one exercised by the verification
/// suite; this generalization is a plausible extension, not a vetted one.
pub fn generalized_qudit_dephasing_kraus(gamma: f64, d: usize) -> Result<Vec<ComplexMatrix>> {
    if !(0.0..=1.0).contains(&gamma) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )));
    }
    assert!(d >= 2, "dephasing needs at least two levels");
    let keep = (1.0 - gamma).sqrt();
    let flip = gamma.sqrt();
    let mut f0 = vec![keep; d];
    f0[0] = 1.0;
    let mut ops = vec![ComplexMatrix::diagonal(&f0)];
    for k in 1..d {
        let mut fk = vec![0.0; d];
        fk[k] = flip;
        ops.push(ComplexMatrix::diagonal(&fk));
    }
    Ok(ops)
}

/// Apply the product dephasing channel Σ_{ij} (E_i⊗F_j) ρ (E_i⊗F_j)† to a
/// 2⊗3 state. Trace-preserving; diagonal entries are untouched.
pub fn apply_dephasing(rho: &DensityMatrix, p: &DephasingParams) -> Result<DensityMatrix> {
    assert_eq!(rho.dim_a(), 2, "dephasing channel expects a 2x3 state");
    assert_eq!(rho.dim_b(), 3, "dephasing channel expects a 2x3 state");
    let kraus = dephasing_kraus(p, 3);
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in kraus.joint_operators() {
        out.add_scaled(&k.matmul(rho.matrix()).matmul(&k.adjoint()), 1.0);
    }
    DensityMatrix::new(out.symmetrized(), 2, 3)
}

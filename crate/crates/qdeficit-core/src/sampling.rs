//! Seeded random generators for states, bases, and parameters. Everything is
//! driven by a caller-supplied RNG so the property suites stay deterministic
//! run to run.

use crate::matrix::{Complex64, ComplexMatrix};
use crate::measurement::MeasurementBasis;
use crate::decoherence::DephasingParams;
use crate::state::{DensityMatrix, TwoParamState};
use rand::Rng;

/// Random Hermitian matrix with entries on the order of `scale`.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize, scale: f64) -> ComplexMatrix {
    let raw = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(
            rng.random_range(-scale..scale),
            rng.random_range(-scale..scale),
        )
    });
    raw.symmetrized()
}

/// Random full-rank density matrix via G·G†/Tr(G·G†).
pub fn random_density_matrix(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let dim = dim_a * dim_b;
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let gram = g.matmul(&g.adjoint());
    let normalized = gram.scale(1.0 / gram.trace().re).symmetrized();
    DensityMatrix::new(normalized, dim_a, dim_b).expect("Gram construction is a valid state")
}

/// Uniformly random valid (r, t) family parameters at dimension d.
pub fn random_family_params(rng: &mut impl Rng, d: usize) -> TwoParamState {
    let t = rng.random_range(0.0..1.0);
    let r_max = (1.0 - t) / (2.0 * (d as f64 - 2.0));
    let r = if r_max > 0.0 {
        rng.random_range(0.0..r_max)
    } else {
        0.0
    };
    TwoParamState::new(r, t, d).expect("sampled parameters satisfy the constraint")
}

/// Uniformly random Bloch angles θ ∈ [0, π), φ ∈ [0, 2π).
pub fn random_measurement_basis(rng: &mut impl Rng) -> MeasurementBasis {
    MeasurementBasis::new(
        rng.random_range(0.0..std::f64::consts::PI),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
    .expect("sampled angles are in range")
}

/// Uniformly random dephasing probabilities.
pub fn random_dephasing(rng: &mut impl Rng) -> DephasingParams {
    DephasingParams::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))
        .expect("sampled probabilities are in range")
}

/// Random classical-quantum 2⊗d state Σ_k p_k |k′⟩⟨k′| ⊗ ρ_k, diagonal in a
/// random qubit basis. Such states have zero deficit by definition.
pub fn random_classical_quantum(rng: &mut impl Rng, d: usize) -> DensityMatrix {
    let basis = random_measurement_basis(rng);
    let (p0, p1) = basis.projectors();
    let p = rng.random_range(0.1..0.9);
    let mut out = ComplexMatrix::zeros(2 * d);
    for (weight, proj) in [(p, p0), (1.0 - p, p1)] {
        let side = random_density_matrix(rng, 1, d);
        out.add_scaled(&proj.tensor_product(side.matrix()), weight);
    }
    DensityMatrix::new(out.symmetrized(), 2, d)
        .expect("convex mixture of product states is a valid state")
}

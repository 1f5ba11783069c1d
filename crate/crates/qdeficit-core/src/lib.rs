//! Numerical toolkit for one-way quantum deficit, weak-measurement deficit,
//! and negativity on qubit–qudit states, with dephasing dynamics.
//!
//! The crate centers on a two-parameter family of 2⊗d density matrices built
//! from Bell-state projectors plus a diagonal tail. For that family every
//! headline quantity has both a closed form and a brute-force numerical
//! route (basis minimization over von Neumann entropies, partial-transpose
//! trace norms), and [`verify::run_verify`] checks the two against each other
//! across parameter grids with pinned tolerances.
//!
//! Layout:
//! - [`matrix`]: dense complex matrices with the tensor/partial operations
//!   quantum states need.
//! - [`eigen`]: cyclic Jacobi eigensolver for Hermitian matrices.
//! - [`state`]: density-matrix validation and the two-parameter family.
//! - [`measurement`]: projective and weak measurements on the qubit side.
//! - [`decoherence`]: phase-damping Kraus channels and decay-rate helpers.
//! - [`correlations`]: entropies, deficits, negativity — closed forms and
//!   numerical minimizers.
//! - [`minimize`]: the derivative-free 2-D simplex search used above.
//! - [`sampling`]: seeded random generators for states, bases, channels.
//! - [`verify`]: the self-check suite with fault injection.

pub mod correlations;
pub mod decoherence;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod measurement;
pub mod minimize;
pub mod sampling;
pub mod state;
pub mod verify;

pub use correlations::{
    deficit_closed_form, deficit_numerical, dephased_deficit_closed_form,
    dephased_negativity_closed_form, dephased_weak_deficit_closed_form, negativity,
    negativity_closed_form, von_neumann_entropy, weak_deficit_closed_form, xlog2x,
    CorrelationPoint, DeficitResult, EIGENVALUE_FLOOR,
};
pub use decoherence::{
    apply_dephasing, dephasing_kraus, gamma_from_decay, generalized_qudit_dephasing_kraus,
    DecayRates, DephasingKraus, DephasingParams,
};
pub use eigen::{
    hermitian_eigenvalues, trace_norm_hermitian, EigenWorkspace, HERMITICITY_TOL, MAX_SWEEPS,
    OFF_DIAGONAL_TOL,
};
pub use error::{Error, Result};
pub use matrix::{Complex64, ComplexMatrix};
pub use measurement::{
    projective_post_state, weak_post_state, MeasurementBasis, WeakMeasurement, MAX_WEAK_STRENGTH,
};
pub use minimize::nelder_mead_2d;
pub use sampling::{
    random_classical_quantum, random_density_matrix, random_dephasing, random_family_params,
    random_hermitian, random_measurement_basis,
};
pub use state::{
    bell_projector, build_two_param_state, validate_density_matrix, BellLabel, DensityMatrix,
    TwoParamState,
};
pub use verify::{run_verify, Fault, PropertyReport, VerifyConfig, VerifyReport};

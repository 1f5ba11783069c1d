//! Shared fixtures for the benchmark suite.

use qdeficit_core::{DensityMatrix, DephasingParams, TwoParamState};

/// A representative entangled state: r = 0.03, t = 0.58, qutrit side.
pub fn entangled_state() -> TwoParamState {
    TwoParamState::new(0.03, 0.58, 3).expect("parameters are in range")
}

/// The same parameter point embedded at a larger qudit dimension.
pub fn entangled_state_dim(d: usize) -> TwoParamState {
    let r = 0.03 * 2.0 / (2.0 * (d as f64 - 2.0));
    TwoParamState::new(r, 0.58, d).expect("parameters are in range")
}

/// Density matrix of [`entangled_state`], ready for the numerical kernels.
pub fn entangled_density() -> DensityMatrix {
    entangled_state().density_matrix()
}

/// Moderate two-sided damping used by the channel benchmarks.
pub fn moderate_dephasing() -> DephasingParams {
    DephasingParams::new(0.3, 0.3).expect("rates are in range")
}

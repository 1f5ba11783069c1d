//! Sweep drivers: build the row parameter lists, evaluate closed forms (in
//! parallel when asked), and optionally cross-check every row against the
//! numerical oracles.

use qdeficit_core::{CorrelationPoint, DephasingParams, TwoParamState};
use rayon::prelude::*;

/// Maximum closed-form vs numerical deviation tolerated by `--check`.
pub const CHECK_TOL: f64 = 1e-8;

#[derive(Debug)]
pub struct SweepOutcome {
    /// (sweep parameter, measures), in sweep-index order.
    pub rows: Vec<(f64, CorrelationPoint)>,
    /// Worst per-row deviation from the numerical recomputation, when checked.
    pub max_check_deviation: Option<f64>,
}

pub struct SweepOptions {
    pub check: bool,
    pub grid_n: usize,
    pub jobs: usize,
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| format!("could not build worker pool: {e}"))
}

/// Fixed-s sweep over t ∈ [0, 1−3s]; r = (1−3s−t)/(2(d−2)) keeps the third
/// weight exactly at s along the whole slice.
pub fn run_fig1_sweep(
    s: f64,
    x: f64,
    d: usize,
    steps: usize,
    opts: &SweepOptions,
) -> Result<SweepOutcome, String> {
    if !(0.0..=1.0 / 3.0).contains(&s) {
        return Err(format!(
            "--s {s} violates 0 <= s <= 1/3 (needed so the swept region keeps r >= 0)"
        ));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(format!("--x {x} violates x >= 0"));
    }
    if d < 3 {
        return Err(format!("--d {d} violates d >= 3"));
    }
    if steps < 2 {
        return Err(format!("--steps {steps} violates steps >= 2"));
    }
    let t_max = 1.0 - 3.0 * s;
    let mut states = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = t_max * (i as f64 / (steps - 1) as f64);
        let r = (1.0 - 3.0 * s - t) / (2.0 * (d as f64 - 2.0));
        let st = TwoParamState::new(r.max(0.0), t, d)
            .map_err(|e| format!("sweep row t={t} left the valid region: {e}"))?;
        states.push((t, st));
    }

    let grid_n = opts.grid_n;
    let check = opts.check;
    let computed: Vec<Result<((f64, CorrelationPoint), f64), String>> = pool(opts.jobs)?
        .install(|| {
            states
                .par_iter()
                .map(|(t, st)| {
                    let point = CorrelationPoint::from_closed_forms(st, x);
                    let dev = if check {
                        let oracle = CorrelationPoint::from_numerical(st, x, grid_n)
                            .map_err(|e| format!("numerical check failed at t={t}: {e}"))?;
                        point.max_measure_deviation(&oracle)
                    } else {
                        0.0
                    };
                    Ok(((*t, point), dev))
                })
                .collect()
        });
    assemble(computed, check)
}

/// Fixed-(r,t) sweep over γ_A = γ_B = γ ∈ [0,1] on the dephased qutrit family.
pub fn run_fig2_sweep(
    r: f64,
    t: f64,
    x: f64,
    d: usize,
    steps: usize,
    opts: &SweepOptions,
) -> Result<SweepOutcome, String> {
    if d != 3 {
        return Err(format!(
            "--d {d} violates d == 3 (the dephasing channel acts on qutrits)"
        ));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(format!("--x {x} violates x >= 0"));
    }
    if steps < 2 {
        return Err(format!("--steps {steps} violates steps >= 2"));
    }
    let st = TwoParamState::new(r, t, 3)
        .map_err(|e| format!("--r {r} --t {t} outside the valid region: {e}"))?;

    let grid_n = opts.grid_n;
    let check = opts.check;
    let computed: Vec<Result<((f64, CorrelationPoint), f64), String>> = pool(opts.jobs)?
        .install(|| {
            (0..steps)
                .into_par_iter()
                .map(|i| {
                    let gamma = i as f64 / (steps - 1) as f64;
                    let p = DephasingParams::new(gamma, gamma)
                        .map_err(|e| format!("sweep row gamma={gamma}: {e}"))?;
                    let point = CorrelationPoint::from_closed_forms_dephased(&st, &p, x);
                    let dev = if check {
                        let oracle =
                            CorrelationPoint::from_numerical_dephased(&st, &p, x, grid_n)
                                .map_err(|e| {
                                    format!("numerical check failed at gamma={gamma}: {e}")
                                })?;
                        point.max_measure_deviation(&oracle)
                    } else {
                        0.0
                    };
                    Ok(((gamma, point), dev))
                })
                .collect()
        });
    assemble(computed, check)
}

fn assemble(
    computed: Vec<Result<((f64, CorrelationPoint), f64), String>>,
    check: bool,
) -> Result<SweepOutcome, String> {
    let mut rows = Vec::with_capacity(computed.len());
    let mut max_dev: f64 = 0.0;
    for item in computed {
        let (row, dev) = item?;
        rows.push(row);
        max_dev = max_dev.max(dev);
    }
    Ok(SweepOutcome {
        rows,
        max_check_deviation: check.then_some(max_dev),
    })
}

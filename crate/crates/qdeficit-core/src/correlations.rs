//! Correlation measures for 2⊗d states: von Neumann entropy, the one-way
//! quantum deficit (minimum entropy increase over projective qubit
//! measurements, found numerically), its weak-measurement variant, negativity,
//! and the closed-form expressions for the two-parameter family with and
//! without dephasing. Every closed form here has a brute-force numerical
//! counterpart so the two can be cross-checked.

use crate::decoherence::{apply_dephasing, DephasingParams};
use crate::eigen::{hermitian_eigenvalues, trace_norm_hermitian, EigenWorkspace};
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::measurement::{kets_from_angles, weak_post_state, MeasurementBasis, WeakMeasurement};
use crate::minimize::nelder_mead_2d;
use crate::state::{DensityMatrix, TwoParamState};
use std::f64::consts::{PI, TAU};

/// Spectral weights at or below this are treated as exact zeros in entropy
/// sums (the 0·log₂0 = 0 convention, which also swallows −1e-16 eigenvalue
/// ghosts from the eigensolver).
pub const EIGENVALUE_FLOOR: f64 = 1e-15;

/// p·log₂(p) with the 0·log₂0 = 0 convention.
#[inline]
pub fn xlog2x(p: f64) -> f64 {
    if p > EIGENVALUE_FLOOR {
        p * p.log2()
    } else {
        0.0
    }
}

/// S(ρ) = −Tr ρ log₂ ρ, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let evs = hermitian_eigenvalues(rho.matrix())?;
    Ok(-evs.iter().map(|&l| xlog2x(l)).sum::<f64>())
}

/// Outcome of the numerical deficit minimization.
#[derive(Clone, Debug)]
pub struct DeficitResult {
    /// Minimal entropy increase, in bits.
    pub value: f64,
    /// Basis attaining the minimum (grid minimum refined by simplex descent;
    /// ties broken toward the smallest (θ, φ) grid point).
    pub argmin_basis: MeasurementBasis,
    /// max − min of the objective over the angle grid; ~0 when the objective
    /// is measurement-independent.
    pub spread: f64,
}

/// The post-measurement state Σ_j (P_j⊗I) ρ (P_j⊗I) is block diagonal in the
/// rotated product basis, so its spectrum is the union of the spectra of the
/// two d×d blocks B_k = (⟨k′|⊗I) ρ (|k′⟩⊗I). Diagonalizing those instead of
/// the full 2d×2d state roughly quarters the minimizer's inner-loop cost.
fn measured_block(rho: &ComplexMatrix, d: usize, ket: &[Complex64; 2]) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |j, l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                acc += ket[a].conj() * ket[b] * rho.get(a * d + j, b * d + l);
            }
        }
        acc
    })
}

/// One-way quantum deficit by brute force: minimize
/// S(post-measurement state) − S(ρ) over all projective qubit bases via a
/// grid_n×grid_n scan of (θ, φ) ∈ [0,π]×[0,2π) followed by Nelder–Mead
/// refinement down to simplex diameter `refine_tol`.
pub fn deficit_numerical(
    rho: &DensityMatrix,
    grid_n: usize,
    refine_tol: f64,
) -> Result<DeficitResult> {
    assert_eq!(rho.dim_a(), 2, "measurement acts on a qubit subsystem");
    assert!(grid_n >= 8, "grid must be at least 8x8");
    let d = rho.dim_b();
    let mat = rho.matrix();
    let base = von_neumann_entropy(rho)?;

    let mut ws = EigenWorkspace::new();
    let mut err: Option<Error> = None;
    let mut eval = |theta: f64, phi: f64| -> f64 {
        if err.is_some() {
            return f64::INFINITY;
        }
        let (k0, k1) = kets_from_angles(theta, phi);
        let mut post_entropy = 0.0;
        for ket in [&k0, &k1] {
            match ws.eigenvalues(&measured_block(mat, d, ket)) {
                Ok(evs) => {
                    for &l in evs {
                        post_entropy -= xlog2x(l);
                    }
                }
                Err(e) => {
                    err = Some(e);
                    return f64::INFINITY;
                }
            }
        }
        post_entropy - base
    };

    let mut cells = Vec::with_capacity(grid_n * grid_n);
    let mut min_val = f64::INFINITY;
    let mut max_val = f64::NEG_INFINITY;
    let mut arg = (0.0, 0.0);
    for i in 0..grid_n {
        let theta = PI * (i as f64 / (grid_n - 1) as f64);
        for j in 0..grid_n {
            let phi = TAU * (j as f64 / grid_n as f64);
            let v = eval(theta, phi);
            cells.push((v, i, j));
            if v < min_val {
                min_val = v;
                arg = (theta, phi);
            }
            if v > max_val {
                max_val = v;
            }
        }
    }
    let spread = max_val - min_val;

    let wrap_phi = |ph: f64| {
        let ph = ph.rem_euclid(TAU);
        if ph >= TAU {
            0.0
        } else {
            ph
        }
    };
    let steps = (PI / (grid_n - 1) as f64, TAU / grid_n as f64);

    // Refine from the few best well-separated grid cells, not just the single
    // best: on landscapes whose minimum sits between coarse grid points a lone
    // simplex can stall in a neighboring shallow basin.
    cells.sort_by(|a, b| f64::total_cmp(&a.0, &b.0));
    let mut starts: Vec<(f64, f64)> = Vec::new();
    let mut start_cells: Vec<(usize, usize)> = Vec::new();
    for &(_, i, j) in &cells {
        let separated = start_cells.iter().all(|&(si, sj)| {
            let di = si.abs_diff(i);
            let dj = sj.abs_diff(j).min(grid_n - sj.abs_diff(j));
            di.max(dj) >= 2
        });
        if separated {
            start_cells.push((i, j));
            starts.push((
                PI * (i as f64 / (grid_n - 1) as f64),
                TAU * (j as f64 / grid_n as f64),
            ));
        }
        if starts.len() == 3 {
            break;
        }
    }
    // The θ grid endpoints collapse every φ into the same measurement, so the
    // polar caps are unsampled in φ and a minimum hiding there gives the pole
    // a φ-degenerate ridge that traps the simplex. Probe a ring half a step
    // inside each cap and seed refinement from the best probe as well.
    for cap_theta in [0.5 * steps.0, PI - 0.5 * steps.0] {
        let mut best_probe = (f64::INFINITY, (0.0, 0.0));
        for j in 0..8 {
            let phi = TAU * (j as f64 / 8.0);
            let v = eval(cap_theta, phi);
            if v < best_probe.0 {
                best_probe = (v, (cap_theta, phi));
            }
        }
        starts.push(best_probe.1);
    }

    // Refine each start in a tangent-plane chart centered on it: the (θ,φ)
    // chart is singular at the poles, where every φ labels the same point and
    // a simplex walking in angle space stalls on the degenerate ridge. The
    // tangent chart is locally Euclidean everywhere on the sphere, so narrow
    // basins next to a pole are ordinary quadratic bowls in it. A second,
    // tighter simplex at each result polishes stalls before the best is taken.
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let mut value = min_val;
    let mut best_angles = arg;
    for (th0, ph0) in starts {
        let n0 = [th0.sin() * ph0.cos(), th0.sin() * ph0.sin(), th0.cos()];
        let e1 = {
            let raw = if n0[2].abs() < 0.9 {
                cross([0.0, 0.0, 1.0], n0)
            } else {
                cross([1.0, 0.0, 0.0], n0)
            };
            let len = (raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]).sqrt();
            [raw[0] / len, raw[1] / len, raw[2] / len]
        };
        let e2 = cross(n0, e1);
        let to_angles = |u: f64, v: f64| -> (f64, f64) {
            let n = [
                n0[0] + u * e1[0] + v * e2[0],
                n0[1] + u * e1[1] + v * e2[1],
                n0[2] + u * e1[2] + v * e2[2],
            ];
            let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            if len < 1e-12 {
                return (th0, ph0);
            }
            let theta = (n[2] / len).clamp(-1.0, 1.0).acos();
            (theta, wrap_phi(n[1].atan2(n[0])))
        };
        let h = steps.0;
        let ((u1, v1), f1) = nelder_mead_2d(
            |u, v| {
                let (th, ph) = to_angles(u, v);
                eval(th, ph)
            },
            (0.0, 0.0),
            (h, h),
            refine_tol,
            500,
        );
        let ((u2, v2), f2) = nelder_mead_2d(
            |u, v| {
                let (th, ph) = to_angles(u, v);
                eval(th, ph)
            },
            (u1, v1),
            (h / 10.0, h / 10.0),
            refine_tol,
            500,
        );
        let (f, u, v) = if f2 < f1 { (f2, u2, v2) } else { (f1, u1, v1) };
        if f < value {
            value = f;
            best_angles = to_angles(u, v);
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    let (bt, bp) = best_angles;
    let argmin_basis =
        MeasurementBasis::new(bt, bp).expect("clamped and wrapped angles are always in range");
    Ok(DeficitResult {
        value,
        argmin_basis,
        spread,
    })
}

/// Deficit of the family state: s·log₂2s + t·log₂2t − (s+t)·log₂(s+t),
/// independent of both the dimension d and the measurement basis.
pub fn deficit_closed_form(st: &TwoParamState) -> f64 {
    let (s, t) = (st.s(), st.t());
    s + t + xlog2x(s) + xlog2x(t) - xlog2x(s + t)
}

/// Weak-measurement deficit of the family state:
/// −Σ_i Λ_i log₂Λ_i + s·log₂s + t·log₂t with
/// Λ_i = ½[s + t + (−1)^i (s−t)·sech x]. Vanishes at x=0 and converges to
/// [`deficit_closed_form`] as x→∞.
pub fn weak_deficit_closed_form(st: &TwoParamState, x: f64) -> f64 {
    assert!(x >= 0.0, "measurement strength must be nonnegative");
    if x == 0.0 {
        return 0.0;
    }
    let (s, t) = (st.s(), st.t());
    let sech = 1.0 / x.cosh();
    let l0 = 0.5 * (s + t + (s - t) * sech);
    let l1 = 0.5 * (s + t - (s - t) * sech);
    -xlog2x(l0) - xlog2x(l1) + xlog2x(s) + xlog2x(t)
}

/// Negativity via the partial transpose: max{0, ‖ρ^{T_B}‖₁ − 1}.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = rho.matrix().partial_transpose_b(rho.dim_a(), rho.dim_b());
    Ok((trace_norm_hermitian(&pt)? - 1.0).max(0.0))
}

/// Negativity of the family state in closed form: max{0, t − 3s}. The partial
/// transpose has spectrum {(3s−t)/2, (s+t)/2 ×3, r ×2(d−2)} for every d ≥ 3,
/// so this holds at all dimensions; at d=3 it is the same as max{0, 2(r+t)−1}.
pub fn negativity_closed_form(st: &TwoParamState) -> f64 {
    (st.t() - 3.0 * st.s()).max(0.0)
}

/// Deficit of the dephased (d=3) family state:
/// Σ_j λ_j log₂λ_j − (s+t)·log₂(½(s+t)) with
/// λ_j = ½[s + t + (−1)^j (s−t)·√((1−γ_A)(1−γ_B))]. The optimal measurement
/// sits at θ=0 for every damping level.
pub fn dephased_deficit_closed_form(st: &TwoParamState, p: &DephasingParams) -> f64 {
    assert_eq!(st.d(), 3, "dephasing closed forms cover the qutrit case");
    let (s, t) = (st.s(), st.t());
    let k = p.damping_factor();
    let l0 = 0.5 * (s + t + (s - t) * k);
    let l1 = 0.5 * (s + t - (s - t) * k);
    xlog2x(l0) + xlog2x(l1) - xlog2x(s + t) + (s + t)
}

/// Weak-measurement deficit of the dephased (d=3) family state:
/// Σ_j [η_j log₂η_j − ξ_j log₂ξ_j], where η_j is the dephased spectrum weight
/// and ξ_j carries the extra sech x of the weak measurement. Zero at x=0
/// (η_j = ξ_j identically); reduces to [`weak_deficit_closed_form`] at γ=0.
pub fn dephased_weak_deficit_closed_form(
    st: &TwoParamState,
    p: &DephasingParams,
    x: f64,
) -> f64 {
    assert_eq!(st.d(), 3, "dephasing closed forms cover the qutrit case");
    assert!(x >= 0.0, "measurement strength must be nonnegative");
    let (s, t) = (st.s(), st.t());
    let k = p.damping_factor();
    let sech = 1.0 / x.cosh();
    let mut out = 0.0;
    for sign in [1.0, -1.0] {
        let eta = 0.5 * (s + t + sign * (s - t) * k);
        let xi = 0.5 * (s + t + sign * (s - t) * sech * k);
        out += xlog2x(eta) - xlog2x(xi);
    }
    out
}

/// Negativity of the dephased (d=3) family state in closed form:
/// max{0, ⅓[2(2r+t−1) + (2r+4t−1)·√((1−γ_A)(1−γ_B))]}. Reduces to
/// [`negativity_closed_form`] at γ=0; hits exactly zero at finite damping
/// (sudden death) whenever the k-coefficient is positive.
pub fn dephased_negativity_closed_form(st: &TwoParamState, p: &DephasingParams) -> f64 {
    assert_eq!(st.d(), 3, "dephasing closed forms cover the qutrit case");
    let (r, t) = (st.r(), st.t());
    let k = p.damping_factor();
    ((2.0 * (2.0 * r + t - 1.0) + (2.0 * r + 4.0 * t - 1.0) * k) / 3.0).max(0.0)
}

/// One row of a parameter sweep: the state parameters plus the three measures,
/// each computable either from the closed forms or from the numerical oracles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationPoint {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub x: Option<f64>,
    pub gamma_a: Option<f64>,
    pub gamma_b: Option<f64>,
    pub deficit: f64,
    pub weak_deficit: f64,
    pub negativity: f64,
}

impl CorrelationPoint {
    pub fn from_closed_forms(st: &TwoParamState, x: f64) -> Self {
        Self {
            r: st.r(),
            s: st.s(),
            t: st.t(),
            x: Some(x),
            gamma_a: None,
            gamma_b: None,
            deficit: deficit_closed_form(st),
            weak_deficit: weak_deficit_closed_form(st, x),
            negativity: negativity_closed_form(st),
        }
    }

    pub fn from_closed_forms_dephased(
        st: &TwoParamState,
        p: &DephasingParams,
        x: f64,
    ) -> Self {
        Self {
            r: st.r(),
            s: st.s(),
            t: st.t(),
            x: Some(x),
            gamma_a: Some(p.gamma_a()),
            gamma_b: Some(p.gamma_b()),
            deficit: dephased_deficit_closed_form(st, p),
            weak_deficit: dephased_weak_deficit_closed_form(st, p, x),
            negativity: dephased_negativity_closed_form(st, p),
        }
    }

    /// Brute-force recomputation of the same three measures: deficit by grid
    /// minimization, weak deficit as S(weak post-state) − S(ρ), negativity by
    /// the partial-transpose trace norm.
    pub fn from_numerical(st: &TwoParamState, x: f64, grid_n: usize) -> Result<Self> {
        let rho = st.density_matrix();
        let mut point = Self::measures_of(&rho, x, grid_n)?;
        point.r = st.r();
        point.s = st.s();
        point.t = st.t();
        point.x = Some(x);
        Ok(point)
    }

    /// As [`from_numerical`], on the dephased state.
    pub fn from_numerical_dephased(
        st: &TwoParamState,
        p: &DephasingParams,
        x: f64,
        grid_n: usize,
    ) -> Result<Self> {
        let sigma = apply_dephasing(&st.density_matrix(), p)?;
        let mut point = Self::measures_of(&sigma, x, grid_n)?;
        point.r = st.r();
        point.s = st.s();
        point.t = st.t();
        point.x = Some(x);
        point.gamma_a = Some(p.gamma_a());
        point.gamma_b = Some(p.gamma_b());
        Ok(point)
    }

    fn measures_of(rho: &DensityMatrix, x: f64, grid_n: usize) -> Result<Self> {
        let base = von_neumann_entropy(rho)?;
        let weak = weak_post_state(rho, &WeakMeasurement::computational(x)?)?;
        Ok(Self {
            r: 0.0,
            s: 0.0,
            t: 0.0,
            x: None,
            gamma_a: None,
            gamma_b: None,
            deficit: deficit_numerical(rho, grid_n, 1e-10)?.value,
            weak_deficit: von_neumann_entropy(&weak)? - base,
            negativity: negativity(rho)?,
        })
    }

    /// Largest absolute difference across the three measure columns.
    pub fn max_measure_deviation(&self, other: &Self) -> f64 {
        (self.deficit - other.deficit)
            .abs()
            .max((self.weak_deficit - other.weak_deficit).abs())
            .max((self.negativity - other.negativity).abs())
    }
}

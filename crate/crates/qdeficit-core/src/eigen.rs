//! Cyclic Jacobi eigensolver for complex Hermitian matrices, values only.
//!
//! A 2×2 pivot (p,q) with block [[a, b],[b̄, d]] (a, d real) is annihilated by
//! the unitary U = [[c, s],[−s̄, c]] with c real, s = sin(φ)·e^{i·arg b}, and
//! tan(2φ) = 2|b|/(a−d). Writing θ' = (d−a)/(2|b|), the stable small root is
//! tan(φ) = sign(θ')/(|θ'| + √(1+θ'²)). Off-diagonal mass is strictly
//! decreasing across rotations, so cycling over all pivots converges
//! quadratically; the matrices here are at most ~12×12, for which a handful of
//! sweeps reaches machine precision.

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};

/// Inputs farther than this from Hermitian (max entry of |M − M†|) are rejected.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Convergence threshold on the Frobenius norm of the off-diagonal part.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Sweep budget; never approached for the dimensions used here.
pub const MAX_SWEEPS: usize = 100;

/// Reusable buffers for repeated eigenvalue computations of the same (or
/// varying) dimension. The deficit minimizer calls this thousands of times per
/// state, so the working copy is allocated once and recycled.
#[derive(Debug, Default)]
pub struct EigenWorkspace {
    buf: Vec<Complex64>,
    vals: Vec<f64>,
}

impl EigenWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The input is validated against [`HERMITICITY_TOL`], then symmetrized to
    /// absorb rounding before the rotations run.
    pub fn eigenvalues(&mut self, m: &ComplexMatrix) -> Result<&[f64]> {
        let dev = m.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let n = m.dim();
        self.buf.clear();
        self.buf.reserve(n * n);
        let data = m.data();
        for i in 0..n {
            for j in 0..n {
                self.buf
                    .push((data[i * n + j] + data[j * n + i].conj()) * 0.5);
            }
        }

        let mut sweeps = 0;
        loop {
            let off = off_diagonal_norm(&self.buf, n);
            if off < OFF_DIAGONAL_TOL {
                break;
            }
            if sweeps >= MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps,
                    off_norm: off,
                });
            }
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    rotate(&mut self.buf, n, p, q);
                }
            }
            sweeps += 1;
        }

        self.vals.clear();
        self.vals.extend((0..n).map(|i| self.buf[i * n + i].re));
        self.vals.sort_by(f64::total_cmp);
        Ok(&self.vals)
    }
}

/// One Jacobi rotation zeroing the (p,q) entry; updates rows/columns p and q.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let b = a[p * n + q];
    let babs = b.norm();
    if babs < 1e-300 {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * babs);
    let t = if theta.abs() > 1e150 {
        // Asymptotic root; the exact formula would square theta into overflow.
        1.0 / (2.0 * theta)
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let sigma = t * c;
    let s = (b / babs) * sigma;
    let s_conj = s.conj();

    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let ajp = a[j * n + p];
        let ajq = a[j * n + q];
        a[j * n + p] = ajp * c - ajq * s_conj;
        a[j * n + q] = ajp * s + ajq * c;
        let apj = a[p * n + j];
        let aqj = a[q * n + j];
        a[p * n + j] = apj * c - aqj * s;
        a[q * n + j] = apj * s_conj + aqj * c;
    }
    let cross = 2.0 * c * sigma * babs;
    a[p * n + p] = Complex64::new(app * c * c + aqq * sigma * sigma - cross, 0.0);
    a[q * n + q] = Complex64::new(app * sigma * sigma + aqq * c * c + cross, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One-shot convenience wrapper around [`EigenWorkspace`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut ws = EigenWorkspace::new();
    ws.eigenvalues(m).map(|v| v.to_vec())
}

/// Σ|λ_i| — the trace norm of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "eigenvalues {got:?} vs {want:?}");
        }
    }

    #[test]
    fn diagonal_input_sorts_entries() {
        let evs = hermitian_eigenvalues(&ComplexMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_close(&evs, &[1.0, 2.0, 3.0], 0.0);
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = ComplexMatrix::from_fn(2, |i, j| c(if i != j { 1.0 } else { 0.0 }, 0.0));
        let evs = hermitian_eigenvalues(&sx).unwrap();
        assert_close(&evs, &[-1.0, 1.0], 1e-14);
    }

    #[test]
    fn complex_off_diagonal_spectrum() {
        // [[2, 3−4i], [3+4i, 2]] has eigenvalues 2 ∓ 5.
        let m = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(3.0, -4.0),
            (1, 0) => c(3.0, 4.0),
            _ => c(2.0, 0.0),
        });
        let evs = hermitian_eigenvalues(&m).unwrap();
        assert_close(&evs, &[-3.0, 7.0], 1e-13);
    }

    #[test]
    fn tridiagonal_spectrum() {
        let m = ComplexMatrix::from_fn(3, |i, j| {
            c(
                match (i as i64 - j as i64).abs() {
                    0 => 2.0,
                    1 => 1.0,
                    _ => 0.0,
                },
                0.0,
            )
        });
        let evs = hermitian_eigenvalues(&m).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        assert_close(&evs, &[2.0 - r2, 2.0, 2.0 + r2], 1e-13);
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        // Deterministic pseudo-random Hermitian 8×8.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let raw = ComplexMatrix::from_fn(8, |_, _| c(next(), next()));
        let m = raw.symmetrized();
        let evs = hermitian_eigenvalues(&m).unwrap();
        let sum: f64 = evs.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(3);
        m.set(0, 1, c(0.5, 0.0));
        match hermitian_eigenvalues(&m) {
            Err(Error::NotHermitian { deviation }) => assert!((deviation - 0.5).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn trace_norm_of_identity() {
        assert!((trace_norm_hermitian(&ComplexMatrix::identity(6)).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_of_transposed_singlet() {
        // Partial transpose of |ψ⁻⟩⟨ψ⁻| has spectrum {½,½,½,−½} → trace norm 2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)];
        let pt = ComplexMatrix::outer_product(&v).partial_transpose_b(2, 2);
        let evs = hermitian_eigenvalues(&pt).unwrap();
        assert_close(&evs, &[-0.5, 0.5, 0.5, 0.5], 1e-13);
        assert!((trace_norm_hermitian(&pt).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn workspace_is_reusable_across_dimensions() {
        let mut ws = EigenWorkspace::new();
        let a = ComplexMatrix::diagonal(&[2.0, 1.0]);
        let b = ComplexMatrix::diagonal(&[5.0, 4.0, 3.0]);
        assert_close(ws.eigenvalues(&a).unwrap(), &[1.0, 2.0], 0.0);
        assert_close(ws.eigenvalues(&b).unwrap(), &[3.0, 4.0, 5.0], 0.0);
        assert_close(ws.eigenvalues(&a).unwrap(), &[1.0, 2.0], 0.0);
    }
}

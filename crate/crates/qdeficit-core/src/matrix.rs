//! Dense complex square matrices, sized for 2d×2d bipartite problems.
//!
//! Everything downstream — density matrices, measurement operators, Kraus
//! channels — lives in these. Row-major storage, no sparsity, no attempt to
//! scale past a few hundred rows.

use num_complex::Complex;

pub type Complex64 = Complex<f64>;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn assert_finite(v: Complex64) {
    assert!(
        v.re.is_finite() && v.im.is_finite(),
        "non-finite matrix entry: {v}"
    );
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Real diagonal matrix from the given entries.
    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, Complex64::new(e, 0.0));
        }
        m
    }

    /// Build entrywise from a function of (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rank-1 projector |v⟩⟨v| (the vector is not normalized here).
    pub fn outer_product(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        assert_finite(v);
        self.data[i * self.dim + j] = v;
    }

    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        Self::from_fn(self.dim, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        Self::from_fn(self.dim, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) * factor)
    }

    /// self += factor · rhs, without allocating.
    pub fn add_scaled(&mut self, rhs: &Self, factor: f64) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add_scaled");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b * factor;
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Kronecker product with subsystem A (self) as the slow index, so basis
    /// vectors are |i,j⟩ = |i⟩_A ⊗ |j⟩_B at flat index i·dim_b + j.
    pub fn tensor_product(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim, rhs.dim);
        ComplexMatrix::from_fn(da * db, |r, c| {
            self.get(r / db, c / db) * rhs.get(r % db, c % db)
        })
    }

    /// Transpose the B-subsystem indices only:
    /// ⟨i,j| M^{T_B} |k,l⟩ = ⟨i,l| M |k,j⟩.
    pub fn partial_transpose_b(&self, dim_a: usize, dim_b: usize) -> Self {
        assert_eq!(self.dim, dim_a * dim_b, "dimension factorization mismatch");
        ComplexMatrix::from_fn(self.dim, |r, c| {
            let (i, j) = (r / dim_b, r % dim_b);
            let (k, l) = (c / dim_b, c % dim_b);
            self.get(i * dim_b + l, k * dim_b + j)
        })
    }

    /// Trace out subsystem B: ⟨i|Tr_B M|k⟩ = Σ_j ⟨i,j|M|k,j⟩.
    pub fn partial_trace_b(&self, dim_a: usize, dim_b: usize) -> Self {
        assert_eq!(self.dim, dim_a * dim_b, "dimension factorization mismatch");
        ComplexMatrix::from_fn(dim_a, |i, k| {
            (0..dim_b)
                .map(|j| self.get(i * dim_b + j, k * dim_b + j))
                .sum()
        })
    }

    /// Largest entrywise |self − rhs|.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise |M − M†|; zero for exactly Hermitian matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// (M + M†)/2 — absorbs ~1e-16 asymmetry accumulated by channel sums.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }
}

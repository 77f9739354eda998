//! Dense complex matrix kernel.
//!
//! Everything the simulator needs from linear algebra lives here:
//! products, Kronecker products, a cyclic Jacobi eigensolver for
//! Hermitian matrices, matrix exponentials of Hermitian generators, and
//! the trace norm. Matrices are small (dimension at most
//! [`MAX_DIM`](crate::tol::MAX_DIM) = 16), dense, and immutable once
//! built, so the kernel stays dependency-free and every operation is a
//! pure function.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// Square dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong entry
    /// counts, oversized dimensions, and non-finite components.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || dim > tol::MAX_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: tol::MAX_DIM,
            });
        }
        if data.len() != dim * dim {
            return Err(Error::EntryCountMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `U A U^dag` for a same-dimension `U`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.mul(self)?.mul(&u.adjoint())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entry deviation from the adjoint; zero for exactly Hermitian
    /// matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        unitarity_residual(self) <= tol
    }

    /// The exact Hermitian part `(A + A^dag)/2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Max entry residual of `U^dag U - I`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let gram = u.adjoint().mul(u).expect("same dimension");
    gram.max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

/// Kronecker product. `out[(i*db + k, j*db + l)] = a[(i,j)] * b[(k,l)]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a.dim() * b.dim();
    if dim > tol::MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim,
            max: tol::MAX_DIM,
        });
    }
    let db = b.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let aij = a[(i, j)];
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues in ascending order (ties keep their pre-sort index
    /// order, so the result is deterministic).
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps annihilate off-diagonal entries with complex Givens rotations
/// until the off-diagonal Frobenius mass falls below
/// [`tol::JACOBI_OFF_DIAG`]. Adequate and dependency-free at the 16x16
/// scale this crate works at; rejects matrices whose Hermiticity
/// deviation exceeds `tol`.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let dev = a.hermiticity_deviation();
    if dev > tol {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.max_abs().max(1.0);
    let floor = tol::JACOBI_OFF_DIAG.max(tol::JACOBI_OFF_DIAG_FLOOR_REL * scale);

    let mut off = off_diagonal_mass(&m);
    let mut sweeps = 0;
    while off > tol::JACOBI_OFF_DIAG && sweeps < tol::JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        off = off_diagonal_mass(&m);
        sweeps += 1;
    }
    if off > floor {
        return Err(Error::EigNoConvergence { off_diagonal: off });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating `m[(p, q)]`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let alpha = m[(p, p)].re;
    let beta = m[(q, q)].re;
    let tau = (beta - alpha) / (2.0 * r);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = m.dim();
    // Right-multiply by the rotation: columns p and q.
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * s * phase.conj();
        m[(k, q)] = mkp * s * phase + mkq * c;
    }
    // Left-multiply by its adjoint: rows p and q.
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * s * phase;
        m[(q, k)] = mpk * s * phase.conj() + mqk * c;
    }
    // The rotation zeroes this pair by construction.
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s * phase.conj();
        v[(k, q)] = vkp * s * phase + vkq * c;
    }
}

/// `exp(-i * theta * h)` for Hermitian `h`, via the eigendecomposition
/// `V diag(exp(-i theta lambda)) V^dag`.
pub fn expm_i_hermitian(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    if !theta.is_finite() {
        return Err(Error::NonFiniteParameter("theta"));
    }
    let eig = hermitian_eig(h, tol::HERMITICITY)?;
    let n = h.dim();
    let v = &eig.eigenvectors;
    let mut scaled = ComplexMatrix::zeros(n);
    for j in 0..n {
        let u = Complex64::from_polar(1.0, -theta * eig.eigenvalues[j]);
        for i in 0..n {
            scaled[(i, j)] = v[(i, j)] * u;
        }
    }
    scaled.mul(&v.adjoint())
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
pub fn trace_norm_hermitian(a: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(a, tol::HERMITICITY)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// The 2x2 Pauli matrices, indexed I, X, Y, Z.
pub fn pauli(index: usize) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let data = match index {
        0 => vec![one, z, z, one],
        1 => vec![z, one, one, z],
        2 => vec![z, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), z],
        3 => vec![one, z, z, -one],
        _ => panic!("Pauli index {index} out of range"),
    };
    ComplexMatrix { dim: 2, data }
}

//! Dense complex matrices sized for a handful of qubits.
//!
//! Everything here is row-major and allocation-per-result; the largest matrix
//! the rest of the crate builds is 8x8 (32x32 inside the dilation tests).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex<f64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// `|v><v|` for a column vector `v`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self[(row, col)]
    }

    /// Iterates over rows as slices.
    pub fn row_iter(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.cols)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Sum of the diagonal. Panics on a non-square matrix.
    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                detail: format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, rhs.rows, rhs.cols
                ),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                op,
                detail: format!("{}x{} and {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    /// Largest entrywise modulus of `self - rhs`; infinite on a shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|M_ij - conj(M_ji)|`; infinite for a non-square matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn ensure_hermitian(&self) -> Result<usize> {
        let n = self.ensure_square()?;
        let defect = self.hermiticity_defect();
        if defect > tol::HERMITIAN {
            return Err(Error::NotHermitian { defect });
        }
        Ok(n)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

// The operator forms panic on shape mismatch; use `matmul`/`try_add`/`try_sub`
// where shapes come from the caller.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_hermitian()?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
            return Err(Error::TraceNotUnit {
                re: tr.re,
                im: tr.im,
            });
        }
        let min_eigenvalue = hermitian_eigenvalues(&matrix)?[0];
        if min_eigenvalue < tol::PSD {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Divides by the trace, then validates.
    pub fn normalized(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_square()?;
        let tr = matrix.trace();
        if tr.re.is_nan() || tr.re <= 0.0 {
            return Err(Error::TraceNotUnit {
                re: tr.re,
                im: tr.im,
            });
        }
        Self::new(matrix.scale_real(1.0 / tr.re))
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn from_pure(state: &[C64]) -> Result<Self> {
        Self::normalized(ComplexMatrix::outer(state))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("density matrix is Hermitian")
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // Tr(rho rho) = sum_ij |rho_ij|^2 for Hermitian rho.
        self.matrix.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a[(ia, ja)];
            if x == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    out
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

fn compose(digits: impl Iterator<Item = (usize, usize)>) -> usize {
    digits.fold(0, |acc, (digit, dim)| acc * dim + digit)
}

fn check_dims(op: &'static str, m: &ComplexMatrix, dims: &[usize]) -> Result<usize> {
    let n = m.ensure_square()?;
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || total != n {
        return Err(Error::DimensionMismatch {
            op,
            detail: format!("subsystem dims {dims:?} do not multiply to {n}"),
        });
    }
    Ok(n)
}

/// Partial trace of a square matrix over every subsystem not listed in `keep`.
///
/// `keep` must be strictly increasing; the kept subsystems stay in their
/// original order.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let n = check_dims("partial_trace", m, dims)?;
    let valid = !keep.is_empty()
        && keep.windows(2).all(|w| w[0] < w[1])
        && keep.iter().all(|&k| k < dims.len());
    if !valid {
        return Err(Error::InvalidSubsystems {
            dims: dims.to_vec(),
            keep: keep.to_vec(),
        });
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|s| !keep.contains(s)).collect();
    let out_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let decoded: Vec<Vec<usize>> = (0..n).map(|i| digits(i, dims)).collect();
    let kept_index = |d: &[usize]| compose(keep.iter().map(|&k| (d[k], dims[k])));

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..n {
        for j in 0..n {
            let (di, dj) = (&decoded[i], &decoded[j]);
            if traced.iter().all(|&t| di[t] == dj[t]) {
                out[(kept_index(di), kept_index(dj))] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Reduced state on the subsystems in `keep`.
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    DensityMatrix::new(partial_trace_matrix(&rho.matrix, dims, keep)?)
}

/// Transposes subsystem `transposed` of a square matrix on `dims`.
///
/// For two parties `partial_transpose(m, &[dA, dB], 0)` is `m^{Γ_A}`.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: &[usize],
    transposed: usize,
) -> Result<ComplexMatrix> {
    let n = check_dims("partial_transpose", m, dims)?;
    if transposed >= dims.len() {
        return Err(Error::InvalidSubsystems {
            dims: dims.to_vec(),
            keep: vec![transposed],
        });
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let mut di = digits(i, dims);
        for j in 0..n {
            let mut dj = digits(j, dims);
            core::mem::swap(&mut di[transposed], &mut dj[transposed]);
            let ti = compose(di.iter().copied().zip(dims.iter().copied()));
            let tj = compose(dj.iter().copied().zip(dims.iter().copied()));
            out[(ti, tj)] = m[(i, j)];
            core::mem::swap(&mut di[transposed], &mut dj[transposed]);
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unit eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies a
/// real Jacobi rotation, so the working matrix stays exactly Hermitian with a
/// real diagonal.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = m.ensure_hermitian()?;
    let mut a = m.clone();
    // Symmetrize so the iteration starts from an exactly Hermitian matrix.
    for i in 0..n {
        a[(i, i)].im = 0.0;
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let w = a[(i, j)].norm_sqr();
                total += w;
                if i != j {
                    off += w;
                }
            }
        }
        if off == 0.0 || off <= 1e-6 * f64::EPSILON * f64::EPSILON * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                // J acts on the (p, q) plane as [[c, s], [-s conj(e), c conj(e)]].
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c + akq * jqp;
                    a[(k, q)] = akp * s + akq * jqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c + vkq * jqp;
                    v[(k, q)] = vkp * s + vkq * jqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c + aqk * jqp.conj();
                    a[(q, k)] = apk * s + aqk * jqq.conj();
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// `||m||_1 = sum |lambda_i|` for Hermitian `m`.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

/// `exp(m)` by scaling and squaring around a truncated Taylor series.
pub fn matrix_exponential(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.ensure_square()?;
    let norm = m.one_norm();
    let squarings = if norm > 0.5 {
        libm::ceil(libm::log2(norm / 0.5)) as i32
    } else {
        0
    };
    let scaled = m.scale_real(libm::exp2(-f64::from(squarings)));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale_real(1.0 / f64::from(k));
        result = &result + &term;
        if term.one_norm() <= 1e-3 * f64::EPSILON * result.one_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell() -> DensityMatrix {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(&[c(h, 0.0), ZERO, ZERO, c(h, 0.0)]).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![ONE; 3]),
            Err(Error::EntryCount { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 2, vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
        let p = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        assert_eq!(
            tensor(&p, &p),
            ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn density_matrix_validation() {
        let not_herm =
            ComplexMatrix::new(2, 2, vec![c(0.5, 0.0), c(0.1, 0.0), ZERO, c(0.5, 0.0)]).unwrap();
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::TraceNotUnit { .. })
        ));
        let negative = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotPositive { .. })
        ));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            DensityMatrix::new(rect),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let rho = bell();
        for keep in [[0], [1]] {
            let marginal = partial_trace(&rho, &[2, 2], &keep).unwrap();
            let expected = ComplexMatrix::from_real_diagonal(&[0.5, 0.5]);
            assert!(marginal.matrix().max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = bell();
        assert!(matches!(
            partial_trace(&rho, &[2, 3], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, &[2, 2], &[2]),
            Err(Error::InvalidSubsystems { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, &[2, 2], &[1, 0]),
            Err(Error::InvalidSubsystems { .. })
        ));
    }

    #[test]
    fn partial_transpose_of_diagonal_is_identity_map() {
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(partial_transpose(&m, &[2, 2], 0).unwrap(), m);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(bell().matrix(), &[2, 2], 0).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn partial_transpose_dimension_mismatch() {
        let m = ComplexMatrix::identity(4);
        assert!(partial_transpose(&m, &[2, 3], 0).is_err());
        assert!(partial_transpose(&m, &[2, 2], 2).is_err());
    }

    #[test]
    fn eigenvalues_of_diagonal_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pure_state_spectrum() {
        let ev = bell().eigenvalues();
        let expected = [0.0, 0.0, 0.0, 1.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(
            trace_norm(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0])).unwrap(),
            2.0
        );
        assert!((trace_norm(bell().matrix()).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_of_zero_and_diagonal() {
        let zero = ComplexMatrix::zeros(3, 3);
        assert_eq!(
            matrix_exponential(&zero).unwrap(),
            ComplexMatrix::identity(3)
        );
        let d = ComplexMatrix::from_diagonal(&[c(0.0, core::f64::consts::PI), ZERO]);
        let e = matrix_exponential(&d).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[-1.0, 1.0]);
        assert!(e.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn purity_of_pure_and_mixed() {
        assert!((bell().purity() - 1.0).abs() < 1e-15);
        assert!((DensityMatrix::maximally_mixed(4).purity() - 0.25).abs() < 1e-15);
    }
}

//! Dense complex matrices and the handful of kernels every other module needs:
//! Kronecker products, the partial trace over the left tensor factor, and a
//! Jacobi eigensolver for Hermitian matrices used as the PSD oracle.
//!
//! Storage is row-major. Sizes stay at desk scale (a few hundred rows at
//! most), so there is no blocking or sparse path.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

/// Default relative tolerance used when a caller has no better value.
pub const DEFAULT_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;

pub type C64 = Complex64;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (max deviation {deviation:e}, allowed {allowed:e})")]
    NotHermitian { deviation: f64, allowed: f64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has {len} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// The matrix unit `E_ij` of size `n x n` (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data, rejecting wrong lengths and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch(format!(
                "ragged rows: expected {c} columns, found a row with {}",
                bad.len()
            )));
        }
        Self::from_vec(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self {
            rows,
            cols,
            data: values.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.cols.max(1)).map(<[C64]>::to_vec).take(self.rows).collect()
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, other: &CMatrix, k: C64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add_scaled shape");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * k;
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij - b_ij|`; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "max_abs_diff shape");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "frobenius_diff shape");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max |a - a†|` over entries.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(a + a†) / 2`
    pub fn hermitian_part(&self) -> CMatrix {
        assert!(self.is_square());
        CMatrix::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &CMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] += block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Submatrix made of the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> CMatrix {
        CMatrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, C64::new(-1.0, 0.0));
        out
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

impl AddAssign<&CMatrix> for CMatrix {
    fn add_assign(&mut self, rhs: &CMatrix) {
        self.add_scaled(rhs, C64::new(1.0, 0.0));
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Standard Kronecker product, `(a.rows*b.rows) x (a.cols*b.cols)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a[(i, j)];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// An element of `M_d ⊗ M_n` with its factor dimensions recorded.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockTensor {
    dim_left: usize,
    dim_right: usize,
    matrix: CMatrix,
}

impl BlockTensor {
    pub fn new(dim_left: usize, dim_right: usize, matrix: CMatrix) -> Result<Self, LinalgError> {
        let size = dim_left * dim_right;
        if matrix.rows() != size || matrix.cols() != size {
            return Err(LinalgError::DimensionMismatch(format!(
                "block tensor of factors {dim_left}x{dim_right} needs a {size}x{size} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            dim_left,
            dim_right,
            matrix,
        })
    }

    pub fn zeros(dim_left: usize, dim_right: usize) -> Self {
        let size = dim_left * dim_right;
        Self {
            dim_left,
            dim_right,
            matrix: CMatrix::zeros(size, size),
        }
    }

    pub fn from_kron(left: &CMatrix, right: &CMatrix) -> Self {
        assert!(left.is_square() && right.is_square());
        Self {
            dim_left: left.rows(),
            dim_right: right.rows(),
            matrix: kron(left, right),
        }
    }

    pub fn dim_left(&self) -> usize {
        self.dim_left
    }

    pub fn dim_right(&self) -> usize {
        self.dim_right
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Accumulates `left ⊗ right` without materialising the Kronecker product.
    pub fn add_kron(&mut self, left: &CMatrix, right: &CMatrix) {
        assert_eq!(left.rows(), self.dim_left);
        assert_eq!(right.rows(), self.dim_right);
        let n = self.dim_right;
        for i in 0..self.dim_left {
            for j in 0..self.dim_left {
                let x = left[(i, j)];
                if x == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        self.matrix[(i * n + k, j * n + l)] += x * right[(k, l)];
                    }
                }
            }
        }
    }

    /// Product of two tensors with matching factor dimensions.
    pub fn mul(&self, other: &BlockTensor) -> Result<BlockTensor, LinalgError> {
        if self.dim_left != other.dim_left || self.dim_right != other.dim_right {
            return Err(LinalgError::DimensionMismatch(format!(
                "tensor product of {}x{} and {}x{} factors",
                self.dim_left, self.dim_right, other.dim_left, other.dim_right
            )));
        }
        Ok(BlockTensor {
            dim_left: self.dim_left,
            dim_right: self.dim_right,
            matrix: self.matrix.matmul(&other.matrix),
        })
    }

    /// `(x ⊗ I) · self`, with `x` acting on the left factor only.
    pub fn left_apply(&self, x: &CMatrix) -> BlockTensor {
        assert_eq!(x.rows(), self.dim_left);
        assert_eq!(x.cols(), self.dim_left);
        let n = self.dim_right;
        let size = self.dim_left * n;
        let mut out = CMatrix::zeros(size, size);
        for a in 0..self.dim_left {
            for b in 0..self.dim_left {
                let xab = x[(a, b)];
                if xab == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    let src = self.matrix.row(b * n + k);
                    for (col, &v) in src.iter().enumerate() {
                        out[(a * n + k, col)] += xab * v;
                    }
                }
            }
        }
        BlockTensor {
            dim_left: self.dim_left,
            dim_right: n,
            matrix: out,
        }
    }
}

/// `tr_left(t)`: the `n x n` matrix with entries `Σ_k t[(k,i),(k,j)]`.
pub fn partial_trace_left(t: &BlockTensor) -> CMatrix {
    let n = t.dim_right;
    let mut out = CMatrix::zeros(n, n);
    for k in 0..t.dim_left {
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += t.matrix[(k * n + i, k * n + j)];
            }
        }
    }
    out
}

/// `tr_left[(x ⊗ I) t]` computed without forming the product.
pub fn partial_trace_left_with(x: &CMatrix, t: &BlockTensor) -> CMatrix {
    assert_eq!(x.rows(), t.dim_left);
    let n = t.dim_right;
    let mut out = CMatrix::zeros(n, n);
    for a in 0..t.dim_left {
        for b in 0..t.dim_left {
            let xab = x[(a, b)];
            if xab == C64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += xab * t.matrix[(b * n + i, a * n + j)];
                }
            }
        }
    }
    out
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

/// Diagonalises the Hermitian part of `a` with cyclic complex Jacobi
/// rotations. Deterministic for a given input.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm();
    if n <= 1 || scale == 0.0 {
        let values = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok(HermitianEigen { values, vectors: v });
    }
    let threshold = (f64::EPSILON * scale) * (f64::EPSILON * scale);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m[(p, q)];
                let babs = b.norm();
                if babs * babs <= threshold / ((n * n) as f64) {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phase = b / babs; // e^{iφ}
                let theta = 0.5 * (2.0 * babs).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                // Columns p,q of the rotation: [c, -s e^{-iφ}] and [s, c e^{-iφ}].
                let u00 = C64::new(c, 0.0);
                let u01 = C64::new(s, 0.0);
                let u10 = phase.conj() * (-s);
                let u11 = phase.conj() * c;
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * u00 + akq * u10;
                    m[(k, q)] = akp * u01 + akq * u11;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
                    m[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u00 + vkq * u10;
                    v[(k, q)] = vkp * u01 + vkq * u11;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = v.select_columns(&order);
    Ok(HermitianEigen { values, vectors })
}

fn check_hermitian(a: &CMatrix, tol: f64) -> Result<(), LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.hermitian_deviation();
    let allowed = tol * a.max_abs().max(1.0);
    if deviation > allowed {
        return Err(LinalgError::NotHermitian { deviation, allowed });
    }
    Ok(())
}

/// Smallest eigenvalue of `(a + a†)/2`. Rejects inputs whose anti-Hermitian
/// part exceeds `tol * max(1, ‖a‖_max)`.
pub fn min_eigenvalue_hermitian(a: &CMatrix, tol: f64) -> Result<f64, LinalgError> {
    check_hermitian(a, tol)?;
    if a.rows() == 0 {
        return Ok(0.0);
    }
    Ok(hermitian_eigen(a)?.values[0])
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PsdVerdict {
    pub psd: bool,
    /// Smallest eigenvalue of the Hermitised matrix.
    pub min_eigenvalue: f64,
    /// Spectral norm, used to scale the tolerance.
    pub spectral_norm: f64,
}

/// PSD test: `λ_min ≥ -tol * max(1, ‖a‖₂)`.
pub fn is_psd(a: &CMatrix, tol: f64) -> Result<PsdVerdict, LinalgError> {
    check_hermitian(a, tol)?;
    if a.rows() == 0 {
        return Ok(PsdVerdict {
            psd: true,
            min_eigenvalue: 0.0,
            spectral_norm: 0.0,
        });
    }
    let eig = hermitian_eigen(a)?;
    let lo = eig.values[0];
    let hi = *eig.values.last().unwrap();
    let norm = lo.abs().max(hi.abs());
    Ok(PsdVerdict {
        psd: lo >= -tol * norm.max(1.0),
        min_eigenvalue: lo,
        spectral_norm: norm,
    })
}

/// PSD verdict that never fails on non-Hermitian input: such matrices are
/// reported as not PSD, with the witness taken from their Hermitian part.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PsdCheck {
    pub psd: bool,
    pub hermitian: bool,
    pub min_eigenvalue: f64,
}

pub fn check_psd(a: &CMatrix, tol: f64) -> PsdCheck {
    match is_psd(a, tol) {
        Ok(v) => PsdCheck {
            psd: v.psd,
            hermitian: true,
            min_eigenvalue: v.min_eigenvalue,
        },
        Err(_) => {
            let min = hermitian_eigen(a).map(|e| e.values.first().copied().unwrap_or(0.0)).unwrap_or(f64::NAN);
            PsdCheck {
                psd: false,
                hermitian: false,
                min_eigenvalue: min,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap4() -> CMatrix {
        let mut s = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                s[(i * 2 + j, j * 2 + i)] = c64(1.0, 0.0);
            }
        }
        s
    }

    #[test]
    fn kron_identities_and_units() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
        let e11 = CMatrix::unit(2, 0, 0);
        let k = kron(&e11, &e11);
        assert_eq!(k, CMatrix::unit(4, 0, 0));
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(4, 1);
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (8, 3));
    }

    #[test]
    fn partial_trace_of_identity_factor() {
        let x = CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let t = BlockTensor::from_kron(&CMatrix::identity(2), &x);
        assert_eq!(partial_trace_left(&t), x.scale_real(2.0));
        let t = BlockTensor::from_kron(&CMatrix::unit(2, 0, 1), &x);
        assert!(partial_trace_left(&t).is_zero());
    }

    #[test]
    fn partial_trace_with_matches_explicit_product() {
        let x = CMatrix::from_fn(3, 3, |i, j| c64(i as f64 - j as f64, (i * j) as f64));
        let t = CMatrix::from_fn(6, 6, |i, j| c64((i + 2 * j) as f64, i as f64 - 0.5 * j as f64));
        let t = BlockTensor::new(3, 2, t).unwrap();
        let explicit = partial_trace_left(&BlockTensor::new(3, 2, kron(&x, &CMatrix::identity(2)).matmul(t.matrix())).unwrap());
        assert!(partial_trace_left_with(&x, &t).max_abs_diff(&explicit) < 1e-12);
        assert!(t.left_apply(&x).matrix().max_abs_diff(&kron(&x, &CMatrix::identity(2)).matmul(t.matrix())) < 1e-12);
    }

    #[test]
    fn eigen_of_identity_and_swap() {
        assert_eq!(min_eigenvalue_hermitian(&CMatrix::identity(2), 1e-9).unwrap(), 1.0);
        let eig = hermitian_eigen(&swap4()).unwrap();
        let expected = [-1.0, 1.0, 1.0, 1.0];
        for (v, e) in eig.values.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvectors_diagonalise() {
        let a = CMatrix::from_fn(5, 5, |i, j| {
            let re = ((i * 7 + j * 3) % 5) as f64 + ((j * 7 + i * 3) % 5) as f64;
            let im = (i as f64 - j as f64) * 0.3;
            c64(re, im)
        });
        assert!(a.hermitian_deviation() < 1e-15);
        let eig = hermitian_eigen(&a).unwrap();
        let d = CMatrix::diag(&eig.values.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
        let rebuilt = eig.vectors.matmul(&d).matmul(&eig.vectors.dagger());
        assert!(rebuilt.max_abs_diff(&a) < 1e-12);
        let gram = eig.vectors.dagger().matmul(&eig.vectors);
        assert!(gram.max_abs_diff(&CMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn psd_examples() {
        let v = is_psd(&CMatrix::zeros(3, 3), 1e-9).unwrap();
        assert!(v.psd);
        let d = CMatrix::diag(&[c64(1.0, 0.0), c64(-1e-3, 0.0)]);
        let v = is_psd(&d, 1e-9).unwrap();
        assert!(!v.psd);
        assert!((v.min_eigenvalue + 1e-3).abs() < 1e-15);
        let v = is_psd(&swap4(), 1e-9).unwrap();
        assert!(!v.psd);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = CMatrix::unit(2, 0, 1);
        assert!(matches!(
            min_eigenvalue_hermitian(&a, 1e-9),
            Err(LinalgError::NotHermitian { .. })
        ));
        assert!(matches!(is_psd(&a, 1e-9), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn from_vec_rejects_nan_and_bad_length() {
        assert!(CMatrix::from_vec(2, 2, vec![c64(0.0, 0.0); 3]).is_err());
        let mut v = vec![c64(0.0, 0.0); 4];
        v[3] = c64(f64::NAN, 0.0);
        assert!(matches!(
            CMatrix::from_vec(2, 2, v),
            Err(LinalgError::NonFinite { row: 1, col: 1 })
        ));
    }

    #[test]
    fn block_tensor_shape_checked() {
        assert!(BlockTensor::new(2, 3, CMatrix::zeros(6, 6)).is_ok());
        assert!(BlockTensor::new(2, 3, CMatrix::zeros(5, 5)).is_err());
    }
}

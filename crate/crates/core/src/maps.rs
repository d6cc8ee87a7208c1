//! Convolution of maps on `C₀[S]`, Choi matrices, and supermaps acting on
//! linear maps between matrix algebras.

use std::sync::Arc;

use crate::cxmat::{partial_trace_left_with, BlockTensor, CMatrix, C64};
use crate::harmonic::{Basis, HarmonicError, MatrixMap};
use crate::semigroup::InverseStructure;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MapsError {
    #[error("operation needs the matrix-units semigroup, got {0}")]
    WrongSemigroup(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("operands live on different semigroups")]
    SemigroupMismatch,
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

fn check_pair(f1: &MatrixMap, f2: &MatrixMap) -> Result<(), MapsError> {
    if !f1.same_semigroup(f2) {
        return Err(MapsError::SemigroupMismatch);
    }
    if f1.dim() != f2.dim() {
        return Err(MapsError::DimensionMismatch(format!("target dims {} and {}", f1.dim(), f2.dim())));
    }
    Ok(())
}

/// `(Φ*Φ')(s) = Σ_{ab = s} Φ(a)Φ'(b)` over nonzero factorizations.
/// Inputs in either basis; the result is in the natural basis.
pub fn convolve(f1: &MatrixMap, f2: &MatrixMap) -> Result<MatrixMap, MapsError> {
    check_pair(f1, f2)?;
    let sg = f1.semigroup();
    let n = f1.dim();
    let a: Vec<CMatrix> = sg.nonzero().iter().map(|&s| f1.natural_coefficient(s)).collect();
    let b: Vec<CMatrix> = sg.nonzero().iter().map(|&s| f2.natural_coefficient(s)).collect();
    let pos = |s: usize| sg.position(s).unwrap();
    let values = sg
        .nonzero()
        .iter()
        .map(|&s| {
            let mut acc = CMatrix::zeros(n, n);
            for &(x, y) in sg.factorizations(s) {
                acc += &a[pos(x)].matmul(&b[pos(y)]);
            }
            acc
        })
        .collect();
    Ok(MatrixMap::new(sg.clone(), n, Basis::Natural, values)?)
}

/// `Σ_s s ⊗ A_s` in `C₀[S] ⊗ M_n(ℂ)`.
#[derive(Clone, Debug)]
pub struct TensorAlgebraElement {
    semigroup: Arc<InverseStructure>,
    dim: usize,
    coeffs: Vec<CMatrix>,
}

impl TensorAlgebraElement {
    pub fn coefficient(&self, s: usize) -> &CMatrix {
        &self.coeffs[self.semigroup.position(s).expect("nonzero element")]
    }

    pub fn coefficients(&self) -> &[CMatrix] {
        &self.coeffs
    }

    /// Product via the semigroup table; terms landing on `z` vanish.
    pub fn mul(&self, other: &TensorAlgebraElement) -> Result<TensorAlgebraElement, MapsError> {
        if !self.semigroup.same_as(&other.semigroup) {
            return Err(MapsError::SemigroupMismatch);
        }
        if self.dim != other.dim {
            return Err(MapsError::DimensionMismatch(format!("dims {} and {}", self.dim, other.dim)));
        }
        let sg = &self.semigroup;
        let mut coeffs = vec![CMatrix::zeros(self.dim, self.dim); self.coeffs.len()];
        for (i, &a) in sg.nonzero().iter().enumerate() {
            for (j, &b) in sg.nonzero().iter().enumerate() {
                let c = sg.mul(a, b);
                if c != sg.zero() {
                    coeffs[sg.position(c).unwrap()] += &self.coeffs[i].matmul(&other.coeffs[j]);
                }
            }
        }
        Ok(TensorAlgebraElement {
            semigroup: self.semigroup.clone(),
            dim: self.dim,
            coeffs,
        })
    }

    pub fn max_abs_diff(&self, other: &TensorAlgebraElement) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// `Φ ↦ Σ_s s ⊗ Φ(s)`
pub fn tensor_lift(f: &MatrixMap) -> TensorAlgebraElement {
    TensorAlgebraElement {
        semigroup: f.semigroup().clone(),
        dim: f.dim(),
        coeffs: f.semigroup().nonzero().iter().map(|&s| f.natural_coefficient(s)).collect(),
    }
}

/// A linear map `M_m → M_n` stored by its images of the matrix units
/// (`values[a*m + b] = Φ(e_ab)`, 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitMap {
    m: usize,
    n: usize,
    values: Vec<CMatrix>,
}

impl UnitMap {
    pub fn new(m: usize, n: usize, values: Vec<CMatrix>) -> Result<Self, MapsError> {
        if values.len() != m * m || values.iter().any(|v| v.rows() != n || v.cols() != n) {
            return Err(MapsError::DimensionMismatch(format!("a map M_{m} → M_{n} needs {} values of size {n}x{n}", m * m)));
        }
        Ok(Self { m, n, values })
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> CMatrix) -> Self {
        let mut values = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                values.push(f(a, b));
            }
        }
        Self { m, n, values }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self::from_fn(m, n, |_, _| CMatrix::zeros(n, n))
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, m, |a, b| CMatrix::unit(m, a, b))
    }

    pub fn transpose(m: usize) -> Self {
        Self::from_fn(m, m, |a, b| CMatrix::unit(m, b, a))
    }

    /// `X ↦ tr(X)·I_n`, the unit of [`UnitMap::convolve`].
    pub fn trace_unit(m: usize, n: usize) -> Self {
        Self::from_fn(m, n, |a, b| if a == b { CMatrix::identity(n) } else { CMatrix::zeros(n, n) })
    }

    /// Reads a map on the matrix-units semigroup.
    pub fn from_matrix_map(f: &MatrixMap) -> Result<Self, MapsError> {
        let m = f
            .semigroup()
            .matrix_units_size()
            .ok_or_else(|| MapsError::WrongSemigroup(f.semigroup().name().to_string()))?;
        Ok(Self {
            m,
            n: f.dim(),
            values: f.semigroup().nonzero().iter().map(|&s| f.natural_coefficient(s)).collect(),
        })
    }

    /// The same map as a natural-basis [`MatrixMap`] on `matrix_units(m)`.
    pub fn to_matrix_map(&self, semigroup: Arc<InverseStructure>) -> Result<MatrixMap, MapsError> {
        if semigroup.matrix_units_size() != Some(self.m) {
            return Err(MapsError::WrongSemigroup(semigroup.name().to_string()));
        }
        Ok(MatrixMap::new(semigroup, self.n, Basis::Natural, self.values.clone())?)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn value(&self, a: usize, b: usize) -> &CMatrix {
        &self.values[a * self.m + b]
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        assert_eq!((x.rows(), x.cols()), (self.m, self.m));
        let mut out = CMatrix::zeros(self.n, self.n);
        for a in 0..self.m {
            for b in 0..self.m {
                let c = x[(a, b)];
                if c != C64::new(0.0, 0.0) {
                    out.add_scaled(self.value(a, b), c);
                }
            }
        }
        out
    }

    /// `C = Σ e_ab ⊗ Φ(e_ab)`
    pub fn choi(&self) -> BlockTensor {
        let mut t = BlockTensor::zeros(self.m, self.n);
        for a in 0..self.m {
            for b in 0..self.m {
                t.add_kron(&CMatrix::unit(self.m, a, b), self.value(a, b));
            }
        }
        t
    }

    pub fn from_choi(c: &BlockTensor) -> Self {
        let (m, n) = (c.dim_left(), c.dim_right());
        Self::from_fn(m, n, |a, b| c.matrix().block(a * n, b * n, n, n))
    }

    /// `(Φ*Φ')(e_ab) = Σ_c Φ(e_ac)Φ'(e_cb)`
    pub fn convolve(&self, other: &UnitMap) -> Result<UnitMap, MapsError> {
        if self.dims() != other.dims() {
            return Err(MapsError::DimensionMismatch(format!(
                "cannot convolve maps of shapes {:?} and {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(Self::from_fn(self.m, self.n, |a, b| {
            let mut acc = CMatrix::zeros(self.n, self.n);
            for c in 0..self.m {
                acc += &self.value(a, c).matmul(other.value(c, b));
            }
            acc
        }))
    }

    pub fn add_scaled(&mut self, other: &UnitMap, k: C64) {
        assert_eq!(self.dims(), other.dims());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_scaled(b, k);
        }
    }

    pub fn max_abs_diff(&self, other: &UnitMap) -> f64 {
        assert_eq!(self.dims(), other.dims());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// Choi matrix of a map on the matrix-units semigroup.
pub fn choi(f: &MatrixMap) -> Result<BlockTensor, MapsError> {
    Ok(UnitMap::from_matrix_map(f)?.choi())
}

/// `Φ(X) = tr_left[(Xᵀ ⊗ I) C]`
pub fn choi_invert(c: &BlockTensor, x: &CMatrix) -> Result<CMatrix, MapsError> {
    if x.rows() != c.dim_left() || x.cols() != c.dim_left() {
        return Err(MapsError::DimensionMismatch(format!(
            "input is {}x{}, Choi left factor is {}",
            x.rows(),
            x.cols(),
            c.dim_left()
        )));
    }
    Ok(partial_trace_left_with(&x.transpose(), c))
}

/// `ℰ_ijkl(A) = tr(e_ij† A) e_kl` as a map `M_{m1} → M_{n2}` (0-based indices).
pub fn supermap_basis(i: usize, j: usize, k: usize, l: usize, m1: usize, n2: usize) -> Result<UnitMap, MapsError> {
    if i >= m1 || j >= m1 || k >= n2 || l >= n2 {
        return Err(MapsError::IndexOutOfRange(format!(
            "({i},{j},{k},{l}) outside {m1}x{m1} → {n2}x{n2}"
        )));
    }
    Ok(UnitMap::from_fn(m1, n2, |a, b| {
        if (a, b) == (i, j) {
            CMatrix::unit(n2, k, l)
        } else {
            CMatrix::zeros(n2, n2)
        }
    }))
}

/// A linear map from maps `M_{m1} → M_{n2}` to maps `M_{m3} → M_{n4}`,
/// stored as the images of the basis maps `ℰ_ijkl`.
#[derive(Clone, Debug, PartialEq)]
pub struct Supermap {
    dims: [usize; 4],
    action: Vec<UnitMap>,
}

impl Supermap {
    /// `action[((i*m1 + j)*n2 + k)*n2 + l] = Θ(ℰ_ijkl)`
    pub fn new(dims: [usize; 4], action: Vec<UnitMap>) -> Result<Self, MapsError> {
        let [m1, n2, m3, n4] = dims;
        if action.len() != m1 * m1 * n2 * n2 {
            return Err(MapsError::DimensionMismatch(format!(
                "supermap on {m1}→{n2} maps needs {} basis images, got {}",
                m1 * m1 * n2 * n2,
                action.len()
            )));
        }
        if action.iter().any(|u| u.dims() != (m3, n4)) {
            return Err(MapsError::DimensionMismatch(format!("basis images must be maps M_{m3} → M_{n4}")));
        }
        Ok(Self { dims, action })
    }

    pub fn from_fn(dims: [usize; 4], mut f: impl FnMut(usize, usize, usize, usize) -> UnitMap) -> Result<Self, MapsError> {
        let [m1, n2, ..] = dims;
        let mut action = Vec::with_capacity(m1 * m1 * n2 * n2);
        for i in 0..m1 {
            for j in 0..m1 {
                for k in 0..n2 {
                    for l in 0..n2 {
                        action.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self::new(dims, action)
    }

    /// `Θ(ℰ) = ℰ`
    pub fn identity(m: usize, n: usize) -> Self {
        Self::from_fn([m, n, m, n], |i, j, k, l| supermap_basis(i, j, k, l, m, n).unwrap()).unwrap()
    }

    /// The two-sided unit of [`supermap_convolve`]: `Θ(ℰ_ijkl) = δ_ij δ_kl (X ↦ tr(X) I)`.
    pub fn convolution_unit(dims: [usize; 4]) -> Self {
        let [_, _, m3, n4] = dims;
        Self::from_fn(dims, |i, j, k, l| {
            if i == j && k == l {
                UnitMap::trace_unit(m3, n4)
            } else {
                UnitMap::zero(m3, n4)
            }
        })
        .unwrap()
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    fn flat(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let [m1, n2, ..] = self.dims;
        ((i * m1 + j) * n2 + k) * n2 + l
    }

    pub fn action(&self, i: usize, j: usize, k: usize, l: usize) -> &UnitMap {
        &self.action[self.flat(i, j, k, l)]
    }

    pub fn actions(&self) -> &[UnitMap] {
        &self.action
    }

    /// Linear extension: `Θ(Φ) = Σ Φ(e_ij)_{kl} Θ(ℰ_ijkl)`.
    pub fn apply(&self, phi: &UnitMap) -> Result<UnitMap, MapsError> {
        let [m1, n2, m3, n4] = self.dims;
        if phi.dims() != (m1, n2) {
            return Err(MapsError::DimensionMismatch(format!("supermap expects maps M_{m1} → M_{n2}")));
        }
        let mut out = UnitMap::zero(m3, n4);
        for i in 0..m1 {
            for j in 0..m1 {
                let v = phi.value(i, j);
                for k in 0..n2 {
                    for l in 0..n2 {
                        let c = v[(k, l)];
                        if c != C64::new(0.0, 0.0) {
                            out.add_scaled(self.action(i, j, k, l), c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Supermap) -> f64 {
        assert_eq!(self.dims, other.dims);
        self.action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// `Λ_Θ = Σ E_AB ⊗ C_{Θ(ℰ_ijkl)}` with `A = (i,k)`, `B = (j,l)`.
    pub fn representing_tensor(&self) -> BlockTensor {
        let [m1, n2, m3, n4] = self.dims;
        let outer = m1 * n2;
        let mut t = BlockTensor::zeros(outer, m3 * n4);
        for i in 0..m1 {
            for j in 0..m1 {
                for k in 0..n2 {
                    for l in 0..n2 {
                        let e = CMatrix::unit(outer, i * n2 + k, j * n2 + l);
                        t.add_kron(&e, self.action(i, j, k, l).choi().matrix());
                    }
                }
            }
        }
        t
    }

    /// Inverse of [`representing_tensor`](Self::representing_tensor).
    pub fn from_representing_tensor(dims: [usize; 4], lambda: &BlockTensor) -> Result<Self, MapsError> {
        let [m1, n2, m3, n4] = dims;
        let (outer, inner) = (m1 * n2, m3 * n4);
        if lambda.dim_left() != outer || lambda.dim_right() != inner {
            return Err(MapsError::DimensionMismatch("tensor does not match supermap dims".into()));
        }
        Self::from_fn(dims, |i, j, k, l| {
            let a = i * n2 + k;
            let b = j * n2 + l;
            let c = lambda.matrix().block(a * inner, b * inner, inner, inner);
            UnitMap::from_choi(&BlockTensor::new(m3, n4, c).unwrap())
        })
    }

    /// The representing map `T: M_{m1 n2} → M_{m3 n4}` as a unit map.
    pub fn representing_unit_map(&self) -> UnitMap {
        let [m1, n2, m3, n4] = self.dims;
        let outer = m1 * n2;
        UnitMap::from_fn(outer, m3 * n4, |a, b| {
            let (i, k) = (a / n2, a % n2);
            let (j, l) = (b / n2, b % n2);
            self.action(i, j, k, l).choi().into_matrix()
        })
    }
}

/// `(Θ₁⋆Θ₂)(ℰ_ijkl) = Σ_{p,q} Θ₁(ℰ_ipkq) * Θ₂(ℰ_pjql)`
pub fn supermap_convolve(t1: &Supermap, t2: &Supermap) -> Result<Supermap, MapsError> {
    if t1.dims != t2.dims {
        return Err(MapsError::DimensionMismatch(format!("dims {:?} and {:?}", t1.dims, t2.dims)));
    }
    let [m1, n2, m3, n4] = t1.dims;
    Supermap::from_fn(t1.dims, |i, j, k, l| {
        let mut acc = UnitMap::zero(m3, n4);
        for p in 0..m1 {
            for q in 0..n2 {
                let term = t1.action(i, p, k, q).convolve(t2.action(p, j, q, l)).expect("same shape");
                acc.add_scaled(&term, C64::new(1.0, 0.0));
            }
        }
        acc
    })
}

/// `T(X) = C_{Θ(Γ_X)}` where `Γ_X` is the map whose Choi matrix is `X`.
pub fn representing_map(t: &Supermap, x: &BlockTensor) -> Result<BlockTensor, MapsError> {
    let [m1, n2, ..] = t.dims;
    if x.dim_left() != m1 || x.dim_right() != n2 {
        return Err(MapsError::DimensionMismatch(format!(
            "input tensor has factors {}x{}, supermap acts on M_{m1} → M_{n2}",
            x.dim_left(),
            x.dim_right()
        )));
    }
    let gamma = UnitMap::from_fn(m1, n2, |a, b| choi_invert(x, &CMatrix::unit(m1, a, b)).unwrap());
    Ok(t.apply(&gamma)?.choi())
}

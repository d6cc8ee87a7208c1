//! Induced irreducible representations of the contracted algebra and the
//! Fourier transform of matrix-valued maps on it.

use std::sync::Arc;

use crate::cxmat::{partial_trace_left, partial_trace_left_with, BlockTensor, CMatrix, LinalgError, C64};
use crate::grouprep::{unitary_irreps, GroupRep, GroupRepError, PlancherelSides};
use crate::semigroup::InverseStructure;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarmonicError {
    #[error("map is in the {found:?} basis, expected {expected:?}")]
    WrongBasis { expected: Basis, found: Basis },
    #[error("operands live on different semigroups")]
    SemigroupMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("irrep set is incomplete: Σd² = {sum}, expected {expected}")]
    IncompleteIrrepSet { sum: usize, expected: usize },
    #[error(transparent)]
    Group(#[from] GroupRepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Natural,
    Groupoid,
}

/// A linear map `C₀[S] → M_n(ℂ)`, one `n x n` value per nonzero element.
///
/// With [`Basis::Natural`] the value at `s` is `Φ(s)`. With
/// [`Basis::Groupoid`] it is the value on `⌊s⌋`. Either way the map is the
/// same linear object and both coefficient forms can be read off.
#[derive(Clone, Debug)]
pub struct MatrixMap {
    semigroup: Arc<InverseStructure>,
    dim: usize,
    basis: Basis,
    values: Vec<CMatrix>,
}

impl MatrixMap {
    /// `values` is indexed by position in `semigroup.nonzero()`.
    pub fn new(
        semigroup: Arc<InverseStructure>,
        dim: usize,
        basis: Basis,
        values: Vec<CMatrix>,
    ) -> Result<Self, HarmonicError> {
        let k = semigroup.nonzero().len();
        if values.len() != k {
            return Err(HarmonicError::DimensionMismatch(format!("{} values for {k} nonzero elements", values.len())));
        }
        if values.iter().any(|v| v.rows() != dim || v.cols() != dim) {
            return Err(HarmonicError::DimensionMismatch(format!("every value must be {dim}x{dim}")));
        }
        Ok(Self {
            semigroup,
            dim,
            basis,
            values,
        })
    }

    pub fn zeros(semigroup: Arc<InverseStructure>, dim: usize, basis: Basis) -> Self {
        let values = vec![CMatrix::zeros(dim, dim); semigroup.nonzero().len()];
        Self {
            semigroup,
            dim,
            basis,
            values,
        }
    }

    /// Builds values from a function of the element index.
    pub fn from_fn(
        semigroup: Arc<InverseStructure>,
        dim: usize,
        basis: Basis,
        mut f: impl FnMut(usize) -> CMatrix,
    ) -> Result<Self, HarmonicError> {
        let values = semigroup.nonzero().iter().map(|&s| f(s)).collect();
        Self::new(semigroup, dim, basis, values)
    }

    pub fn semigroup(&self) -> &Arc<InverseStructure> {
        &self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    /// Stored value for element `s` (nonzero).
    pub fn value(&self, s: usize) -> &CMatrix {
        &self.values[self.pos(s)]
    }

    fn pos(&self, s: usize) -> usize {
        self.semigroup.position(s).expect("value requested at the zero")
    }

    /// Coefficient `Φ(s)` in `Σ s ⊗ Φ(s)`.
    pub fn natural_coefficient(&self, s: usize) -> CMatrix {
        match self.basis {
            Basis::Natural => self.value(s).clone(),
            Basis::Groupoid => {
                let mut acc = CMatrix::zeros(self.dim, self.dim);
                for &t in self.semigroup.up(s) {
                    let mu = self.semigroup.mobius(s, t);
                    if mu != 0 {
                        acc.add_scaled(self.value(t), C64::new(mu as f64, 0.0));
                    }
                }
                acc
            }
        }
    }

    /// Coefficient `Φ̃(⌊s⌋) = Σ_{t ≥ s} Φ(t)` in `Σ ⌊s⌋ ⊗ Φ̃(⌊s⌋)`.
    pub fn groupoid_coefficient(&self, s: usize) -> CMatrix {
        match self.basis {
            Basis::Groupoid => self.value(s).clone(),
            Basis::Natural => {
                let mut acc = CMatrix::zeros(self.dim, self.dim);
                for &t in self.semigroup.up(s) {
                    acc += self.value(t);
                }
                acc
            }
        }
    }

    /// The map evaluated at the natural basis element `x`.
    pub fn eval_natural(&self, x: usize) -> CMatrix {
        match self.basis {
            Basis::Natural => self.value(x).clone(),
            Basis::Groupoid => {
                let mut acc = CMatrix::zeros(self.dim, self.dim);
                for &t in self.semigroup.down(x) {
                    acc += self.value(t);
                }
                acc
            }
        }
    }

    /// The map evaluated at `⌊x⌋`.
    pub fn eval_groupoid(&self, x: usize) -> CMatrix {
        match self.basis {
            Basis::Groupoid => self.value(x).clone(),
            Basis::Natural => {
                let mut acc = CMatrix::zeros(self.dim, self.dim);
                for &t in self.semigroup.down(x) {
                    let mu = self.semigroup.mobius(t, x);
                    if mu != 0 {
                        acc.add_scaled(self.value(t), C64::new(mu as f64, 0.0));
                    }
                }
                acc
            }
        }
    }

    pub fn with_basis_values(&self, basis: Basis, values: Vec<CMatrix>) -> Result<Self, HarmonicError> {
        Self::new(self.semigroup.clone(), self.dim, basis, values)
    }

    /// Largest entry difference between stored values, when shapes and tags match.
    pub fn max_abs_diff(&self, other: &MatrixMap) -> f64 {
        assert_eq!(self.basis, other.basis);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn same_semigroup(&self, other: &MatrixMap) -> bool {
        Arc::ptr_eq(&self.semigroup, &other.semigroup) || self.semigroup.same_as(&other.semigroup)
    }
}

/// Natural-basis map to groupoid coefficients.
pub fn to_groupoid(f: &MatrixMap) -> Result<MatrixMap, HarmonicError> {
    if f.basis != Basis::Natural {
        return Err(HarmonicError::WrongBasis {
            expected: Basis::Natural,
            found: f.basis,
        });
    }
    let values = f.semigroup.nonzero().iter().map(|&s| f.groupoid_coefficient(s)).collect();
    f.with_basis_values(Basis::Groupoid, values)
}

/// Groupoid coefficients back to the natural basis.
pub fn from_groupoid(f: &MatrixMap) -> Result<MatrixMap, HarmonicError> {
    if f.basis != Basis::Groupoid {
        return Err(HarmonicError::WrongBasis {
            expected: Basis::Groupoid,
            found: f.basis,
        });
    }
    let values = f.semigroup.nonzero().iter().map(|&s| f.natural_coefficient(s)).collect();
    f.with_basis_values(Basis::Natural, values)
}

/// Converts to the requested coefficient form (no-op if already there).
pub fn in_basis(f: &MatrixMap, basis: Basis) -> MatrixMap {
    match (f.basis, basis) {
        (a, b) if a == b => f.clone(),
        (Basis::Natural, _) => to_groupoid(f).expect("natural input"),
        _ => from_groupoid(f).expect("groupoid input"),
    }
}

/// An irrep of `C₀[S]` induced from an irrep of a maximal subgroup, stored
/// as `σ(⌊s⌋)` for each `s` in its 𝒟-class (zero elsewhere).
#[derive(Clone, Debug)]
pub struct InducedRep {
    semigroup: Arc<InverseStructure>,
    id: String,
    class: usize,
    group_dim: usize,
    dim: usize,
    support: Vec<usize>,
    slot: Vec<Option<usize>>,
    matrices: Vec<CMatrix>,
}

impl InducedRep {
    fn build(semigroup: &Arc<InverseStructure>, class: usize, index: usize, rho: &GroupRep) -> Self {
        let s = semigroup;
        let dc = &s.classes()[class];
        let dr = rho.dim();
        let dim = dc.rank() * dr;
        let mut slot = vec![None; s.order()];
        let mut matrices = Vec::with_capacity(dc.elements.len());
        for (i, &x) in dc.elements.iter().enumerate() {
            let c = s.steinberg_phi(x);
            let a = dc.block_of(c.row).expect("row idempotent in class");
            let b = dc.block_of(c.col).expect("col idempotent in class");
            let g = dc.group.local_index(c.group_element).expect("group element in subgroup");
            let mut m = CMatrix::zeros(dim, dim);
            m.set_block(a * dr, b * dr, rho.matrix(g));
            matrices.push(m);
            slot[x] = Some(i);
        }
        Self {
            semigroup: s.clone(),
            id: format!("D{}.{}", class + 1, index + 1),
            class,
            group_dim: dr,
            dim,
            support: dc.elements.clone(),
            slot,
            matrices,
        }
    }

    /// Identifier `D<k>.<j>`: class `k` (1-based; `D0` is the zero class) and
    /// subgroup irrep `j` in sorted order.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_dim(&self) -> usize {
        self.group_dim
    }

    pub fn semigroup(&self) -> &Arc<InverseStructure> {
        &self.semigroup
    }

    /// Elements on which `σ(⌊s⌋)` can be nonzero.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `σ(⌊s⌋)`, `None` meaning the zero matrix.
    pub fn groupoid_matrix(&self, s: usize) -> Option<&CMatrix> {
        self.slot[s].map(|i| &self.matrices[i])
    }

    pub fn groupoid_matrix_full(&self, s: usize) -> CMatrix {
        self.groupoid_matrix(s).cloned().unwrap_or_else(|| CMatrix::zeros(self.dim, self.dim))
    }

    /// `σ(s) = Σ_{t ≤ s} σ(⌊t⌋)`
    pub fn natural_matrix(&self, s: usize) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for &t in self.semigroup.down(s) {
            if let Some(m) = self.groupoid_matrix(t) {
                acc += m;
            }
        }
        acc
    }

    /// `u σ(·) u†` for a unitary `u`.
    pub fn conjugated(&self, u: &CMatrix) -> InducedRep {
        assert_eq!(u.rows(), self.dim);
        let ud = u.dagger();
        let mut out = self.clone();
        for m in &mut out.matrices {
            *m = u.matmul(m).matmul(&ud);
        }
        out
    }
}

/// The full family of induced unitary irreps of one semigroup.
#[derive(Clone, Debug)]
pub struct IrrepSet {
    semigroup: Arc<InverseStructure>,
    group_irreps: Vec<Vec<GroupRep>>,
    reps: Vec<InducedRep>,
}

impl IrrepSet {
    pub fn semigroup(&self) -> &Arc<InverseStructure> {
        &self.semigroup
    }

    pub fn reps(&self) -> &[InducedRep] {
        &self.reps
    }

    /// Subgroup irreps per class.
    pub fn group_irreps(&self) -> &[Vec<GroupRep>] {
        &self.group_irreps
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(InducedRep::dim).collect()
    }

    /// `Σ d_σ²`
    pub fn dimension_sum(&self) -> usize {
        self.reps.iter().map(|r| r.dim * r.dim).sum()
    }

    pub fn find(&self, id: &str) -> Option<&InducedRep> {
        self.reps.iter().find(|r| r.id == id)
    }

    /// Replaces the representations by unitary conjugates, one unitary per irrep.
    pub fn conjugated(&self, unitaries: &[CMatrix]) -> IrrepSet {
        assert_eq!(unitaries.len(), self.reps.len());
        IrrepSet {
            semigroup: self.semigroup.clone(),
            group_irreps: self.group_irreps.clone(),
            reps: self.reps.iter().zip(unitaries).map(|(r, u)| r.conjugated(u)).collect(),
        }
    }
}

/// One induced irrep per (class, subgroup irrep), classes in order.
pub fn induced_irreps(semigroup: &Arc<InverseStructure>, seed: u64) -> Result<IrrepSet, HarmonicError> {
    let mut group_irreps = Vec::new();
    let mut reps = Vec::new();
    for (k, dc) in semigroup.classes().iter().enumerate() {
        let irr = unitary_irreps(&dc.group, seed)?;
        for (j, rho) in irr.iter().enumerate() {
            reps.push(InducedRep::build(semigroup, k, j, rho));
        }
        group_irreps.push(irr);
    }
    Ok(IrrepSet {
        semigroup: semigroup.clone(),
        group_irreps,
        reps,
    })
}

/// Fourier transforms of one map over a whole irrep set.
#[derive(Clone, Debug)]
pub struct FourierData {
    semigroup: Arc<InverseStructure>,
    dim: usize,
    ids: Vec<String>,
    transforms: Vec<BlockTensor>,
}

impl FourierData {
    pub fn new(
        semigroup: Arc<InverseStructure>,
        dim: usize,
        ids: Vec<String>,
        transforms: Vec<BlockTensor>,
    ) -> Result<Self, HarmonicError> {
        if ids.len() != transforms.len() {
            return Err(HarmonicError::DimensionMismatch("ids and transforms differ in length".into()));
        }
        if transforms.iter().any(|t| t.dim_right() != dim) {
            return Err(HarmonicError::DimensionMismatch(format!("transforms must have right factor {dim}")));
        }
        Ok(Self {
            semigroup,
            dim,
            ids,
            transforms,
        })
    }

    pub fn semigroup(&self) -> &Arc<InverseStructure> {
        &self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn transforms(&self) -> &[BlockTensor] {
        &self.transforms
    }

    pub fn get(&self, id: &str) -> Option<&BlockTensor> {
        self.ids.iter().position(|x| x == id).map(|i| &self.transforms[i])
    }
}

fn check_same(a: &InverseStructure, b: &InverseStructure) -> Result<(), HarmonicError> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(HarmonicError::SemigroupMismatch)
    }
}

/// `Φ̂(σ) = Σ_s σ(⌊s⌋) ⊗ Φ̃(⌊s⌋)`
pub fn fourier(f: &MatrixMap, sigma: &InducedRep) -> Result<BlockTensor, HarmonicError> {
    check_same(&f.semigroup, &sigma.semigroup)?;
    let mut t = BlockTensor::zeros(sigma.dim, f.dim);
    for (&s, m) in sigma.support.iter().zip(&sigma.matrices) {
        t.add_kron(m, &f.groupoid_coefficient(s));
    }
    Ok(t)
}

/// `Σ_s σ(s) ⊗ Φ(s)` over the natural basis; same value as [`fourier`].
pub fn fourier_natural(f: &MatrixMap, sigma: &InducedRep) -> Result<BlockTensor, HarmonicError> {
    check_same(&f.semigroup, &sigma.semigroup)?;
    let mut t = BlockTensor::zeros(sigma.dim, f.dim);
    for &s in f.semigroup.nonzero() {
        let m = sigma.natural_matrix(s);
        if !m.is_zero() {
            t.add_kron(&m, &f.natural_coefficient(s));
        }
    }
    Ok(t)
}

pub fn fourier_all(f: &MatrixMap, irreps: &IrrepSet) -> Result<FourierData, HarmonicError> {
    check_same(&f.semigroup, &irreps.semigroup)?;
    let gcoef: Vec<CMatrix> = f.semigroup.nonzero().iter().map(|&s| f.groupoid_coefficient(s)).collect();
    let mut transforms = Vec::with_capacity(irreps.reps.len());
    for sigma in &irreps.reps {
        let mut t = BlockTensor::zeros(sigma.dim, f.dim);
        for (&s, m) in sigma.support.iter().zip(&sigma.matrices) {
            t.add_kron(m, &gcoef[f.semigroup.position(s).unwrap()]);
        }
        transforms.push(t);
    }
    FourierData::new(
        f.semigroup.clone(),
        f.dim,
        irreps.reps.iter().map(|r| r.id.clone()).collect(),
        transforms,
    )
}

fn check_complete(data: &FourierData, irreps: &IrrepSet) -> Result<(), HarmonicError> {
    check_same(&data.semigroup, &irreps.semigroup)?;
    let expected = irreps.semigroup.algebra_dimension();
    let sum = irreps.dimension_sum();
    if sum != expected {
        return Err(HarmonicError::IncompleteIrrepSet { sum, expected });
    }
    if data.ids.len() != irreps.reps.len() {
        return Err(HarmonicError::IncompleteIrrepSet {
            sum: data
                .ids
                .iter()
                .filter_map(|id| irreps.find(id))
                .map(|r| r.dim * r.dim)
                .sum(),
            expected,
        });
    }
    for (id, (t, r)) in data.ids.iter().zip(data.transforms.iter().zip(&irreps.reps)) {
        if *id != r.id || t.dim_left() != r.dim {
            return Err(HarmonicError::DimensionMismatch(format!(
                "transform {id} does not match irrep {} of dimension {}",
                r.id, r.dim
            )));
        }
    }
    Ok(())
}

/// `Φ̃(⌊s⌋) = 1/(r_k|G_k|) Σ_σ d_σ tr_left[(σ(⌊s⁻¹⌋) ⊗ I) Φ̂(σ)]`
pub fn fourier_invert(data: &FourierData, irreps: &IrrepSet, s: usize) -> Result<CMatrix, HarmonicError> {
    check_complete(data, irreps)?;
    Ok(invert_one(data, irreps, s))
}

fn invert_one(data: &FourierData, irreps: &IrrepSet, s: usize) -> CMatrix {
    let sg = &irreps.semigroup;
    let k = sg.class_of(s).expect("nonzero element");
    let dc = &sg.classes()[k];
    let si = sg.inv(s);
    let mut acc = CMatrix::zeros(data.dim, data.dim);
    for (sigma, t) in irreps.reps.iter().zip(&data.transforms) {
        if let Some(m) = sigma.groupoid_matrix(si) {
            acc.add_scaled(&partial_trace_left_with(m, t), C64::new(sigma.dim as f64, 0.0));
        }
    }
    acc.scale_real(1.0 / (dc.rank() * dc.group.order()) as f64)
}

/// Inverts every coefficient; the result is in the groupoid basis.
pub fn fourier_invert_all(data: &FourierData, irreps: &IrrepSet) -> Result<MatrixMap, HarmonicError> {
    check_complete(data, irreps)?;
    let values = irreps.semigroup.nonzero().iter().map(|&s| invert_one(data, irreps, s)).collect();
    MatrixMap::new(irreps.semigroup.clone(), data.dim, Basis::Groupoid, values)
}

/// `Σ_s r_k|G_k| Φ̃(⌊s⁻¹⌋)Ψ̃(⌊s⌋)` against `Σ_σ d_σ tr_left[Φ̂(σ)Ψ̂(σ)]`.
pub fn plancherel_check(f: &MatrixMap, g: &MatrixMap, irreps: &IrrepSet) -> Result<PlancherelSides, HarmonicError> {
    check_same(&f.semigroup, &g.semigroup)?;
    check_same(&f.semigroup, &irreps.semigroup)?;
    if f.dim != g.dim {
        return Err(HarmonicError::DimensionMismatch(format!("target dims {} and {}", f.dim, g.dim)));
    }
    let sg = &f.semigroup;
    let n = f.dim;
    let mut lhs = CMatrix::zeros(n, n);
    for &s in sg.nonzero() {
        let dc = &sg.classes()[sg.class_of(s).unwrap()];
        let w = (dc.rank() * dc.group.order()) as f64;
        let term = f.groupoid_coefficient(sg.inv(s)).matmul(&g.groupoid_coefficient(s));
        lhs.add_scaled(&term, C64::new(w, 0.0));
    }
    let fa = fourier_all(f, irreps)?;
    let ga = fourier_all(g, irreps)?;
    let mut rhs = CMatrix::zeros(n, n);
    for ((sigma, a), b) in irreps.reps.iter().zip(&fa.transforms).zip(&ga.transforms) {
        let prod = a.mul(b)?;
        rhs.add_scaled(&partial_trace_left(&prod), C64::new(sigma.dim as f64, 0.0));
    }
    let residual = lhs.frobenius_diff(&rhs);
    Ok(PlancherelSides { lhs, rhs, residual })
}

/// Largest deviation of `Σ_{s∈D_k} σ(⌊s⌋)_{AB} conj(σ'(⌊s⌋)_{CD})` from
/// `(r_k|G_k|/d_σ) δ_{σσ'} δ_{AC} δ_{BD}` over irrep pairs sharing a class.
pub fn schur_residual(irreps: &IrrepSet) -> f64 {
    let sg = &irreps.semigroup;
    let mut worst: f64 = 0.0;
    for (i, a) in irreps.reps.iter().enumerate() {
        for (j, b) in irreps.reps.iter().enumerate() {
            if a.class != b.class {
                continue;
            }
            let dc = &sg.classes()[a.class];
            let scale = (dc.rank() * dc.group.order()) as f64 / a.dim as f64;
            let (da, db) = (a.dim, b.dim);
            // sums[(A,B),(C,D)]
            let mut sums = vec![C64::new(0.0, 0.0); da * da * db * db];
            for (ma, mb) in a.matrices.iter().zip(&b.matrices) {
                for p in 0..da * da {
                    let x = ma.as_slice()[p];
                    if x == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for q in 0..db * db {
                        sums[p * db * db + q] += x * mb.as_slice()[q].conj();
                    }
                }
            }
            for p in 0..da * da {
                for q in 0..db * db {
                    let expected = if i == j && p == q { scale } else { 0.0 };
                    worst = worst.max((sums[p * db * db + q] - C64::new(expected, 0.0)).norm());
                }
            }
        }
    }
    worst
}

/// A representation of `C₀[S]` given by `ρ(s)` on the natural basis.
#[derive(Clone, Debug)]
pub struct AlgebraRep {
    semigroup: Arc<InverseStructure>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl AlgebraRep {
    pub fn new(semigroup: Arc<InverseStructure>, dim: usize, matrices: Vec<CMatrix>) -> Result<Self, HarmonicError> {
        if matrices.len() != semigroup.nonzero().len() {
            return Err(HarmonicError::DimensionMismatch(format!(
                "{} matrices for {} nonzero elements",
                matrices.len(),
                semigroup.nonzero().len()
            )));
        }
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(HarmonicError::DimensionMismatch(format!("every matrix must be {dim}x{dim}")));
        }
        Ok(Self {
            semigroup,
            dim,
            matrices,
        })
    }

    /// Natural-basis matrices of an induced irrep.
    pub fn from_induced(sigma: &InducedRep) -> Self {
        let matrices = sigma.semigroup.nonzero().iter().map(|&s| sigma.natural_matrix(s)).collect();
        Self {
            semigroup: sigma.semigroup.clone(),
            dim: sigma.dim,
            matrices,
        }
    }

    /// On matrix units, `ρ(e_ij) = E_ij`.
    pub fn matrix_units_identity(semigroup: Arc<InverseStructure>) -> Option<Self> {
        let m = semigroup.matrix_units_size()?;
        let matrices = semigroup.nonzero().iter().map(|&s| CMatrix::unit(m, s / m, s % m)).collect();
        Some(Self {
            semigroup,
            dim: m,
            matrices,
        })
    }

    pub fn semigroup(&self) -> &Arc<InverseStructure> {
        &self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, s: usize) -> &CMatrix {
        &self.matrices[self.semigroup.position(s).expect("nonzero element")]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `ρ ⊕ ρ'`
    pub fn direct_sum(&self, other: &AlgebraRep) -> Result<AlgebraRep, HarmonicError> {
        check_same(&self.semigroup, &other.semigroup)?;
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = CMatrix::zeros(d, d);
                m.set_block(0, 0, a);
                m.set_block(self.dim, self.dim, b);
                m
            })
            .collect();
        Ok(AlgebraRep {
            semigroup: self.semigroup.clone(),
            dim: d,
            matrices,
        })
    }

    /// `ρ ⊕ 0` with `extra` zero rows and columns.
    pub fn pad_zero(&self, extra: usize) -> AlgebraRep {
        let d = self.dim + extra;
        let matrices = self
            .matrices
            .iter()
            .map(|a| {
                let mut m = CMatrix::zeros(d, d);
                m.set_block(0, 0, a);
                m
            })
            .collect();
        AlgebraRep {
            semigroup: self.semigroup.clone(),
            dim: d,
            matrices,
        }
    }

    /// `u ρ(·) u†`
    pub fn conjugated(&self, u: &CMatrix) -> AlgebraRep {
        let ud = u.dagger();
        AlgebraRep {
            semigroup: self.semigroup.clone(),
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| u.matmul(m).matmul(&ud)).collect(),
        }
    }

    /// Largest `‖ρ(a)ρ(b) - ρ(ab)‖_max`, with `ρ(z) = 0`.
    pub fn multiplicativity_residual(&self) -> f64 {
        let sg = &self.semigroup;
        let zero = CMatrix::zeros(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for &a in sg.nonzero() {
            for &b in sg.nonzero() {
                let ab = sg.mul(a, b);
                let target = if ab == sg.zero() { &zero } else { self.matrix(ab) };
                worst = worst.max(self.matrix(a).matmul(self.matrix(b)).max_abs_diff(target));
            }
        }
        worst
    }

    /// `Σ_s ρ(s) ⊗ Φ(s)`
    pub fn fourier(&self, f: &MatrixMap) -> Result<BlockTensor, HarmonicError> {
        check_same(&self.semigroup, &f.semigroup)?;
        let mut t = BlockTensor::zeros(self.dim, f.dim);
        for (&s, m) in self.semigroup.nonzero().iter().zip(&self.matrices) {
            t.add_kron(m, &f.natural_coefficient(s));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::semigroup::SemigroupTable;

    fn sg(r: &str) -> Arc<InverseStructure> {
        Arc::new(InverseStructure::new(SemigroupTable::from_ref(r).unwrap()).unwrap())
    }

    fn random_map(s: &Arc<InverseStructure>, n: usize, basis: Basis, seed: u64) -> MatrixMap {
        let mut r = random::rng(seed);
        MatrixMap::from_fn(s.clone(), n, basis, |_| random::gaussian_matrix(&mut r, n, n)).unwrap()
    }

    #[test]
    fn basis_change_on_symmetric_inverse() {
        let s = sg("builtin:symmetric_inverse:2");
        let f = random_map(&s, 2, Basis::Natural, 1);
        let e = |n: &str| s.index_of(n).unwrap();
        let g = to_groupoid(&f).unwrap();
        let want = f.value(e("[1>1]")) + f.value(e("[1>1,2>2]"));
        assert!(g.value(e("[1>1]")).max_abs_diff(&want) < 1e-15);
        let back = from_groupoid(&g).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-14);
        let h = random_map(&s, 2, Basis::Groupoid, 2);
        let hn = from_groupoid(&h).unwrap();
        let want = h.value(e("[1>1]")) - h.value(e("[1>1,2>2]"));
        assert!(hn.value(e("[1>1]")).max_abs_diff(&want) < 1e-15);
        assert!(matches!(to_groupoid(&g), Err(HarmonicError::WrongBasis { .. })));
    }

    #[test]
    fn matrix_units_basis_change_is_identity() {
        let s = sg("builtin:matrix_units:3");
        let f = random_map(&s, 2, Basis::Natural, 3);
        assert_eq!(to_groupoid(&f).unwrap().values(), f.values());
    }

    #[test]
    fn induced_dims() {
        let d = |r: &str| induced_irreps(&sg(r), 0).unwrap().dims();
        assert_eq!(d("builtin:matrix_units:3"), vec![3]);
        assert_eq!(d("builtin:symmetric_inverse:2"), vec![2, 1, 1]);
        let d3 = d("builtin:symmetric_inverse:3");
        assert_eq!(d3.iter().map(|x| x * x).sum::<usize>(), 33);
        assert_eq!(d3, vec![3, 3, 3, 1, 1, 2]);
    }

    #[test]
    fn matrix_units_irrep_is_the_unit_matrix() {
        let s = sg("builtin:matrix_units:2");
        let set = induced_irreps(&s, 0).unwrap();
        let sigma = &set.reps()[0];
        for &x in s.nonzero() {
            let (i, j) = (x / 2, x % 2);
            assert_eq!(sigma.groupoid_matrix_full(x), CMatrix::unit(2, i, j));
        }
    }

    #[test]
    fn both_fourier_forms_agree() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        let f = random_map(&s, 2, Basis::Natural, 4);
        for sigma in set.reps() {
            let a = fourier(&f, sigma).unwrap();
            let b = fourier_natural(&f, sigma).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
        }
    }

    #[test]
    fn roundtrip_and_delta() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        let f = random_map(&s, 2, Basis::Natural, 5);
        let data = fourier_all(&f, &set).unwrap();
        let back = from_groupoid(&fourier_invert_all(&data, &set).unwrap()).unwrap();
        assert!(back.max_abs_diff(&f) < 1e-12);

        let e = s.classes()[0].base;
        let delta = MatrixMap::from_fn(s.clone(), 2, Basis::Groupoid, |x| {
            if x == e {
                CMatrix::identity(2)
            } else {
                CMatrix::zeros(2, 2)
            }
        })
        .unwrap();
        let rec = fourier_invert_all(&fourier_all(&delta, &set).unwrap(), &set).unwrap();
        assert!(rec.max_abs_diff(&delta) < 1e-14);
    }

    #[test]
    fn incomplete_set_rejected() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        let f = random_map(&s, 1, Basis::Natural, 6);
        let data = fourier_all(&f, &set).unwrap();
        let partial = FourierData::new(s.clone(), 1, data.ids()[..2].to_vec(), data.transforms()[..2].to_vec()).unwrap();
        assert!(matches!(
            fourier_invert(&partial, &set, s.nonzero()[0]),
            Err(HarmonicError::IncompleteIrrepSet { .. })
        ));
    }

    #[test]
    fn schur_on_small_semigroups() {
        for r in ["builtin:matrix_units:2", "builtin:symmetric_inverse:2"] {
            let set = induced_irreps(&sg(r), 0).unwrap();
            assert!(schur_residual(&set) < 1e-10, "{r}");
        }
    }

    #[test]
    fn plancherel_zero_and_random() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        let f = random_map(&s, 2, Basis::Natural, 7);
        let z = MatrixMap::zeros(s.clone(), 2, Basis::Natural);
        let p = plancherel_check(&f, &z, &set).unwrap();
        assert!(p.lhs.is_zero() && p.rhs.max_abs() == 0.0);
        let g = random_map(&s, 2, Basis::Groupoid, 8);
        assert!(plancherel_check(&f, &g, &set).unwrap().residual < 1e-10);
    }

    #[test]
    fn semigroup_mismatch() {
        let a = sg("builtin:symmetric_inverse:2");
        let b = sg("builtin:matrix_units:2");
        let set = induced_irreps(&b, 0).unwrap();
        let f = random_map(&a, 1, Basis::Natural, 0);
        assert_eq!(fourier(&f, &set.reps()[0]).unwrap_err(), HarmonicError::SemigroupMismatch);
    }

    #[test]
    fn algebra_rep_from_induced_is_multiplicative() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        for sigma in set.reps() {
            assert!(AlgebraRep::from_induced(sigma).multiplicativity_residual() < 1e-12);
        }
        let id = AlgebraRep::matrix_units_identity(sg("builtin:matrix_units:2")).unwrap();
        assert_eq!(id.multiplicativity_residual(), 0.0);
        assert_eq!(id.direct_sum(&id).unwrap().dim(), 4);
        assert_eq!(id.pad_zero(2).multiplicativity_residual(), 0.0);
    }
}

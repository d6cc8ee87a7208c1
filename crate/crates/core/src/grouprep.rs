//! Unitary irreducible representations of small finite groups and
//! Fourier analysis of matrix-valued functions on them.

use std::cmp::Ordering;

use crate::cxmat::{check_psd, hermitian_eigen, partial_trace_left_with, BlockTensor, CMatrix, PsdCheck, C64};
use crate::random;
use crate::semigroup::GroupTable;

/// Largest group order handled by [`unitary_irreps`].
pub const MAX_GROUP_ORDER: usize = 48;
const MAX_ATTEMPTS: u64 = 8;
const SPLIT_DRAWS: usize = 16;
const CHARACTER_TOL: f64 = 1e-6;
const REP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupRepError {
    #[error("group of order {order} exceeds the limit of {max}")]
    SizeLimit { order: usize, max: usize },
    #[error("irrep decomposition did not converge after {attempts} attempts")]
    NonConvergent { attempts: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("irrep set is incomplete: Σd² = {sum}, expected {expected}")]
    IncompleteIrrepSet { sum: usize, expected: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// A unitary representation `ρ: G → U(d)`, one matrix per local group index.
#[derive(Clone, Debug)]
pub struct GroupRep {
    dim: usize,
    matrices: Vec<CMatrix>,
    character: Vec<C64>,
}

impl GroupRep {
    pub fn from_matrices(matrices: Vec<CMatrix>) -> Self {
        let dim = matrices.first().map_or(0, CMatrix::rows);
        let character = matrices.iter().map(CMatrix::trace).collect();
        Self {
            dim,
            matrices,
            character,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn character(&self) -> &[C64] {
        &self.character
    }

    /// Max of `‖ρ(g)ρ(h) - ρ(gh)‖` and `‖ρ(g)ρ(g)† - I‖` over the group.
    pub fn homomorphism_residual(&self, g: &GroupTable) -> f64 {
        let id = CMatrix::identity(self.dim);
        let mut r: f64 = 0.0;
        for a in 0..g.order() {
            let ra = &self.matrices[a];
            r = r.max(ra.matmul(&ra.dagger()).max_abs_diff(&id));
            for b in 0..g.order() {
                r = r.max(ra.matmul(&self.matrices[b]).max_abs_diff(&self.matrices[g.mul(a, b)]));
            }
        }
        r
    }
}

/// A function `Φ: G → M_n(ℂ)`.
#[derive(Clone, Debug)]
pub struct GroupMatrixMap {
    group: GroupTable,
    dim: usize,
    values: Vec<CMatrix>,
}

impl GroupMatrixMap {
    pub fn new(group: GroupTable, dim: usize, values: Vec<CMatrix>) -> Result<Self, GroupRepError> {
        if values.len() != group.order() {
            return Err(GroupRepError::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|v| v.rows() != dim || v.cols() != dim) {
            return Err(GroupRepError::DimensionMismatch(format!("values must be {dim}x{dim}")));
        }
        Ok(Self { group, dim, values })
    }

    pub fn from_fn(group: GroupTable, dim: usize, f: impl FnMut(usize) -> CMatrix) -> Result<Self, GroupRepError> {
        let values = (0..group.order()).map(f).collect();
        Self::new(group, dim, values)
    }

    /// `δ_e · I`
    pub fn delta(group: GroupTable, dim: usize) -> Self {
        let e = group.identity();
        let values = (0..group.order())
            .map(|g| if g == e { CMatrix::identity(dim) } else { CMatrix::zeros(dim, dim) })
            .collect();
        Self { group, dim, values }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, g: usize) -> &CMatrix {
        &self.values[g]
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }
}

/// Complete set of inequivalent unitary irreps, sorted by dimension and then
/// character. Deterministic for a given seed; on a failed decomposition the
/// next seed is tried.
pub fn unitary_irreps(g: &GroupTable, seed: u64) -> Result<Vec<GroupRep>, GroupRepError> {
    let order = g.order();
    if order > MAX_GROUP_ORDER {
        return Err(GroupRepError::SizeLimit {
            order,
            max: MAX_GROUP_ORDER,
        });
    }
    for attempt in 0..MAX_ATTEMPTS {
        if let Some(reps) = try_irreps(g, seed.wrapping_add(attempt)) {
            return Ok(reps);
        }
    }
    Err(GroupRepError::NonConvergent { attempts: MAX_ATTEMPTS })
}

fn regular_representation(g: &GroupTable) -> Vec<CMatrix> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut m = CMatrix::zeros(n, n);
            for h in 0..n {
                m[(g.mul(a, h), h)] = C64::new(1.0, 0.0);
            }
            m
        })
        .collect()
}

fn try_irreps(g: &GroupTable, seed: u64) -> Option<Vec<GroupRep>> {
    let order = g.order();
    let mut rng = random::rng(seed);
    let mut parts = Vec::new();
    split(regular_representation(g), order, &mut rng, &mut parts)?;

    let mut reps: Vec<GroupRep> = Vec::new();
    for mats in parts {
        let rep = GroupRep::from_matrices(mats);
        let dup = reps.iter().any(|r| {
            r.dim == rep.dim
                && r.character.iter().zip(&rep.character).all(|(a, b)| (a - b).norm() < CHARACTER_TOL)
        });
        if !dup {
            reps.push(rep);
        }
    }
    let sum: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if sum != order || reps.iter().any(|r| r.homomorphism_residual(g) > REP_TOL) {
        return None;
    }
    reps.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| compare_characters(&a.character, &b.character)));
    Some(reps)
}

fn compare_characters(a: &[C64], b: &[C64]) -> Ordering {
    let cmp = |x: f64, y: f64| {
        if (x - y).abs() <= CHARACTER_TOL {
            Ordering::Equal
        } else {
            x.total_cmp(&y)
        }
    };
    for (x, y) in a.iter().zip(b) {
        let o = cmp(x.re, y.re).then_with(|| cmp(x.im, y.im));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Splits a unitary representation into irreducible pieces by diagonalising
/// random Hermitian elements of its commutant.
fn split(mats: Vec<CMatrix>, order: usize, rng: &mut random::SeededRng, out: &mut Vec<Vec<CMatrix>>) -> Option<()> {
    let d = mats[0].rows();
    let norm: f64 = mats.iter().map(|m| m.trace().norm_sqr()).sum();
    if (norm - order as f64).abs() < 1e-6 * order as f64 {
        out.push(mats);
        return Some(());
    }
    'draw: for _ in 0..SPLIT_DRAWS {
        let a = random::hermitian_matrix(rng, d);
        let mut h = CMatrix::zeros(d, d);
        for r in &mats {
            h += &r.matmul(&a).matmul(&r.dagger());
        }
        let eig = hermitian_eigen(&h).ok()?;
        let scale = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut clusters: Vec<Vec<usize>> = vec![vec![0]];
        for i in 1..d {
            if eig.values[i] - eig.values[i - 1] > 1e-3 * scale {
                clusters.push(Vec::new());
            }
            clusters.last_mut().unwrap().push(i);
        }
        if clusters.len() < 2 {
            continue;
        }
        let mut pieces = Vec::with_capacity(clusters.len());
        for cols in &clusters {
            let u = eig.vectors.select_columns(cols);
            let ud = u.dagger();
            let mut sub = Vec::with_capacity(mats.len());
            for r in &mats {
                let ru = r.matmul(&u);
                let s = ud.matmul(&ru);
                if ru.max_abs_diff(&u.matmul(&s)) > 1e-8 {
                    continue 'draw;
                }
                sub.push(s);
            }
            pieces.push(sub);
        }
        for p in pieces {
            split(p, order, rng, out)?;
        }
        return Some(());
    }
    None
}

fn check_group(a: &GroupTable, b: &GroupTable) -> Result<(), GroupRepError> {
    if a != b {
        return Err(GroupRepError::DimensionMismatch("maps live on different groups".into()));
    }
    Ok(())
}

/// `Φ̂(ρ) = Σ_g ρ(g) ⊗ Φ(g)`
pub fn group_fourier(f: &GroupMatrixMap, rho: &GroupRep) -> Result<BlockTensor, GroupRepError> {
    if rho.matrices.len() != f.values.len() {
        return Err(GroupRepError::DimensionMismatch(format!(
            "representation has {} matrices for a group of order {}",
            rho.matrices.len(),
            f.values.len()
        )));
    }
    let mut t = BlockTensor::zeros(rho.dim, f.dim);
    for (r, v) in rho.matrices.iter().zip(&f.values) {
        t.add_kron(r, v);
    }
    Ok(t)
}

fn check_complete(g: &GroupTable, irreps: &[GroupRep], transforms: &[BlockTensor]) -> Result<usize, GroupRepError> {
    let sum: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    if sum != g.order() {
        return Err(GroupRepError::IncompleteIrrepSet {
            sum,
            expected: g.order(),
        });
    }
    if transforms.len() != irreps.len() {
        return Err(GroupRepError::DimensionMismatch(format!(
            "{} transforms for {} irreps",
            transforms.len(),
            irreps.len()
        )));
    }
    let n = transforms.first().map_or(0, BlockTensor::dim_right);
    for (r, t) in irreps.iter().zip(transforms) {
        if t.dim_left() != r.dim || t.dim_right() != n {
            return Err(GroupRepError::DimensionMismatch("transform shape does not match its irrep".into()));
        }
    }
    Ok(n)
}

/// `Φ(g) = (1/|G|) Σ_ρ d_ρ tr_left[(ρ(g⁻¹) ⊗ I) Φ̂(ρ)]`
pub fn group_fourier_invert(
    g: &GroupTable,
    irreps: &[GroupRep],
    transforms: &[BlockTensor],
    element: usize,
) -> Result<CMatrix, GroupRepError> {
    let n = check_complete(g, irreps, transforms)?;
    let gi = g.inv(element);
    let mut out = CMatrix::zeros(n, n);
    for (r, t) in irreps.iter().zip(transforms) {
        out.add_scaled(&partial_trace_left_with(&r.matrices[gi], t), C64::new(r.dim as f64, 0.0));
    }
    Ok(out.scale_real(1.0 / g.order() as f64))
}

/// `(Φ * Φ')(k) = Σ_i Φ(i) Φ'(i⁻¹k)`
pub fn group_convolve(f1: &GroupMatrixMap, f2: &GroupMatrixMap) -> Result<GroupMatrixMap, GroupRepError> {
    check_group(&f1.group, &f2.group)?;
    if f1.dim != f2.dim {
        return Err(GroupRepError::DimensionMismatch(format!("target dims {} and {}", f1.dim, f2.dim)));
    }
    let g = &f1.group;
    let values = (0..g.order())
        .map(|k| {
            let mut acc = CMatrix::zeros(f1.dim, f1.dim);
            for i in 0..g.order() {
                acc += &f1.values[i].matmul(&f2.values[g.mul(g.inv(i), k)]);
            }
            acc
        })
        .collect();
    Ok(GroupMatrixMap {
        group: g.clone(),
        dim: f1.dim,
        values,
    })
}

/// Both sides of a Plancherel-type identity and their Frobenius distance.
#[derive(Clone, Debug)]
pub struct PlancherelSides {
    pub lhs: CMatrix,
    pub rhs: CMatrix,
    pub residual: f64,
}

/// `Σ_g Φ(g⁻¹)Ψ(g)` against `(1/|G|) Σ_ρ d_ρ tr_left[Φ̂(ρ)Ψ̂(ρ)]`.
pub fn group_plancherel_check(
    f1: &GroupMatrixMap,
    f2: &GroupMatrixMap,
    irreps: &[GroupRep],
) -> Result<PlancherelSides, GroupRepError> {
    check_group(&f1.group, &f2.group)?;
    let g = &f1.group;
    let n = f1.dim;
    let mut lhs = CMatrix::zeros(n, n);
    for x in 0..g.order() {
        lhs += &f1.values[g.inv(x)].matmul(&f2.values[x]);
    }
    let mut rhs = CMatrix::zeros(n, n);
    for r in irreps {
        let prod = group_fourier(f1, r)?.mul(&group_fourier(f2, r)?).map_err(|e| GroupRepError::DimensionMismatch(e.to_string()))?;
        rhs.add_scaled(&crate::cxmat::partial_trace_left(&prod), C64::new(r.dim as f64, 0.0));
    }
    let rhs = rhs.scale_real(1.0 / g.order() as f64);
    let residual = lhs.frobenius_diff(&rhs);
    Ok(PlancherelSides { lhs, rhs, residual })
}

/// Block matrix `[Φ(g⁻¹g')]` tested for PSD.
pub fn group_pd_matrix(f: &GroupMatrixMap) -> CMatrix {
    let g = &f.group;
    let n = f.dim;
    let mut m = CMatrix::zeros(g.order() * n, g.order() * n);
    for a in 0..g.order() {
        for b in 0..g.order() {
            m.set_block(a * n, b * n, &f.values[g.mul(g.inv(a), b)]);
        }
    }
    m
}

pub fn group_pd_check(f: &GroupMatrixMap, tol: f64) -> PsdCheck {
    check_psd(&group_pd_matrix(f), tol)
}

#[derive(Clone, Debug)]
pub struct GroupBochnerReport {
    pub positive_definite: PsdCheck,
    pub transforms: Vec<PsdCheck>,
    pub all_transforms_psd: bool,
}

/// Direct PD verdict next to per-irrep PSD verdicts; the two must agree.
pub fn group_bochner_check(f: &GroupMatrixMap, irreps: &[GroupRep], tol: f64) -> Result<GroupBochnerReport, GroupRepError> {
    let sum: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
    if sum != f.group.order() {
        return Err(GroupRepError::IncompleteIrrepSet {
            sum,
            expected: f.group.order(),
        });
    }
    let pd = group_pd_check(f, tol);
    let transforms = irreps
        .iter()
        .map(|r| group_fourier(f, r).map(|t| check_psd(t.matrix(), tol)))
        .collect::<Result<Vec<_>, _>>()?;
    let all = transforms.iter().all(|t| t.psd);
    if all != pd.psd {
        return Err(GroupRepError::InternalInconsistency(format!(
            "PD verdict {} (witness {:e}) but transforms PSD = {all}",
            pd.psd, pd.min_eigenvalue
        )));
    }
    Ok(GroupBochnerReport {
        positive_definite: pd,
        transforms,
        all_transforms_psd: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxmat::c64;
    use crate::semigroup::{InverseStructure, SemigroupTable};

    fn s3() -> GroupTable {
        let s = InverseStructure::new(SemigroupTable::symmetric_inverse(3).unwrap()).unwrap();
        let top = s.index_of("[1>1,2>2,3>3]").unwrap();
        s.maximal_subgroup(top).unwrap()
    }

    fn scalar(x: f64) -> CMatrix {
        CMatrix::from_real(1, 1, &[x])
    }

    #[test]
    fn trivial_group() {
        let reps = unitary_irreps(&GroupTable::cyclic(1), 0).unwrap();
        assert_eq!(reps.len(), 1);
        assert!((reps[0].matrix(0)[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn z2_characters() {
        let reps = unitary_irreps(&GroupTable::cyclic(2), 0).unwrap();
        assert_eq!(reps.len(), 2);
        // sorted: sign character (1,-1) before trivial (1,1)
        let chars: Vec<Vec<f64>> = reps.iter().map(|r| r.character().iter().map(|c| c.re).collect()).collect();
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9);
        assert!(close(&chars[0], &[1.0, -1.0]));
        assert!(close(&chars[1], &[1.0, 1.0]));
    }

    #[test]
    fn s3_dimensions() {
        let g = s3();
        let reps = unitary_irreps(&g, 3).unwrap();
        let dims: Vec<usize> = reps.iter().map(GroupRep::dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        for r in &reps {
            assert!(r.homomorphism_residual(&g) < 1e-10);
        }
    }

    #[test]
    fn characters_independent_of_seed() {
        let g = GroupTable::cyclic(6);
        let a = unitary_irreps(&g, 1).unwrap();
        let b = unitary_irreps(&g, 99).unwrap();
        for (x, y) in a.iter().zip(&b) {
            for (p, q) in x.character().iter().zip(y.character()) {
                assert!((p - q).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            unitary_irreps(&GroupTable::cyclic(49), 0),
            Err(GroupRepError::SizeLimit { .. })
        ));
    }

    #[test]
    fn z2_transforms() {
        let g = GroupTable::cyclic(2);
        let reps = unitary_irreps(&g, 0).unwrap();
        let x = CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let y = CMatrix::from_real(2, 2, &[0.5, -1.0, 0.0, 2.0]);
        let f = GroupMatrixMap::new(g, 2, vec![x.clone(), y.clone()]).unwrap();
        let sign = group_fourier(&f, &reps[0]).unwrap();
        let triv = group_fourier(&f, &reps[1]).unwrap();
        assert!(triv.matrix().max_abs_diff(&(&x + &y)) < 1e-12);
        assert!(sign.matrix().max_abs_diff(&(&x - &y)) < 1e-12);
    }

    #[test]
    fn delta_inverts_to_delta() {
        let g = s3();
        let reps = unitary_irreps(&g, 0).unwrap();
        let f = GroupMatrixMap::delta(g.clone(), 2);
        let ts: Vec<BlockTensor> = reps.iter().map(|r| group_fourier(&f, r).unwrap()).collect();
        for (r, t) in reps.iter().zip(&ts) {
            assert!(t.matrix().max_abs_diff(&CMatrix::identity(2 * r.dim())) < 1e-12);
        }
        for x in 0..g.order() {
            let v = group_fourier_invert(&g, &reps, &ts, x).unwrap();
            assert!(v.max_abs_diff(f.value(x)) < 1e-12);
        }
        assert!(matches!(
            group_fourier_invert(&g, &reps[..2], &ts[..2], 0),
            Err(GroupRepError::IncompleteIrrepSet { .. })
        ));
    }

    #[test]
    fn z2_scalar_convolution() {
        let g = GroupTable::cyclic(2);
        let a = GroupMatrixMap::new(g.clone(), 1, vec![scalar(2.0), scalar(3.0)]).unwrap();
        let b = GroupMatrixMap::new(g.clone(), 1, vec![scalar(5.0), scalar(7.0)]).unwrap();
        let c = group_convolve(&a, &b).unwrap();
        assert!((c.value(0)[(0, 0)].re - (2.0 * 5.0 + 3.0 * 7.0)).abs() < 1e-12);
        assert!((c.value(1)[(0, 0)].re - (2.0 * 7.0 + 3.0 * 5.0)).abs() < 1e-12);
        let d = group_convolve(&a, &GroupMatrixMap::delta(g, 1)).unwrap();
        assert_eq!(d.values(), a.values());
    }

    #[test]
    fn z2_pd_examples() {
        let g = GroupTable::cyclic(2);
        let reps = unitary_irreps(&g, 0).unwrap();
        let ones = GroupMatrixMap::new(g.clone(), 1, vec![scalar(1.0), scalar(1.0)]).unwrap();
        assert!(group_pd_check(&ones, 1e-9).psd);
        let sign = GroupMatrixMap::new(g.clone(), 1, vec![scalar(1.0), scalar(-1.0)]).unwrap();
        let rep = group_bochner_check(&sign, &reps, 1e-9).unwrap();
        assert!(rep.positive_definite.psd);
        assert!(rep.positive_definite.min_eigenvalue.abs() < 1e-12);
        let bad = GroupMatrixMap::new(g, 1, vec![scalar(1.0), scalar(2.0)]).unwrap();
        let rep = group_bochner_check(&bad, &reps, 1e-9).unwrap();
        assert!(!rep.positive_definite.psd);
        assert!((rep.positive_definite.min_eigenvalue + 1.0).abs() < 1e-12);
        assert!(!rep.all_transforms_psd);
    }

    #[test]
    fn plancherel_trivial_cases() {
        let g = GroupTable::cyclic(3);
        let reps = unitary_irreps(&g, 0).unwrap();
        let d = GroupMatrixMap::delta(g.clone(), 2);
        let p = group_plancherel_check(&d, &d, &reps).unwrap();
        assert!(p.lhs.max_abs_diff(&CMatrix::identity(2)) < 1e-12);
        assert!(p.residual < 1e-12);
        let zero = GroupMatrixMap::from_fn(g, 2, |_| CMatrix::zeros(2, 2)).unwrap();
        let p = group_plancherel_check(&d, &zero, &reps).unwrap();
        assert!(p.lhs.is_zero() && p.rhs.max_abs() < 1e-15);
    }
}

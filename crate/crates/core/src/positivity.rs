//! Positive-definiteness of maps on `C₀[S]`, the Bochner criterion, GNS
//! dilations, complete positivity, and the unitary-conjugation test for
//! representations of matrix algebras.

use std::sync::Arc;

use serde::Serialize;

use crate::cxmat::{check_psd, hermitian_eigen, CMatrix, PsdCheck, C64};
use crate::harmonic::{fourier_all, in_basis, AlgebraRep, Basis, HarmonicError, IrrepSet, MatrixMap};
use crate::maps::{choi, MapsError, UnitMap};
use crate::random;
use crate::semigroup::{InverseStructure, SemigroupTable};

/// Residual above which a dilation is treated as a bug rather than noise.
pub const RECONSTRUCTION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PositivityError {
    #[error("map is not positive definite (min eigenvalue {witness:e})")]
    NotPositiveDefinite { witness: f64 },
    #[error("dilation does not reproduce the map (residual {residual:e})")]
    ReconstructionFailure { residual: f64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("matrices do not form a representation (residual {residual:e})")]
    NotARepresentation { residual: f64 },
    #[error("operation needs the matrix-units semigroup, got {0}")]
    WrongSemigroup(String),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Maps(#[from] MapsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PdMode {
    /// `[L(s⁻¹s')]` over nonzero `s, s'`.
    Natural,
    /// `[L(⌊s⁻¹⌋⌊s'⌋)]`.
    Groupoid,
    /// The groupoid matrix restricted to each 𝒟-class separately.
    Blocks,
}

#[derive(Clone, Debug, Serialize)]
pub struct PdModeReport {
    pub mode: PdMode,
    pub positive_definite: bool,
    pub hermitian: bool,
    pub min_eigenvalue: f64,
    /// Per-class verdicts in blocks mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<PsdCheck>>,
}

/// `[L(s⁻¹s')]`, zero blocks where the product is `z`.
pub fn pd_matrix_natural(f: &MatrixMap) -> CMatrix {
    let sg = f.semigroup();
    let n = f.dim();
    let nz = sg.nonzero();
    let mut m = CMatrix::zeros(nz.len() * n, nz.len() * n);
    let evals: Vec<CMatrix> = nz.iter().map(|&x| f.eval_natural(x)).collect();
    for (i, &s) in nz.iter().enumerate() {
        for (j, &t) in nz.iter().enumerate() {
            let x = sg.mul(sg.inv(s), t);
            if x != sg.zero() {
                m.set_block(i * n, j * n, &evals[sg.position(x).unwrap()]);
            }
        }
    }
    m
}

fn groupoid_block_matrix(f: &MatrixMap, rows: &[usize]) -> CMatrix {
    let sg = f.semigroup();
    let n = f.dim();
    let mut m = CMatrix::zeros(rows.len() * n, rows.len() * n);
    for (i, &s) in rows.iter().enumerate() {
        for (j, &t) in rows.iter().enumerate() {
            if let Some(x) = sg.groupoid_product(sg.inv(s), t) {
                m.set_block(i * n, j * n, &f.eval_groupoid(x));
            }
        }
    }
    m
}

/// `[L(⌊s⁻¹⌋⌊s'⌋)]`, nonzero only when `ran s = ran s'`.
pub fn pd_matrix_groupoid(f: &MatrixMap) -> CMatrix {
    groupoid_block_matrix(f, f.semigroup().nonzero())
}

pub fn pd_check(f: &MatrixMap, mode: PdMode, tol: f64) -> PdModeReport {
    let single = |c: PsdCheck| PdModeReport {
        mode,
        positive_definite: c.psd,
        hermitian: c.hermitian,
        min_eigenvalue: c.min_eigenvalue,
        classes: None,
    };
    match mode {
        PdMode::Natural => single(check_psd(&pd_matrix_natural(f), tol)),
        PdMode::Groupoid => single(check_psd(&pd_matrix_groupoid(f), tol)),
        PdMode::Blocks => {
            let classes: Vec<PsdCheck> = f
                .semigroup()
                .classes()
                .iter()
                .map(|dc| check_psd(&groupoid_block_matrix(f, &dc.elements), tol))
                .collect();
            PdModeReport {
                mode,
                positive_definite: classes.iter().all(|c| c.psd),
                hermitian: classes.iter().all(|c| c.hermitian),
                min_eigenvalue: classes.iter().map(|c| c.min_eigenvalue).fold(f64::INFINITY, f64::min),
                classes: Some(classes),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformVerdict {
    pub irrep: String,
    pub dim: usize,
    pub psd: bool,
    pub hermitian: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PdReport {
    pub natural: PdModeReport,
    pub groupoid: PdModeReport,
    pub blocks: PdModeReport,
    pub transforms: Vec<TransformVerdict>,
    pub positive_definite: bool,
    pub all_transforms_psd: bool,
}

/// Tests positive-definiteness of the groupoid-coefficient map `Φ̃` in all
/// three modes and PSD of `Φ̂(σ)` for every induced irrep. Any disagreement
/// is reported as an error.
pub fn bochner_check(f: &MatrixMap, irreps: &IrrepSet, tol: f64) -> Result<PdReport, PositivityError> {
    let g = in_basis(f, Basis::Groupoid);
    let natural = pd_check(&g, PdMode::Natural, tol);
    let groupoid = pd_check(&g, PdMode::Groupoid, tol);
    let blocks = pd_check(&g, PdMode::Blocks, tol);
    let data = fourier_all(&g, irreps)?;
    let transforms: Vec<TransformVerdict> = data
        .ids()
        .iter()
        .zip(data.transforms())
        .map(|(id, t)| {
            let c = check_psd(t.matrix(), tol);
            TransformVerdict {
                irrep: id.clone(),
                dim: t.dim_left(),
                psd: c.psd,
                hermitian: c.hermitian,
                min_eigenvalue: c.min_eigenvalue,
            }
        })
        .collect();
    let all = transforms.iter().all(|t| t.psd);
    let pd = groupoid.positive_definite;
    if natural.positive_definite != pd || blocks.positive_definite != pd {
        return Err(PositivityError::InternalInconsistency(format!(
            "PD characterizations disagree: natural {}, groupoid {}, blocks {}",
            natural.positive_definite, pd, blocks.positive_definite
        )));
    }
    if all != pd {
        return Err(PositivityError::InternalInconsistency(format!(
            "PD verdict {pd} (witness {:e}) but all transforms PSD = {all}",
            groupoid.min_eigenvalue
        )));
    }
    Ok(PdReport {
        natural,
        groupoid,
        blocks,
        transforms,
        positive_definite: pd,
        all_transforms_psd: all,
    })
}

/// `L(⌊s⌋) = V† π(⌊s⌋) V` on a space of dimension `dim`.
#[derive(Clone, Debug)]
pub struct Dilation {
    pub dim: usize,
    /// `dim x n`
    pub v: CMatrix,
    /// `π(⌊s⌋)` per nonzero element, in `nonzero()` order.
    pub pi: Vec<CMatrix>,
    pub reconstruction_residual: f64,
    pub isometry_residual: f64,
    pub star_residual: f64,
    pub multiplicativity_residual: f64,
    pub gram_min_eigenvalue: f64,
}

/// GNS construction for a positive definite map given in the groupoid basis.
pub fn stinespring(f: &MatrixMap, tol: f64) -> Result<Dilation, PositivityError> {
    if f.basis() != Basis::Groupoid {
        return Err(HarmonicError::WrongBasis {
            expected: Basis::Groupoid,
            found: f.basis(),
        }
        .into());
    }
    let sg = f.semigroup().clone();
    let n = f.dim();
    let nz = sg.nonzero();
    let big = nz.len() * n;
    let gram = pd_matrix_groupoid(f);
    let verdict = check_psd(&gram, tol);
    if !verdict.psd {
        return Err(PositivityError::NotPositiveDefinite {
            witness: verdict.min_eigenvalue,
        });
    }
    let eig = hermitian_eigen(&gram).map_err(HarmonicError::from)?;
    let norm = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let keep: Vec<usize> = (0..big).filter(|&i| eig.values[i] > tol * norm).collect();
    let d = keep.len();
    let vr = eig.vectors.select_columns(&keep);
    let sqrt: Vec<f64> = keep.iter().map(|&i| eig.values[i].sqrt()).collect();
    // J = Λ^{1/2} V_r†, J⁺ = V_r Λ^{-1/2}
    let j = CMatrix::from_fn(d, big, |a, b| vr[(b, a)].conj() * sqrt[a]);
    let jp = CMatrix::from_fn(big, d, |a, b| vr[(a, b)] / sqrt[b]);

    let pos = |s: usize| sg.position(s).unwrap();
    let pi: Vec<CMatrix> = nz
        .iter()
        .map(|&u| {
            // (L_u J⁺) moves row block t to row block ut when dom u = ran t.
            let mut lj = CMatrix::zeros(big, d);
            for &t in nz {
                if let Some(x) = sg.groupoid_product(u, t) {
                    let (src, dst) = (pos(t) * n, pos(x) * n);
                    for r in 0..n {
                        for c in 0..d {
                            lj[(dst + r, c)] += jp[(src + r, c)];
                        }
                    }
                }
            }
            j.matmul(&lj)
        })
        .collect();

    let mut v = CMatrix::zeros(d, n);
    for &e in sg.idempotents() {
        let off = pos(e) * n;
        for r in 0..d {
            for c in 0..n {
                v[(r, c)] += j[(r, off + c)];
            }
        }
    }
    let vd = v.dagger();

    let mut reconstruction: f64 = 0.0;
    for &s in nz {
        let rebuilt = vd.matmul(&pi[pos(s)]).matmul(&v);
        reconstruction = reconstruction.max(rebuilt.frobenius_diff(f.value(s)));
    }
    let mut unit = CMatrix::zeros(n, n);
    for &e in sg.idempotents() {
        unit += f.value(e);
    }
    let isometry = vd.matmul(&v).frobenius_diff(&unit);
    let mut star: f64 = 0.0;
    let mut mult: f64 = 0.0;
    for &s in nz {
        star = star.max(pi[pos(s)].dagger().frobenius_diff(&pi[pos(sg.inv(s))]));
        for &t in nz {
            let prod = pi[pos(s)].matmul(&pi[pos(t)]);
            let r = match sg.groupoid_product(s, t) {
                Some(x) => prod.frobenius_diff(&pi[pos(x)]),
                None => prod.frobenius_norm(),
            };
            mult = mult.max(r);
        }
    }
    let worst = reconstruction.max(isometry);
    if worst > RECONSTRUCTION_LIMIT {
        return Err(PositivityError::ReconstructionFailure { residual: worst });
    }
    Ok(Dilation {
        dim: d,
        v,
        pi,
        reconstruction_residual: reconstruction,
        isometry_residual: isometry,
        star_residual: star,
        multiplicativity_residual: mult,
        gram_min_eigenvalue: verdict.min_eigenvalue,
    })
}

/// PSD test on the Choi matrix.
pub fn cp_check(f: &MatrixMap, tol: f64) -> Result<PsdCheck, PositivityError> {
    let c = choi(f).map_err(|e| match e {
        MapsError::WrongSemigroup(s) => PositivityError::WrongSemigroup(s),
        other => other.into(),
    })?;
    Ok(check_psd(c.matrix(), tol))
}

#[derive(Clone, Debug)]
pub struct ConjugationVerdict {
    pub is_conjugation: bool,
    pub dim: usize,
    pub unitary: Option<CMatrix>,
    pub residual: f64,
}

fn matrix_units_rep(rho: &AlgebraRep, tol: f64) -> Result<usize, PositivityError> {
    let m = rho
        .semigroup()
        .matrix_units_size()
        .ok_or_else(|| PositivityError::WrongSemigroup(rho.semigroup().name().to_string()))?;
    let scale = rho.matrices().iter().map(CMatrix::max_abs).fold(1.0, f64::max);
    let residual = rho.multiplicativity_residual();
    if residual > tol * scale * scale {
        return Err(PositivityError::NotARepresentation { residual });
    }
    Ok(m)
}

/// Decides whether `ρ(X) = U X U†` for a unitary `U` and recovers `U` with
/// the first nonzero entry of its first column made real and positive.
pub fn is_unitary_conjugation_rep(rho: &AlgebraRep, tol: f64) -> Result<ConjugationVerdict, PositivityError> {
    let m = matrix_units_rep(rho, tol)?;
    let d = rho.dim();
    let no = |residual: f64| ConjugationVerdict {
        is_conjugation: false,
        dim: d,
        unitary: None,
        residual,
    };
    if d != m {
        return Ok(no(f64::INFINITY));
    }
    let e11 = rho.matrix(0);
    let (best, norm) = (0..d)
        .map(|c| (c, e11.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if norm <= tol {
        return Ok(no(f64::INFINITY));
    }
    let v: Vec<C64> = e11.column(best).iter().map(|z| z / norm).collect();
    let mut u = CMatrix::zeros(d, m);
    for i in 0..m {
        let ei1 = rho.matrix(i * m);
        for r in 0..d {
            u[(r, i)] = (0..d).map(|k| ei1[(r, k)] * v[k]).sum();
        }
    }
    if let Some(z) = u.column(0).into_iter().find(|z| z.norm() > tol) {
        u = u.scale(z.conj() / z.norm());
    }
    let mut residual = u.dagger().matmul(&u).max_abs_diff(&CMatrix::identity(m));
    let ud = u.dagger();
    for i in 0..m {
        for j in 0..m {
            let want = u.matmul(&CMatrix::unit(m, i, j)).matmul(&ud);
            residual = residual.max(rho.matrix(i * m + j).max_abs_diff(&want));
        }
    }
    if residual > tol {
        return Ok(no(residual));
    }
    Ok(ConjugationVerdict {
        is_conjugation: true,
        dim: d,
        unitary: Some(u),
        residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeCategory {
    /// Random Kraus map.
    Cp,
    /// Transpose of a single-Kraus map.
    PositiveNotCp,
    /// Signed sum of Kraus terms.
    HermitianPreserving,
}

impl ProbeCategory {
    const ALL: [ProbeCategory; 3] = [Self::Cp, Self::PositiveNotCp, Self::HermitianPreserving];
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeTrial {
    pub index: usize,
    pub seed: u64,
    pub category: ProbeCategory,
    pub cp: PsdCheck,
    pub transform: PsdCheck,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryTally {
    pub category: ProbeCategory,
    pub trials: usize,
    pub cp: usize,
    pub transform_psd: usize,
    pub agreements: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub rep_dim: usize,
    pub target_dim: usize,
    pub trials: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub categories: Vec<CategoryTally>,
    pub counterexamples: Vec<ProbeTrial>,
}

/// Samples maps and compares complete positivity with PSD of `Σ ρ(e_ij) ⊗ Φ(e_ij)`.
/// Trial `i` uses seed `seed + i` and cycles through the categories.
pub fn cp_correspondence_probe(
    rho: &AlgebraRep,
    target_dim: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<ProbeReport, PositivityError> {
    let m = matrix_units_rep(rho, tol)?;
    let n = target_dim;
    let mut tallies: Vec<CategoryTally> = ProbeCategory::ALL
        .iter()
        .map(|&category| CategoryTally {
            category,
            trials: 0,
            cp: 0,
            transform_psd: 0,
            agreements: 0,
        })
        .collect();
    let mut counterexamples = Vec::new();
    let mut agreements = 0;
    for index in 0..trials {
        let s = seed.wrapping_add(index as u64);
        let category = ProbeCategory::ALL[index % 3];
        let mut r = random::rng(s);
        let phi = match category {
            ProbeCategory::Cp => {
                let count = 1 + (index / 3) % 3;
                let ks: Vec<CMatrix> = (0..count).map(|_| random::gaussian_matrix(&mut r, n, m)).collect();
                kraus_unit_map(m, &ks, &vec![1.0; count])
            }
            ProbeCategory::PositiveNotCp => {
                let k = random::gaussian_matrix(&mut r, n, m);
                let base = kraus_unit_map(m, &[k], &[1.0]);
                UnitMap::from_fn(m, n, |a, b| base.value(a, b).transpose())
            }
            ProbeCategory::HermitianPreserving => {
                let ks: Vec<CMatrix> = (0..3).map(|_| random::gaussian_matrix(&mut r, n, m)).collect();
                let signs: Vec<f64> = (0..3).map(|_| if r.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
                kraus_unit_map(m, &ks, &signs)
            }
        };
        let cp = check_psd(phi.choi().matrix(), tol);
        let mut t = crate::cxmat::BlockTensor::zeros(rho.dim(), n);
        for a in 0..m {
            for b in 0..m {
                t.add_kron(rho.matrix(a * m + b), phi.value(a, b));
            }
        }
        let transform = check_psd(t.matrix(), tol);
        let agree = cp.psd == transform.psd;
        let tally = &mut tallies[index % 3];
        tally.trials += 1;
        tally.cp += usize::from(cp.psd);
        tally.transform_psd += usize::from(transform.psd);
        if agree {
            agreements += 1;
            tally.agreements += 1;
        } else {
            counterexamples.push(ProbeTrial {
                index,
                seed: s,
                category,
                cp,
                transform,
                agree,
            });
        }
    }
    Ok(ProbeReport {
        rep_dim: rho.dim(),
        target_dim: n,
        trials,
        agreements,
        disagreements: trials - agreements,
        categories: tallies,
        counterexamples,
    })
}

use rand::Rng;

/// `X ↦ Σ c_i K_i X K_i†` with `K_i` of shape `n x m`.
pub fn kraus_unit_map(m: usize, kraus: &[CMatrix], weights: &[f64]) -> UnitMap {
    let n = kraus.first().map_or(0, CMatrix::rows);
    UnitMap::from_fn(m, n, |a, b| {
        let mut acc = CMatrix::zeros(n, n);
        for (k, &w) in kraus.iter().zip(weights) {
            let ca = k.column(a);
            let cb = k.column(b);
            for r in 0..n {
                for c in 0..n {
                    acc[(r, c)] += ca[r] * cb[c].conj() * w;
                }
            }
        }
        acc
    })
}

fn matrix_units(m: usize) -> Arc<InverseStructure> {
    Arc::new(InverseStructure::new(SemigroupTable::matrix_units(m).expect("m in range")).expect("matrix units are inverse"))
}

/// Random CP map `M_m → M_n` with Gaussian Kraus operators.
pub fn random_cp_map(m: usize, n: usize, kraus_count: usize, seed: u64) -> MatrixMap {
    let mut r = random::rng(seed);
    let ks: Vec<CMatrix> = (0..kraus_count).map(|_| random::gaussian_matrix(&mut r, n, m)).collect();
    kraus_unit_map(m, &ks, &vec![1.0; kraus_count])
        .to_matrix_map(matrix_units(m))
        .expect("matrix units")
}

pub fn transpose_map(m: usize) -> MatrixMap {
    UnitMap::transpose(m).to_matrix_map(matrix_units(m)).expect("matrix units")
}

/// `Φ̃(⌊s⌋) = Σ_{dom t = ran s} A(t)† A(ts)` from random `A(t)`; positive
/// definite by construction. Returned in the groupoid basis.
pub fn gram_pd_map(semigroup: &Arc<InverseStructure>, n: usize, seed: u64) -> MatrixMap {
    let sg = semigroup;
    let mut r = random::rng(seed);
    let a: Vec<CMatrix> = sg.nonzero().iter().map(|_| random::gaussian_matrix(&mut r, n, n)).collect();
    let pos = |s: usize| sg.position(s).unwrap();
    MatrixMap::from_fn(sg.clone(), n, Basis::Groupoid, |s| {
        let mut acc = CMatrix::zeros(n, n);
        for &t in sg.nonzero() {
            if sg.dom(t) == sg.ran(s) {
                acc += &a[pos(t)].dagger().matmul(&a[pos(sg.mul(t, s))]);
            }
        }
        acc
    })
    .expect("consistent shapes")
}

/// Unstructured Gaussian map.
pub fn random_map(semigroup: &Arc<InverseStructure>, n: usize, basis: Basis, seed: u64) -> MatrixMap {
    let mut r = random::rng(seed);
    MatrixMap::from_fn(semigroup.clone(), n, basis, |_| random::gaussian_matrix(&mut r, n, n)).expect("consistent shapes")
}

//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use semigroup_harmonic::cxmat::{partial_trace_left, CMatrix, C64};
use semigroup_harmonic::harmonic::{
    fourier_all, fourier_invert, fourier_invert_all, in_basis, induced_irreps, plancherel_check, schur_residual,
    AlgebraRep, Basis, IrrepSet, MatrixMap,
};
use semigroup_harmonic::maps::{choi, choi_invert, convolve};
use semigroup_harmonic::positivity::{
    bochner_check, cp_correspondence_probe, gram_pd_map, is_unitary_conjugation_rep, random_cp_map, random_map,
    stinespring, transpose_map, PositivityError,
};
use semigroup_harmonic::random;
use semigroup_harmonic::semigroup::{InverseStructure, SemigroupTable};

type Outcome = Result<String, String>;

fn structure(r: &str) -> Arc<InverseStructure> {
    Arc::new(InverseStructure::new(SemigroupTable::from_ref(r).unwrap()).unwrap())
}

/// The builtins exercised numerically.
fn standard() -> Vec<Arc<InverseStructure>> {
    let mut refs = vec![
        "builtin:matrix_units:2".to_string(),
        "builtin:matrix_units:3".to_string(),
        "builtin:symmetric_inverse:2".to_string(),
        "builtin:symmetric_inverse:3".to_string(),
    ];
    refs.extend((2..=5).map(|n| format!("builtin:cyclic_with_zero:{n}")));
    refs.iter().map(|r| structure(r)).collect()
}

/// Wider sweep for the exact combinatorial checks.
fn all_builtins() -> Vec<Arc<InverseStructure>> {
    let mut refs: Vec<String> = (1..=4).map(|m| format!("builtin:matrix_units:{m}")).collect();
    refs.extend((1..=4).map(|n| format!("builtin:symmetric_inverse:{n}")));
    refs.extend((1..=8).map(|n| format!("builtin:cyclic_with_zero:{n}")));
    refs.iter().map(|r| structure(r)).collect()
}

fn irreps(sg: &Arc<InverseStructure>) -> IrrepSet {
    induced_irreps(sg, 0).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < secs as f64, || format!("took {elapsed:.2?}, limit {secs} s"))
}

fn completeness() -> Outcome {
    let start = Instant::now();
    let mut refs: Vec<String> = vec![
        "builtin:matrix_units:2".into(),
        "builtin:matrix_units:3".into(),
        "builtin:symmetric_inverse:2".into(),
        "builtin:symmetric_inverse:3".into(),
    ];
    refs.extend((2..=5).map(|n| format!("builtin:cyclic_with_zero:{n}")));
    for r in &refs {
        let sg = structure(r);
        let set = irreps(&sg);
        ensure(set.dimension_sum() == sg.order() - 1, || {
            format!("{r}: Σd² = {}, |S|-1 = {}", set.dimension_sum(), sg.order() - 1)
        })?;
    }
    let t = start.elapsed();
    within(t, 10)?;
    Ok(format!("{} semigroups, {t:.2?}", refs.len()))
}

fn fourier_roundtrip() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for sg in standard() {
        let set = irreps(&sg);
        for seed in 0..100 {
            let basis = if seed % 2 == 0 { Basis::Natural } else { Basis::Groupoid };
            let f = random_map(&sg, 2, basis, seed);
            let back = fourier_invert_all(&fourier_all(&f, &set).unwrap(), &set).unwrap();
            worst = worst.max(in_basis(&f, Basis::Groupoid).max_abs_diff(&back));
            count += 1;
        }
    }
    let t = start.elapsed();
    ensure(worst <= 1e-9, || format!("max error {worst:e}"))?;
    within(t, 60)?;
    Ok(format!("{count} maps, max error {worst:.2e}, {t:.2?}"))
}

fn choi_reduction() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in [2, 3] {
        let sg = structure(&format!("builtin:matrix_units:{m}"));
        let set = irreps(&sg);
        for seed in 0..20 {
            let f = random_map(&sg, 2, Basis::Natural, seed);
            let data = fourier_all(&f, &set).unwrap();
            let c = choi(&f).unwrap();
            worst = worst.max(data.transforms()[0].matrix().max_abs_diff(c.matrix()));
            for &s in sg.nonzero() {
                let inv = fourier_invert(&data, &set, s).unwrap();
                let x = CMatrix::unit(m, s / m, s % m);
                worst = worst.max(inv.max_abs_diff(&choi_invert(&c, &x).unwrap()));
            }
        }
    }
    ensure(worst <= 1e-12, || format!("discrepancy {worst:e}"))?;
    Ok(format!("m = 2, 3; max discrepancy {worst:.2e}"))
}

fn convolution_theorem() -> Outcome {
    let mut worst: f64 = 0.0;
    for sg in standard() {
        let set = irreps(&sg);
        for seed in 0..50u64 {
            let f = random_map(&sg, 2, Basis::Natural, 2 * seed);
            let g = random_map(&sg, 2, Basis::Groupoid, 2 * seed + 1);
            let h = convolve(&f, &g).unwrap();
            let (df, dg, dh) = (
                fourier_all(&f, &set).unwrap(),
                fourier_all(&g, &set).unwrap(),
                fourier_all(&h, &set).unwrap(),
            );
            for i in 0..dh.transforms().len() {
                let prod = df.transforms()[i].mul(&dg.transforms()[i]).unwrap();
                worst = worst.max(prod.matrix().frobenius_diff(dh.transforms()[i].matrix()));
            }
        }
    }
    ensure(worst <= 1e-9, || format!("residual {worst:e}"))?;
    Ok(format!("50 pairs x 8 semigroups, max residual {worst:.2e}"))
}

fn plancherel() -> Outcome {
    let mut worst: f64 = 0.0;
    for sg in standard() {
        let set = irreps(&sg);
        for seed in 0..50u64 {
            let f = random_map(&sg, 2, Basis::Natural, 1000 + 2 * seed);
            let g = random_map(&sg, 2, Basis::Natural, 1001 + 2 * seed);
            worst = worst.max(plancherel_check(&f, &g, &set).unwrap().residual);
        }
    }
    ensure(worst <= 1e-9, || format!("general residual {worst:e}"))?;
    // Σ_ij Φ(e_ji)Ψ(e_ij) = tr_left(C_Φ C_Ψ) on matrix units.
    let mut mu_worst: f64 = 0.0;
    for m in [2, 3] {
        let sg = structure(&format!("builtin:matrix_units:{m}"));
        for seed in 0..50u64 {
            let f = random_map(&sg, 2, Basis::Natural, 2 * seed);
            let g = random_map(&sg, 2, Basis::Natural, 2 * seed + 1);
            let mut lhs = CMatrix::zeros(2, 2);
            for i in 0..m {
                for j in 0..m {
                    lhs += &f.value(j * m + i).matmul(g.value(i * m + j));
                }
            }
            let cc = choi(&f).unwrap().mul(&choi(&g).unwrap()).unwrap();
            let rhs = partial_trace_left(&cc);
            mu_worst = mu_worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    ensure(mu_worst <= 1e-12, || format!("matrix-units residual {mu_worst:e}"))?;
    Ok(format!("max residual {worst:.2e}; matrix units {mu_worst:.2e}"))
}

fn schur() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        let sg = structure(&format!("builtin:symmetric_inverse:{n}"));
        worst = worst.max(schur_residual(&irreps(&sg)));
    }
    ensure(worst <= 1e-8, || format!("residual {worst:e}"))?;
    Ok(format!("symmetric_inverse 2, 3; max residual {worst:.2e}"))
}

/// Random map with `Φ̃(⌊s⁻¹⌋) = Φ̃(⌊s⌋)†`: Hermitian PD matrices of either sign.
fn hermitian_random(sg: &Arc<InverseStructure>, seed: u64) -> MatrixMap {
    let r = random_map(sg, 2, Basis::Groupoid, seed);
    let shift = (seed % 3) as f64;
    let values = sg
        .nonzero()
        .iter()
        .map(|&s| {
            let mut v = (r.value(s) + &r.value(sg.inv(s)).dagger()).scale_real(0.5);
            if sg.is_idempotent(s) {
                v.add_scaled(&CMatrix::identity(2), C64::new(shift, 0.0));
            }
            v
        })
        .collect();
    MatrixMap::new(sg.clone(), 2, Basis::Groupoid, values).unwrap()
}

fn bochner() -> Outcome {
    let tol = 1e-8;
    let mut total = 0;
    let mut pd = 0;
    let mut disagreements = Vec::new();
    let mut run = |f: &MatrixMap, set: &IrrepSet, label: String| match bochner_check(f, set, tol) {
        Ok(r) => {
            total += 1;
            pd += usize::from(r.positive_definite);
        }
        Err(e) => {
            total += 1;
            disagreements.push(format!("{label}: {e}"));
        }
    };
    for sg in standard() {
        let set = irreps(&sg);
        for seed in 0..30 {
            run(&gram_pd_map(&sg, 2, seed), &set, format!("gram {} {seed}", sg.name()));
        }
        for seed in 0..10 {
            run(&random_map(&sg, 2, Basis::Natural, seed), &set, format!("random {} {seed}", sg.name()));
            run(&hermitian_random(&sg, seed), &set, format!("hermitian {} {seed}", sg.name()));
        }
    }
    for m in [2, 3] {
        let set = irreps(&structure(&format!("builtin:matrix_units:{m}")));
        for seed in 0..70 {
            run(&random_cp_map(m, 2, 1 + (seed as usize % 3), seed), &set, format!("kraus m={m} {seed}"));
        }
        run(&transpose_map(m), &set, format!("transpose m={m}"));
    }
    ensure(total >= 500, || format!("only {total} maps"))?;
    ensure(disagreements.is_empty(), || {
        format!("{} disagreements, first: {}", disagreements.len(), disagreements[0])
    })?;
    let t = transpose_map(2);
    let r = bochner_check(&t, &irreps(t.semigroup()), tol).map_err(|e| e.to_string())?;
    let witness = r.transforms.iter().map(|v| v.min_eigenvalue).fold(f64::INFINITY, f64::min);
    ensure(!r.positive_definite && (witness + 1.0).abs() <= 1e-9, || format!("transpose witness {witness}"))?;
    Ok(format!("{total} maps ({pd} PD), 0 disagreements, transpose witness {witness}"))
}

fn stinespring_dilations() -> Outcome {
    let mut worst_rec: f64 = 0.0;
    let mut worst_pi: f64 = 0.0;
    let mut count = 0;
    for r in ["builtin:symmetric_inverse:2", "builtin:matrix_units:2"] {
        let sg = structure(r);
        for seed in 0..50 {
            let f = if seed % 2 == 0 || r.contains("symmetric") {
                gram_pd_map(&sg, 2, seed)
            } else {
                in_basis(&random_cp_map(2, 2, 2, seed), Basis::Groupoid)
            };
            let d = stinespring(&f, 1e-9).map_err(|e| format!("{r} seed {seed}: {e}"))?;
            worst_rec = worst_rec.max(d.reconstruction_residual).max(d.isometry_residual);
            worst_pi = worst_pi.max(d.star_residual).max(d.multiplicativity_residual);
            count += 1;
        }
    }
    ensure(worst_rec <= 1e-8, || format!("reconstruction residual {worst_rec:e}"))?;
    ensure(worst_pi <= 1e-10, || format!("representation residual {worst_pi:e}"))?;
    let t = in_basis(&transpose_map(2), Basis::Groupoid);
    ensure(matches!(stinespring(&t, 1e-9), Err(PositivityError::NotPositiveDefinite { .. })), || {
        "transpose map was dilated".into()
    })?;
    Ok(format!("{count} maps, reconstruction {worst_rec:.2e}, star/mult {worst_pi:.2e}"))
}

fn conjugation() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut phase_err: f64 = 0.0;
    for m in [2, 3] {
        let id = AlgebraRep::matrix_units_identity(structure(&format!("builtin:matrix_units:{m}"))).unwrap();
        for seed in 0..50 {
            let w = random::haar_unitary(&mut random::rng(seed), m);
            let v = is_unitary_conjugation_rep(&id.conjugated(&w), 1e-9).map_err(|e| e.to_string())?;
            ensure(v.is_conjugation, || format!("m={m} seed {seed} rejected (residual {:e})", v.residual))?;
            worst = worst.max(v.residual);
            let u = v.unitary.unwrap();
            let p = (0..m).max_by(|&a, &b| w[(a, 0)].norm().total_cmp(&w[(b, 0)].norm())).unwrap();
            let phase = u[(p, 0)] / w[(p, 0)];
            phase_err = phase_err.max(u.max_abs_diff(&w.scale(phase))).max((phase.norm() - 1.0).abs());
        }
        let v = is_unitary_conjugation_rep(&id.direct_sum(&id).unwrap(), 1e-9).map_err(|e| e.to_string())?;
        ensure(!v.is_conjugation, || format!("X⊕X accepted for m={m}"))?;
        let v = is_unitary_conjugation_rep(&id.pad_zero(m), 1e-9).map_err(|e| e.to_string())?;
        ensure(!v.is_conjugation, || format!("X⊕0 accepted for m={m}"))?;
    }
    ensure(worst <= 1e-9, || format!("residual {worst:e}"))?;
    ensure(phase_err <= 1e-9, || format!("recovered U differs from W by {phase_err:e}"))?;
    let id = AlgebraRep::matrix_units_identity(structure("builtin:matrix_units:2")).unwrap();
    let probe = cp_correspondence_probe(&id, 2, 500, 0, 1e-9).map_err(|e| e.to_string())?;
    ensure(probe.agreements == 500, || format!("probe agreement {}/500", probe.agreements))?;
    Ok(format!("100 W, residual {worst:.2e}, phase match {phase_err:.2e}; probe 500/500"))
}

fn exact_combinatorics() -> Outcome {
    let mut checked = 0;
    for sg in all_builtins() {
        let nz = sg.nonzero();
        let k = nz.len();
        let name = sg.name().to_string();
        // Σ_z μ(x,z) ζ(z,y) = δ(x,y)
        for &x in nz {
            for &y in nz {
                let sum: i64 = nz.iter().map(|&z| sg.mobius(x, z) * sg.zeta(z, y)).sum();
                ensure(sum == i64::from(x == y), || format!("{name}: μ*ζ at ({x},{y}) = {sum}"))?;
            }
        }
        let (m, minv) = sg.groupoid_basis_matrices();
        for (i, row) in m.iter().enumerate() {
            for j in 0..k {
                let v: i64 = (0..k).map(|l| row[l] * minv[l][j]).sum();
                ensure(v == i64::from(i == j), || format!("{name}: M·M_inv at ({i},{j}) = {v}"))?;
            }
        }
        // ss⁻¹ = tt⁻¹ ⇒ (s⁻¹t idempotent ⇔ s = t)
        for &s in nz {
            for &t in nz {
                if sg.ran(s) == sg.ran(t) {
                    let p = sg.mul(sg.inv(s), t);
                    let idem = p != sg.zero() && sg.is_idempotent(p);
                    ensure(idem == (s == t), || format!("{name}: lemma fails at ({s},{t})"))?;
                }
            }
        }
        // ⌊a⌋⌊b⌋ computed through the natural basis with integer coefficients.
        let column = |s: usize| -> Vec<i64> { (0..k).map(|r| m[r][sg.position(s).unwrap()]).collect() };
        for &a in nz {
            let va = column(a);
            for &b in nz {
                let vb = column(b);
                let mut prod = vec![0i64; k];
                for (p, &ca) in va.iter().enumerate().filter(|(_, c)| **c != 0) {
                    for (q, &cb) in vb.iter().enumerate().filter(|(_, c)| **c != 0) {
                        let x = sg.mul(nz[p], nz[q]);
                        if x != sg.zero() {
                            prod[sg.position(x).unwrap()] += ca * cb;
                        }
                    }
                }
                let expected = match sg.groupoid_product(a, b) {
                    Some(x) if x != sg.zero() => column(x),
                    _ => vec![0; k],
                };
                ensure(prod == expected, || format!("{name}: groupoid rule fails at ({a},{b})"))?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} builtins"))
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn cli_suite(out: &Path) -> Result<(), String> {
    let d = data_dir();
    let p = |rel: &str| d.join(rel).display().to_string();
    let runs: Vec<(&str, Vec<String>)> = vec![
        ("analyze_mu2", vec!["analyze".into(), "builtin:matrix_units:2".into()]),
        ("analyze_i3", vec!["analyze".into(), "builtin:symmetric_inverse:3".into(), "--irreps".into()]),
        ("analyze_i2_text", vec!["analyze".into(), p("semigroups/i2.json"), "--format".into(), "text".into()]),
        ("fourier_i2", vec!["fourier".into(), p("maps/i2_random.json")]),
        ("fourier_mu2", vec!["fourier".into(), p("maps/mu2_kraus.json")]),
        ("invert_i2", vec!["invert".into(), p("maps/i2_fourier.json")]),
        ("plancherel", vec!["plancherel".into(), p("maps/i2_gram.json"), p("maps/i2_random.json")]),
        ("convolve", vec!["convolve".into(), p("maps/i3_gram.json"), p("maps/i3_gram.json")]),
        ("pd", vec!["check".into(), "pd".into(), p("maps/i2_random.json")]),
        ("cp", vec!["check".into(), "cp".into(), p("maps/mu2_transpose.json")]),
        ("bochner", vec!["check".into(), "bochner".into(), p("maps/i3_gram.json")]),
        ("stinespring", vec!["stinespring".into(), p("maps/i2_gram.json")]),
        ("stinespring_not_pd", vec!["stinespring".into(), p("maps/mu2_transpose.json")]),
        ("cpprobe", vec!["cpprobe".into(), p("reps/mu2_doubled.json"), "--trials".into(), "60".into()]),
        ("generate", vec!["generate".into(), "gram".into(), "builtin:cyclic_with_zero:4".into(), "2".into()]),
    ];
    for (name, args) in runs {
        let target = out.join(format!("{name}.out"));
        let status = Command::new(env!("CARGO_BIN_EXE_sgharm"))
            .args(&args)
            .args(["--seed", "17", "--tol", "1e-9", "--out"])
            .arg(&target)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), || format!("{name} exited with {status}"))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    cli_suite(a.path())?;
    cli_suite(b.path())?;
    let mut files: Vec<_> = std::fs::read_dir(a.path())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name())
        .collect();
    files.sort();
    for f in &files {
        let x = std::fs::read(a.path().join(f)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(f)).map_err(|e| e.to_string())?;
        ensure(x == y, || format!("{} differs between runs", f.to_string_lossy()))?;
    }
    Ok(format!("{} reports byte-identical", files.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("completeness", completeness),
        ("fourier-inversion", fourier_roundtrip),
        ("choi-reduction", choi_reduction),
        ("convolution-theorem", convolution_theorem),
        ("plancherel", plancherel),
        ("schur-orthogonality", schur),
        ("bochner", bochner),
        ("stinespring", stinespring_dilations),
        ("unitary-conjugation", conjugation),
        ("exact-combinatorics", exact_combinatorics),
        ("cli-determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {name}: {detail} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

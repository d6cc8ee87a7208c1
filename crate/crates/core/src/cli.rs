//! The `sgharm` command line: verb-style subcommands producing JSON or flat
//! text reports.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cxmat::{CMatrix, LinalgError};
use crate::grouprep::GroupRepError;
use crate::harmonic::{
    fourier_all, fourier_invert_all, from_groupoid, in_basis, induced_irreps, plancherel_check, AlgebraRep, Basis,
    HarmonicError, IrrepSet, MatrixMap,
};
use crate::io::{self, IoError};
use crate::maps::{choi, convolve, MapsError, UnitMap};
use crate::positivity::{self, PdMode, PositivityError};
use crate::random;
use crate::semigroup::{InverseStructure, SemigroupError, SemigroupTable};

pub const TOOL: &str = "sgharm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sgharm", version, about = "Harmonic analysis on finite inverse semigroups")]
pub struct Cli {
    /// Numerical tolerance for PSD and residual checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Pd,
    Cp,
    Bochner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Natural,
    Groupoid,
    Blocks,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure report: idempotents, classes, Möbius table, irrep dimensions.
    Analyze {
        /// Builtin reference (builtin:kind:n) or semigroup JSON file.
        semigroup: String,
        /// Include the full induced irrep matrices.
        #[arg(long)]
        irreps: bool,
    },
    /// Fourier transforms of a map over all induced irreps.
    Fourier { map: PathBuf },
    /// Rebuild a map from its Fourier data.
    Invert {
        data: PathBuf,
        /// Emit natural-basis values instead of groupoid coefficients.
        #[arg(long)]
        natural: bool,
    },
    /// Both sides of the Plancherel identity for two maps.
    Plancherel { left: PathBuf, right: PathBuf },
    /// Convolution of two maps and the convolution-theorem residuals.
    Convolve { left: PathBuf, right: PathBuf },
    /// Positivity checks.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
        map: PathBuf,
        /// Characterization for `pd`.
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
    },
    /// GNS dilation of a positive definite map.
    Stinespring { map: PathBuf },
    /// Compare complete positivity with PSD of transforms under a representation.
    Cpprobe {
        rep: PathBuf,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        target_dim: usize,
    },
    /// Write seeded example inputs.
    #[command(subcommand)]
    Generate(Generate),
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// Multiplication table of a builtin semigroup.
    Semigroup { reference: String },
    /// Random Kraus map on matrix units.
    Kraus {
        m: usize,
        n: usize,
        #[arg(long, default_value_t = 2)]
        count: usize,
    },
    /// Transpose map on matrix units.
    Transpose { m: usize },
    /// Identity map on matrix units.
    Identity { m: usize },
    /// Positive definite Gram map (groupoid basis).
    Gram { semigroup: String, n: usize },
    /// Gaussian map.
    Random {
        semigroup: String,
        n: usize,
        #[arg(long, value_enum, default_value_t = BasisArg::Natural)]
        basis: BasisArg,
    },
    /// Fourier data of a Gram map.
    FourierData { semigroup: String, n: usize },
    /// `X ↦ X` on matrix units.
    IdentityRep { m: usize },
    /// `X ↦ X ⊕ X`.
    DoubledRep { m: usize },
    /// `X ↦ X ⊕ 0`.
    PaddedRep { m: usize, extra: usize },
    /// `X ↦ W X W†` for a seeded Haar unitary `W`.
    ConjugatedRep { m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Natural,
    Groupoid,
}

/// Failure carried to the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub witness: Option<Value>,
}

impl CliError {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            kind,
            message: message.into(),
            witness: None,
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Self::new(EXIT_PRECONDITION, "precondition", message)
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        let msg = e.to_string();
        match &e {
            SemigroupError::NotAssociative { x, y, z } => CliError {
                witness: Some(json!({ "x": x, "y": y, "z": z })),
                ..CliError::new(EXIT_STRUCTURE, "not_associative", msg)
            },
            SemigroupError::ZeroNotAbsorbing(x) => CliError {
                witness: Some(json!({ "element": x })),
                ..CliError::new(EXIT_STRUCTURE, "zero_not_absorbing", msg)
            },
            SemigroupError::NotInverseSemigroup(x) => CliError {
                witness: Some(json!({ "element": x })),
                ..CliError::new(EXIT_STRUCTURE, "not_inverse_semigroup", msg)
            },
            e if e.is_structural() => CliError::new(EXIT_STRUCTURE, "invalid_structure", msg),
            SemigroupError::UnknownBuiltin(_) => CliError::new(EXIT_PARSE, "parse", msg),
            _ => CliError::precondition(msg),
        }
    }
}

impl From<GroupRepError> for CliError {
    fn from(e: GroupRepError) -> Self {
        match e {
            GroupRepError::SizeLimit { .. } => CliError::precondition(e.to_string()),
            _ => CliError::new(EXIT_INTERNAL, "internal", e.to_string()),
        }
    }
}

impl From<HarmonicError> for CliError {
    fn from(e: HarmonicError) -> Self {
        match e {
            HarmonicError::Group(g) => g.into(),
            e => CliError::precondition(e.to_string()),
        }
    }
}

impl From<MapsError> for CliError {
    fn from(e: MapsError) -> Self {
        match e {
            MapsError::Harmonic(h) => h.into(),
            e => CliError::precondition(e.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<PositivityError> for CliError {
    fn from(e: PositivityError) -> Self {
        match e {
            PositivityError::Harmonic(h) => h.into(),
            PositivityError::Maps(m) => m.into(),
            PositivityError::InternalInconsistency(_) | PositivityError::ReconstructionFailure { .. } => {
                CliError::new(EXIT_INTERNAL, "internal", e.to_string())
            }
            e => CliError::precondition(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Semigroup(s) => s.into(),
            IoError::Harmonic(h) => h.into(),
            IoError::Maps(m) => m.into(),
            e => CliError::new(EXIT_PARSE, "parse", e.to_string()),
        }
    }
}

/// Parses arguments, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    let outcome = if cli.tol.is_finite() && cli.tol > 0.0 {
        execute(&cli)
    } else {
        Err(CliError::new(EXIT_PARSE, "parse", "--tol must be a positive number"))
    };
    match outcome {
        Ok(result) => {
            let doc = match &cli.command {
                // Generated files are inputs for other commands, not reports.
                Command::Generate(_) => result,
                _ => envelope(&cli, name, result),
            };
            match emit(&cli, &doc) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("{TOOL}: cannot write output: {e}");
                    EXIT_PARSE
                }
            }
        }
        Err(e) => {
            let mut err = json!({ "kind": e.kind, "exit_code": e.code, "message": e.message });
            if let Some(w) = e.witness {
                err["witness"] = w;
            }
            let doc = json!({ "tool": TOOL, "version": VERSION, "command": name, "error": err });
            eprintln!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            e.code
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Fourier { .. } => "fourier",
        Command::Invert { .. } => "invert",
        Command::Plancherel { .. } => "plancherel",
        Command::Convolve { .. } => "convolve",
        Command::Check { .. } => "check",
        Command::Stinespring { .. } => "stinespring",
        Command::Cpprobe { .. } => "cpprobe",
        Command::Generate(_) => "generate",
    }
}

fn inputs(c: &Command) -> Vec<String> {
    let p = |x: &Path| x.display().to_string();
    match c {
        Command::Analyze { semigroup, .. } => vec![semigroup.clone()],
        Command::Fourier { map } | Command::Stinespring { map } | Command::Check { map, .. } => vec![p(map)],
        Command::Invert { data, .. } => vec![p(data)],
        Command::Plancherel { left, right } | Command::Convolve { left, right } => vec![p(left), p(right)],
        Command::Cpprobe { rep, .. } => vec![p(rep)],
        Command::Generate(_) => vec![],
    }
}

fn envelope(cli: &Cli, name: &str, result: Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": name,
        "config": {
            "inputs": inputs(&cli.command),
            "tol": cli.tol,
            "seed": cli.seed,
            "format": cli.format,
        },
        "result": result,
    })
}

fn emit(cli: &Cli, doc: &Value) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(doc).expect("json") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", doc, &mut lines);
            lines.join("\n") + "\n"
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// One `key.path = value` line per scalar leaf.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.is_empty() => out.push(format!("{prefix} = []")),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix} = {s}")),
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn irreps_for(sg: &Arc<InverseStructure>, seed: u64) -> Result<IrrepSet, CliError> {
    Ok(induced_irreps(sg, seed)?)
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    let (tol, seed) = (cli.tol, cli.seed);
    match &cli.command {
        Command::Analyze { semigroup, irreps } => analyze(semigroup, *irreps, seed),
        Command::Fourier { map } => {
            let f = io::load_map(map)?;
            let set = irreps_for(f.semigroup(), seed)?;
            let data = fourier_all(&f, &set)?;
            let back = fourier_invert_all(&data, &set)?;
            let roundtrip = in_basis(&f, Basis::Groupoid).max_abs_diff(&back);
            let mut result = json!({
                "fourier": io::fourier_to_json(&data),
                "roundtrip_residual": roundtrip,
            });
            if f.semigroup().matrix_units_size().is_some() {
                let c = choi(&f)?;
                result["choi_residual"] = json!(c.matrix().max_abs_diff(data.transforms()[0].matrix()));
            }
            Ok(result)
        }
        Command::Invert { data, natural } => {
            let d = io::load_fourier(data)?;
            let set = irreps_for(d.semigroup(), seed)?;
            let mut f = fourier_invert_all(&d, &set)?;
            if *natural {
                f = from_groupoid(&f)?;
            }
            Ok(json!({ "map": io::map_to_json(&f) }))
        }
        Command::Plancherel { left, right } => {
            let (f, g) = (io::load_map(left)?, io::load_map(right)?);
            let set = irreps_for(f.semigroup(), seed)?;
            let sides = plancherel_check(&f, &g, &set)?;
            Ok(json!({
                "lhs": io::matrix_to_json(&sides.lhs),
                "rhs": io::matrix_to_json(&sides.rhs),
                "residual": sides.residual,
            }))
        }
        Command::Convolve { left, right } => {
            let (f, g) = (io::load_map(left)?, io::load_map(right)?);
            let h = convolve(&f, &g)?;
            let set = irreps_for(f.semigroup(), seed)?;
            let (df, dg, dh) = (fourier_all(&f, &set)?, fourier_all(&g, &set)?, fourier_all(&h, &set)?);
            let mut per = Vec::new();
            let mut worst: f64 = 0.0;
            for (i, id) in dh.ids().iter().enumerate() {
                let prod = df.transforms()[i].mul(&dg.transforms()[i])?;
                let r = prod.matrix().frobenius_diff(dh.transforms()[i].matrix());
                worst = worst.max(r);
                per.push(json!({ "irrep": id, "residual": r }));
            }
            Ok(json!({ "map": io::map_to_json(&h), "theorem_residuals": per, "max_residual": worst }))
        }
        Command::Check { which, map, mode } => {
            let f = io::load_map(map)?;
            match which {
                CheckKind::Pd => {
                    let modes: &[PdMode] = match mode {
                        ModeArg::Natural => &[PdMode::Natural],
                        ModeArg::Groupoid => &[PdMode::Groupoid],
                        ModeArg::Blocks => &[PdMode::Blocks],
                        ModeArg::All => &[PdMode::Natural, PdMode::Groupoid, PdMode::Blocks],
                    };
                    let reports: Vec<_> = modes.iter().map(|&m| positivity::pd_check(&f, m, tol)).collect();
                    let pd = reports.iter().all(|r| r.positive_definite);
                    Ok(json!({ "positive_definite": pd, "modes": to_value(&reports) }))
                }
                CheckKind::Cp => {
                    let c = positivity::cp_check(&f, tol)?;
                    Ok(json!({ "completely_positive": c.psd, "choi": to_value(&c) }))
                }
                CheckKind::Bochner => {
                    let set = irreps_for(f.semigroup(), seed)?;
                    Ok(to_value(&positivity::bochner_check(&f, &set, tol)?))
                }
            }
        }
        Command::Stinespring { map } => {
            let f = io::load_map(map)?;
            let g = in_basis(&f, Basis::Groupoid);
            match positivity::stinespring(&g, tol) {
                Ok(d) => Ok(dilation_json(&g, &d)),
                Err(PositivityError::NotPositiveDefinite { witness }) => Ok(json!({
                    "positive_definite": false,
                    "error": "NotPositiveDefinite",
                    "witness": witness,
                })),
                Err(e) => Err(e.into()),
            }
        }
        Command::Cpprobe { rep, trials, target_dim } => {
            let r = io::load_rep(rep)?;
            if *target_dim == 0 {
                return Err(CliError::precondition("--target-dim must be at least 1"));
            }
            let conj = positivity::is_unitary_conjugation_rep(&r, tol)?;
            let report = positivity::cp_correspondence_probe(&r, *target_dim, *trials, seed, tol)?;
            let residual = if conj.residual.is_finite() { json!(conj.residual) } else { Value::Null };
            Ok(json!({
                "conjugation": {
                    "is_conjugation": conj.is_conjugation,
                    "unitary": conj.unitary.as_ref().map(io::matrix_to_json),
                    "residual": residual,
                },
                "probe": to_value(&report),
            }))
        }
        Command::Generate(g) => generate(g, seed),
    }
}

fn dilation_json(f: &MatrixMap, d: &positivity::Dilation) -> Value {
    let sg = f.semigroup();
    let pi: Map<String, Value> = sg
        .nonzero()
        .iter()
        .zip(&d.pi)
        .map(|(&s, m)| (sg.element_name(s).to_string(), io::matrix_to_json(m)))
        .collect();
    json!({
        "positive_definite": true,
        "dim": d.dim,
        "gram_min_eigenvalue": d.gram_min_eigenvalue,
        "residuals": {
            "reconstruction": d.reconstruction_residual,
            "isometry": d.isometry_residual,
            "star": d.star_residual,
            "multiplicativity": d.multiplicativity_residual,
        },
        "v": io::matrix_to_json(&d.v),
        "pi": pi,
    })
}

/// Structure report for a builtin reference or semigroup file.
pub fn analyze(reference: &str, with_irreps: bool, seed: u64) -> Result<Value, CliError> {
    let sg = io::load_semigroup(reference)?;
    let name = |s: usize| sg.element_name(s).to_string();
    let names = |xs: &[usize]| xs.iter().map(|&s| name(s)).collect::<Vec<_>>();
    let set = irreps_for(&sg, seed)?;

    let mut classes = vec![json!({
        "id": "D0",
        "elements": [name(sg.zero())],
        "size": 1,
    })];
    for (k, dc) in sg.classes().iter().enumerate() {
        let transversal: Map<String, Value> = dc
            .idempotents
            .iter()
            .map(|&e| (name(e), json!(name(sg.transversal(e).expect("class idempotent")))))
            .collect();
        classes.push(json!({
            "id": format!("D{}", k + 1),
            "elements": names(&dc.elements),
            "size": dc.elements.len(),
            "idempotents": names(&dc.idempotents),
            "rank": dc.rank(),
            "base": name(dc.base),
            "group_order": dc.group.order(),
            "group_elements": dc.group.names(),
            "transversal": transversal,
        }));
    }
    let nz = sg.nonzero();
    let mobius: Vec<Vec<i64>> = nz.iter().map(|&s| nz.iter().map(|&t| sg.mobius(s, t)).collect()).collect();
    let irreps: Vec<Value> = set
        .reps()
        .iter()
        .map(|r| json!({ "id": r.id(), "class": format!("D{}", r.class() + 1), "dim": r.dim(), "group_dim": r.group_dim() }))
        .collect();
    let sum = set.dimension_sum();
    let mut result = json!({
        "semigroup": io::semigroup_ref(&sg),
        "name": sg.name(),
        "order": sg.order(),
        "elements": sg.table().elements(),
        "zero": name(sg.zero()),
        "idempotents": names(sg.idempotents()),
        "classes": classes,
        "class_sizes": std::iter::once(1).chain(sg.classes().iter().map(|c| c.elements.len())).collect::<Vec<_>>(),
        "mobius": { "order": names(nz), "table": mobius },
        "irreps": irreps,
        "irrep_dims": set.dims(),
        "wedderburn": {
            "sum_of_squares": sum,
            "algebra_dimension": sg.algebra_dimension(),
            "holds": sum == sg.algebra_dimension(),
        },
    });
    if with_irreps {
        result["irrep_matrices"] = io::irreps_to_json(&set);
    }
    Ok(result)
}

fn matrix_units(m: usize) -> Result<Arc<InverseStructure>, CliError> {
    Ok(Arc::new(InverseStructure::new(SemigroupTable::matrix_units(m)?)?))
}

fn nonzero_count(x: usize, what: &str) -> Result<usize, CliError> {
    if x == 0 {
        Err(CliError::precondition(format!("{what} must be at least 1")))
    } else {
        Ok(x)
    }
}

fn generate(g: &Generate, seed: u64) -> Result<Value, CliError> {
    let rep = |r: AlgebraRep| Ok(io::rep_to_json(&r));
    let mu_identity = |m: usize| -> Result<AlgebraRep, CliError> {
        Ok(AlgebraRep::matrix_units_identity(matrix_units(nonzero_count(m, "m")?)?).expect("matrix units"))
    };
    match g {
        Generate::Semigroup { reference } => Ok(io::semigroup_to_json(&SemigroupTable::from_ref(reference)?)),
        Generate::Kraus { m, n, count } => {
            matrix_units(nonzero_count(*m, "m")?)?;
            let f = positivity::random_cp_map(*m, nonzero_count(*n, "n")?, nonzero_count(*count, "count")?, seed);
            Ok(io::map_to_json(&f))
        }
        Generate::Transpose { m } => {
            matrix_units(nonzero_count(*m, "m")?)?;
            Ok(io::map_to_json(&positivity::transpose_map(*m)))
        }
        Generate::Identity { m } => {
            let sg = matrix_units(nonzero_count(*m, "m")?)?;
            Ok(io::map_to_json(&UnitMap::identity(*m).to_matrix_map(sg)?))
        }
        Generate::Gram { semigroup, n } => {
            let sg = io::load_semigroup(semigroup)?;
            Ok(io::map_to_json(&positivity::gram_pd_map(&sg, nonzero_count(*n, "n")?, seed)))
        }
        Generate::Random { semigroup, n, basis } => {
            let sg = io::load_semigroup(semigroup)?;
            let basis = match basis {
                BasisArg::Natural => Basis::Natural,
                BasisArg::Groupoid => Basis::Groupoid,
            };
            Ok(io::map_to_json(&positivity::random_map(&sg, nonzero_count(*n, "n")?, basis, seed)))
        }
        Generate::FourierData { semigroup, n } => {
            let sg = io::load_semigroup(semigroup)?;
            let f = positivity::gram_pd_map(&sg, nonzero_count(*n, "n")?, seed);
            let set = irreps_for(&sg, seed)?;
            Ok(io::fourier_to_json(&fourier_all(&f, &set)?))
        }
        Generate::IdentityRep { m } => rep(mu_identity(*m)?),
        Generate::DoubledRep { m } => {
            let id = mu_identity(*m)?;
            rep(id.direct_sum(&id)?)
        }
        Generate::PaddedRep { m, extra } => rep(mu_identity(*m)?.pad_zero(*extra)),
        Generate::ConjugatedRep { m } => {
            let id = mu_identity(*m)?;
            let w: CMatrix = random::haar_unitary(&mut random::rng(seed), *m);
            rep(id.conjugated(&w))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_paths() {
        let mut out = Vec::new();
        flatten("", &json!({"a": {"b": [1, 2]}, "c": "x", "d": []}), &mut out);
        assert_eq!(out, vec!["a.b.0 = 1", "a.b.1 = 2", "c = x", "d = []"]);
    }

    #[test]
    fn structural_errors_map_to_exit_three() {
        let e: CliError = SemigroupError::NotAssociative {
            x: "a".into(),
            y: "b".into(),
            z: "c".into(),
        }
        .into();
        assert_eq!(e.code, EXIT_STRUCTURE);
        assert_eq!(e.witness.unwrap()["y"], "b");
        let e: CliError = SemigroupError::UnknownBuiltin("x".into()).into();
        assert_eq!(e.code, EXIT_PARSE);
        let e: CliError = HarmonicError::SemigroupMismatch.into();
        assert_eq!(e.code, EXIT_PRECONDITION);
    }

    #[test]
    fn analyze_matrix_units() {
        let r = analyze("builtin:matrix_units:2", false, 0).unwrap();
        assert_eq!(r["irrep_dims"], json!([2]));
        assert_eq!(r["class_sizes"], json!([1, 4]));
        assert_eq!(r["wedderburn"]["holds"], json!(true));
    }
}

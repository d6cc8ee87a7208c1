//! JSON formats for semigroups, maps, Fourier data, representations and
//! supermaps. Complex numbers are `[re, im]`, matrices row-major nested arrays.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cxmat::{BlockTensor, CMatrix, LinalgError, C64};
use crate::harmonic::{AlgebraRep, Basis, FourierData, HarmonicError, IrrepSet, MatrixMap};
use crate::maps::{MapsError, Supermap, UnitMap};
use crate::semigroup::{InverseStructure, SemigroupError, SemigroupTable};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad input: {0}")]
    Format(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Maps(#[from] MapsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn read_json(path: &Path) -> Result<Value, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn complex_to_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_to_json(a: &CMatrix) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| Value::Array((0..a.cols()).map(|j| complex_to_json(a[(i, j)])).collect()))
            .collect(),
    )
}

fn complex_from_json(v: &Value) -> Result<C64, IoError> {
    match v {
        Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(bad("complex entries must be numbers")),
        },
        Value::Number(x) => Ok(C64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
        _ => Err(bad("complex number must be [re, im]")),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<CMatrix, IoError> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let rows: Vec<Vec<C64>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("matrix row must be an array"))?
                .iter()
                .map(complex_from_json)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Err(bad("empty matrix"));
    }
    Ok(CMatrix::from_rows(&rows)?)
}

fn square_matrix(v: &Value, n: usize, what: &str) -> Result<CMatrix, IoError> {
    let m = matrix_from_json(v)?;
    if m.rows() != n || m.cols() != n {
        return Err(bad(format!("{what}: expected {n}x{n}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, IoError> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize, IoError> {
    field(obj, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{key:?} must be a non-negative integer")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

pub fn semigroup_to_json(t: &SemigroupTable) -> Value {
    json!({
        "name": t.name(),
        "elements": t.elements(),
        "zero": t.zero().map(|z| t.element_name(z)),
        "table": t.table_rows(),
    })
}

pub fn semigroup_from_json(v: &Value) -> Result<SemigroupTable, IoError> {
    let obj = object(v, "semigroup")?;
    let name = field(obj, "name")?.as_str().ok_or_else(|| bad("\"name\" must be a string"))?;
    let elements: Vec<String> = serde_json::from_value(field(obj, "elements")?.clone())?;
    let zero = match field(obj, "zero")? {
        Value::Null => None,
        Value::String(z) => Some(
            elements
                .iter()
                .position(|e| e == z)
                .ok_or_else(|| bad(format!("zero {z:?} is not an element")))?,
        ),
        _ => return Err(bad("\"zero\" must be an element name or null")),
    };
    let table: Vec<Vec<usize>> = serde_json::from_value(field(obj, "table")?.clone())?;
    Ok(SemigroupTable::new(name, elements, zero, table)?)
}

/// A builtin reference, a path relative to `base`, or an inline object.
pub fn resolve_semigroup(v: &Value, base: &Path) -> Result<SemigroupTable, IoError> {
    match v {
        Value::String(s) if s.starts_with("builtin:") => Ok(SemigroupTable::from_ref(s)?),
        Value::String(s) => {
            let path = base.join(s);
            semigroup_from_json(&read_json(&path)?)
        }
        Value::Object(_) => semigroup_from_json(v),
        _ => Err(bad("semigroup must be a builtin reference, a path or an object")),
    }
}

/// Accepts a builtin reference or a semigroup file.
pub fn load_semigroup(reference: &str) -> Result<Arc<InverseStructure>, IoError> {
    let table = if reference.starts_with("builtin:") {
        SemigroupTable::from_ref(reference)?
    } else {
        semigroup_from_json(&read_json(Path::new(reference))?)?
    };
    Ok(Arc::new(InverseStructure::new(table)?))
}

/// The builtin reference if the semigroup is a builtin, else the inline table.
pub fn semigroup_ref(sg: &InverseStructure) -> Value {
    let r = format!("builtin:{}", sg.name());
    match SemigroupTable::from_ref(&r) {
        Ok(t) if t == *sg.table() => Value::String(r),
        _ => semigroup_to_json(sg.table()),
    }
}

fn named_matrices(sg: &InverseStructure, items: impl Iterator<Item = (usize, Value)>) -> Value {
    Value::Object(items.map(|(s, m)| (sg.element_name(s).to_string(), m)).collect())
}

/// Reads `{name: matrix}` into per-nonzero-element values; missing names are zero.
fn read_named(
    sg: &InverseStructure,
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<Vec<CMatrix>, IoError> {
    let obj = object(v, "values")?;
    let mut out = vec![CMatrix::zeros(rows, cols); sg.nonzero().len()];
    for (name, m) in obj {
        let s = sg.index_of(name).ok_or_else(|| bad(format!("unknown element {name:?}")))?;
        let p = sg.position(s).ok_or_else(|| bad(format!("zero element {name:?} carries no value")))?;
        let m = matrix_from_json(m)?;
        if m.rows() != rows || m.cols() != cols {
            return Err(bad(format!("value at {name}: expected {rows}x{cols}, got {}x{}", m.rows(), m.cols())));
        }
        out[p] = m;
    }
    Ok(out)
}

pub fn map_to_json(f: &MatrixMap) -> Value {
    let sg = f.semigroup();
    json!({
        "semigroup": semigroup_ref(sg),
        "target_dim": f.dim(),
        "basis": f.basis(),
        "values": named_matrices(sg, sg.nonzero().iter().map(|&s| (s, matrix_to_json(f.value(s))))),
    })
}

pub fn map_from_json(v: &Value, base: &Path) -> Result<MatrixMap, IoError> {
    let obj = object(v, "map")?;
    let sg = Arc::new(InverseStructure::new(resolve_semigroup(field(obj, "semigroup")?, base)?)?);
    let n = usize_field(obj, "target_dim")?;
    let basis = match obj.get("basis") {
        None => Basis::Natural,
        Some(b) => serde_json::from_value(b.clone()).map_err(|_| bad("basis must be \"natural\" or \"groupoid\""))?,
    };
    let values = read_named(&sg, field(obj, "values")?, n, n)?;
    Ok(MatrixMap::new(sg, n, basis, values)?)
}

pub fn load_map(path: &Path) -> Result<MatrixMap, IoError> {
    map_from_json(&read_json(path)?, &parent_dir(path))
}

fn tensor_to_json(t: &BlockTensor) -> Value {
    json!({
        "dim_left": t.dim_left(),
        "dim_right": t.dim_right(),
        "matrix": matrix_to_json(t.matrix()),
    })
}

pub fn fourier_to_json(d: &FourierData) -> Value {
    let transforms: Map<String, Value> = d
        .ids()
        .iter()
        .zip(d.transforms())
        .map(|(id, t)| (id.clone(), tensor_to_json(t)))
        .collect();
    json!({
        "semigroup": semigroup_ref(d.semigroup()),
        "target_dim": d.dim(),
        "transforms": transforms,
    })
}

pub fn fourier_from_json(v: &Value, base: &Path) -> Result<FourierData, IoError> {
    let obj = object(v, "fourier data")?;
    let sg = Arc::new(InverseStructure::new(resolve_semigroup(field(obj, "semigroup")?, base)?)?);
    let n = usize_field(obj, "target_dim")?;
    let mut ids = Vec::new();
    let mut transforms = Vec::new();
    for (id, t) in object(field(obj, "transforms")?, "transforms")? {
        let t = object(t, "transform")?;
        let (dl, dr) = (usize_field(t, "dim_left")?, usize_field(t, "dim_right")?);
        let m = square_matrix(field(t, "matrix")?, dl * dr, id)?;
        ids.push(id.clone());
        transforms.push(BlockTensor::new(dl, dr, m)?);
    }
    Ok(FourierData::new(sg, n, ids, transforms)?)
}

pub fn load_fourier(path: &Path) -> Result<FourierData, IoError> {
    fourier_from_json(&read_json(path)?, &parent_dir(path))
}

/// Dimensions, characters over the nonzero elements, and `σ(⌊s⌋)` on each support.
pub fn irreps_to_json(set: &IrrepSet) -> Value {
    let sg = set.semigroup();
    let mut characters = Vec::new();
    let mut matrices = Map::new();
    for rep in set.reps() {
        characters.push(Value::Array(
            sg.nonzero()
                .iter()
                .map(|&s| complex_to_json(rep.groupoid_matrix(s).map_or(C64::new(0.0, 0.0), CMatrix::trace)))
                .collect(),
        ));
        let ms = named_matrices(
            sg,
            rep.support().iter().map(|&s| (s, matrix_to_json(rep.groupoid_matrix(s).unwrap()))),
        );
        matrices.insert(rep.id().to_string(), ms);
    }
    json!({
        "ids": set.reps().iter().map(|r| r.id()).collect::<Vec<_>>(),
        "dims": set.dims(),
        "characters": characters,
        "matrices": matrices,
    })
}

pub fn rep_to_json(r: &AlgebraRep) -> Value {
    let sg = r.semigroup();
    json!({
        "semigroup": semigroup_ref(sg),
        "dim": r.dim(),
        "matrices": named_matrices(sg, sg.nonzero().iter().map(|&s| (s, matrix_to_json(r.matrix(s))))),
    })
}

pub fn rep_from_json(v: &Value, base: &Path) -> Result<AlgebraRep, IoError> {
    let obj = object(v, "representation")?;
    let sg = Arc::new(InverseStructure::new(resolve_semigroup(field(obj, "semigroup")?, base)?)?);
    let d = usize_field(obj, "dim")?;
    let values = read_named(&sg, field(obj, "matrices")?, d, d)?;
    Ok(AlgebraRep::new(sg, d, values)?)
}

pub fn load_rep(path: &Path) -> Result<AlgebraRep, IoError> {
    rep_from_json(&read_json(path)?, &parent_dir(path))
}

/// Action keys are 1-based `"i,j,k,l"`; each entry lists `Θ(ℰ_ijkl)(e_ab)` for
/// `a, b` in row-major order.
pub fn supermap_to_json(t: &Supermap) -> Value {
    let [m1, n2, _, _] = t.dims();
    let mut action = Map::new();
    for i in 0..m1 {
        for j in 0..m1 {
            for k in 0..n2 {
                for l in 0..n2 {
                    let u = t.action(i, j, k, l);
                    let key = format!("{},{},{},{}", i + 1, j + 1, k + 1, l + 1);
                    action.insert(key, Value::Array(u.values().iter().map(matrix_to_json).collect()));
                }
            }
        }
    }
    json!({ "dims": t.dims(), "action": action })
}

pub fn supermap_from_json(v: &Value) -> Result<Supermap, IoError> {
    let obj = object(v, "supermap")?;
    let dims: [usize; 4] = serde_json::from_value(field(obj, "dims")?.clone())?;
    let [m1, n2, m3, n4] = dims;
    let action = object(field(obj, "action")?, "action")?;
    let mut slots: Vec<Option<UnitMap>> = vec![None; m1 * m1 * n2 * n2];
    for (key, list) in action {
        let idx: Vec<usize> = key
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(format!("bad action key {key:?}")))?;
        let ok = idx.len() == 4 && idx.iter().all(|&x| x >= 1) && idx[0] <= m1 && idx[1] <= m1 && idx[2] <= n2 && idx[3] <= n2;
        if !ok {
            return Err(bad(format!("action key {key:?} out of range")));
        }
        let (i, j, k, l) = (idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1);
        let list = list.as_array().ok_or_else(|| bad("action entries must be arrays"))?;
        if list.len() != m3 * m3 {
            return Err(bad(format!("action {key}: expected {} matrices", m3 * m3)));
        }
        let values = list.iter().map(|m| square_matrix(m, n4, key)).collect::<Result<Vec<_>, _>>()?;
        slots[((i * m1 + j) * n2 + k) * n2 + l] = Some(UnitMap::new(m3, n4, values)?);
    }
    let actions = slots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| UnitMap::zero(m3, n4)))
        .collect();
    Ok(Supermap::new(dims, actions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{fourier_all, induced_irreps};
    use crate::positivity::gram_pd_map;

    fn sg(r: &str) -> Arc<InverseStructure> {
        load_semigroup(r).unwrap()
    }

    #[test]
    fn semigroup_roundtrip() {
        let t = SemigroupTable::symmetric_inverse(2).unwrap();
        let back = semigroup_from_json(&semigroup_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(semigroup_ref(&sg("builtin:symmetric_inverse:2")), json!("builtin:symmetric_inverse:2"));
    }

    #[test]
    fn map_roundtrip_and_missing_values() {
        let s = sg("builtin:cyclic_with_zero:3");
        let f = gram_pd_map(&s, 2, 4);
        let back = map_from_json(&map_to_json(&f), Path::new(".")).unwrap();
        assert_eq!(back.basis(), Basis::Groupoid);
        assert_eq!(back.max_abs_diff(&f), 0.0);

        let v = json!({"semigroup": "builtin:matrix_units:2", "target_dim": 1, "basis": "natural",
                       "values": {"e_1_2": [[[2.0, 0.5]]]}});
        let f = map_from_json(&v, Path::new(".")).unwrap();
        assert_eq!(f.value(1)[(0, 0)], C64::new(2.0, 0.5));
        assert!(f.value(0).is_zero());
    }

    #[test]
    fn map_errors() {
        let base = Path::new(".");
        let unknown = json!({"semigroup": "builtin:matrix_units:2", "target_dim": 1, "values": {"e_3_1": [[[1, 0]]]}});
        assert!(matches!(map_from_json(&unknown, base), Err(IoError::Format(_))));
        let shape = json!({"semigroup": "builtin:matrix_units:2", "target_dim": 2, "values": {"e_1_1": [[[1, 0]]]}});
        assert!(matches!(map_from_json(&shape, base), Err(IoError::Format(_))));
        let zero = json!({"semigroup": "builtin:matrix_units:2", "target_dim": 1, "values": {"z": [[[1, 0]]]}});
        assert!(map_from_json(&zero, base).is_err());
    }

    #[test]
    fn fourier_roundtrip() {
        let s = sg("builtin:symmetric_inverse:2");
        let set = induced_irreps(&s, 0).unwrap();
        let d = fourier_all(&gram_pd_map(&s, 2, 1), &set).unwrap();
        let back = fourier_from_json(&fourier_to_json(&d), Path::new(".")).unwrap();
        assert_eq!(back.ids(), d.ids());
        for (a, b) in back.transforms().iter().zip(d.transforms()) {
            assert_eq!(a.matrix().max_abs_diff(b.matrix()), 0.0);
        }
        let ir = irreps_to_json(&set);
        assert_eq!(ir["dims"], json!([2, 1, 1]));
    }

    #[test]
    fn rep_and_supermap_roundtrip() {
        let id = AlgebraRep::matrix_units_identity(sg("builtin:matrix_units:2")).unwrap();
        let back = rep_from_json(&rep_to_json(&id), Path::new(".")).unwrap();
        assert_eq!(back.matrices(), id.matrices());

        let t = Supermap::convolution_unit([2, 2, 2, 2]);
        let back = supermap_from_json(&supermap_to_json(&t)).unwrap();
        assert_eq!(back.max_abs_diff(&t), 0.0);
    }
}

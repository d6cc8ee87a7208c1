use std::collections::HashMap;

use super::SemigroupError;

/// Largest `n` accepted by [`SemigroupTable::symmetric_inverse`] (|I₄| = 209).
pub const MAX_SYMMETRIC_INVERSE: usize = 4;
/// Largest `m` accepted by [`SemigroupTable::matrix_units`].
pub const MAX_MATRIX_UNITS: usize = 12;
/// Largest `n` accepted by the cyclic constructors.
pub const MAX_CYCLIC: usize = 48;

/// A finite semigroup given by its Cayley table, with an optional zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupTable {
    name: String,
    elements: Vec<String>,
    zero: Option<usize>,
    table: Vec<usize>,
}

impl SemigroupTable {
    /// Builds a table after shape checks. Algebraic axioms are checked by
    /// [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        zero: Option<usize>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, SemigroupError> {
        let n = elements.len();
        if n == 0 {
            return Err(SemigroupError::InvalidTable("semigroup has no elements".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in elements.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(SemigroupError::InvalidTable(format!(
                    "element name {name:?} used twice (indices {j} and {i})"
                )));
            }
        }
        if table.len() != n {
            return Err(SemigroupError::InvalidTable(format!(
                "table has {} rows for {n} elements",
                table.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::InvalidTable(format!(
                    "table row {i} has {} entries for {n} elements",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(SemigroupError::InvalidTable(format!(
                    "table row {i} contains out-of-range index {bad}"
                )));
            }
            flat.extend_from_slice(row);
        }
        if let Some(z) = zero {
            if z >= n {
                return Err(SemigroupError::InvalidTable(format!("zero index {z} out of range")));
            }
        }
        Ok(Self {
            name: name.into(),
            elements,
            zero,
            table: flat,
        })
    }

    fn from_fn(
        name: String,
        elements: Vec<String>,
        zero: Option<usize>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        Self {
            name,
            elements,
            zero,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// Overwrites one cell. Used to build deliberately broken tables.
    pub fn set_product(&mut self, a: usize, b: usize, value: usize) {
        let n = self.order();
        assert!(a < n && b < n && value < n);
        self.table[a * n + b] = value;
    }

    /// Checks associativity over all triples, then zero absorption.
    pub fn validate(&self) -> Result<(), SemigroupError> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(SemigroupError::NotAssociative {
                            x: self.elements[x].clone(),
                            y: self.elements[y].clone(),
                            z: self.elements[z].clone(),
                        });
                    }
                }
            }
        }
        if let Some(z) = self.zero {
            for s in 0..n {
                if self.mul(z, s) != z || self.mul(s, z) != z {
                    return Err(SemigroupError::ZeroNotAbsorbing(self.elements[s].clone()));
                }
            }
        }
        Ok(())
    }

    /// Matrix units `e_i_j` (1-based names, index `(i-1)m + (j-1)`) plus a zero `z`.
    pub fn matrix_units(m: usize) -> Result<Self, SemigroupError> {
        if m == 0 || m > MAX_MATRIX_UNITS {
            return Err(SemigroupError::SizeLimit {
                what: "matrix_units",
                n: m,
                max: MAX_MATRIX_UNITS,
            });
        }
        let mut elements = Vec::with_capacity(m * m + 1);
        for i in 1..=m {
            for j in 1..=m {
                elements.push(format!("e_{i}_{j}"));
            }
        }
        elements.push("z".into());
        let z = m * m;
        Ok(Self::from_fn(format!("matrix_units:{m}"), elements, Some(z), |a, b| {
            if a == z || b == z {
                return z;
            }
            let (i, j) = (a / m, a % m);
            let (k, l) = (b / m, b % m);
            if j == k {
                i * m + l
            } else {
                z
            }
        }))
    }

    /// All partial bijections of `{1..n}` under composition `(s·t)(x) = s(t(x))`.
    ///
    /// Ordered by rank, then domain, then image; the empty map `[]` is index 0
    /// and is the zero. Names list `point>image` pairs, e.g. `[1>2,2>1]`.
    pub fn symmetric_inverse(n: usize) -> Result<Self, SemigroupError> {
        if n == 0 || n > MAX_SYMMETRIC_INVERSE {
            return Err(SemigroupError::SizeLimit {
                what: "symmetric_inverse",
                n,
                max: MAX_SYMMETRIC_INVERSE,
            });
        }
        let maps = partial_bijections(n);
        let index: HashMap<&[Option<usize>], usize> =
            maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let elements = maps.iter().map(|m| partial_bijection_name(m)).collect();
        let compose = |a: usize, b: usize| {
            let (s, t) = (&maps[a], &maps[b]);
            let st: Vec<Option<usize>> = t.iter().map(|x| x.and_then(|y| s[y])).collect();
            index[st.as_slice()]
        };
        Ok(Self::from_fn(format!("symmetric_inverse:{n}"), elements, Some(0), compose))
    }

    /// The cyclic group `Z_n` with elements `g0..g{n-1}`; no zero.
    pub fn cyclic_group(n: usize) -> Result<Self, SemigroupError> {
        if n == 0 || n > MAX_CYCLIC {
            return Err(SemigroupError::SizeLimit {
                what: "cyclic",
                n,
                max: MAX_CYCLIC,
            });
        }
        let elements = (0..n).map(|k| format!("g{k}")).collect();
        Ok(Self::from_fn(format!("cyclic:{n}"), elements, None, |a, b| (a + b) % n))
    }

    /// `Z_n` with an adjoined zero `z`.
    pub fn cyclic_with_zero(n: usize) -> Result<Self, SemigroupError> {
        let mut t = Self::cyclic_group(n)?.adjoin_zero()?;
        t.name = format!("cyclic_with_zero:{n}");
        Ok(t)
    }

    /// Appends a fresh absorbing element named `z` (or `z'`, `z''`, ... if taken).
    pub fn adjoin_zero(&self) -> Result<Self, SemigroupError> {
        if self.zero.is_some() {
            return Err(SemigroupError::AlreadyHasZero);
        }
        let n = self.order();
        let mut zname = String::from("z");
        while self.index_of(&zname).is_some() {
            zname.push('\'');
        }
        let mut elements = self.elements.clone();
        elements.push(zname);
        Ok(Self::from_fn(format!("{}+zero", self.name), elements, Some(n), |a, b| {
            if a == n || b == n {
                n
            } else {
                self.mul(a, b)
            }
        }))
    }

    /// Parses `builtin:matrix_units:m`, `builtin:symmetric_inverse:n` or
    /// `builtin:cyclic_with_zero:n`.
    pub fn from_ref(reference: &str) -> Result<Self, SemigroupError> {
        let unknown = || SemigroupError::UnknownBuiltin(reference.to_string());
        let rest = reference.strip_prefix("builtin:").ok_or_else(unknown)?;
        let (kind, arg) = rest.split_once(':').ok_or_else(unknown)?;
        let n: usize = arg.trim().parse().map_err(|_| unknown())?;
        match kind {
            "matrix_units" => Self::matrix_units(n),
            "symmetric_inverse" => Self::symmetric_inverse(n),
            "cyclic_with_zero" => Self::cyclic_with_zero(n),
            _ => Err(unknown()),
        }
    }
}

fn partial_bijections(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    for rank in 0..=n {
        for domain in subsets(n, rank) {
            for image in arrangements(n, rank) {
                let mut map = vec![None; n];
                for (&d, &i) in domain.iter().zip(&image) {
                    map[d] = Some(i);
                }
                out.push(map);
            }
        }
    }
    out
}

/// k-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ordered k-tuples of distinct elements of `0..n`, lexicographic.
fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, k, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

fn partial_bijection_name(map: &[Option<usize>]) -> String {
    let pairs: Vec<String> = map
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| format!("{}>{}", x + 1, y + 1)))
        .collect();
    format!("[{}]", pairs.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_products() {
        let t = SemigroupTable::matrix_units(2).unwrap();
        assert_eq!(t.order(), 5);
        let e = |s: &str| t.index_of(s).unwrap();
        assert_eq!(t.mul(e("e_1_2"), e("e_2_1")), e("e_1_1"));
        assert_eq!(t.mul(e("e_1_2"), e("e_1_2")), e("z"));
        t.validate().unwrap();
        let t1 = SemigroupTable::matrix_units(1).unwrap();
        assert_eq!(t1.order(), 2);
        assert_eq!(t1.mul(0, 0), 0);
    }

    #[test]
    fn matrix_units_idempotent_count() {
        let t = SemigroupTable::matrix_units(3).unwrap();
        assert_eq!(t.order(), 10);
        let idem = (0..t.order()).filter(|&x| t.mul(x, x) == x && Some(x) != t.zero()).count();
        assert_eq!(idem, 3);
    }

    #[test]
    fn symmetric_inverse_sizes_and_names() {
        let orders: Vec<usize> = (1..=4)
            .map(|n| SemigroupTable::symmetric_inverse(n).unwrap().order())
            .collect();
        assert_eq!(orders, vec![2, 7, 34, 209]);
        let t = SemigroupTable::symmetric_inverse(2).unwrap();
        assert_eq!(
            t.elements(),
            &["[]", "[1>1]", "[1>2]", "[2>1]", "[2>2]", "[1>1,2>2]", "[1>2,2>1]"]
        );
        assert!(matches!(
            SemigroupTable::symmetric_inverse(5),
            Err(SemigroupError::SizeLimit { .. })
        ));
    }

    #[test]
    fn symmetric_inverse_composition_applies_right_first() {
        let t = SemigroupTable::symmetric_inverse(2).unwrap();
        let e = |s: &str| t.index_of(s).unwrap();
        // [1>2] then [2>2] keeps 1>2; [2>2] then [1>2] sends nothing anywhere.
        assert_eq!(t.mul(e("[2>2]"), e("[1>2]")), e("[1>2]"));
        assert_eq!(t.mul(e("[1>2]"), e("[2>2]")), e("[]"));
        assert_eq!(t.mul(e("[1>2,2>1]"), e("[1>2,2>1]")), e("[1>1,2>2]"));
        t.validate().unwrap();
        SemigroupTable::symmetric_inverse(3).unwrap().validate().unwrap();
    }

    #[test]
    fn corrupted_cell_is_caught() {
        let mut t = SemigroupTable::matrix_units(2).unwrap();
        t.set_product(0, 0, 1);
        assert!(matches!(t.validate(), Err(SemigroupError::NotAssociative { .. })));
    }

    #[test]
    fn zero_must_absorb() {
        let t = SemigroupTable::new(
            "bad",
            vec!["a".into(), "z".into()],
            Some(1),
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        assert!(t.validate().is_err());
    }

    #[test]
    fn adjoin_zero_behaviour() {
        let z2 = SemigroupTable::cyclic_group(2).unwrap();
        let s = z2.adjoin_zero().unwrap();
        assert_eq!(s.order(), 3);
        assert_eq!(s.zero(), Some(2));
        s.validate().unwrap();
        assert_eq!(
            SemigroupTable::matrix_units(2).unwrap().adjoin_zero(),
            Err(SemigroupError::AlreadyHasZero)
        );
    }

    #[test]
    fn builtin_refs() {
        assert_eq!(
            SemigroupTable::from_ref("builtin:matrix_units:3").unwrap(),
            SemigroupTable::matrix_units(3).unwrap()
        );
        assert_eq!(SemigroupTable::from_ref("builtin:cyclic_with_zero:4").unwrap().order(), 5);
        assert!(SemigroupTable::from_ref("builtin:free:2").is_err());
        assert!(SemigroupTable::from_ref("matrix_units:2").is_err());
        assert!(SemigroupTable::from_ref("builtin:matrix_units:x").is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(SemigroupTable::new("x", vec!["a".into()], None, vec![vec![1]]).is_err());
        assert!(SemigroupTable::new("x", vec!["a".into(), "a".into()], None, vec![vec![0, 0]; 2]).is_err());
        assert!(SemigroupTable::new("x", vec!["a".into()], None, vec![]).is_err());
    }
}

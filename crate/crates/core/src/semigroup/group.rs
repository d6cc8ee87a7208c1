use super::SemigroupError;

/// A finite group by Cayley table. When extracted from a semigroup,
/// `elements` holds the ambient indices of the members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    elements: Vec<usize>,
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms on a local table `table[a][b] = a·b`.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(SemigroupError::NotAGroup("malformed table".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        Self::from_flat((0..n).collect(), names, flat)
    }

    pub(crate) fn from_flat(
        elements: Vec<usize>,
        names: Vec<String>,
        table: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        let n = names.len();
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(SemigroupError::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| SemigroupError::NotAGroup("no identity".into()))?;
        let mut inv = Vec::with_capacity(n);
        for (a, name) in names.iter().enumerate() {
            let b = (0..n)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| SemigroupError::NotAGroup(format!("{name} has no inverse")))?;
            inv.push(b);
        }
        Ok(Self {
            elements,
            names,
            table,
            identity,
            inv,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self {
            elements: (0..n).collect(),
            names: (0..n).map(|k| format!("g{k}")).collect(),
            table,
            identity: 0,
            inv: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Ambient indices of the members, in local order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn local_index(&self, ambient: usize) -> Option<usize> {
        self.elements.iter().position(|&x| x == ambient)
    }
}

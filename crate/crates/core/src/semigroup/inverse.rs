use super::{GroupTable, SemigroupError, SemigroupTable};

/// One nonzero 𝒟-class with its chosen idempotent and maximal subgroup.
#[derive(Clone, Debug)]
pub struct DClass {
    /// Members in index order.
    pub elements: Vec<usize>,
    /// Idempotents in index order; these label the blocks of induced irreps.
    pub idempotents: Vec<usize>,
    /// `e_k`, the lowest-index idempotent.
    pub base: usize,
    /// `G_{e_k}`.
    pub group: GroupTable,
}

impl DClass {
    /// `r_k`
    pub fn rank(&self) -> usize {
        self.idempotents.len()
    }

    pub fn block_of(&self, e: usize) -> Option<usize> {
        self.idempotents.iter().position(|&x| x == e)
    }
}

/// `φ(x) = (k, g, a, b)` with `g = p_a⁻¹ x p_b`, `a = xx⁻¹`, `b = x⁻¹x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SteinbergCoord {
    pub class: usize,
    /// Ambient index of the group element.
    pub group_element: usize,
    pub row: usize,
    pub col: usize,
}

/// Derived structure of a finite inverse semigroup with zero.
///
/// The order and Möbius data live on nonzero elements only; `z` never sits
/// inside an interval between nonzero elements.
#[derive(Clone, Debug)]
pub struct InverseStructure {
    table: SemigroupTable,
    zero: usize,
    inv: Vec<usize>,
    idempotents: Vec<usize>,
    nonzero: Vec<usize>,
    position: Vec<Option<usize>>,
    leq: Vec<bool>,
    mobius: Vec<i64>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    classes: Vec<DClass>,
    class_of: Vec<Option<usize>>,
    transversal: Vec<Option<usize>>,
    factorizations: Vec<Vec<(usize, usize)>>,
}

impl InverseStructure {
    pub fn new(table: SemigroupTable) -> Result<Self, SemigroupError> {
        table.validate()?;
        let zero = table.zero().ok_or(SemigroupError::NoZero)?;
        let n = table.order();
        let mul = |a: usize, b: usize| table.mul(a, b);

        let mut inv = Vec::with_capacity(n);
        for s in 0..n {
            let mut found = None;
            for x in 0..n {
                if mul(mul(s, x), s) == s && mul(mul(x, s), x) == x {
                    if found.is_some() {
                        return Err(SemigroupError::NotInverseSemigroup(table.element_name(s).into()));
                    }
                    found = Some(x);
                }
            }
            inv.push(found.ok_or_else(|| SemigroupError::NotInverseSemigroup(table.element_name(s).into()))?);
        }

        let nonzero: Vec<usize> = (0..n).filter(|&s| s != zero).collect();
        let mut position = vec![None; n];
        for (p, &s) in nonzero.iter().enumerate() {
            position[s] = Some(p);
        }
        let idempotents: Vec<usize> = nonzero.iter().copied().filter(|&s| mul(s, s) == s).collect();

        // s ≤ t ⇔ s = (ss⁻¹)t
        let mut leq = vec![false; n * n];
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for &s in &nonzero {
            let ran = mul(s, inv[s]);
            for &t in &nonzero {
                if mul(ran, t) == s {
                    leq[s * n + t] = true;
                    down[t].push(s);
                    up[s].push(t);
                }
            }
        }

        // μ(x,y) = -Σ_{x<z≤y} μ(z,y); elements higher in [x,y] have larger down-sets.
        let mut mobius = vec![0i64; n * n];
        for &y in &nonzero {
            let mut below = down[y].clone();
            below.sort_by(|&a, &b| down[b].len().cmp(&down[a].len()).then(a.cmp(&b)));
            for &x in &below {
                if x == y {
                    mobius[x * n + y] = 1;
                    continue;
                }
                let sum: i64 = up[x]
                    .iter()
                    .filter(|&&z| z != x && leq[z * n + y])
                    .map(|&z| mobius[z * n + y])
                    .sum();
                mobius[x * n + y] = -sum;
            }
        }

        // 𝒟 on idempotents: e ~ f when some x has dom x = e, ran x = f.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &x in &nonzero {
            let (a, b) = (find(&mut parent, mul(inv[x], x)), find(&mut parent, mul(x, inv[x])));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut class_of = vec![None; n];
        let mut roots: Vec<usize> = Vec::new();
        for &s in &nonzero {
            let r = find(&mut parent, mul(s, inv[s]));
            let k = match roots.iter().position(|&x| x == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            class_of[s] = Some(k);
        }

        let mut transversal = vec![None; n];
        let mut classes = Vec::with_capacity(roots.len());
        for k in 0..roots.len() {
            let elements: Vec<usize> = nonzero.iter().copied().filter(|&s| class_of[s] == Some(k)).collect();
            let idem: Vec<usize> = elements.iter().copied().filter(|&s| mul(s, s) == s).collect();
            let base = idem[0];
            for &e in &idem {
                let p = elements
                    .iter()
                    .copied()
                    .find(|&x| mul(inv[x], x) == base && mul(x, inv[x]) == e)
                    .expect("idempotents in one class are connected");
                transversal[e] = Some(p);
            }
            let group = subgroup_at(&table, &inv, base)?;
            classes.push(DClass {
                elements,
                idempotents: idem,
                base,
                group,
            });
        }

        let mut factorizations = vec![Vec::new(); n];
        for &a in &nonzero {
            for &b in &nonzero {
                let c = mul(a, b);
                if c != zero {
                    factorizations[c].push((a, b));
                }
            }
        }

        Ok(Self {
            table,
            zero,
            inv,
            idempotents,
            nonzero,
            position,
            leq,
            mobius,
            down,
            up,
            classes,
            class_of,
            transversal,
            factorizations,
        })
    }

    pub fn table(&self) -> &SemigroupTable {
        &self.table
    }

    pub fn name(&self) -> &str {
        self.table.name()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn element_name(&self, s: usize) -> &str {
        self.table.element_name(s)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.table.index_of(name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn inv(&self, s: usize) -> usize {
        self.inv[s]
    }

    /// `s⁻¹s`
    pub fn dom(&self, s: usize) -> usize {
        self.mul(self.inv[s], s)
    }

    /// `ss⁻¹`
    pub fn ran(&self, s: usize) -> usize {
        self.mul(s, self.inv[s])
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    /// Nonzero idempotents in index order.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Nonzero elements in index order.
    pub fn nonzero(&self) -> &[usize] {
        &self.nonzero
    }

    /// Position of a nonzero element in [`nonzero`](Self::nonzero).
    pub fn position(&self, s: usize) -> Option<usize> {
        self.position[s]
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s * self.order() + t]
    }

    /// `ζ(s,t)`: 1 if `s ≤ t`, else 0.
    pub fn zeta(&self, s: usize, t: usize) -> i64 {
        i64::from(self.leq(s, t))
    }

    /// `μ(s,t)`, zero for incomparable pairs.
    pub fn mobius(&self, s: usize, t: usize) -> i64 {
        self.mobius[s * self.order() + t]
    }

    /// Nonzero `t ≤ s`, ascending index.
    pub fn down(&self, s: usize) -> &[usize] {
        &self.down[s]
    }

    /// Nonzero `t ≥ s`, ascending index.
    pub fn up(&self, s: usize) -> &[usize] {
        &self.up[s]
    }

    pub fn classes(&self) -> &[DClass] {
        &self.classes
    }

    pub fn class_of(&self, s: usize) -> Option<usize> {
        self.class_of[s]
    }

    /// `p_e` for a nonzero idempotent `e`.
    pub fn transversal(&self, e: usize) -> Option<usize> {
        self.transversal[e]
    }

    /// Pairs of nonzero `(a, b)` with `ab = s`.
    pub fn factorizations(&self, s: usize) -> &[(usize, usize)] {
        &self.factorizations[s]
    }

    /// `(M, M_inv)` over the nonzero basis: column `s` of `M` holds `μ(t,s)`,
    /// column `s` of `M_inv` holds `ζ(t,s)`.
    pub fn groupoid_basis_matrices(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let nz = &self.nonzero;
        let m = nz.iter().map(|&t| nz.iter().map(|&s| self.mobius(t, s)).collect()).collect();
        let minv = nz.iter().map(|&t| nz.iter().map(|&s| self.zeta(t, s)).collect()).collect();
        (m, minv)
    }

    /// `⌊a⌋⌊b⌋ = ⌊ab⌋` when `dom a = ran b`, otherwise zero (`None`).
    pub fn groupoid_product(&self, a: usize, b: usize) -> Option<usize> {
        (self.dom(a) == self.ran(b)).then(|| self.mul(a, b))
    }

    pub fn maximal_subgroup(&self, e: usize) -> Result<GroupTable, SemigroupError> {
        if e == self.zero || !self.is_idempotent(e) {
            return Err(SemigroupError::NotIdempotent(self.element_name(e).into()));
        }
        subgroup_at(&self.table, &self.inv, e)
    }

    pub fn steinberg_phi(&self, x: usize) -> SteinbergCoord {
        assert_ne!(x, self.zero, "steinberg_phi on the zero");
        let (a, b) = (self.ran(x), self.dom(x));
        let pa = self.transversal[a].expect("transversal of idempotent");
        let pb = self.transversal[b].expect("transversal of idempotent");
        let g = self.mul(self.mul(self.inv[pa], x), pb);
        SteinbergCoord {
            class: self.class_of[x].expect("nonzero element has a class"),
            group_element: g,
            row: a,
            col: b,
        }
    }

    /// `p_a g p_b⁻¹`
    pub fn steinberg_phi_inv(&self, class: usize, g: usize, a: usize, b: usize) -> Result<usize, SemigroupError> {
        let dc = self
            .classes
            .get(class)
            .ok_or_else(|| SemigroupError::ClassMismatch(format!("no class {class}")))?;
        if dc.group.local_index(g).is_none() {
            return Err(SemigroupError::ClassMismatch(format!(
                "{} is not in the maximal subgroup of class {class}",
                self.element_name(g)
            )));
        }
        for e in [a, b] {
            if dc.block_of(e).is_none() {
                return Err(SemigroupError::ClassMismatch(format!(
                    "{} is not an idempotent of class {class}",
                    self.element_name(e)
                )));
            }
        }
        let pa = self.transversal[a].expect("transversal");
        let pb = self.transversal[b].expect("transversal");
        Ok(self.mul(self.mul(pa, g), self.inv[pb]))
    }

    /// `Σ_k d_k²`-style check value: `|S| - 1`.
    pub fn algebra_dimension(&self) -> usize {
        self.nonzero.len()
    }

    /// `Some(m)` when the table is exactly the matrix-units semigroup of size `m`.
    pub fn matrix_units_size(&self) -> Option<usize> {
        let k = self.nonzero.len();
        let m = (k as f64).sqrt().round() as usize;
        if m == 0 || m * m != k {
            return None;
        }
        let mu = SemigroupTable::matrix_units(m).ok()?;
        (mu.elements() == self.table.elements()
            && mu.zero() == self.table.zero()
            && mu.table_rows() == self.table.table_rows())
        .then_some(m)
    }

    /// True when both structures come from the same table.
    pub fn same_as(&self, other: &InverseStructure) -> bool {
        std::ptr::eq(self, other) || self.table == other.table
    }
}

fn subgroup_at(table: &SemigroupTable, inv: &[usize], e: usize) -> Result<GroupTable, SemigroupError> {
    let members: Vec<usize> = (0..table.order())
        .filter(|&x| table.mul(x, inv[x]) == e && table.mul(inv[x], x) == e)
        .collect();
    let k = members.len();
    let mut local = Vec::with_capacity(k * k);
    for &a in &members {
        for &b in &members {
            let c = table.mul(a, b);
            let j = members
                .iter()
                .position(|&x| x == c)
                .ok_or_else(|| SemigroupError::NotAGroup(format!("subgroup at {} not closed", table.element_name(e))))?;
            local.push(j);
        }
    }
    let names = members.iter().map(|&x| table.element_name(x).to_string()).collect();
    GroupTable::from_flat(members, names, local)
}

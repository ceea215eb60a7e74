//! Finite groups stored as dense multiplication tables.
//!
//! Every group is closed from generators (permutations, integer matrices) or
//! read from an explicit table. Elements are indices `0..order` with `0` the
//! identity; the ordering is breadth-first from the identity over the
//! generators in the order they were given, so the same input always yields
//! the same indexing.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

/// Default bound on the number of elements produced by a closure.
pub const DEFAULT_GROUP_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure produced more than {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("generator {index} is malformed: {reason}")]
    MalformedGenerator { index: usize, reason: String },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("cannot parse word `{word}`: {reason}")]
    BadWord { word: String, reason: String },
    #[error("generator images do not define a homomorphism: violated at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCount { expected: usize, got: usize },
}

/// Where the elements of a group came from. Kept for reporting and for
/// writing the group back out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOrigin {
    /// Generators as zero-based image lists on `degree` points.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// Square integer matrices, row-major.
    Matrices { dim: usize, generators: Vec<Vec<i64>> },
    /// Explicit multiplication table.
    Table,
    /// Direct product of two named groups.
    DirectProduct(String, String),
    /// Quotient of a named group by a normal subgroup.
    Quotient(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Vec<usize>,
    origin: GroupOrigin,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("label", &self.label())
            .finish()
    }
}

/// Breadth-first closure of `gens` under right multiplication.
fn bfs_closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Vec<T>, GroupError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut seen: HashMap<T, usize> = HashMap::new();
    seen.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let p = mul(&elements[i], g);
            if !seen.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(GroupError::ClosureExceedsCap { cap });
                }
                seen.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        i += 1;
    }
    Ok(elements)
}

fn table_from_elements<T, F>(elements: &[T], mul: F) -> Vec<usize>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elements.len();
    let mut table = vec![0; n * n];
    for (a, x) in elements.iter().enumerate() {
        for (b, y) in elements.iter().enumerate() {
            table[a * n + b] = index[&mul(x, y)];
        }
    }
    table
}

fn integer_det(m: &[i64], dim: usize) -> i128 {
    // Bareiss fraction-free elimination.
    let mut a: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..dim {
        if a[k * dim + k] == 0 {
            match (k + 1..dim).find(|&r| a[r * dim + k] != 0) {
                Some(r) => {
                    for c in 0..dim {
                        a.swap(k * dim + c, r * dim + c);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                a[i * dim + j] = (a[i * dim + j] * a[k * dim + k] - a[i * dim + k] * a[k * dim + j]) / prev;
            }
        }
        prev = a[k * dim + k];
    }
    if dim == 0 {
        1
    } else {
        sign * a[dim * dim - 1]
    }
}

fn mat_mul(a: &[i64], b: &[i64], dim: usize) -> Option<Vec<i64>> {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let x = a[i * dim + k];
            if x == 0 {
                continue;
            }
            for j in 0..dim {
                let t = x.checked_mul(b[k * dim + j])?;
                out[i * dim + j] = out[i * dim + j].checked_add(t)?;
            }
        }
    }
    Some(out)
}

impl FiniteGroup {
    /// The trivial group.
    pub fn trivial(name: impl Into<String>) -> Self {
        FiniteGroup {
            name: name.into(),
            order: 1,
            mul: vec![0],
            inv: vec![0],
            generators: Vec::new(),
            origin: GroupOrigin::Table,
        }
    }

    /// Close a set of permutations (zero-based image lists on `degree` points).
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(GroupError::MalformedGenerator {
                    index,
                    reason: format!("expected {degree} images, got {}", g.len()),
                });
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x >= degree || hit[x] {
                    return Err(GroupError::NonInvertibleGenerator { index });
                }
                hit[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        // (p * q)(i) = q(p(i)): apply p first, matching right multiplication in the closure.
        let compose = |p: &Vec<usize>, q: &Vec<usize>| p.iter().map(|&i| q[i]).collect::<Vec<_>>();
        let elements = bfs_closure(identity, gens, compose, cap.max(1))?;
        let mul = table_from_elements(&elements, compose);
        let index: HashMap<&Vec<usize>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::assemble(
            name.into(),
            mul,
            generators,
            GroupOrigin::Permutations { degree, generators: gens.to_vec() },
        ))
    }

    /// Close a set of square integer matrices given row-major.
    pub fn from_matrices(
        name: impl Into<String>,
        dim: usize,
        gens: &[Vec<i64>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in gens.iter().enumerate() {
            if g.len() != dim * dim {
                return Err(GroupError::MalformedGenerator {
                    index,
                    reason: format!("expected {} entries, got {}", dim * dim, g.len()),
                });
            }
            let det = integer_det(g, dim);
            if det != 1 && det != -1 {
                return Err(GroupError::NonInvertibleGenerator { index });
            }
        }
        let mut identity = vec![0i64; dim * dim];
        for i in 0..dim {
            identity[i * dim + i] = 1;
        }
        let overflow = std::cell::Cell::new(false);
        let mul = |a: &Vec<i64>, b: &Vec<i64>| {
            mat_mul(a, b, dim).unwrap_or_else(|| {
                overflow.set(true);
                vec![0; dim * dim]
            })
        };
        let elements = bfs_closure(identity, gens, &mul, cap.max(1));
        if overflow.get() {
            return Err(GroupError::ClosureExceedsCap { cap });
        }
        let elements = elements?;
        let table = table_from_elements(&elements, &mul);
        let index: HashMap<&Vec<i64>, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self::assemble(
            name.into(),
            table,
            generators,
            GroupOrigin::Matrices { dim, generators: gens.to_vec() },
        ))
    }

    /// Build a group from an explicit multiplication table (`rows[a][b] = a*b`).
    /// Element 0 must be the identity. When `generators` is `None` a generating
    /// set is picked greedily in index order.
    pub fn from_table(
        name: impl Into<String>,
        rows: &[Vec<usize>],
        generators: Option<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            let mut hit = vec![false; n];
            for &x in row {
                if x >= n || hit[x] {
                    return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
                }
                hit[x] = true;
            }
            mul.extend_from_slice(row);
        }
        for a in 0..n {
            if mul[a] != a || mul[a * n] != a {
                return Err(GroupError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut g = Self::assemble(name.into(), mul, Vec::new(), GroupOrigin::Table);
        match generators {
            Some(gens) => {
                if let Some(&bad) = gens.iter().find(|&&x| x >= n) {
                    return Err(GroupError::InvalidTable(format!("generator {bad} out of range")));
                }
                if g.subgroup_members(&gens).len() != n {
                    return Err(GroupError::InvalidTable("listed generators do not generate the table".into()));
                }
                g.generators = gens;
            }
            None => g.generators = g.greedy_generators(),
        }
        Ok(g)
    }

    fn assemble(name: String, mul: Vec<usize>, generators: Vec<usize>, origin: GroupOrigin) -> Self {
        let order = (mul.len() as f64).sqrt().round() as usize;
        let mut inv = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
        }
        FiniteGroup { name, order, mul, inv, generators, origin }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for x in 1..self.order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_members(&gens);
            }
        }
        gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn origin(&self) -> &GroupOrigin {
        &self.origin
    }

    /// Element indices of the generators, in declaration order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `x⁻¹ a x`.
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn pow(&self, a: usize, mut e: i64) -> usize {
        let mut base = if e < 0 { self.inv(a) } else { a };
        e = e.abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplication_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the group axioms on the stored tables.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("0 is not an identity for {a}"));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(format!("inverse table wrong at {a}"));
            }
            for b in 0..n {
                if self.inv(self.mul(a, b)) != self.mul(self.inv(b), self.inv(a)) {
                    return Err(format!("inverse of product wrong at ({a}, {b})"));
                }
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sorted member list of the subgroup generated by `gens`.
    pub fn subgroup_members(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| inside[i]).collect()
    }

    /// Shortest words over the generators for every element (BFS tree, ties
    /// broken by generator order). `words()[0]` is empty.
    pub fn words(&self) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(k);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate the group")).collect()
    }

    /// Render an element as a word `g0*g1^2`, or `1` for the identity.
    pub fn format_word(&self, element: usize) -> String {
        format_word(&self.words()[element])
    }

    /// Parse `1`, or `*`-separated factors `g<k>`, `g<k>^<e>`, `e<index>`.
    pub fn parse_word(&self, word: &str) -> Result<usize, GroupError> {
        let bad = |reason: &str| GroupError::BadWord { word: word.to_string(), reason: reason.to_string() };
        let word = word.trim();
        if word == "1" {
            return Ok(0);
        }
        let mut acc = 0;
        for factor in word.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            let element = if let Some(k) = base.strip_prefix('g') {
                let k: usize = k.parse().map_err(|_| bad("bad generator index"))?;
                *self.generators.get(k).ok_or_else(|| bad("generator index out of range"))?
            } else if let Some(i) = base.strip_prefix('e') {
                let i: usize = i.parse().map_err(|_| bad("bad element index"))?;
                if i >= self.order {
                    return Err(bad("element index out of range"));
                }
                i
            } else if base == "1" {
                0
            } else {
                return Err(bad("factors must be g<k> or e<index>"));
            };
            acc = self.mul(acc, self.pow(element, exp));
        }
        Ok(acc)
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::compute(self)
    }

    /// Best-effort isomorphism label from order, commutativity, exponent,
    /// class count and number of involutions. Display only.
    pub fn label(&self) -> String {
        let n = self.order;
        if n == 1 {
            return "1".into();
        }
        if (0..n).any(|a| self.element_order(a) == n) {
            return format!("C{n}");
        }
        let exp = self.exponent();
        let involutions = (1..n).filter(|&a| self.element_order(a) == 2).count();
        if self.is_abelian() {
            if exp == 2 {
                let k = n.trailing_zeros();
                return vec!["C2"; k as usize].join("x");
            }
            return format!("abelian({n}, exp {exp})");
        }
        let classes = self.conjugacy_classes().len();
        match (n, classes, exp, involutions) {
            (6, 3, 6, 3) => "D3".into(),
            (8, 5, 4, 5) => "D4".into(),
            (8, 5, 4, 1) => "Q8".into(),
            (12, 6, 6, 7) => "D6".into(),
            (12, 4, 6, 3) => "A4".into(),
            (12, 6, 12, 1) => "Dic3".into(),
            (24, 5, 12, 9) => "S4".into(),
            (m, _, e, inv) if m % 2 == 0 && inv == m / 2 + usize::from((m / 2) % 2 == 0) && e == (m / 2).lcm(&2) => {
                format!("D{}", m / 2)
            }
            _ => format!("G({n}, {classes} classes)"),
        }
    }

    /// Every subgroup, as sorted member lists, ordered by size then members.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut cyclic: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.order {
            let s = self.subgroup_members(&[a]);
            if seen.insert(s.clone()) {
                cyclic.push(s.clone());
                found.push(s);
            }
        }
        let mut i = 0;
        while i < found.len() {
            let current = found[i].clone();
            for c in &cyclic {
                if c.iter().all(|x| current.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = current.clone();
                gens.extend_from_slice(c);
                let joined = self.subgroup_members(&gens);
                if seen.insert(joined.clone()) {
                    found.push(joined);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// Quotient by the normal subgroup generated by `normal_gens`. Returns the
    /// quotient (elements ordered breadth-first over the images of this
    /// group's generators) and the projection.
    pub fn quotient(self: &Arc<Self>, normal_gens: &[usize], name: impl Into<String>) -> Result<(Arc<FiniteGroup>, GroupHomomorphism), GroupError> {
        let normal = self.subgroup_members(normal_gens);
        for &x in &normal {
            for g in 0..self.order {
                if normal.binary_search(&self.conjugate(x, g)).is_err() {
                    return Err(GroupError::InvalidTable("subgroup is not normal".into()));
                }
            }
        }
        // coset id = minimal element of the coset
        let coset_min = |x: usize| normal.iter().map(|&n| self.mul(x, n)).min().unwrap();
        let gens: Vec<usize> = self.generators.iter().map(|&g| coset_min(g)).collect();
        let mut reps = vec![0usize];
        let mut index: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut i = 0;
        while i < reps.len() {
            for &g in &gens {
                let c = coset_min(self.mul(reps[i], g));
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(c) {
                    e.insert(reps.len());
                    reps.push(c);
                }
            }
            i += 1;
        }
        let q = reps.len();
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = index[&coset_min(self.mul(reps[a], reps[b]))];
            }
        }
        let qgens = gens.iter().map(|g| index[g]).collect();
        let quotient = Arc::new(Self::assemble(name.into(), mul, qgens, GroupOrigin::Quotient(self.name.clone())));
        let images = (0..self.order).map(|x| index[&coset_min(x)]).collect();
        let projection = GroupHomomorphism::new_unchecked(self.clone(), quotient.clone(), images);
        Ok((quotient, projection))
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        if j - i > 1 {
            parts.push(format!("g{}^{}", word[i], j - i));
        } else {
            parts.push(format!("g{}", word[i]));
        }
        i = j;
    }
    parts.join("*")
}

/// Conjugacy classes ordered by (order of representative, representative index).
/// The representative of a class is its smallest element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut assigned = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if assigned[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| g.conjugate(a, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = raw.len();
            }
            raw.push(members);
        }
        raw.sort_by_key(|c| (g.element_order(c[0]), c[0]));
        let mut class_of = vec![0; n];
        for (i, c) in raw.iter().enumerate() {
            for &m in c {
                class_of[m] = i;
            }
        }
        ConjugacyClasses { classes: raw, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A subgroup of a parent group as a sorted list of member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Self {
        Subgroup { parent: parent.clone(), members: parent.subgroup_members(gens) }
    }

    /// Wrap an already closed member list.
    pub fn from_members(parent: &Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GroupError::InvalidTable("subgroup must contain the identity".into()));
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(GroupError::InvalidTable("subgroup not closed under inverses".into()));
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(GroupError::InvalidTable("subgroup not closed under multiplication".into()));
                }
            }
        }
        Ok(Subgroup { parent: parent.clone(), members })
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: parent.clone(), members: vec![0] }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: parent.clone(), members: (0..parent.order()).collect() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// `x⁻¹ S x`.
    pub fn conjugate_by(&self, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&a| self.parent.conjugate(a, x)).collect();
        members.sort_unstable();
        Subgroup { parent: self.parent.clone(), members }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&a| other.contains(a)).collect();
        Subgroup { parent: self.parent.clone(), members }
    }

    /// The subgroup as a group in its own right (elements ordered by parent
    /// index) together with its inclusion into the parent.
    pub fn as_group(&self, name: impl Into<String>) -> (Arc<FiniteGroup>, GroupHomomorphism) {
        let pos: HashMap<usize, usize> = self.members.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = self.members.len();
        let mut mul = vec![0; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                mul[i * n + j] = pos[&self.parent.mul(a, b)];
            }
        }
        let mut g = FiniteGroup::assemble(name.into(), mul, Vec::new(), GroupOrigin::Table);
        g.generators = g.greedy_generators();
        let g = Arc::new(g);
        let inclusion = GroupHomomorphism::new_unchecked(g.clone(), self.parent.clone(), self.members.clone());
        (g, inclusion)
    }
}

/// Centralizer of a subgroup.
pub fn centralizer(g: &Arc<FiniteGroup>, s: &Subgroup) -> Subgroup {
    let members = (0..g.order())
        .filter(|&x| s.members().iter().all(|&a| g.mul(x, a) == g.mul(a, x)))
        .collect();
    Subgroup { parent: g.clone(), members }
}

/// Normalizer of a subgroup.
pub fn normalizer(g: &Arc<FiniteGroup>, s: &Subgroup) -> Subgroup {
    let members = (0..g.order()).filter(|&x| s.conjugate_by(x).members == s.members).collect();
    Subgroup { parent: g.clone(), members }
}

/// A map between finite groups given on every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHomomorphism {
    /// Wrap an element map without checking multiplicativity.
    pub fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Self {
        assert_eq!(images.len(), source.order());
        GroupHomomorphism { source, target, images }
    }

    /// Wrap an element map, checking it is a homomorphism.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, GroupError> {
        let h = Self::new_unchecked(source, target, images);
        match h.first_violation() {
            None => Ok(h),
            Some((a, b)) => Err(GroupError::NotAHomomorphism(a, b)),
        }
    }

    /// Extend images of the source generators to the whole group.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gen_images: &[usize],
    ) -> Result<Self, GroupError> {
        let gens = source.generators();
        if gens.len() != gen_images.len() {
            return Err(GroupError::GeneratorCount { expected: gens.len(), got: gen_images.len() });
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = source.mul(x, g);
                let fy = target.mul(images[x], gen_images[k]);
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push_back(y);
                } else if images[y] != fy {
                    return Err(GroupError::NotAHomomorphism(x, g));
                }
            }
        }
        Self::new(source, target, images)
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), (0..g.order()).collect())
    }

    /// The automorphism `a ↦ x⁻¹ a x`.
    pub fn conjugation(g: &Arc<FiniteGroup>, x: usize) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), (0..g.order()).map(|a| g.conjugate(a, x)).collect())
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    /// First pair `(a, b)` with `f(ab) ≠ f(a) f(b)`, if any.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let n = self.source.order();
        if self.images.iter().any(|&x| x >= self.target.order()) {
            return Some((0, 0));
        }
        for a in 0..n {
            for b in 0..n {
                if self.images[self.source.mul(a, b)] != self.target.mul(self.images[a], self.images[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        (1..self.source.order()).all(|a| self.images[a] != 0)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHomomorphism) -> GroupHomomorphism {
        assert_eq!(self.target.order(), other.source.order());
        let images = self.images.iter().map(|&a| other.images[a]).collect();
        Self::new_unchecked(self.source.clone(), other.target.clone(), images)
    }

    /// Image subgroup in the target.
    pub fn image(&self) -> Subgroup {
        let mut members = self.images.clone();
        members.sort_unstable();
        members.dedup();
        Subgroup { parent: self.target.clone(), members }
    }

    /// Images of the source generators written as words in the target generators.
    pub fn generator_words(&self) -> Vec<String> {
        let words = self.target.words();
        self.source.generators().iter().map(|&g| format_word(&words[self.images[g]])).collect()
    }
}

/// `G × H` with `(a, b)` stored at index `a·|H| + b`, plus both projections.
/// Generators are `(g, 1)` for the generators of `G` followed by `(1, h)`.
pub fn direct_product(
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    cap: usize,
) -> Result<(Arc<FiniteGroup>, GroupHomomorphism, GroupHomomorphism), GroupError> {
    let (m, n) = (g.order(), h.order());
    if m * n > cap {
        return Err(GroupError::ClosureExceedsCap { cap });
    }
    let total = m * n;
    let mut mul = vec![0; total * total];
    for x in 0..total {
        let (a, b) = (x / n, x % n);
        for y in 0..total {
            let (c, d) = (y / n, y % n);
            mul[x * total + y] = g.mul(a, c) * n + h.mul(b, d);
        }
    }
    let generators = g.generators().iter().map(|&a| a * n).chain(h.generators().iter().copied()).collect();
    let name = format!("{}x{}", g.name(), h.name());
    let product = Arc::new(FiniteGroup::assemble(
        name,
        mul,
        generators,
        GroupOrigin::DirectProduct(g.name().to_string(), h.name().to_string()),
    ));
    let p1 = GroupHomomorphism::new_unchecked(product.clone(), g.clone(), (0..total).map(|x| x / n).collect());
    let p2 = GroupHomomorphism::new_unchecked(product.clone(), h.clone(), (0..total).map(|x| x % n).collect());
    Ok((product, p1, p2))
}

/// `f × g : A × B → C × D` on product groups laid out by [`direct_product`].
pub fn product_homomorphism(
    f: &GroupHomomorphism,
    g: &GroupHomomorphism,
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
) -> GroupHomomorphism {
    let (n_src, n_tgt) = (g.source().order(), g.target().order());
    let images = (0..source.order())
        .map(|x| f.apply(x / n_src) * n_tgt + g.apply(x % n_src))
        .collect();
    GroupHomomorphism::new_unchecked(source.clone(), target.clone(), images)
}

/// Cyclic group of order `n` as permutations of `n` points.
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    if n == 1 {
        return Arc::new(FiniteGroup::trivial("C1"));
    }
    let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Arc::new(FiniteGroup::from_permutations(format!("C{n}"), n, &[gen], n).expect("cyclic group closes"))
}

/// Dihedral group with `2n` elements, as permutations of an `n`-gon.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    Arc::new(FiniteGroup::from_permutations(format!("D{n}"), n, &[rot, refl], 2 * n).expect("dihedral group closes"))
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    if n > 1 {
        swap.swap(0, 1);
    }
    let cap = (1..=n).product::<usize>();
    Arc::new(FiniteGroup::from_permutations(format!("S{n}"), n, &[cycle, swap], cap).expect("symmetric group closes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
        let degree = gens.first().map_or(0, Vec::len);
        Arc::new(FiniteGroup::from_permutations("G", degree, gens, 200).unwrap())
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_matrices("T", 3, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().classes, vec![vec![0]]);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let t = vec![1, 1, 0, 1];
        assert_eq!(
            FiniteGroup::from_matrices("T", 2, &[t], 50).unwrap_err(),
            GroupError::ClosureExceedsCap { cap: 50 }
        );
    }

    #[test]
    fn singular_matrix_rejected() {
        let err = FiniteGroup::from_matrices("S", 2, &[vec![2, 0, 0, 1]], 10).unwrap_err();
        assert_eq!(err, GroupError::NonInvertibleGenerator { index: 0 });
        let err = FiniteGroup::from_permutations("P", 3, &[vec![0, 0, 1]], 10).unwrap_err();
        assert_eq!(err, GroupError::NonInvertibleGenerator { index: 0 });
    }

    #[test]
    fn breadth_first_ordering() {
        let c4 = cyclic(4);
        // g, g^2, g^3 appear in BFS order.
        let g = c4.generators()[0];
        assert_eq!(g, 1);
        assert_eq!(c4.mul(1, 1), 2);
        assert_eq!(c4.mul(2, 1), 3);
    }

    #[test]
    fn s4_classes() {
        let s4 = symmetric(4);
        let cc = s4.conjugacy_classes();
        let mut sizes = cc.sizes();
        assert_eq!(sizes.iter().sum::<usize>(), 24);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(s4.label(), "S4");
        assert_eq!(s4.exponent(), 12);
        s4.check_axioms().unwrap();
    }

    #[test]
    fn homomorphism_checks() {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let bad = GroupHomomorphism::new_unchecked(c2.clone(), c4.clone(), vec![0, 1]);
        assert_eq!(bad.first_violation(), Some((1, 1)));
        let good = GroupHomomorphism::new_unchecked(c2.clone(), c4.clone(), vec![0, 2]);
        assert!(good.is_homomorphism());
        assert!(GroupHomomorphism::identity(&c4).is_homomorphism());
        assert!(GroupHomomorphism::from_generator_images(c2.clone(), c4.clone(), &[1]).is_err());
        assert_eq!(GroupHomomorphism::from_generator_images(c2, c4, &[2]).unwrap(), good);
    }

    #[test]
    fn products_and_projections() {
        let c2 = cyclic(2);
        let (k4, p1, p2) = direct_product(&c2, &c2, 200).unwrap();
        assert_eq!(k4.order(), 4);
        assert!((1..4).all(|a| k4.element_order(a) == 2));
        assert_eq!(k4.exponent(), 2);
        assert!(p1.is_homomorphism() && p2.is_homomorphism());
        let d3 = dihedral(3);
        let (d3c2, q1, q2) = direct_product(&d3, &c2, 200).unwrap();
        assert_eq!(d3c2.order(), 12);
        for x in 0..12 {
            for y in 0..12 {
                let xy = d3c2.mul(x, y);
                assert_eq!(q1.apply(xy), d3.mul(q1.apply(x), q1.apply(y)));
                assert_eq!(q2.apply(xy), c2.mul(q2.apply(x), q2.apply(y)));
            }
        }
        let t = Arc::new(FiniteGroup::trivial("1"));
        let (tg, _, p) = direct_product(&t, &d3, 200).unwrap();
        assert_eq!(tg.multiplication_table(), d3.multiplication_table());
        assert!(p.is_injective());
    }

    #[test]
    fn centralizer_and_subgroups() {
        let s4 = symmetric(4);
        assert_eq!(centralizer(&s4, &Subgroup::trivial(&s4)).order(), 24);
        let subs = s4.all_subgroups();
        assert_eq!(subs.len(), 30);
        let k4 = perm_group(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]);
        assert_eq!(k4.all_subgroups().len(), 5);
    }

    #[test]
    fn words_round_trip() {
        let s4 = symmetric(4);
        for x in 0..s4.order() {
            assert_eq!(s4.parse_word(&s4.format_word(x)).unwrap(), x);
        }
        assert_eq!(s4.parse_word("g0^-1*g0").unwrap(), 0);
        assert!(s4.parse_word("h3").is_err());
    }

    #[test]
    fn quotient_by_center() {
        let c8 = cyclic(8);
        let (q, p) = c8.quotient(&[4], "C4").unwrap();
        assert_eq!(q.order(), 4);
        assert!(p.is_homomorphism());
        assert_eq!(q.label(), "C4");
    }

    #[test]
    fn table_groups() {
        let rows = vec![vec![0, 1], vec![1, 0]];
        let g = FiniteGroup::from_table("C2", &rows, None).unwrap();
        assert_eq!(g.generators(), &[1]);
        assert!(FiniteGroup::from_table("bad", &[vec![0, 1], vec![0, 1]], None).is_err());
    }
}

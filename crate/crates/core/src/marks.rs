//! Burnside rings through tables of marks.
//!
//! A finite `G`-set is determined up to isomorphism by its mark vector
//! `H ↦ |X^H|` over conjugacy classes of subgroups. The basis of `A(G)` is the
//! transitive sets `G/H_i`, one per class, ordered by `|H_i|` and then by the
//! sorted member list of the class representative.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupHomomorphism, DEFAULT_GROUP_CAP};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarksError {
    #[error("group {name} has order {order}, above the cap of {cap}")]
    CapExceeded { name: String, order: usize, cap: usize },
    #[error("induction along a non-injective homomorphism {0}")]
    NonInjectiveHomomorphism(String),
    #[error("mark vector is not the marks of a virtual G-set")]
    NotAGSet,
}

#[derive(Debug, Clone)]
pub struct TableOfMarks {
    group: Arc<FiniteGroup>,
    /// Every class, as the sorted member lists of all its conjugates.
    classes: Vec<Vec<Vec<usize>>>,
    /// `marks[i][j] = |(G/H_i)^{H_j}|`.
    marks: Vec<Vec<i64>>,
}

impl TableOfMarks {
    pub fn compute(g: &Arc<FiniteGroup>, cap: usize) -> Result<Self, MarksError> {
        if g.order() > cap {
            return Err(MarksError::CapExceeded { name: g.name().to_string(), order: g.order(), cap });
        }
        let subgroups = g.all_subgroups();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in &subgroups {
            if seen.contains_key(s) {
                continue;
            }
            let mut conjugates: Vec<Vec<usize>> = (0..g.order())
                .map(|x| {
                    let mut c: Vec<usize> = s.iter().map(|&a| g.conjugate(a, x)).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            conjugates.sort();
            conjugates.dedup();
            for c in &conjugates {
                seen.insert(c.clone(), classes.len());
            }
            classes.push(conjugates);
        }
        // all_subgroups is sorted by (order, members), so the first member of
        // each class met above is its minimal conjugate; order classes the same way.
        classes.sort_by(|a, b| (a[0].len(), &a[0]).cmp(&(b[0].len(), &b[0])));
        let n = classes.len();
        let mut marks = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                marks[i][j] = fixed_cosets(g, &classes[i][0], &classes[j][0]) as i64;
            }
        }
        Ok(TableOfMarks { group: g.clone(), classes, marks })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sorted members of the representative of class `i`.
    pub fn representative(&self, i: usize) -> &[usize] {
        &self.classes[i][0]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn marks(&self) -> &[Vec<i64>] {
        &self.marks
    }

    pub fn marks_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.marks)
    }

    /// Index of the class containing the subgroup with these members.
    pub fn class_of(&self, members: &[usize]) -> usize {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.classes
            .iter()
            .position(|c| c[0].len() == sorted.len() && c.binary_search(&sorted).is_ok())
            .expect("members form a subgroup of the group")
    }

    /// Coordinates in the `[G/H_i]` basis of the virtual G-set with the given
    /// mark vector.
    pub fn decompose_marks(&self, phi: &[i64]) -> Result<Vec<i64>, MarksError> {
        let n = self.len();
        let mut x = vec![0i64; n];
        for j in (0..n).rev() {
            let rest: i64 = (j + 1..n).map(|i| x[i] * self.marks[i][j]).sum();
            let r = phi[j] - rest;
            if r % self.marks[j][j] != 0 {
                return Err(MarksError::NotAGSet);
            }
            x[j] = r / self.marks[j][j];
        }
        Ok(x)
    }

    /// Mark vector of `Σ x_i [G/H_i]`.
    pub fn marks_of(&self, x: &[i64]) -> Vec<i64> {
        (0..self.len()).map(|j| (0..self.len()).map(|i| x[i] * self.marks[i][j]).sum()).collect()
    }
}

/// `|{gL : J·gL = gL}| = |{g : g⁻¹Jg ⊆ L}| / |L|`.
fn fixed_cosets(g: &FiniteGroup, l: &[usize], j: &[usize]) -> usize {
    if l.len() % j.len() != 0 {
        return 0;
    }
    let count = (0..g.order())
        .filter(|&x| j.iter().all(|&a| l.binary_search(&g.conjugate(a, x)).is_ok()))
        .count();
    count / l.len()
}

pub fn table_of_marks(g: &Arc<FiniteGroup>) -> Result<Arc<TableOfMarks>, MarksError> {
    table_of_marks_with_cap(g, DEFAULT_GROUP_CAP)
}

pub fn table_of_marks_with_cap(g: &Arc<FiniteGroup>, cap: usize) -> Result<Arc<TableOfMarks>, MarksError> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Arc<TableOfMarks>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if g.order() > cap {
        return Err(MarksError::CapExceeded { name: g.name().to_string(), order: g.order(), cap });
    }
    if let Some(t) = cache.lock().unwrap().get(g.multiplication_table()) {
        return Ok(t.clone());
    }
    let table = Arc::new(TableOfMarks::compute(g, cap)?);
    cache.lock().unwrap().insert(g.multiplication_table().to_vec(), table.clone());
    Ok(table)
}

/// `A(H) → A(K)`, `[H/L] ↦ [K/h(L)]`, for injective `h : H → K`.
pub fn burnside_induction_matrix(h: &GroupHomomorphism) -> Result<IntegerMatrix, MarksError> {
    if !h.is_injective() {
        return Err(MarksError::NonInjectiveHomomorphism(format!("{} -> {}", h.source().name(), h.target().name())));
    }
    let source = table_of_marks(h.source())?;
    let target = table_of_marks(h.target())?;
    let mut m = IntegerMatrix::zeros(target.len(), source.len());
    for j in 0..source.len() {
        let image: Vec<usize> = source.representative(j).iter().map(|&a| h.apply(a)).collect();
        m.set(target.class_of(&image), j, BigInt::from(1));
    }
    Ok(m)
}

/// `A(K) → A(H)` for any `h : H → K`: restrict `K/L` along `h` and decompose
/// by its marks, `|(K/L)^{J}| = |(K/L)^{h(J)}|`.
pub fn burnside_restriction_matrix(h: &GroupHomomorphism) -> Result<IntegerMatrix, MarksError> {
    let source = table_of_marks(h.source())?;
    let target = table_of_marks(h.target())?;
    let k = h.target();
    let mut m = IntegerMatrix::zeros(source.len(), target.len());
    for i in 0..target.len() {
        let l = target.representative(i);
        let phi: Vec<i64> = (0..source.len())
            .map(|j| {
                let mut image: Vec<usize> = source.representative(j).iter().map(|&a| h.apply(a)).collect();
                image.sort_unstable();
                image.dedup();
                fixed_cosets(k, l, &image) as i64
            })
            .collect();
        for (r, c) in source.decompose_marks(&phi)?.into_iter().enumerate() {
            m.set(r, i, BigInt::from(c));
        }
    }
    Ok(m)
}

//! Bredon chain and cochain complexes as integer matrices, and their
//! (co)homology from Smith normal forms.
//!
//! For a differential out of degree `n` of rank `r` and one into degree `n`
//! with nonzero elementary divisors `d_1 | … | d_s`, the (co)homology in
//! degree `n` of a module of rank `m` is `Z^{m-s-r} ⊕ ⨁ Z/d_i`.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coefficients::{CoefficientError, CoefficientSystem};
use crate::complex::EquivariantCellComplex;
use crate::matrix::{elementary_divisors, IntegerMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error("not a complex: composite through degree {degree} is nonzero at ({row}, {col}) = {value}")]
    NotAComplex { degree: usize, row: String, col: String, value: BigInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Homology,
    Cohomology,
}

/// `maps[n]` joins degrees `n` and `n + 1`: it is `∂_{n+1} : C_{n+1} → C_n`
/// for homology and `δ^n : C^n → C^{n+1}` for cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub variance: Variance,
    /// Basis labels `cell:coefficient` per degree.
    pub labels: Vec<Vec<String>>,
    /// Cell index of every basis element per degree.
    pub cell_of: Vec<Vec<usize>>,
    pub maps: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.labels.get(n as usize).map_or(0, Vec::len)
        }
    }

    pub fn top(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    /// Every composite of consecutive differentials vanishes.
    pub fn check(&self) -> Result<(), HomologyError> {
        for n in 1..self.maps.len() {
            let (product, rows, cols, degree) = match self.variance {
                Variance::Homology => (self.maps[n - 1].mul(&self.maps[n]), n - 1, n + 1, n),
                Variance::Cohomology => (self.maps[n].mul(&self.maps[n - 1]), n + 1, n - 1, n),
            };
            for i in 0..product.rows() {
                for j in 0..product.cols() {
                    if !product.get(i, j).is_zero() {
                        return Err(HomologyError::NotAComplex {
                            degree,
                            row: self.labels[rows][i].clone(),
                            col: self.labels[cols][j].clone(),
                            value: product.get(i, j).clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The differential between degrees 0 and 1 as a `C_1 × C_0` matrix.
    pub fn degree_one_block(&self) -> Option<IntegerMatrix> {
        self.maps.first().map(|m| match self.variance {
            Variance::Homology => m.transpose(),
            Variance::Cohomology => m.clone(),
        })
    }
}

/// Labels, cell indices and per-cell block offsets of the module in each degree.
fn basis(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<(Vec<Vec<String>>, Vec<Vec<usize>>, Vec<usize>), CoefficientError> {
    let top = match x.dimension() {
        Some(d) => d + 1,
        None => 0,
    };
    let mut labels = vec![Vec::new(); top];
    let mut cell_of = vec![Vec::new(); top];
    let mut offset_of = vec![0; x.cells().len()];
    for (i, c) in x.cells().iter().enumerate() {
        offset_of[i] = labels[c.dim].len();
        for l in sys.basis_labels(x.stabilizer(i))? {
            labels[c.dim].push(format!("{}:{}", c.id, l));
            cell_of[c.dim].push(i);
        }
    }
    Ok((labels, cell_of, offset_of))
}

fn assemble(x: &EquivariantCellComplex, sys: CoefficientSystem, variance: Variance) -> Result<ChainComplex, HomologyError> {
    let (labels, cell_of, offset_of) = basis(x, sys)?;
    let top = labels.len();
    let mut maps: Vec<IntegerMatrix> = (0..top.saturating_sub(1))
        .map(|n| match variance {
            Variance::Homology => IntegerMatrix::zeros(labels[n].len(), labels[n + 1].len()),
            Variance::Cohomology => IntegerMatrix::zeros(labels[n + 1].len(), labels[n].len()),
        })
        .collect();
    for inc in x.incidences() {
        let (from, to) = (inc.from, inc.to);
        let n = x.cells()[to].dim;
        let (sf, st) = (x.stabilizer(from), x.stabilizer(to));
        let k = BigInt::from(inc.coeff);
        match variance {
            Variance::Homology => {
                let block = sys.map_covariant(sf, st, &inc.hom)?;
                maps[n].add_block(offset_of[to], offset_of[from], &block, &k);
            }
            Variance::Cohomology => {
                let block = sys.map_contravariant(sf, st, &inc.hom)?;
                maps[n].add_block(offset_of[from], offset_of[to], &block, &k);
            }
        }
    }
    Ok(ChainComplex { variance, labels, cell_of, maps })
}

/// `⊕_λ Z[e_λ] ⊗ N(G/S_λ)` with block `(μ, λ)` of `∂` equal to the sum over
/// incidences `λ → μ` of the coefficient times the induced map.
pub fn assemble_chain(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<ChainComplex, HomologyError> {
    assemble(x, sys, Variance::Homology)
}

pub fn assemble_cochain(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<ChainComplex, HomologyError> {
    assemble(x, sys, Variance::Cohomology)
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `1 < d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Normalizes an arbitrary list of cyclic orders (zeros count as free
    /// summands, units are dropped) into invariant factors.
    pub fn new(free_rank: usize, cyclic: &[BigInt]) -> Self {
        let mut free_rank = free_rank;
        let mut orders = Vec::new();
        for c in cyclic {
            if c.is_zero() {
                free_rank += 1;
            } else if !c.is_one() && *c != -BigInt::one() {
                orders.push(if c < &BigInt::zero() { -c } else { c.clone() });
            }
        }
        AbelianGroup { free_rank, torsion: invariant_factors(&orders) }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let all: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        AbelianGroup::new(self.free_rank + other.free_rank, &all)
    }

    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(ToString::to_string).collect()
    }
}

/// Invariant factors of `⊕ Z/a_i`, via the Smith form of the diagonal matrix.
pub fn invariant_factors(orders: &[BigInt]) -> Vec<BigInt> {
    let n = orders.len();
    let mut d = IntegerMatrix::zeros(n, n);
    for (i, a) in orders.iter().enumerate() {
        d.set(i, i, a.clone());
    }
    elementary_divisors(&d).into_iter().filter(|x| !x.is_one()).collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// (Co)homology per degree over a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAbelianGroup {
    pub groups: Vec<(i64, AbelianGroup)>,
}

impl GradedAbelianGroup {
    /// The group in degree `n`; zero outside the computed range.
    pub fn get(&self, n: i64) -> AbelianGroup {
        self.groups.iter().find(|(d, _)| *d == n).map(|(_, g)| g.clone()).unwrap_or_default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.iter().map(|(d, _)| *d)
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, g) in &self.groups {
            writeln!(f, "{d}: {g}")?;
        }
        Ok(())
    }
}

/// (Co)homology in the degrees of `range`. Missing differentials are zero maps.
pub fn homology(c: &ChainComplex, range: RangeInclusive<i64>) -> Result<GradedAbelianGroup, HomologyError> {
    c.check()?;
    let divisors: Vec<Vec<BigInt>> = c.maps.iter().map(elementary_divisors).collect();
    let rank = |k: Option<usize>| k.and_then(|k| divisors.get(k)).map_or(0, Vec::len);
    let mut groups = Vec::new();
    for n in range {
        let m = c.rank(n);
        if m == 0 {
            groups.push((n, AbelianGroup::zero()));
            continue;
        }
        let nu = n as usize;
        // maps[n] and maps[n - 1] touch degree n
        let (incoming, outgoing) = match c.variance {
            Variance::Homology => (Some(nu), nu.checked_sub(1)),
            Variance::Cohomology => (nu.checked_sub(1), Some(nu)),
        };
        let r = rank(outgoing);
        let s = rank(incoming);
        let torsion: Vec<BigInt> = incoming
            .and_then(|k| divisors.get(k))
            .map(|d| d.iter().filter(|x| !x.is_one()).cloned().collect())
            .unwrap_or_default();
        groups.push((n, AbelianGroup { free_rank: m - s - r, torsion }));
    }
    Ok(GradedAbelianGroup { groups })
}

/// Default degree range `0..=dim` of a complex.
pub fn full_range(c: &ChainComplex) -> RangeInclusive<i64> {
    0..=(c.labels.len() as i64 - 1).max(0)
}

pub fn bredon_homology(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<GradedAbelianGroup, HomologyError> {
    let c = assemble_chain(x, sys)?;
    homology(&c, full_range(&c))
}

pub fn bredon_cohomology(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<GradedAbelianGroup, HomologyError> {
    let c = assemble_cochain(x, sys)?;
    homology(&c, full_range(&c))
}

pub const DEFAULT_MINOR_CAP: usize = 12;

/// Largest number of minors enumerated for one block.
const MINOR_BUDGET: u128 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionFreeVerdict {
    TorsionFree,
    CriterionFails { cell: String, rows: Vec<String>, cols: Vec<String>, minor: BigInt },
    Inconclusive { cell: String, reason: String },
}

/// The vertex-block minor criterion on the differential between degrees 0
/// and 1: if every minor of every vertex block lies in `{-1, 0, 1}`, degree
/// zero is torsion-free. Blocks wider than `minor_cap` columns are not
/// enumerated.
pub fn torsion_free_criterion(c: &ChainComplex, cell_ids: &[String], minor_cap: usize) -> TorsionFreeVerdict {
    let Some(block) = c.degree_one_block() else {
        return TorsionFreeVerdict::TorsionFree;
    };
    let mut vertices: Vec<usize> = c.cell_of[0].clone();
    vertices.dedup();
    for v in vertices {
        let cols: Vec<usize> = (0..c.labels[0].len()).filter(|&j| c.cell_of[0][j] == v).collect();
        let sub = block.submatrix(&(0..block.rows()).collect::<Vec<_>>(), &cols);
        let rows = distinct_lines(&sub, true);
        let keep_cols = distinct_lines(&sub, false);
        let name = cell_ids[v].clone();
        if keep_cols.len() > minor_cap {
            return TorsionFreeVerdict::Inconclusive {
                cell: name,
                reason: format!("block has {} distinct columns, above the cap of {minor_cap}", keep_cols.len()),
            };
        }
        if binomial(rows.len() + keep_cols.len(), keep_cols.len()) > MINOR_BUDGET {
            return TorsionFreeVerdict::Inconclusive {
                cell: name,
                reason: format!("{}×{} block needs too many minors", rows.len(), keep_cols.len()),
            };
        }
        let entries: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| keep_cols.iter().map(|&j| i128::try_from(sub.get(i, j)).unwrap_or(i128::MAX)).collect())
            .collect();
        if let Some((r, k, minor)) = find_bad_minor(&entries) {
            return TorsionFreeVerdict::CriterionFails {
                cell: name,
                rows: r.iter().map(|&i| c.labels[1][rows[i]].clone()).collect(),
                cols: k.iter().map(|&j| c.labels[0][cols[keep_cols[j]]].clone()).collect(),
                minor: BigInt::from(minor),
            };
        }
    }
    TorsionFreeVerdict::TorsionFree
}

/// Indices of nonzero rows (or columns), keeping one of each up to sign.
/// Minors through a dropped line are zero or repeat a kept minor up to sign.
fn distinct_lines(m: &IntegerMatrix, by_rows: bool) -> Vec<usize> {
    let (count, len) = if by_rows { (m.rows(), m.cols()) } else { (m.cols(), m.rows()) };
    let line = |i: usize| -> Vec<BigInt> { (0..len).map(|j| if by_rows { m.get(i, j).clone() } else { m.get(j, i).clone() }).collect() };
    let mut seen: Vec<Vec<BigInt>> = Vec::new();
    let mut out = Vec::new();
    for i in 0..count {
        let l = line(i);
        if l.iter().all(Zero::is_zero) {
            continue;
        }
        let neg: Vec<BigInt> = l.iter().map(|x| -x).collect();
        if seen.contains(&l) || seen.contains(&neg) {
            continue;
        }
        seen.push(l);
        out.push(i);
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn find_bad_minor(a: &[Vec<i128>]) -> Option<(Vec<usize>, Vec<usize>, i128)> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for k in 1..=m.min(n) {
        let row_sets = subsets(m, k);
        let col_sets = subsets(n, k);
        for r in &row_sets {
            for c in &col_sets {
                let d = small_det(a, r, c);
                if d.abs() > 1 {
                    return Some((r.clone(), c.clone(), d));
                }
            }
        }
    }
    None
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn small_det(a: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    let k = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

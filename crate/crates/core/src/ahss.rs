//! The E₂ page of the equivariant Atiyah–Hirzebruch spectral sequence for
//! complex K-theory, `E₂^{p,q} = H^p(X; KU^q)` with `KU^q(G/H) = R(H)` for
//! even `q` and zero for odd `q`.
//!
//! Rows are 2-periodic, so only one even row is stored. Differentials are
//! never computed; collapse is reported only when it follows from bidegrees.

use std::fmt;

use num_bigint::BigInt;

use crate::coefficients::CoefficientSystem;
use crate::complex::EquivariantCellComplex;
use crate::homology::{bredon_cohomology, AbelianGroup, HomologyError};

pub const D3_NOTE: &str = "no closed formula is known for d3; differentials are not computed";
pub const EXTENSION_CAVEAT: &str = "torsion is associated-graded data; the extension problem is unresolved";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollapseStatus {
    CollapsesForDimensionReasons,
    Unknown,
}

impl fmt::Display for CollapseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CollapseStatus::CollapsesForDimensionReasons => "collapses-for-dimension-reasons",
            CollapseStatus::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Page {
    /// `H^p(X; R)` for `p = 0..=dim X`, the single stored even row.
    pub even_row: Vec<AbelianGroup>,
    pub dimension: Option<usize>,
    pub collapse_status: CollapseStatus,
}

impl E2Page {
    pub fn entry(&self, p: i64, q: i64) -> AbelianGroup {
        if p < 0 || q.rem_euclid(2) == 1 {
            return AbelianGroup::zero();
        }
        self.even_row.get(p as usize).cloned().unwrap_or_else(AbelianGroup::zero)
    }

    pub fn nonzero_columns(&self) -> Vec<usize> {
        self.even_row.iter().enumerate().filter(|(_, g)| !g.is_zero()).map(|(p, _)| p).collect()
    }

    pub fn note(&self) -> Option<&'static str> {
        (self.collapse_status == CollapseStatus::Unknown).then_some(D3_NOTE)
    }

    /// Text grid with the rows `q = 1` and `q = 0`, top to bottom.
    pub fn render(&self) -> String {
        let cols = self.even_row.len();
        let cells: Vec<Vec<String>> = [1, 0]
            .iter()
            .map(|&q| (0..cols).map(|p| self.entry(p as i64, q).to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
        let mut out = String::new();
        for (q, row) in [1, 0].iter().zip(&cells) {
            out.push_str(&format!("q={q} (mod 2) |"));
            for c in row {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{:>13} ", "p ="));
        for p in 0..cols {
            out.push_str(&format!(" {p:>width$}"));
        }
        out.push('\n');
        out.push_str(&format!("status: {}\n", self.collapse_status));
        if let Some(n) = self.note() {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

pub fn e2_page(x: &EquivariantCellComplex) -> Result<E2Page, HomologyError> {
    let dimension = x.dimension();
    let h = bredon_cohomology(x, CoefficientSystem::ComplexRepRing)?;
    let even_row: Vec<AbelianGroup> = (0..=dimension.unwrap_or(0) as i64).map(|p| h.get(p)).collect();
    let nonzero = even_row.iter().filter(|g| !g.is_zero()).count();
    let collapse_status = if dimension.unwrap_or(0) <= 2 || nonzero <= 1 {
        CollapseStatus::CollapsesForDimensionReasons
    } else {
        CollapseStatus::Unknown
    };
    Ok(E2Page { even_row, dimension, collapse_status })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryRanks {
    pub even: usize,
    pub odd: usize,
    pub even_torsion: Vec<BigInt>,
    pub odd_torsion: Vec<BigInt>,
    pub caveat: Option<&'static str>,
}

/// Ranks of `K^0` and `K^1` when the page collapses for dimension reasons.
pub fn k_theory_ranks_if_collapse(page: &E2Page) -> Option<KTheoryRanks> {
    if page.collapse_status != CollapseStatus::CollapsesForDimensionReasons {
        return None;
    }
    let mut r = KTheoryRanks { even: 0, odd: 0, even_torsion: Vec::new(), odd_torsion: Vec::new(), caveat: None };
    for (p, g) in page.even_row.iter().enumerate() {
        if p % 2 == 0 {
            r.even += g.free_rank;
            r.even_torsion.extend(g.torsion.iter().cloned());
        } else {
            r.odd += g.free_rank;
            r.odd_torsion.extend(g.torsion.iter().cloned());
        }
    }
    if !r.even_torsion.is_empty() || !r.odd_torsion.is_empty() {
        r.caveat = Some(EXTENSION_CAVEAT);
    }
    Some(r)
}

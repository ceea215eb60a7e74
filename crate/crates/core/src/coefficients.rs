//! Bredon coefficient systems evaluated on finite stabilizers.
//!
//! Every system assigns a based free abelian group to a stabilizer and an
//! integer matrix to an incidence homomorphism, covariantly (induction) for
//! homology and contravariantly (restriction) for cohomology. A matrix for
//! `h : H → K` has rows indexed by the basis of the codomain of the map.
//!
//! A stabilizer may carry a central extension `1 → ⟨t⟩ → H̃ → H → 1`; it is
//! then declared as `H̃` and the untwisted systems see the quotient `H`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::character::{character_table, induction_matrix, restriction_matrix, CharacterError};
use crate::cyclotomic::Cyclotomic;
use crate::group::{FiniteGroup, GroupError, GroupHomomorphism};
use crate::marks::{burnside_induction_matrix, burnside_restriction_matrix, table_of_marks, MarksError};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoefficientError {
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Marks(#[from] MarksError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("induction along a non-injective homomorphism {0}")]
    NonInjectiveHomomorphism(String),
    #[error("stabilizer {0} has no extension block")]
    MissingExtensionData(String),
    #[error("extension mismatch: {0}")]
    ExtensionMismatch(String),
    #[error("invalid extension of {group}: {reason}")]
    InvalidExtension { group: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientSystem {
    ConstantZ,
    ComplexRepRing,
    BurnsideRing,
    /// Characters of the extension on which the central generator acts by
    /// `e^{2πik/n}`; `k` is read modulo `n`.
    KCentralRepRing { k: i64 },
}

impl CoefficientSystem {
    pub fn name(&self) -> String {
        match self {
            CoefficientSystem::ConstantZ => "constant".into(),
            CoefficientSystem::ComplexRepRing => "rep".into(),
            CoefficientSystem::BurnsideRing => "burnside".into(),
            CoefficientSystem::KCentralRepRing { k } => format!("kcentral:{k}"),
        }
    }

    /// Whether contravariant matrices are transposes of covariant ones.
    pub fn has_transpose_duality(&self) -> bool {
        !matches!(self, CoefficientSystem::BurnsideRing)
    }
}

impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for CoefficientSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "constant" => Ok(CoefficientSystem::ConstantZ),
            "rep" => Ok(CoefficientSystem::ComplexRepRing),
            "burnside" => Ok(CoefficientSystem::BurnsideRing),
            _ => match s.strip_prefix("kcentral:") {
                Some(k) => k
                    .parse()
                    .map(|k| CoefficientSystem::KCentralRepRing { k })
                    .map_err(|_| format!("bad k in `{s}`")),
                None => Err(format!("unknown coefficient system `{s}`")),
            },
        }
    }
}

/// A central cyclic subgroup `⟨t⟩ ≤ H̃` of order `n`.
#[derive(Debug, Clone)]
pub struct CentralExtensionData {
    pub total: Arc<FiniteGroup>,
    pub center: usize,
    pub n: usize,
}

impl CentralExtensionData {
    pub fn new(total: Arc<FiniteGroup>, center: usize, n: usize) -> Result<Self, CoefficientError> {
        let bad = |reason: String| CoefficientError::InvalidExtension { group: total.name().to_string(), reason };
        if center >= total.order() {
            return Err(bad(format!("element {center} out of range")));
        }
        if total.element_order(center) != n {
            return Err(bad(format!("t has order {}, declared {n}", total.element_order(center))));
        }
        if let Some(x) = (0..total.order()).find(|&x| total.mul(x, center) != total.mul(center, x)) {
            return Err(bad(format!("t does not commute with element {x}")));
        }
        Ok(CentralExtensionData { total, center, n })
    }

    pub fn trivial(total: Arc<FiniteGroup>) -> Self {
        CentralExtensionData { total, center: 0, n: 1 }
    }

    /// `H̃/⟨t⟩` with its projection.
    pub fn quotient(&self) -> Result<(Arc<FiniteGroup>, GroupHomomorphism), CoefficientError> {
        if self.n == 1 {
            return Ok((self.total.clone(), GroupHomomorphism::identity(&self.total)));
        }
        let name = format!("{}/<t>", self.total.name());
        Ok(self.total.quotient(&[self.center], name)?)
    }
}

/// Indices (into the character table of `H̃`) of the irreducibles on which
/// `t` acts by `e^{2πik/n}`.
pub fn k_central_basis(ext: &CentralExtensionData, k: i64) -> Result<Vec<usize>, CoefficientError> {
    let table = character_table(&ext.total)?;
    let root = Cyclotomic::zeta(ext.n, k);
    Ok(table
        .irreducibles()
        .iter()
        .enumerate()
        .filter(|(_, chi)| table.value_at(chi, ext.center) == &chi.degree() * &root)
        .map(|(i, _)| i)
        .collect())
}

/// The group a coefficient system is evaluated at: the declared stabilizer
/// and, optionally, its extension data.
#[derive(Debug, Clone)]
pub struct Stabilizer {
    declared: Arc<FiniteGroup>,
    extension: Option<CentralExtensionData>,
    effective: Arc<FiniteGroup>,
    projection: GroupHomomorphism,
}

impl Stabilizer {
    pub fn plain(g: Arc<FiniteGroup>) -> Self {
        let projection = GroupHomomorphism::identity(&g);
        Stabilizer { declared: g.clone(), extension: None, effective: g, projection }
    }

    pub fn extended(ext: CentralExtensionData) -> Result<Self, CoefficientError> {
        let (effective, projection) = ext.quotient()?;
        Ok(Stabilizer { declared: ext.total.clone(), extension: Some(ext), effective, projection })
    }

    pub fn declared(&self) -> &Arc<FiniteGroup> {
        &self.declared
    }

    pub fn extension(&self) -> Option<&CentralExtensionData> {
        self.extension.as_ref()
    }

    /// The stabilizer seen by untwisted systems.
    pub fn effective(&self) -> &Arc<FiniteGroup> {
        &self.effective
    }
}

impl CoefficientSystem {
    pub fn rank(&self, s: &Stabilizer) -> Result<usize, CoefficientError> {
        Ok(self.basis_labels(s)?.len())
    }

    pub fn basis_labels(&self, s: &Stabilizer) -> Result<Vec<String>, CoefficientError> {
        Ok(match self {
            CoefficientSystem::ConstantZ => vec!["1".into()],
            CoefficientSystem::ComplexRepRing => {
                (0..character_table(s.effective())?.len()).map(|i| format!("X{}", i + 1)).collect()
            }
            CoefficientSystem::BurnsideRing => {
                let t = table_of_marks(s.effective())?;
                (0..t.len()).map(|i| format!("[/{}#{}]", t.representative(i).len(), i + 1)).collect()
            }
            CoefficientSystem::KCentralRepRing { k } => {
                let ext = s.extension.as_ref().ok_or_else(|| CoefficientError::MissingExtensionData(s.declared.name().into()))?;
                k_central_basis(ext, *k)?.into_iter().map(|i| format!("X{}", i + 1)).collect()
            }
        })
    }

    /// `M(H) → M(K)` along an incidence homomorphism `h : H̃ → K̃` of declared groups.
    pub fn map_covariant(&self, from: &Stabilizer, to: &Stabilizer, h: &GroupHomomorphism) -> Result<IntegerMatrix, CoefficientError> {
        if !h.is_injective() {
            return Err(CoefficientError::NonInjectiveHomomorphism(format!("{} -> {}", h.source().name(), h.target().name())));
        }
        self.map(from, to, h, true)
    }

    /// `M(K) → M(H)` along an incidence homomorphism `h : H̃ → K̃` of declared groups.
    pub fn map_contravariant(&self, from: &Stabilizer, to: &Stabilizer, h: &GroupHomomorphism) -> Result<IntegerMatrix, CoefficientError> {
        self.map(from, to, h, false)
    }

    fn map(&self, from: &Stabilizer, to: &Stabilizer, h: &GroupHomomorphism, covariant: bool) -> Result<IntegerMatrix, CoefficientError> {
        if let CoefficientSystem::KCentralRepRing { k } = self {
            let missing = |s: &Stabilizer| CoefficientError::MissingExtensionData(s.declared.name().into());
            let ef = from.extension.as_ref().ok_or_else(|| missing(from))?;
            let et = to.extension.as_ref().ok_or_else(|| missing(to))?;
            check_lift(ef, et, h)?;
            let rows = k_central_basis(if covariant { et } else { ef }, *k)?;
            let cols = k_central_basis(if covariant { ef } else { et }, *k)?;
            let full = if covariant { induction_matrix(h)? } else { restriction_matrix(h)? };
            return Ok(full.submatrix(&rows, &cols));
        }
        let e = effective_hom(from, to, h)?;
        if covariant && !e.is_injective() {
            return Err(CoefficientError::NonInjectiveHomomorphism(format!("{} -> {}", e.source().name(), e.target().name())));
        }
        Ok(match (self, covariant) {
            (CoefficientSystem::ConstantZ, _) => IntegerMatrix::identity(1),
            (CoefficientSystem::ComplexRepRing, true) => induction_matrix(&e)?,
            (CoefficientSystem::ComplexRepRing, false) => restriction_matrix(&e)?,
            (CoefficientSystem::BurnsideRing, true) => burnside_induction_matrix(&e)?,
            (CoefficientSystem::BurnsideRing, false) => burnside_restriction_matrix(&e)?,
            (CoefficientSystem::KCentralRepRing { .. }, _) => unreachable!(),
        })
    }

    /// Convenience for plain groups.
    pub fn covariant(&self, h: &GroupHomomorphism) -> Result<IntegerMatrix, CoefficientError> {
        self.map_covariant(&Stabilizer::plain(h.source().clone()), &Stabilizer::plain(h.target().clone()), h)
    }

    pub fn contravariant(&self, h: &GroupHomomorphism) -> Result<IntegerMatrix, CoefficientError> {
        self.map_contravariant(&Stabilizer::plain(h.source().clone()), &Stabilizer::plain(h.target().clone()), h)
    }
}

fn check_lift(from: &CentralExtensionData, to: &CentralExtensionData, h: &GroupHomomorphism) -> Result<(), CoefficientError> {
    if from.n != to.n {
        return Err(CoefficientError::ExtensionMismatch(format!(
            "{} has n = {} but {} has n = {}",
            from.total.name(),
            from.n,
            to.total.name(),
            to.n
        )));
    }
    if h.apply(from.center) != to.center {
        return Err(CoefficientError::ExtensionMismatch(format!(
            "{} -> {} does not send the central generator to the central generator",
            h.source().name(),
            h.target().name()
        )));
    }
    Ok(())
}

/// The homomorphism of effective stabilizers induced by `h`.
fn effective_hom(from: &Stabilizer, to: &Stabilizer, h: &GroupHomomorphism) -> Result<GroupHomomorphism, CoefficientError> {
    match (&from.extension, &to.extension) {
        (None, None) => Ok(h.clone()),
        (Some(ef), Some(et)) => {
            check_lift(ef, et, h)?;
            let src = from.effective();
            let mut images = vec![usize::MAX; src.order()];
            for x in 0..from.declared.order() {
                images[from.projection.apply(x)] = to.projection.apply(h.apply(x));
            }
            Ok(GroupHomomorphism::new_unchecked(src.clone(), to.effective().clone(), images))
        }
        _ => Err(CoefficientError::ExtensionMismatch(format!(
            "incidence {} -> {} joins an extended and a plain stabilizer",
            h.source().name(),
            h.target().name()
        ))),
    }
}

/// `a == bᵀ`.
pub fn is_transpose(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.shape() == (b.cols(), b.rows()) && (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(j, i)))
}

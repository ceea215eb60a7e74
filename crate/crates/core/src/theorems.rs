//! Executable forms of the universal coefficient theorem, the Künneth
//! theorem and the untwisting isomorphism, checked on isomorphism classes
//! of the groups involved.

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::coefficients::{is_transpose, CoefficientError, CoefficientSystem};
use crate::complex::{product_complex, ComplexError, EquivariantCellComplex, IncidenceOrigin, ProductInfo};
use crate::homology::{
    assemble_chain, assemble_cochain, homology, AbelianGroup, ChainComplex, GradedAbelianGroup, HomologyError, Variance,
};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("condition D fails on face {from} -> {to}: restriction is not the transpose of induction")]
    ConditionDViolated { from: String, to: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UctDegree {
    pub n: i64,
    pub homology: AbelianGroup,
    pub cohomology: AbelianGroup,
    pub rank_match: bool,
    pub torsion_match: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UctReport {
    pub degrees: Vec<UctDegree>,
}

impl UctReport {
    pub fn overall(&self) -> bool {
        self.degrees.iter().all(|d| d.rank_match && d.torsion_match)
    }
}

/// Condition D on every incidence: the contravariant matrix is the transpose
/// of the covariant one in the chosen bases.
pub fn check_condition_d(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<(), TheoremError> {
    for inc in x.incidences() {
        let (sf, st) = (x.stabilizer(inc.from), x.stabilizer(inc.to));
        let co = sys.map_covariant(sf, st, &inc.hom)?;
        let contra = sys.map_contravariant(sf, st, &inc.hom)?;
        if !is_transpose(&co, &contra) {
            return Err(TheoremError::ConditionDViolated { from: x.cells()[inc.from].id.clone(), to: x.cells()[inc.to].id.clone() });
        }
    }
    Ok(())
}

/// `H^n ≅ Hom(H_n, Z) ⊕ Ext(H_{n-1}, Z)`: free ranks of `H^n` and `H_n`
/// agree and the torsion of `H^n` is that of `H_{n-1}`. Both sides are
/// computed from separately assembled chain and cochain complexes.
pub fn uct_check(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<UctReport, TheoremError> {
    check_condition_d(x, sys)?;
    let chain = assemble_chain(x, sys)?;
    let cochain = assemble_cochain(x, sys)?;
    let top = chain.labels.len() as i64;
    let h = homology(&chain, -1..=top)?;
    let c = homology(&cochain, 0..=top)?;
    let degrees = (0..=top)
        .map(|n| {
            let (hn, cn, prev) = (h.get(n), c.get(n), h.get(n - 1));
            UctDegree {
                n,
                rank_match: hn.free_rank == cn.free_rank,
                torsion_match: prev.torsion == cn.torsion,
                homology: hn,
                cohomology: cn,
            }
        })
        .collect();
    Ok(UctReport { degrees })
}

fn tensor(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut cyclic: Vec<BigInt> = Vec::new();
    for s in &a.torsion {
        cyclic.extend(std::iter::repeat(s.clone()).take(b.free_rank));
    }
    for t in &b.torsion {
        cyclic.extend(std::iter::repeat(t.clone()).take(a.free_rank));
    }
    for s in &a.torsion {
        for t in &b.torsion {
            cyclic.push(s.gcd(t));
        }
    }
    AbelianGroup::new(a.free_rank * b.free_rank, &cyclic)
}

fn tor(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let cyclic: Vec<BigInt> = a.torsion.iter().flat_map(|s| b.torsion.iter().map(move |t| s.gcd(t))).collect();
    AbelianGroup::new(0, &cyclic)
}

/// `⊕_{i+j=n} H_i ⊗ H_j ⊕ ⊕_{i+j=n-1} Tor(H_i, H_j)`.
pub fn kunneth_prediction(hx: &GradedAbelianGroup, hy: &GradedAbelianGroup, n: i64) -> AbelianGroup {
    let mut out = AbelianGroup::zero();
    for i in hx.degrees() {
        let a = hx.get(i);
        for j in hy.degrees() {
            let b = hy.get(j);
            if i + j == n {
                out = out.direct_sum(&tensor(&a, &b));
            }
            if i + j == n - 1 {
                out = out.direct_sum(&tor(&a, &b));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethDegree {
    pub n: i64,
    pub predicted: AbelianGroup,
    pub computed: AbelianGroup,
}

impl KunnethDegree {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethReport {
    pub degrees: Vec<KunnethDegree>,
}

impl KunnethReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(KunnethDegree::matches)
    }
}

/// Chain complex of `X × Y` with coefficients `M ⊗ N`, in the tensor basis
/// `(i, j) ↦ i·rank N + j` on each product cell.
pub fn assemble_tensor_chain(
    x: &EquivariantCellComplex,
    y: &EquivariantCellComplex,
    product: &EquivariantCellComplex,
    info: &ProductInfo,
    m: CoefficientSystem,
    n: CoefficientSystem,
) -> Result<ChainComplex, TheoremError> {
    let top = product.dimension().map_or(0, |d| d + 1);
    let mut labels = vec![Vec::new(); top];
    let mut cell_of = vec![Vec::new(); top];
    let mut offset = vec![0; product.cells().len()];
    for (k, &(a, b)) in info.cell_factors.iter().enumerate() {
        let la = m.basis_labels(x.stabilizer(a))?;
        let lb = n.basis_labels(y.stabilizer(b))?;
        let d = product.cells()[k].dim;
        offset[k] = labels[d].len();
        for p in &la {
            for q in &lb {
                labels[d].push(format!("{}:{p}*{q}", product.cells()[k].id));
                cell_of[d].push(k);
            }
        }
    }
    let mut maps: Vec<IntegerMatrix> =
        (0..top.saturating_sub(1)).map(|d| IntegerMatrix::zeros(labels[d].len(), labels[d + 1].len())).collect();
    for (inc, origin) in product.incidences().iter().zip(&info.incidence_origin) {
        let block = match *origin {
            IncidenceOrigin::Left { incidence, cell } => {
                let f = &x.incidences()[incidence];
                let mf = m.map_covariant(x.stabilizer(f.from), x.stabilizer(f.to), &f.hom)?;
                mf.kron(&IntegerMatrix::identity(n.rank(y.stabilizer(cell))?))
            }
            IncidenceOrigin::Right { cell, incidence } => {
                let g = &y.incidences()[incidence];
                let ng = n.map_covariant(y.stabilizer(g.from), y.stabilizer(g.to), &g.hom)?;
                IntegerMatrix::identity(m.rank(x.stabilizer(cell))?).kron(&ng)
            }
        };
        let d = product.cells()[inc.to].dim;
        maps[d].add_block(offset[inc.to], offset[inc.from], &block, &BigInt::from(inc.coeff));
    }
    Ok(ChainComplex { variance: Variance::Homology, labels, cell_of, maps })
}

/// Compare the Künneth prediction from the homologies of `X` (with `M`) and
/// `Y` (with `N`) against the homology of `X × Y` with `M ⊗ N`.
pub fn kunneth_check(
    x: &EquivariantCellComplex,
    y: &EquivariantCellComplex,
    m: CoefficientSystem,
    n: CoefficientSystem,
    cap: usize,
) -> Result<KunnethReport, TheoremError> {
    let cx = assemble_chain(x, m)?;
    let cy = assemble_chain(y, n)?;
    let hx = homology(&cx, 0..=cx.labels.len() as i64)?;
    let hy = homology(&cy, 0..=cy.labels.len() as i64)?;
    let (product, info) = product_complex(x, y, cap)?;
    let cp = assemble_tensor_chain(x, y, &product, &info, m, n)?;
    let top = cp.labels.len() as i64;
    let hp = homology(&cp, 0..=top)?;
    let degrees = (0..=top)
        .map(|d| KunnethDegree { n: d, predicted: kunneth_prediction(&hx, &hy, d), computed: hp.get(d) })
        .collect();
    Ok(KunnethReport { degrees })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UntwistReport {
    pub n: usize,
    pub k: i64,
    pub cohomology: GradedAbelianGroup,
    pub d_squared: bool,
    pub uct: bool,
    /// For `n = 1`: cochain complex and cohomology identical to the
    /// untwisted representation ring.
    pub untwisted_identical: Option<bool>,
    /// For `k ≡ 0 (mod n)`: cohomology equal to that of the representation
    /// rings of the quotient stabilizers.
    pub inflation_match: Option<bool>,
}

impl UntwistReport {
    pub fn passed(&self) -> bool {
        self.d_squared && self.uct && self.untwisted_identical != Some(false) && self.inflation_match != Some(false)
    }
}

/// Cohomology with the `k`-central representation rings of the declared
/// extensions, with its consistency checks.
pub fn untwist_consistency(x: &EquivariantCellComplex, k: i64) -> Result<UntwistReport, TheoremError> {
    let mut n = None;
    for (i, c) in x.cells().iter().enumerate() {
        let ext = x.stabilizer(i).extension().ok_or_else(|| CoefficientError::MissingExtensionData(c.stabilizer.clone()))?;
        match n {
            None => n = Some(ext.n),
            Some(m) if m != ext.n => {
                return Err(CoefficientError::ExtensionMismatch(format!("extensions of orders {m} and {} in one complex", ext.n)).into())
            }
            _ => {}
        }
    }
    let n = n.unwrap_or(1);
    let sys = CoefficientSystem::KCentralRepRing { k };
    let cochain = assemble_cochain(x, sys)?;
    let d_squared = cochain.check().is_ok();
    let top = cochain.labels.len() as i64;
    let cohomology = homology(&cochain, 0..=top)?;
    let uct = uct_check(x, sys)?.overall();
    let untwisted_identical = if n == 1 {
        let plain = assemble_cochain(x, CoefficientSystem::ComplexRepRing)?;
        Some(plain == cochain && homology(&plain, 0..=top)? == cohomology)
    } else {
        None
    };
    let inflation_match = if k.rem_euclid(n as i64) == 0 {
        let plain = assemble_cochain(x, CoefficientSystem::ComplexRepRing)?;
        Some(homology(&plain, 0..=top)? == cohomology)
    } else {
        None
    };
    Ok(UntwistReport { n, k, cohomology, d_squared, uct, untwisted_identical, inflation_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, t: &[i64]) -> AbelianGroup {
        AbelianGroup::new(free, &t.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn tensor_and_tor() {
        assert_eq!(tensor(&g(2, &[4]), &g(1, &[6])), g(2, &[4, 6, 6, 2]));
        assert_eq!(tor(&g(2, &[4]), &g(1, &[6])), g(0, &[2]));
        assert_eq!(tor(&g(3, &[]), &g(1, &[6])), AbelianGroup::zero());
    }

    #[test]
    fn prediction_for_torsion_squares() {
        let h = GradedAbelianGroup { groups: vec![(0, g(0, &[2])), (1, AbelianGroup::zero())] };
        assert_eq!(kunneth_prediction(&h, &h, 0), g(0, &[2]));
        assert_eq!(kunneth_prediction(&h, &h, 1), g(0, &[2]));
        assert_eq!(kunneth_prediction(&h, &h, 2), AbelianGroup::zero());
    }
}

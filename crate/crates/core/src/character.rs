//! Character tables and the induction/restriction maps of complex
//! representation rings.
//!
//! Tables are computed from the class multiplication coefficients: the
//! central characters `ω_χ(C) = |C|·χ(g_C)/χ(1)` are the simultaneous
//! eigenvectors of the class-sum matrices. The eigenspaces are split over a
//! prime field `F_p` with `p ≡ 1 (mod exp G)` and `p > 2|G|`; each character
//! is then lifted to exact cyclotomic values through the eigenvalue
//! multiplicities of `ρ(g)`, which are small nonnegative integers and hence
//! determined by their residues. The result is checked exactly afterwards
//! by the orthogonality tests.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::group::{ConjugacyClasses, FiniteGroup, GroupHomomorphism, DEFAULT_GROUP_CAP};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("group {name} has order {order}, above the cap of {cap}")]
    CapExceeded { name: String, order: usize, cap: usize },
    #[error("induction along a non-injective homomorphism {0}")]
    NonInjectiveHomomorphism(String),
    #[error("class function is not a virtual character: inner product with irreducible {index} is {value}")]
    NotVirtualCharacter { index: usize, value: String },
    #[error("character table computation failed for {0}")]
    SplittingFailed(String),
}

/// A class function, valued per conjugacy class in the canonical class order
/// of its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn degree(&self) -> Cyclotomic {
        self.values[0].clone()
    }
}

/// An element of `R_C(H)`: integer coordinates over the irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepRingElement {
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ConjugacyClasses,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<usize>,
}

// --- arithmetic mod p ------------------------------------------------------

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("prime has a primitive root")
}

/// Basis (as rows) of the nullspace of an `r × c` matrix over `F_p`.
fn nullspace_mod(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

impl CharacterTable {
    /// Compute the table of `g`; groups above `cap` are refused.
    pub fn compute(g: &Arc<FiniteGroup>, cap: usize) -> Result<Self, CharacterError> {
        if g.order() > cap {
            return Err(CharacterError::CapExceeded { name: g.name().to_string(), order: g.order(), cap });
        }
        let n = g.order();
        let classes = g.conjugacy_classes();
        let r = classes.len();
        let sizes = classes.sizes();
        let exponent = g.exponent();

        let mut p = (2 * n as u64 / exponent as u64 + 1) * exponent as u64 + 1;
        while !is_prime(p) {
            p += exponent as u64;
        }

        // structure constants: a[j][i][k] = #{x in C_j : x^-1 g_k in C_i}
        let mut a = vec![vec![vec![0u64; r]; r]; r];
        for k in 0..r {
            let gk = classes.representative(k);
            for x in 0..n {
                let j = classes.class_of[x];
                let i = classes.class_of[g.mul(g.inv(x), gk)];
                a[j][i][k] += 1;
            }
        }

        // split F_p^r into common eigenlines of the class-sum matrices
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut e = vec![0u64; r];
                e[i] = 1;
                e
            })
            .collect()];
        for mat in a.iter().skip(1) {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                let image: Vec<Vec<u64>> = space
                    .iter()
                    .map(|v| (0..r).map(|i| (0..r).map(|k| mat[i][k] % p * v[k] % p).sum::<u64>() % p).collect())
                    .collect();
                let mut found = Vec::new();
                let mut total = 0;
                for lambda in 0..p {
                    // (B - λ) V c = 0, rows indexed by coordinates
                    let sys: Vec<Vec<u64>> = (0..r)
                        .map(|i| {
                            (0..space.len())
                                .map(|c| (image[c][i] + p - lambda * space[c][i] % p) % p)
                                .collect()
                        })
                        .collect();
                    let null = nullspace_mod(&sys, space.len(), p);
                    if null.is_empty() {
                        continue;
                    }
                    total += null.len();
                    let vecs: Vec<Vec<u64>> = null
                        .iter()
                        .map(|c| {
                            (0..r)
                                .map(|i| c.iter().zip(&space).map(|(x, v)| x * v[i] % p).sum::<u64>() % p)
                                .collect()
                        })
                        .collect();
                    found.push(vecs);
                    if total == space.len() {
                        break;
                    }
                }
                if total != space.len() {
                    return Err(CharacterError::SplittingFailed(g.name().to_string()));
                }
                next.extend(found);
            }
            spaces = next;
        }
        if spaces.len() != r {
            return Err(CharacterError::SplittingFailed(g.name().to_string()));
        }

        let inverse_class: Vec<usize> =
            (0..r).map(|k| classes.class_of[g.inv(classes.representative(k))]).collect();
        let power_class: Vec<Vec<usize>> = (0..r)
            .map(|k| {
                let x = classes.representative(k);
                (0..exponent).map(|l| classes.class_of[g.pow(x, l as i64)]).collect()
            })
            .collect();
        let z = pow_mod(primitive_root(p), (p - 1) / exponent as u64, p);
        let inv_e = inv_mod(exponent as u64, p);

        let mut irreducibles = Vec::with_capacity(r);
        let mut degrees = Vec::with_capacity(r);
        for space in spaces {
            let v = &space[0];
            let scale = inv_mod(v[0], p);
            let omega: Vec<u64> = v.iter().map(|x| x * scale % p).collect();
            let s = (0..r).fold(0u64, |acc, k| {
                (acc + omega[k] * omega[inverse_class[k]] % p * inv_mod(sizes[k] as u64 % p, p)) % p
            });
            let d2 = n as u64 % p * inv_mod(s, p) % p;
            let degree = (1..=n as u64)
                .take_while(|d| d * d <= n as u64)
                .find(|d| d * d % p == d2)
                .ok_or_else(|| CharacterError::SplittingFailed(g.name().to_string()))?;
            let chi: Vec<u64> =
                (0..r).map(|k| degree * omega[k] % p * inv_mod(sizes[k] as u64 % p, p) % p).collect();
            let mut values = Vec::with_capacity(r);
            for k in 0..r {
                let mut mults = vec![0i64; exponent];
                for (s_idx, m) in mults.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for l in 0..exponent {
                        let e = (exponent * exponent - s_idx * l % exponent) % exponent;
                        acc = (acc + chi[power_class[k][l]] * pow_mod(z, e as u64, p)) % p;
                    }
                    let val = acc * inv_e % p;
                    if val > degree {
                        return Err(CharacterError::SplittingFailed(g.name().to_string()));
                    }
                    *m = val as i64;
                }
                values.push(Cyclotomic::from_root_multiplicities(exponent, &mults).canonical());
            }
            degrees.push(degree as usize);
            irreducibles.push(ClassFunction { values });
        }

        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&x, &y| {
            degrees[x].cmp(&degrees[y]).then_with(|| {
                for (a, b) in irreducibles[x].values.iter().zip(&irreducibles[y].values) {
                    match a.canonical_cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
        });
        let irreducibles = order.iter().map(|&i| irreducibles[i].clone()).collect();
        let degrees = order.iter().map(|&i| degrees[i]).collect();
        Ok(CharacterTable { group: g.clone(), classes, irreducibles, degrees })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// `⟨χ, ψ⟩ = |G|⁻¹ Σ χ(g) conj(ψ(g))`.
    pub fn inner_product(&self, chi: &ClassFunction, psi: &ClassFunction) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (k, class) in self.classes.classes.iter().enumerate() {
            let term = &chi.values[k] * &psi.values[k].conj();
            acc = &acc + &term.scale(&BigRational::from_integer(BigInt::from(class.len())));
        }
        acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.group.order())))
    }

    /// Coordinates of a virtual character over the irreducibles.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<RepRingElement, CharacterError> {
        let coeffs = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(index, psi)| {
                let ip = self.inner_product(chi, psi);
                ip.to_integer()
                    .and_then(|v| i64::try_from(v).ok())
                    .ok_or(CharacterError::NotVirtualCharacter { index, value: ip.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RepRingElement { coeffs })
    }

    /// The class function of a representation-ring element.
    pub fn compose(&self, x: &RepRingElement) -> ClassFunction {
        let r = self.classes.len();
        let mut values = vec![Cyclotomic::zero(); r];
        for (c, chi) in x.coeffs.iter().zip(&self.irreducibles) {
            if *c == 0 {
                continue;
            }
            let q = BigRational::from_integer(BigInt::from(*c));
            for (v, w) in values.iter_mut().zip(&chi.values) {
                *v = &*v + &w.scale(&q);
            }
        }
        ClassFunction { values }
    }

    /// Character of the regular representation.
    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![Cyclotomic::zero(); self.classes.len()];
        values[0] = Cyclotomic::from_int(self.group.order() as i64);
        ClassFunction { values }
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction { values: vec![Cyclotomic::one(); self.classes.len()] }
    }

    /// Value of a class function on an element.
    pub fn value_at(&self, chi: &ClassFunction, element: usize) -> Cyclotomic {
        chi.values[self.classes.class_of[element]].clone()
    }
}

/// Process-wide cache of character tables keyed by multiplication table.
pub fn character_table(g: &Arc<FiniteGroup>) -> Result<Arc<CharacterTable>, CharacterError> {
    character_table_with_cap(g, DEFAULT_GROUP_CAP)
}

pub fn character_table_with_cap(g: &Arc<FiniteGroup>, cap: usize) -> Result<Arc<CharacterTable>, CharacterError> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if g.order() > cap {
        return Err(CharacterError::CapExceeded { name: g.name().to_string(), order: g.order(), cap });
    }
    if let Some(t) = cache.lock().unwrap().get(g.multiplication_table()) {
        return Ok(t.clone());
    }
    let table = Arc::new(CharacterTable::compute(g, cap)?);
    cache.lock().unwrap().entry(g.multiplication_table().to_vec()).or_insert(table.clone());
    Ok(table)
}

/// Frobenius induction of a class function on the source of an injective
/// homomorphism to its target.
pub fn induce(
    chi: &ClassFunction,
    h: &GroupHomomorphism,
    source: &CharacterTable,
    target: &CharacterTable,
) -> Result<ClassFunction, CharacterError> {
    if !h.is_injective() {
        return Err(CharacterError::NonInjectiveHomomorphism(format!(
            "{} -> {}",
            h.source().name(),
            h.target().name()
        )));
    }
    let sc = source.classes();
    let tc = target.classes();
    let mut sums = vec![Cyclotomic::zero(); tc.len()];
    for (d, class) in sc.classes.iter().enumerate() {
        let c = tc.class_of[h.apply(class[0])];
        let term = chi.values[d].scale(&BigRational::from_integer(BigInt::from(class.len())));
        sums[c] = &sums[c] + &term;
    }
    let k = h.target().order();
    let hh = h.source().order();
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| {
            // |C_K(g)| / |H|
            let centralizer = k / tc.classes[c].len();
            s.scale(&BigRational::new(BigInt::from(centralizer), BigInt::from(hh)))
        })
        .collect();
    Ok(ClassFunction { values })
}

/// Restriction along any homomorphism.
pub fn restrict(chi: &ClassFunction, h: &GroupHomomorphism, source: &CharacterTable, target: &CharacterTable) -> ClassFunction {
    let sc = source.classes();
    let tc = target.classes();
    let values = sc.classes.iter().map(|class| chi.values[tc.class_of[h.apply(class[0])]].clone()).collect();
    ClassFunction { values }
}

/// `|Irr K| × |Irr H|` matrix whose columns decompose the induced irreducibles of `H`.
pub fn induction_matrix(h: &GroupHomomorphism) -> Result<IntegerMatrix, CharacterError> {
    let source = character_table(h.source())?;
    let target = character_table(h.target())?;
    let mut m = IntegerMatrix::zeros(target.len(), source.len());
    for (j, chi) in source.irreducibles().iter().enumerate() {
        let induced = induce(chi, h, &source, &target)?;
        let x = target.decompose(&induced)?;
        for (i, c) in x.coeffs.iter().enumerate() {
            m.set(i, j, BigInt::from(*c));
        }
    }
    Ok(m)
}

/// `|Irr H| × |Irr K|` matrix whose columns decompose the restricted irreducibles of `K`.
pub fn restriction_matrix(h: &GroupHomomorphism) -> Result<IntegerMatrix, CharacterError> {
    let source = character_table(h.source())?;
    let target = character_table(h.target())?;
    let mut m = IntegerMatrix::zeros(source.len(), target.len());
    for (j, chi) in target.irreducibles().iter().enumerate() {
        let restricted = restrict(chi, h, &source, &target);
        let x = source.decompose(&restricted)?;
        for (i, c) in x.coeffs.iter().enumerate() {
            m.set(i, j, BigInt::from(*c));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, symmetric};

    fn values(t: &CharacterTable) -> Vec<Vec<String>> {
        t.irreducibles().iter().map(|c| c.values.iter().map(|v| v.to_string()).collect()).collect()
    }

    #[test]
    fn cyclic_two() {
        let t = character_table(&cyclic(2)).unwrap();
        assert_eq!(t.degrees(), &[1, 1]);
        assert_eq!(values(&t), vec![vec!["1", "1"], vec!["1", "-1"]]);
    }

    #[test]
    fn trivial_group() {
        let t = character_table(&Arc::new(FiniteGroup::trivial("1"))).unwrap();
        assert_eq!(values(&t), vec![vec!["1"]]);
    }

    #[test]
    fn cyclic_four_ordering() {
        let t = character_table(&cyclic(4)).unwrap();
        // classes: 1, g^2, g, g^3
        assert_eq!(
            values(&t),
            vec![
                vec!["1", "1", "1", "1"],
                vec!["1", "1", "-1", "-1"],
                vec!["1", "-1", "E(4)", "-E(4)"],
                vec!["1", "-1", "-E(4)", "E(4)"],
            ]
        );
    }

    #[test]
    fn symmetric_four_degrees() {
        let t = character_table(&symmetric(4)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2, 3, 3]);
    }

    #[test]
    fn induce_sign_of_c2_into_c4() {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let h = GroupHomomorphism::from_generator_images(c2.clone(), c4.clone(), &[2]).unwrap();
        let t2 = character_table(&c2).unwrap();
        let t4 = character_table(&c4).unwrap();
        let sign = &t2.irreducibles()[1];
        let ind = induce(sign, &h, &t2, &t4).unwrap();
        assert_eq!(ind.degree(), Cyclotomic::from_int(2));
        assert_eq!(t4.decompose(&ind).unwrap().coeffs, vec![0, 0, 1, 1]);
        assert_eq!(induction_matrix(&h).unwrap().to_i64_rows(), vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn regular_character_of_trivial_subgroup() {
        let c2 = cyclic(2);
        let one = Arc::new(FiniteGroup::trivial("1"));
        let h = GroupHomomorphism::new(one.clone(), c2.clone(), vec![0]).unwrap();
        let t1 = character_table(&one).unwrap();
        let t2 = character_table(&c2).unwrap();
        let ind = induce(&t1.irreducibles()[0], &h, &t1, &t2).unwrap();
        assert_eq!(ind.values, vec![Cyclotomic::from_int(2), Cyclotomic::zero()]);
        assert_eq!(t2.decompose(&t2.regular_character()).unwrap().coeffs, vec![1, 1]);
    }

    #[test]
    fn non_injective_induction_rejected() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let h = GroupHomomorphism::from_generator_images(c4, c2, &[1]).unwrap();
        assert!(matches!(induction_matrix(&h), Err(CharacterError::NonInjectiveHomomorphism(_))));
        assert_eq!(restriction_matrix(&h).unwrap().shape(), (4, 2));
    }

    #[test]
    fn not_a_virtual_character() {
        let t = character_table(&cyclic(2)).unwrap();
        let half = ClassFunction { values: vec![Cyclotomic::one(), Cyclotomic::zero()] };
        assert!(matches!(t.decompose(&half), Err(CharacterError::NotVirtualCharacter { .. })));
    }

    #[test]
    fn identity_maps_are_identity_matrices() {
        for g in [cyclic(2), dihedral(4), symmetric(4)] {
            let id = GroupHomomorphism::identity(&g);
            let n = character_table(&g).unwrap().len();
            assert_eq!(induction_matrix(&id).unwrap(), IntegerMatrix::identity(n));
            assert_eq!(restriction_matrix(&id).unwrap(), IntegerMatrix::identity(n));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = CharacterTable::compute(&symmetric(4), 10).unwrap_err();
        assert!(matches!(err, CharacterError::CapExceeded { .. }));
    }
}

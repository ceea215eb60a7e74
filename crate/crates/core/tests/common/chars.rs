//! Exact identities every character table and induction matrix must satisfy.

use std::collections::BTreeSet;
use std::sync::Arc;

use bredon_core::character::{character_table, induction_matrix, restriction_matrix};
use bredon_core::cyclotomic::Cyclotomic;
use bredon_core::datasets;
use bredon_core::group::{cyclic, dihedral, symmetric, FiniteGroup, GroupHomomorphism, Subgroup};
use bredon_core::matrix::IntegerMatrix;

/// Every distinct group declared in a bundled dataset, plus a few standard ones.
pub fn groups_up_to(order: usize) -> Vec<Arc<FiniteGroup>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let bundled = datasets::names().flat_map(|n| datasets::load(n).unwrap().groups().to_vec()).map(|d| d.group);
    for g in bundled.chain([symmetric(4), dihedral(4), dihedral(6), cyclic(12)]) {
        if g.order() <= order && seen.insert(g.multiplication_table().to_vec()) {
            out.push(g);
        }
    }
    out
}

pub fn subgroup(g: &Arc<FiniteGroup>, members: &[usize]) -> (Arc<FiniteGroup>, GroupHomomorphism) {
    Subgroup::from_members(g, members.to_vec()).unwrap().as_group("H")
}

/// Homomorphism from `src` (embedded in `g` by `src_incl`) to `dst`
/// (embedded by `dst_incl`) given by `x ↦ f(x)` on elements of `g`.
fn between(src_incl: &GroupHomomorphism, dst_incl: &GroupHomomorphism, f: impl Fn(usize) -> usize) -> GroupHomomorphism {
    let src = src_incl.source().clone();
    let dst = dst_incl.source().clone();
    let mut back = vec![usize::MAX; dst_incl.target().order()];
    for i in 0..dst.order() {
        back[dst_incl.apply(i)] = i;
    }
    let images = (0..src.order()).map(|i| back[f(src_incl.apply(i))]).collect();
    GroupHomomorphism::new(src, dst, images).unwrap()
}

fn double_coset_reps(g: &FiniteGroup, k: &[usize], h: &[usize]) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &a in k {
            for &b in h {
                covered[g.mul(g.mul(a, x), b)] = true;
            }
        }
    }
    reps
}

pub fn orthogonality(g: &Arc<FiniteGroup>) -> Result<(), String> {
    let t = character_table(g).map_err(|e| e.to_string())?;
    let irr = t.irreducibles();
    let n = irr.len();
    if n != t.classes().len() {
        return Err(format!("{}: {n} irreducibles for {} classes", g.name(), t.classes().len()));
    }
    if !irr[0].values.iter().all(|v| *v == Cyclotomic::one()) {
        return Err(format!("{}: first character is not trivial", g.name()));
    }
    let squares: usize = t.degrees().iter().map(|d| d * d).sum();
    if squares != g.order() {
        return Err(format!("{}: sum of squared degrees {squares}", g.name()));
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            if t.inner_product(&irr[i], &irr[j]) != expect {
                return Err(format!("{}: rows {i},{j}", g.name()));
            }
        }
    }
    let classes = &t.classes().classes;
    for a in 0..n {
        for b in 0..n {
            let mut s = Cyclotomic::zero();
            for chi in irr {
                s = &s + &(&chi.values[a] * &chi.values[b].conj());
            }
            let expect = if a == b { g.order() / classes[a].len() } else { 0 };
            if s != Cyclotomic::from_int(expect as i64) {
                return Err(format!("{}: columns {a},{b}", g.name()));
            }
        }
    }
    Ok(())
}

pub fn frobenius(g: &Arc<FiniteGroup>) -> Result<(), String> {
    for members in g.all_subgroups() {
        let (_, incl) = subgroup(g, &members);
        let ind = induction_matrix(&incl).map_err(|e| e.to_string())?;
        let res = restriction_matrix(&incl).map_err(|e| e.to_string())?;
        if ind != res.transpose() {
            return Err(format!("{}: subgroup of order {}", g.name(), members.len()));
        }
    }
    Ok(())
}

pub fn mackey(g: &Arc<FiniteGroup>) -> Result<(), String> {
    let subs = g.all_subgroups();
    for hm in &subs {
        let (_, h_incl) = subgroup(g, hm);
        let ind_h = induction_matrix(&h_incl).map_err(|e| e.to_string())?;
        for km in &subs {
            let (_, k_incl) = subgroup(g, km);
            let lhs = restriction_matrix(&k_incl).map_err(|e| e.to_string())?.mul(&ind_h);
            let mut rhs = IntegerMatrix::zeros(lhs.rows(), lhs.cols());
            for x in double_coset_reps(g, km, hm) {
                // L = K ∩ xHx⁻¹, mapped into H by l ↦ x⁻¹ l x.
                let conj_h: BTreeSet<usize> = hm.iter().map(|&y| g.conjugate(y, g.inv(x))).collect();
                let lm: Vec<usize> = km.iter().copied().filter(|y| conj_h.contains(y)).collect();
                let (_, l_incl) = subgroup(g, &lm);
                let to_k = between(&l_incl, &k_incl, |y| y);
                let to_h = between(&l_incl, &h_incl, |y| g.conjugate(y, x));
                let term = induction_matrix(&to_k).unwrap().mul(&restriction_matrix(&to_h).unwrap());
                rhs = rhs.add(&term);
            }
            if lhs != rhs {
                return Err(format!("{}: |H| = {}, |K| = {}", g.name(), hm.len(), km.len()));
            }
        }
    }
    Ok(())
}

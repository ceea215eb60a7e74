//! Burnside ring maps against explicit finite G-sets: cosets are enumerated,
//! acted on, and split into orbits whose stabilizers name the basis element.

use std::collections::BTreeSet;
use std::sync::Arc;

use bredon_core::group::{cyclic, dihedral, direct_product, FiniteGroup, GroupHomomorphism, Subgroup};
use bredon_core::marks::{burnside_induction_matrix, burnside_restriction_matrix, table_of_marks};

fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let c2 = cyclic(2);
    let (v4, _, _) = direct_product(&c2, &c2, 100).unwrap();
    let (c2c4, _, _) = direct_product(&c2, &cyclic(4), 100).unwrap();
    let (c2c2c2, _, _) = direct_product(&v4, &c2, 100).unwrap();
    vec![Arc::new(FiniteGroup::trivial("1")), c2, cyclic(4), v4, cyclic(6), dihedral(3), cyclic(8), dihedral(4), c2c4, c2c2c2]
}

fn cosets(g: &FiniteGroup, m: &[usize]) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..g.order() {
        let mut c: Vec<usize> = m.iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        out.insert(c);
    }
    out.into_iter().collect()
}

/// Coordinates of the `S`-set `K/M`, with `S` acting through `phi: S → K`.
fn orbit_decomposition(phi: &GroupHomomorphism, m: &[usize]) -> Vec<i64> {
    let (s, k) = (phi.source(), phi.target());
    let points = cosets(k, m);
    let table = table_of_marks(s).unwrap();
    let act = |x: usize, c: &[usize]| {
        let mut d: Vec<usize> = c.iter().map(|&y| k.mul(phi.apply(x), y)).collect();
        d.sort_unstable();
        points.binary_search(&d).unwrap()
    };
    let mut seen = vec![false; points.len()];
    let mut coords = vec![0i64; table.len()];
    for p in 0..points.len() {
        if seen[p] {
            continue;
        }
        for x in 0..s.order() {
            seen[act(x, &points[p])] = true;
        }
        let stab: Vec<usize> = (0..s.order()).filter(|&x| act(x, &points[p]) == p).collect();
        coords[table.class_of(&stab)] += 1;
    }
    coords
}

#[test]
fn marks_count_fixed_cosets() {
    for g in small_groups() {
        let t = table_of_marks(&g).unwrap();
        for i in 0..t.len() {
            let pts = cosets(&g, t.representative(i));
            for j in 0..t.len() {
                let fixed = pts
                    .iter()
                    .filter(|c| {
                        t.representative(j).iter().all(|&h| {
                            let mut d: Vec<usize> = c.iter().map(|&y| g.mul(h, y)).collect();
                            d.sort_unstable();
                            &d == *c
                        })
                    })
                    .count();
                assert_eq!(t.marks()[i][j], fixed as i64);
            }
        }
    }
}

#[test]
fn class_counts() {
    let counts: Vec<usize> = small_groups().iter().map(|g| table_of_marks(g).unwrap().len()).collect();
    // 1, C2, C4, V4, C6, D3, C8, D4, C2xC4, C2^3
    assert_eq!(counts, vec![1, 2, 3, 5, 4, 4, 4, 8, 8, 16]);
}

fn maps_of(g: &Arc<FiniteGroup>) -> Vec<GroupHomomorphism> {
    let mut out = Vec::new();
    for members in g.all_subgroups() {
        let (_, incl) = Subgroup::from_members(g, members.clone()).unwrap().as_group("H");
        out.push(incl);
        let normal = (0..g.order()).all(|x| members.iter().all(|&a| members.contains(&g.conjugate(a, x))));
        if normal {
            let (_, q) = g.quotient(&members, "Q").unwrap();
            out.push(q);
        }
    }
    out
}

#[test]
fn restriction_matches_orbit_decomposition() {
    for g in small_groups() {
        for phi in maps_of(&g) {
            let res = burnside_restriction_matrix(&phi).unwrap();
            let tk = table_of_marks(phi.target()).unwrap();
            for j in 0..tk.len() {
                let expect = orbit_decomposition(&phi, tk.representative(j));
                let got: Vec<i64> = (0..res.rows()).map(|i| i64::try_from(res.get(i, j).clone()).unwrap()).collect();
                assert_eq!(got, expect, "{} -> {} column {j}", phi.source().name(), phi.target().name());
            }
        }
    }
}

#[test]
fn induction_matches_balanced_product() {
    for g in small_groups() {
        for phi in maps_of(&g).into_iter().filter(GroupHomomorphism::is_injective) {
            let ind = burnside_induction_matrix(&phi).unwrap();
            let th = table_of_marks(phi.source()).unwrap();
            let tk = table_of_marks(phi.target()).unwrap();
            for j in 0..th.len() {
                // K ×_H H/L ≅ K/φ(L): enumerate its orbits as a K-set.
                let image: Vec<usize> = th.representative(j).iter().map(|&x| phi.apply(x)).collect();
                let expect = orbit_decomposition(&GroupHomomorphism::identity(phi.target()), &image);
                let got: Vec<i64> = (0..tk.len()).map(|i| i64::try_from(ind.get(i, j).clone()).unwrap()).collect();
                assert_eq!(got, expect);
            }
        }
    }
}

#[test]
fn non_injective_induction_is_rejected() {
    let c4 = cyclic(4);
    let (_, q) = c4.quotient(&[2], "C2").unwrap();
    assert!(burnside_induction_matrix(&q).is_err());
}

use std::sync::Arc;

use bredon_core::coefficients::{CentralExtensionData, CoefficientSystem, Stabilizer};
use bredon_core::group::{cyclic, dihedral, symmetric, FiniteGroup, GroupHomomorphism, Subgroup};
use bredon_core::matrix::IntegerMatrix;

const SYSTEMS: [CoefficientSystem; 3] =
    [CoefficientSystem::ConstantZ, CoefficientSystem::ComplexRepRing, CoefficientSystem::BurnsideRing];

/// Pairs `L → H → G` of subgroup inclusions, the middle twisted by conjugation.
fn chains(g: &Arc<FiniteGroup>) -> Vec<(GroupHomomorphism, GroupHomomorphism)> {
    let subs = g.all_subgroups();
    let mut out = Vec::new();
    for (i, hm) in subs.iter().enumerate() {
        let (h, h_incl) = Subgroup::from_members(g, hm.clone()).unwrap().as_group("H");
        let twist = GroupHomomorphism::conjugation(g, (i * 7) % g.order());
        let h_to_g = h_incl.then(&twist);
        for lm in h.all_subgroups().into_iter().step_by(2) {
            let (_, l_incl) = Subgroup::from_members(&h, lm).unwrap().as_group("L");
            out.push((l_incl, h_to_g.clone()));
        }
    }
    out
}

#[test]
fn composites_map_to_products() {
    for g in [symmetric(4), dihedral(4), cyclic(6), dihedral(6)] {
        for (f, h) in chains(&g) {
            let fh = f.then(&h);
            for sys in SYSTEMS {
                let co = sys.covariant(&fh).unwrap();
                assert_eq!(co, sys.covariant(&h).unwrap().mul(&sys.covariant(&f).unwrap()), "{sys} on {}", g.name());
                let contra = sys.contravariant(&fh).unwrap();
                assert_eq!(contra, sys.contravariant(&f).unwrap().mul(&sys.contravariant(&h).unwrap()), "{sys} on {}", g.name());
            }
        }
    }
}

#[test]
fn identities_map_to_identities() {
    for g in [symmetric(4), dihedral(4), cyclic(6)] {
        let id = GroupHomomorphism::identity(&g);
        for sys in SYSTEMS {
            let s = Stabilizer::plain(g.clone());
            let n = sys.rank(&s).unwrap();
            assert_eq!(sys.covariant(&id).unwrap(), IntegerMatrix::identity(n));
            assert_eq!(sys.contravariant(&id).unwrap(), IntegerMatrix::identity(n));
        }
    }
}

#[test]
fn restriction_along_quotients_composes() {
    let d6 = dihedral(6);
    let z = (1..d6.order()).find(|&a| (0..d6.order()).all(|x| d6.conjugate(a, x) == a)).unwrap();
    let (_, p) = d6.quotient(&[z], "D3").unwrap();
    for lm in d6.all_subgroups() {
        let (_, incl) = Subgroup::from_members(&d6, lm).unwrap().as_group("L");
        let comp = incl.then(&p);
        for sys in SYSTEMS {
            let expect = sys.contravariant(&incl).unwrap().mul(&sys.contravariant(&p).unwrap());
            assert_eq!(sys.contravariant(&comp).unwrap(), expect, "{sys}");
        }
    }
}

#[test]
fn k_central_maps_compose() {
    // C4 ↪ C8 ↪ C16 with t the central involution throughout.
    let (c4, c8, c16) = (cyclic(4), cyclic(8), cyclic(16));
    let ext = |g: &Arc<FiniteGroup>| {
        let t = g.pow(g.generators()[0], (g.order() / 2) as i64);
        Stabilizer::extended(CentralExtensionData::new(g.clone(), t, 2).unwrap()).unwrap()
    };
    let (s4, s8, s16) = (ext(&c4), ext(&c8), ext(&c16));
    let f = GroupHomomorphism::from_generator_images(c4.clone(), c8.clone(), &[c8.pow(c8.generators()[0], 2)]).unwrap();
    let h = GroupHomomorphism::from_generator_images(c8.clone(), c16.clone(), &[c16.pow(c16.generators()[0], 6)]).unwrap();
    let fh = f.then(&h);
    for k in 0..2 {
        let sys = CoefficientSystem::KCentralRepRing { k };
        let co = sys.map_covariant(&s4, &s16, &fh).unwrap();
        let prod = sys.map_covariant(&s8, &s16, &h).unwrap().mul(&sys.map_covariant(&s4, &s8, &f).unwrap());
        assert_eq!(co, prod);
        let contra = sys.map_contravariant(&s4, &s16, &fh).unwrap();
        let prod = sys.map_contravariant(&s4, &s8, &f).unwrap().mul(&sys.map_contravariant(&s8, &s16, &h).unwrap());
        assert_eq!(contra, prod);
        assert_eq!(sys.rank(&s8).unwrap(), 4);
    }
}

#[test]
fn documented_ranks() {
    let rep = CoefficientSystem::ComplexRepRing;
    for (n, r) in [(6, 6), (4, 4), (2, 2)] {
        assert_eq!(rep.rank(&Stabilizer::plain(cyclic(n))).unwrap(), r);
        assert_eq!(CoefficientSystem::ConstantZ.rank(&Stabilizer::plain(cyclic(n))).unwrap(), 1);
    }
    assert_eq!(CoefficientSystem::BurnsideRing.rank(&Stabilizer::plain(cyclic(2))).unwrap(), 2);
}

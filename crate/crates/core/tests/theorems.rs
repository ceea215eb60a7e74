use num_bigint::BigInt;

use bredon_core::ahss::{e2_page, k_theory_ranks_if_collapse, CollapseStatus};
use bredon_core::coefficients::CoefficientSystem;
use bredon_core::complex::product_complex;
use bredon_core::datasets::load;
use bredon_core::gcw::parse_complex;
use bredon_core::group::DEFAULT_GROUP_CAP;
use bredon_core::homology::{assemble_cochain, homology, AbelianGroup};
use bredon_core::random::random_complex;
use bredon_core::theorems::{kunneth_check, uct_check, untwist_consistency, TheoremError};

#[test]
fn uct_on_bundled_complexes() {
    for name in ["sl2z", "sl3z", "point", "circle_free", "torsion_demo"] {
        let x = load(name).unwrap();
        for sys in [CoefficientSystem::ConstantZ, CoefficientSystem::ComplexRepRing] {
            let r = uct_check(&x, sys).unwrap();
            assert!(r.overall(), "{name} {sys}: {:?}", r.degrees);
        }
    }
    let r = uct_check(&load("sl2z").unwrap(), CoefficientSystem::ComplexRepRing).unwrap();
    assert_eq!(r.degrees[0].cohomology, AbelianGroup::free(8));
    assert!(r.degrees.iter().all(|d| d.cohomology.torsion.is_empty()));
}

#[test]
fn uct_on_random_complexes() {
    for seed in 0..100 {
        let x = random_complex(seed, 3);
        for sys in [CoefficientSystem::ConstantZ, CoefficientSystem::ComplexRepRing] {
            let r = uct_check(&x, sys).unwrap();
            assert!(r.overall(), "seed {seed} {sys}");
        }
    }
}

#[test]
fn burnside_fails_condition_d() {
    let err = uct_check(&load("sl2z").unwrap(), CoefficientSystem::BurnsideRing).unwrap_err();
    assert!(matches!(err, TheoremError::ConditionDViolated { .. }));
}

#[test]
fn kunneth_on_bundled_pairs() {
    let names = ["point", "sl2z", "torsion_demo"];
    for a in names {
        for b in names {
            let (x, y) = (load(a).unwrap(), load(b).unwrap());
            for sys in [CoefficientSystem::ConstantZ, CoefficientSystem::ComplexRepRing] {
                let r = kunneth_check(&x, &y, sys, sys, DEFAULT_GROUP_CAP).unwrap();
                assert!(r.passed(), "{a} x {b} {sys}: {:?}", r.degrees);
            }
        }
    }
    let sl2z = load("sl2z").unwrap();
    let r = kunneth_check(&sl2z, &sl2z, CoefficientSystem::ComplexRepRing, CoefficientSystem::ComplexRepRing, DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(r.degrees[0].computed, AbelianGroup::free(64));
}

#[test]
fn tor_term_appears_in_degree_one() {
    let t = load("torsion_demo").unwrap();
    let r = kunneth_check(&t, &t, CoefficientSystem::ConstantZ, CoefficientSystem::ConstantZ, DEFAULT_GROUP_CAP).unwrap();
    let z2 = AbelianGroup::new(0, &[BigInt::from(2)]);
    assert_eq!(r.degrees[1].predicted, z2);
    assert_eq!(r.degrees[1].computed, z2);
    assert!(r.passed());
}

#[test]
fn kunneth_on_random_pairs() {
    for seed in 0..15 {
        let x = random_complex(seed, 1);
        let y = random_complex(seed + 1000, 1);
        let r = kunneth_check(&x, &y, CoefficientSystem::ComplexRepRing, CoefficientSystem::ConstantZ, DEFAULT_GROUP_CAP).unwrap();
        assert!(r.passed(), "seed {seed}: {:?}", r.degrees);
    }
}

#[test]
fn degenerate_extensions_reproduce_the_untwisted_ring() {
    let x = load("sl2z_n1").unwrap();
    let plain = load("sl2z").unwrap();
    for k in [0, 1, 5] {
        let r = untwist_consistency(&x, k).unwrap();
        assert_eq!(r.untwisted_identical, Some(true));
        assert!(r.passed());
        let kc = assemble_cochain(&x, CoefficientSystem::KCentralRepRing { k }).unwrap();
        assert_eq!(kc, assemble_cochain(&plain, CoefficientSystem::ComplexRepRing).unwrap());
    }
}

#[test]
fn twisted_sl2z() {
    let x = load("sl2z_twisted").unwrap();
    let r = untwist_consistency(&x, 1).unwrap();
    assert!(r.d_squared && r.uct && r.passed());
    assert_eq!(r.inflation_match, None);
    let c = assemble_cochain(&x, CoefficientSystem::KCentralRepRing { k: 1 }).unwrap();
    // Odd characters of C12, C8 and C4.
    assert_eq!(c.ranks(), vec![10, 2]);
    let r0 = untwist_consistency(&x, 0).unwrap();
    assert_eq!(r0.inflation_match, Some(true));
    let plain = load("sl2z").unwrap();
    let h = homology(&assemble_cochain(&plain, CoefficientSystem::ComplexRepRing).unwrap(), 0..=2).unwrap();
    assert_eq!(r0.cohomology, h);
}

#[test]
fn untwisting_needs_extensions() {
    assert!(untwist_consistency(&load("sl2z").unwrap(), 1).is_err());
}

#[test]
fn e2_pages() {
    let page = e2_page(&load("sl2z").unwrap()).unwrap();
    assert_eq!(page.nonzero_columns(), vec![0]);
    assert_eq!(page.collapse_status, CollapseStatus::CollapsesForDimensionReasons);
    for p in 0..3 {
        for q in -4..4 {
            assert_eq!(page.entry(p, q), page.entry(p, q + 2));
            if q % 2 != 0 {
                assert!(page.entry(p, q).is_zero());
            }
        }
    }
    let k = k_theory_ranks_if_collapse(&page).unwrap();
    assert_eq!((k.even, k.odd), (8, 0));

    let c2_point = parse_complex("name p\ngroup C2 perm\ngen 2 1\ncell p dim=0 stab=C2\n").unwrap();
    let page = e2_page(&c2_point).unwrap();
    assert_eq!(page.entry(0, 0), AbelianGroup::free(2));
    let k = k_theory_ranks_if_collapse(&page).unwrap();
    assert_eq!((k.even, k.odd), (2, 0));
}

#[test]
fn three_dimensional_pages() {
    let s1 = load("circle_free").unwrap();
    let (t2, _) = product_complex(&s1, &s1, DEFAULT_GROUP_CAP).unwrap();
    let (t3, _) = product_complex(&t2, &s1, DEFAULT_GROUP_CAP).unwrap();
    let page = e2_page(&t3).unwrap();
    assert_eq!(page.nonzero_columns(), vec![0, 1, 2, 3]);
    assert_eq!(page.collapse_status, CollapseStatus::Unknown);
    assert!(page.note().is_some());
    assert!(k_theory_ranks_if_collapse(&page).is_none());

    // Bundled SL3(Z): cohomology is concentrated in p = 0.
    let page = e2_page(&load("sl3z").unwrap()).unwrap();
    assert_eq!(page.dimension, Some(3));
    assert_eq!(page.nonzero_columns(), vec![0]);
    assert_eq!(page.entry(0, 0), AbelianGroup::free(8));
}

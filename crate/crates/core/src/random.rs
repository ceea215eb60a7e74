//! Seeded random equivariant complexes for property tests.
//!
//! Stabilizers are cyclic of order 1, 2, 4 or 6, incidence homomorphisms are
//! injective and coefficients are ±1. Candidates whose boundary does not
//! square to zero are discarded.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt::Write as _;

use crate::coefficients::CoefficientSystem;
use crate::complex::{validate, EquivariantCellComplex};
use crate::gcw::parse_complex;

const ORDERS: [usize; 4] = [1, 2, 4, 6];

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cyclic_perm(n: usize) -> String {
    (0..n).map(|i| ((i + 1) % n + 1).to_string()).collect::<Vec<_>>().join(" ")
}

/// Source text of one candidate complex of dimension at most `max_dim`.
pub fn random_source(rng: &mut StdRng, max_dim: usize) -> String {
    let mut s = String::from("name random\n");
    for n in ORDERS {
        writeln!(s, "group C{n} perm").unwrap();
        if n > 1 {
            writeln!(s, "gen {}", cyclic_perm(n)).unwrap();
        }
    }
    let dim = rng.gen_range(0..=max_dim);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for d in 0..=dim {
        let count = rng.gen_range(1..=3);
        let orders: Vec<usize> = (0..count).map(|_| ORDERS[rng.gen_range(0..ORDERS.len())]).collect();
        for (i, o) in orders.iter().enumerate() {
            writeln!(s, "cell c{d}_{i} dim={d} stab=C{o}").unwrap();
        }
        cells.push(orders);
    }
    for d in 1..=dim {
        for (i, &a) in cells[d].iter().enumerate() {
            for (j, &b) in cells[d - 1].iter().enumerate() {
                if b % a != 0 || rng.gen_bool(0.4) {
                    continue;
                }
                let coeff = if rng.gen_bool(0.5) { 1 } else { -1 };
                writeln!(s, "face c{d}_{i} c{}_{j} coeff={coeff}", d - 1).unwrap();
                if a > 1 {
                    let units: Vec<usize> = (1..a).filter(|&u| gcd(u, a) == 1).collect();
                    let u = units[rng.gen_range(0..units.len())];
                    writeln!(s, "hom 0 g0^{}", u * (b / a)).unwrap();
                }
            }
        }
    }
    s
}

/// The first candidate from `seed` that parses and passes the `d∘d` checks
/// for the constant, representation ring and Burnside systems.
pub fn random_complex(seed: u64, max_dim: usize) -> EquivariantCellComplex {
    let mut rng = StdRng::seed_from_u64(seed);
    let systems = [CoefficientSystem::ConstantZ, CoefficientSystem::ComplexRepRing, CoefficientSystem::BurnsideRing];
    loop {
        let src = random_source(&mut rng, max_dim);
        if let Ok(x) = parse_complex(&src) {
            if validate(&x, &systems).passed() {
                return x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..20 {
            let a = random_complex(seed, 2);
            let b = random_complex(seed, 2);
            assert_eq!(crate::gcw::serialize_complex(&a), crate::gcw::serialize_complex(&b));
            assert!(a.dimension().unwrap_or(0) <= 2);
        }
    }
}

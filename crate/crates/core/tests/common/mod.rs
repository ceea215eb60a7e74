//! Oracles that share no code with the library's Smith normal form: rank by
//! fraction-free elimination and torsion by determinantal divisors.

#![allow(dead_code)]

pub mod chars;
pub mod table;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use bredon_core::complex::EquivariantCellComplex;
use bredon_core::gcw::parse_complex;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                a[r][k] = (&a[c][c] * &a[r][k] - &a[r][c] * &a[c][k]) / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors `> 1` of an integer matrix, from gcds of its minors.
pub fn torsion_by_minors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let r = rational_rank(rows);
    let cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r {
        let mut g = BigInt::zero();
        for rs in subsets(rows.len(), k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        let f = &g / &prev;
        if f.abs() > BigInt::one() {
            out.push(f.abs());
        }
        prev = g;
    }
    out
}

/// Cellular boundary matrices of the orbit space, `d[n]: C_{n+1} → C_n`.
pub fn orbit_space_boundaries(x: &EquivariantCellComplex) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
    let counts = x.orbit_counts();
    let pos: Vec<usize> = (0..x.cells().len())
        .map(|i| x.cells_in_dim(x.cells()[i].dim).iter().position(|&j| j == i).unwrap())
        .collect();
    let mut d: Vec<Vec<Vec<i64>>> =
        (0..counts.len().saturating_sub(1)).map(|n| vec![vec![0; counts[n + 1]]; counts[n]]).collect();
    for inc in x.incidences() {
        let n = x.cells()[inc.to].dim;
        d[n][pos[inc.to]][pos[inc.from]] += inc.coeff;
    }
    (counts, d)
}

/// `(free rank, torsion)` of the cellular homology of the orbit space.
pub fn orbit_space_homology(x: &EquivariantCellComplex) -> Vec<(usize, Vec<BigInt>)> {
    let (counts, d) = orbit_space_boundaries(x);
    (0..counts.len())
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { rational_rank(&d[n - 1]) };
            let (in_rank, torsion) = match d.get(n) {
                Some(m) => (rational_rank(m), torsion_by_minors(m)),
                None => (0, Vec::new()),
            };
            (counts[n] - out_rank - in_rank, torsion)
        })
        .collect()
}

/// The same cell structure with every stabilizer trivial: a free action.
pub fn freed(x: &EquivariantCellComplex) -> EquivariantCellComplex {
    let mut s = format!("name {}_free\ngroup 1 perm\n", x.name());
    for c in x.cells() {
        writeln!(s, "cell {} dim={} stab=1", c.id, c.dim).unwrap();
    }
    for inc in x.incidences() {
        writeln!(s, "face {} {} coeff={}", x.cells()[inc.from].id, x.cells()[inc.to].id, inc.coeff).unwrap();
    }
    parse_complex(&s).unwrap()
}

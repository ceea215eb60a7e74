//! Stabilizer generators of the SL3(Z) cells and the expected closures.

use bredon_core::group::{FiniteGroup, DEFAULT_GROUP_CAP};

pub const G: [[i64; 9]; 14] = [
    [1, 0, 0, 0, 1, 0, 0, 0, 1],
    [-1, 0, 0, 0, 0, -1, 0, -1, 0],
    [0, 0, 1, 0, 1, 0, -1, 0, 0],
    [-1, 0, 0, 0, 1, 1, 0, 0, -1],
    [-1, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, -1, 0, -1, 0, 0, 0, 0, -1],
    [0, 0, -1, -1, 0, 0, 1, 1, 1],
    [-1, 0, 0, 0, 1, 0, 0, -1, -1],
    [0, 0, -1, -1, 0, -1, 0, 1, 1],
    [0, 0, -1, 0, -1, 0, -1, 0, 0],
    [-1, 0, 0, 0, -1, 0, 1, 1, 1],
    [0, -1, -1, 0, -1, 0, -1, 1, 0],
    [0, 1, 1, 1, 0, 1, 0, 0, -1],
    [-1, 0, 0, -1, 0, -1, 1, -1, 0],
];

/// Cell, generator indices (1-based), expected order, expected label.
pub const ROWS: [(&str, &[usize], usize, &str); 19] = [
    ("v1", &[2, 3], 24, "S4"),
    ("v2", &[4, 5], 12, "D6"),
    ("v3", &[6, 7], 24, "S4"),
    ("v4", &[6, 8], 8, "D4"),
    ("v5", &[5, 9], 24, "S4"),
    ("e1", &[2, 5], 4, "C2xC2"),
    ("e2", &[6, 10], 6, "D3"),
    ("e3", &[6, 5], 6, "D3"),
    ("e4", &[2], 2, "C2"),
    ("e5", &[5], 2, "C2"),
    ("e6", &[6, 11], 4, "C2xC2"),
    ("e7", &[6, 12], 8, "D4"),
    ("e8", &[5, 13], 8, "D4"),
    ("t1", &[2], 2, "C2"),
    ("t2", &[1], 1, "1"),
    ("t3", &[12, 14], 4, "C2xC2"),
    ("t4", &[5], 2, "C2"),
    ("t5", &[6], 2, "C2"),
    ("T1", &[1], 1, "1"),
];

pub fn close(gens: &[usize]) -> FiniteGroup {
    let mats: Vec<Vec<i64>> = gens.iter().map(|&k| G[k - 1].to_vec()).collect();
    FiniteGroup::from_matrices("S", 3, &mats, DEFAULT_GROUP_CAP).unwrap()
}

//! Complexes shipped with the crate.

use crate::complex::{ComplexError, EquivariantCellComplex};
use crate::gcw::parse_complex;

const BUNDLED: &[(&str, &str)] = &[
    ("point", include_str!("../data/point.gcw")),
    ("sl2z", include_str!("../data/sl2z.gcw")),
    ("sl2z_n1", include_str!("../data/sl2z_n1.gcw")),
    ("sl2z_twisted", include_str!("../data/sl2z_twisted.gcw")),
    ("sl3z", include_str!("../data/sl3z.gcw")),
    ("circle_free", include_str!("../data/circle_free.gcw")),
    ("torsion_demo", include_str!("../data/torsion_demo.gcw")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Source text of a bundled complex, by name with or without `.gcw`.
pub fn source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".gcw").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parse a bundled complex. Panics on an unknown name.
pub fn load(name: &str) -> Result<EquivariantCellComplex, ComplexError> {
    parse_complex(source(name).unwrap_or_else(|| panic!("no bundled complex `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_parse() {
        for n in names() {
            load(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert!(source("sl2z.gcw").is_some());
        assert!(source("nope").is_none());
    }
}

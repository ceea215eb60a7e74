//! Proper G-CW complexes described by their cell orbits.
//!
//! Each orbit of cells carries its stabilizer; each incidence carries the
//! signed multiplicity of a face together with the homomorphism of
//! stabilizers it induces. The ambient group never appears.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::coefficients::{CentralExtensionData, CoefficientError, CoefficientSystem, Stabilizer};
use crate::group::{direct_product, product_homomorphism, FiniteGroup, GroupError, GroupHomomorphism};
use crate::homology::{assemble_chain, HomologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("line {line}: syntax error: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("line {line}: unknown group `{name}`")]
    UnknownGroup { line: usize, name: String },
    #[error("line {line}: unknown cell `{id}`")]
    UnknownCell { line: usize, id: String },
    #[error("line {line}: duplicate {what} `{name}`")]
    Duplicate { line: usize, what: &'static str, name: String },
    #[error("line {line}: bad homomorphism for face {from} -> {to}: {reason}")]
    BadHomomorphism { line: usize, from: String, to: String, reason: String, pair: Option<(usize, usize)> },
    #[error("line {line}: face {from} -> {to} joins dimensions {from_dim} and {to_dim}")]
    DimensionMismatch { line: usize, from: String, to: String, from_dim: usize, to_dim: usize },
    #[error("line {line}: group {name}: {source}")]
    Group { line: usize, name: String, source: GroupError },
    #[error("line {line}: {source}")]
    Extension { line: usize, source: CoefficientError },
    #[error("{0}")]
    Unsupported(String),
}

impl ComplexError {
    /// Whether the error comes from a size cap rather than malformed data.
    pub fn is_cap(&self) -> bool {
        matches!(self, ComplexError::Group { source: GroupError::ClosureExceedsCap { .. }, .. })
    }
}

#[derive(Debug, Clone)]
pub struct GroupDecl {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub extension: Option<CentralExtensionData>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellOrbit {
    pub id: String,
    pub dim: usize,
    /// Name of the stabilizer group.
    pub stabilizer: String,
    pub orientation: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Incidence {
    /// Cell indices.
    pub from: usize,
    pub to: usize,
    pub coeff: i64,
    pub hom: GroupHomomorphism,
}

#[derive(Debug, Clone)]
pub struct EquivariantCellComplex {
    name: String,
    groups: Vec<GroupDecl>,
    cells: Vec<CellOrbit>,
    incidences: Vec<Incidence>,
    stabilizers: Vec<Stabilizer>,
}

/// Raw incidence before validation: ids, coefficient, generator images and
/// the source line for error reporting.
#[derive(Debug, Clone)]
pub struct IncidenceSpec {
    pub from: String,
    pub to: String,
    pub coeff: i64,
    pub images: Vec<usize>,
    pub line: usize,
}

impl EquivariantCellComplex {
    /// Validate and assemble. Cells are ordered by dimension, keeping the
    /// given order within a dimension. The number paired with each cell is
    /// its source line for error messages (0 when unknown).
    pub fn new(
        name: impl Into<String>,
        groups: Vec<GroupDecl>,
        cells: Vec<(CellOrbit, usize)>,
        incidences: Vec<IncidenceSpec>,
    ) -> Result<Self, ComplexError> {
        let mut group_index: HashMap<&str, usize> = HashMap::new();
        for (i, g) in groups.iter().enumerate() {
            if group_index.insert(g.name.as_str(), i).is_some() {
                return Err(ComplexError::Duplicate { line: 0, what: "group", name: g.name.clone() });
            }
        }
        let mut cells = cells;
        cells.sort_by_key(|(c, _)| c.dim);
        let mut cell_index: HashMap<String, usize> = HashMap::new();
        let mut stabilizers = Vec::with_capacity(cells.len());
        for (i, (c, line)) in cells.iter().enumerate() {
            if cell_index.insert(c.id.clone(), i).is_some() {
                return Err(ComplexError::Duplicate { line: *line, what: "cell", name: c.id.clone() });
            }
            let g = group_index
                .get(c.stabilizer.as_str())
                .map(|&k| &groups[k])
                .ok_or_else(|| ComplexError::UnknownGroup { line: *line, name: c.stabilizer.clone() })?;
            stabilizers.push(match &g.extension {
                Some(ext) => Stabilizer::extended(ext.clone()).map_err(|source| ComplexError::Extension { line: *line, source })?,
                None => Stabilizer::plain(g.group.clone()),
            });
        }
        let cells: Vec<CellOrbit> = cells.into_iter().map(|(c, _)| c).collect();
        let mut built = Vec::with_capacity(incidences.len());
        for inc in incidences {
            let line = inc.line;
            let find = |id: &str| cell_index.get(id).copied().ok_or_else(|| ComplexError::UnknownCell { line, id: id.to_string() });
            let (from, to) = (find(&inc.from)?, find(&inc.to)?);
            let (cf, ct) = (&cells[from], &cells[to]);
            if cf.dim != ct.dim + 1 {
                return Err(ComplexError::DimensionMismatch {
                    line,
                    from: inc.from,
                    to: inc.to,
                    from_dim: cf.dim,
                    to_dim: ct.dim,
                });
            }
            let bad = |reason: String, pair| ComplexError::BadHomomorphism {
                line,
                from: inc.from.clone(),
                to: inc.to.clone(),
                reason,
                pair,
            };
            let source = stabilizers[from].declared().clone();
            let target = stabilizers[to].declared().clone();
            let hom = match GroupHomomorphism::from_generator_images(source, target, &inc.images) {
                Ok(h) => h,
                Err(GroupError::NotAHomomorphism(a, b)) => {
                    return Err(bad(format!("multiplicativity fails at ({a}, {b})"), Some((a, b))))
                }
                Err(e) => return Err(bad(e.to_string(), None)),
            };
            if !hom.is_injective() {
                return Err(bad("not injective".into(), None));
            }
            built.push(Incidence { from, to, coeff: inc.coeff, hom });
        }
        Ok(EquivariantCellComplex { name: name.into(), groups, cells, incidences: built, stabilizers })
    }

    pub fn empty(name: impl Into<String>) -> Self {
        EquivariantCellComplex { name: name.into(), groups: Vec::new(), cells: Vec::new(), incidences: Vec::new(), stabilizers: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn groups(&self) -> &[GroupDecl] {
        &self.groups
    }

    pub fn group(&self, name: &str) -> Option<&GroupDecl> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn cells(&self) -> &[CellOrbit] {
        &self.cells
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.id == id)
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn stabilizer(&self, cell: usize) -> &Stabilizer {
        &self.stabilizers[cell]
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// Cell indices of dimension `d`, in order.
    pub fn cells_in_dim(&self, d: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim == d).collect()
    }

    pub fn orbit_counts(&self) -> Vec<usize> {
        match self.dimension() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|d| self.cells_in_dim(d).len()).collect(),
        }
    }

    /// Whether every stabilizer carries an extension block.
    pub fn fully_extended(&self) -> bool {
        self.stabilizers.iter().all(|s| s.extension().is_some())
    }

    /// Same complex with cells of each dimension reordered: `order[d]` lists
    /// the new order of `cells_in_dim(d)` as positions within that list.
    pub fn with_cell_order(&self, order: &[Vec<usize>]) -> Self {
        let mut perm = Vec::with_capacity(self.cells.len());
        for (d, o) in order.iter().enumerate() {
            let cells = self.cells_in_dim(d);
            perm.extend(o.iter().map(|&k| cells[k]));
        }
        assert_eq!(perm.len(), self.cells.len(), "order must cover every cell");
        let mut new_index = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let incidences = self
            .incidences
            .iter()
            .map(|i| Incidence { from: new_index[i.from], to: new_index[i.to], coeff: i.coeff, hom: i.hom.clone() })
            .collect();
        EquivariantCellComplex {
            name: self.name.clone(),
            groups: self.groups.clone(),
            cells: perm.iter().map(|&i| self.cells[i].clone()).collect(),
            incidences,
            stabilizers: perm.iter().map(|&i| self.stabilizers[i].clone()).collect(),
        }
    }

    /// Same complex with one incidence coefficient replaced.
    pub fn with_coefficient(&self, incidence: usize, coeff: i64) -> Self {
        let mut out = self.clone();
        out.incidences[incidence].coeff = coeff;
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Check group axioms, incidence homomorphisms and `d∘d = 0` under each of
/// the given coefficient systems.
pub fn validate(x: &EquivariantCellComplex, systems: &[CoefficientSystem]) -> ValidationReport {
    let mut checks = Vec::new();
    let bad_groups: Vec<String> = x
        .groups
        .iter()
        .filter_map(|g| g.group.check_axioms().err().map(|e| format!("{}: {e}", g.name)))
        .collect();
    checks.push(Check { name: "group axioms".into(), passed: bad_groups.is_empty(), detail: bad_groups.join("; ") });
    let bad_homs: Vec<String> = x
        .incidences
        .iter()
        .filter_map(|i| {
            let pair = i.hom.first_violation();
            (pair.is_some() || !i.hom.is_injective()).then(|| format!("{} -> {}: {:?}", x.cells[i.from].id, x.cells[i.to].id, pair))
        })
        .collect();
    checks.push(Check { name: "incidence homomorphisms".into(), passed: bad_homs.is_empty(), detail: bad_homs.join("; ") });
    for sys in systems {
        let name = format!("d∘d = 0 ({sys})");
        let check = match assemble_chain(x, *sys) {
            Ok(c) => match c.check() {
                Ok(()) => Check { name, passed: true, detail: String::new() },
                Err(e) => Check { name, passed: false, detail: e.to_string() },
            },
            Err(HomologyError::Coefficient(e)) => Check { name, passed: false, detail: format!("not applicable: {e}") },
            Err(e) => Check { name, passed: false, detail: e.to_string() },
        };
        checks.push(check);
    }
    ValidationReport { checks }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub orbit_counts: Vec<usize>,
    pub ranks: Vec<usize>,
    pub alternating_sum: i64,
}

pub fn euler_data(x: &EquivariantCellComplex, sys: CoefficientSystem) -> Result<EulerData, CoefficientError> {
    let orbit_counts = x.orbit_counts();
    let mut ranks = vec![0; orbit_counts.len()];
    for (i, c) in x.cells.iter().enumerate() {
        ranks[c.dim] += sys.rank(x.stabilizer(i))?;
    }
    let alternating_sum = ranks.iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
    Ok(EulerData { orbit_counts, ranks, alternating_sum })
}

/// Where an incidence of a product complex comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceOrigin {
    /// `(face of X) × cell of Y`
    Left { incidence: usize, cell: usize },
    /// `cell of X × (face of Y)`, carrying the sign `(-1)^{dim}`.
    Right { cell: usize, incidence: usize },
}

#[derive(Debug, Clone)]
pub struct ProductInfo {
    /// `(cell of X, cell of Y)` per product cell.
    pub cell_factors: Vec<(usize, usize)>,
    pub incidence_origin: Vec<IncidenceOrigin>,
}

/// `X × Y` with the diagonal action of the product group: cells are pairs,
/// stabilizers direct products, incidences by the Leibniz rule.
pub fn product_complex(
    x: &EquivariantCellComplex,
    y: &EquivariantCellComplex,
    cap: usize,
) -> Result<(EquivariantCellComplex, ProductInfo), ComplexError> {
    if x.groups.iter().chain(&y.groups).any(|g| g.extension.is_some()) {
        return Err(ComplexError::Unsupported("products of complexes with extension blocks".into()));
    }
    let mut groups: Vec<GroupDecl> = Vec::new();
    let mut group_of: HashMap<(String, String), usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..x.cells.len() {
        for b in 0..y.cells.len() {
            pairs.push((a, b));
        }
    }
    pairs.sort_by_key(|&(a, b)| x.cells[a].dim + y.cells[b].dim);
    let mut cells = Vec::with_capacity(pairs.len());
    let mut index = HashMap::new();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let (ca, cb) = (&x.cells[a], &y.cells[b]);
        let key = (ca.stabilizer.clone(), cb.stabilizer.clone());
        if !group_of.contains_key(&key) {
            let name = format!("{}x{}", key.0, key.1);
            let (g, _, _) = direct_product(x.stabilizer(a).declared(), y.stabilizer(b).declared(), cap)
                .map_err(|source| ComplexError::Group { line: 0, name: name.clone(), source })?;
            let g = Arc::new(g.as_ref().clone().with_name(name.clone()));
            group_of.insert(key.clone(), groups.len());
            groups.push(GroupDecl { name, group: g, extension: None });
        }
        let orientation = match (&ca.orientation, &cb.orientation) {
            (None, None) => None,
            (p, q) => Some(format!("{}x{}", p.as_deref().unwrap_or("+"), q.as_deref().unwrap_or("+"))),
        };
        cells.push(CellOrbit {
            id: format!("{}x{}", ca.id, cb.id),
            dim: ca.dim + cb.dim,
            stabilizer: groups[group_of[&key]].name.clone(),
            orientation,
        });
        index.insert((a, b), k);
    }
    let stabilizers: Vec<Stabilizer> = cells.iter().map(|c| Stabilizer::plain(groups.iter().find(|g| g.name == c.stabilizer).unwrap().group.clone())).collect();
    let mut incidences = Vec::new();
    let mut origin = Vec::new();
    for (i, inc) in x.incidences.iter().enumerate() {
        for b in 0..y.cells.len() {
            let (from, to) = (index[&(inc.from, b)], index[&(inc.to, b)]);
            let id = GroupHomomorphism::identity(y.stabilizer(b).declared());
            let hom = product_homomorphism(&inc.hom, &id, stabilizers[from].declared(), stabilizers[to].declared());
            incidences.push(Incidence { from, to, coeff: inc.coeff, hom });
            origin.push(IncidenceOrigin::Left { incidence: i, cell: b });
        }
    }
    for a in 0..x.cells.len() {
        let sign = if x.cells[a].dim % 2 == 0 { 1 } else { -1 };
        for (j, inc) in y.incidences.iter().enumerate() {
            let (from, to) = (index[&(a, inc.from)], index[&(a, inc.to)]);
            let id = GroupHomomorphism::identity(x.stabilizer(a).declared());
            let hom = product_homomorphism(&id, &inc.hom, stabilizers[from].declared(), stabilizers[to].declared());
            incidences.push(Incidence { from, to, coeff: sign * inc.coeff, hom });
            origin.push(IncidenceOrigin::Right { cell: a, incidence: j });
        }
    }
    let complex = EquivariantCellComplex {
        name: format!("{}x{}", x.name, y.name),
        groups,
        cells,
        incidences,
        stabilizers,
    };
    Ok((complex, ProductInfo { cell_factors: pairs, incidence_origin: origin }))
}

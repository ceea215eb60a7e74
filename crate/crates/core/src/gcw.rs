//! The `.gcw` text format.
//!
//! ```text
//! name <name>
//! group <name> perm|matrix|table
//! gen <data>                      perm: 1-based images; matrix: row-major entries; table: element index
//! row <a*0> <a*1> ...             table groups only, one row per element
//! extension <group> center=<index or word> order=<n>
//! cell <id> dim=<d> stab=<group> [orient=<label>]
//! face <from> <to> coeff=<int>
//! hom <k> <word>                  image of generator k of stab(from) in stab(to)
//! ```
//!
//! `#` starts a comment. Sections may appear in any order; names are
//! resolved after the whole file is read. Words are `1` or `*`-joined
//! factors `g<k>`, `g<k>^<e>`, `e<index>`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::coefficients::CentralExtensionData;
use crate::complex::{CellOrbit, ComplexError, EquivariantCellComplex, GroupDecl, IncidenceSpec};
use crate::group::{FiniteGroup, GroupOrigin, DEFAULT_GROUP_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Perm,
    Matrix,
    Table,
}

#[derive(Debug)]
struct RawGroup {
    name: String,
    kind: Kind,
    line: usize,
    gens: Vec<(usize, Vec<i64>)>,
    rows: Vec<(usize, Vec<i64>)>,
}

#[derive(Debug)]
struct RawExtension {
    group: String,
    center: String,
    order: usize,
    line: usize,
}

#[derive(Debug)]
struct RawFace {
    from: String,
    to: String,
    coeff: i64,
    line: usize,
    homs: Vec<(usize, usize, String)>,
}

enum Context {
    None,
    Group(usize),
    Face(usize),
}

fn syntax(line: usize, message: impl Into<String>) -> ComplexError {
    ComplexError::SyntaxError { line, message: message.into() }
}

fn ints(line: usize, tokens: &[&str]) -> Result<Vec<i64>, ComplexError> {
    tokens.iter().map(|t| t.parse::<i64>().map_err(|_| syntax(line, format!("expected an integer, found `{t}`")))).collect()
}

/// Split `key=value` fields, rejecting unknown keys.
fn fields<'a>(line: usize, tokens: &[&'a str], allowed: &[&str]) -> Result<HashMap<&'a str, &'a str>, ComplexError> {
    let mut out = HashMap::new();
    for t in tokens {
        let (k, v) = t.split_once('=').ok_or_else(|| syntax(line, format!("expected key=value, found `{t}`")))?;
        if !allowed.contains(&k) {
            return Err(syntax(line, format!("unknown field `{k}`")));
        }
        if out.insert(k, v).is_some() {
            return Err(syntax(line, format!("field `{k}` given twice")));
        }
    }
    Ok(out)
}

fn required<'a>(line: usize, f: &HashMap<&str, &'a str>, key: &str) -> Result<&'a str, ComplexError> {
    f.get(key).copied().ok_or_else(|| syntax(line, format!("missing field `{key}`")))
}

pub fn parse_complex(text: &str) -> Result<EquivariantCellComplex, ComplexError> {
    parse_complex_with_cap(text, DEFAULT_GROUP_CAP)
}

pub fn parse_complex_with_cap(text: &str, cap: usize) -> Result<EquivariantCellComplex, ComplexError> {
    let mut name = String::new();
    let mut groups: Vec<RawGroup> = Vec::new();
    let mut extensions: Vec<RawExtension> = Vec::new();
    let mut cells: Vec<(CellOrbit, usize)> = Vec::new();
    let mut faces: Vec<RawFace> = Vec::new();
    let mut ctx = Context::None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (kw, rest) = (tokens[0], &tokens[1..]);
        match kw {
            "name" => {
                if rest.is_empty() {
                    return Err(syntax(line, "missing complex name"));
                }
                name = rest.join(" ");
                ctx = Context::None;
            }
            "group" => {
                let [gname, kind] = rest else {
                    return Err(syntax(line, "expected `group <name> perm|matrix|table`"));
                };
                let kind = match *kind {
                    "perm" => Kind::Perm,
                    "matrix" => Kind::Matrix,
                    "table" => Kind::Table,
                    k => return Err(syntax(line, format!("unknown group kind `{k}`"))),
                };
                if groups.iter().any(|g| g.name == *gname) {
                    return Err(ComplexError::Duplicate { line, what: "group", name: gname.to_string() });
                }
                ctx = Context::Group(groups.len());
                groups.push(RawGroup { name: gname.to_string(), kind, line, gens: Vec::new(), rows: Vec::new() });
            }
            "gen" | "row" => {
                let Context::Group(g) = ctx else {
                    return Err(syntax(line, format!("`{kw}` outside a group block")));
                };
                let data = ints(line, rest)?;
                if kw == "row" {
                    if groups[g].kind != Kind::Table {
                        return Err(syntax(line, "`row` in a group that is not a table"));
                    }
                    groups[g].rows.push((line, data));
                } else {
                    groups[g].gens.push((line, data));
                }
            }
            "extension" => {
                let Some((group, rest)) = rest.split_first() else {
                    return Err(syntax(line, "expected `extension <group> center=<t> order=<n>`"));
                };
                let f = fields(line, rest, &["center", "order"])?;
                let order = required(line, &f, "order")?
                    .parse()
                    .map_err(|_| syntax(line, "order must be a positive integer"))?;
                extensions.push(RawExtension { group: group.to_string(), center: required(line, &f, "center")?.to_string(), order, line });
                ctx = Context::None;
            }
            "cell" => {
                let Some((id, rest)) = rest.split_first() else {
                    return Err(syntax(line, "expected `cell <id> dim=<d> stab=<group>`"));
                };
                let f = fields(line, rest, &["dim", "stab", "orient"])?;
                let dim = required(line, &f, "dim")?.parse().map_err(|_| syntax(line, "dim must be a nonnegative integer"))?;
                let cell = CellOrbit {
                    id: id.to_string(),
                    dim,
                    stabilizer: required(line, &f, "stab")?.to_string(),
                    orientation: f.get("orient").map(|s| s.to_string()),
                };
                cells.push((cell, line));
                ctx = Context::None;
            }
            "face" => {
                let [from, to, rest @ ..] = rest else {
                    return Err(syntax(line, "expected `face <from> <to> coeff=<int>`"));
                };
                let f = fields(line, rest, &["coeff"])?;
                let coeff = required(line, &f, "coeff")?.parse().map_err(|_| syntax(line, "coeff must be an integer"))?;
                ctx = Context::Face(faces.len());
                faces.push(RawFace { from: from.to_string(), to: to.to_string(), coeff, line, homs: Vec::new() });
            }
            "hom" => {
                let Context::Face(f) = ctx else {
                    return Err(syntax(line, "`hom` outside a face block"));
                };
                let [k, word @ ..] = rest else {
                    return Err(syntax(line, "expected `hom <k> <word>`"));
                };
                if word.is_empty() {
                    return Err(syntax(line, "expected `hom <k> <word>`"));
                }
                let k = k.parse().map_err(|_| syntax(line, "generator index must be a nonnegative integer"))?;
                faces[f].homs.push((line, k, word.concat()));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }

    let mut decls: Vec<GroupDecl> = Vec::with_capacity(groups.len());
    for g in &groups {
        decls.push(GroupDecl { name: g.name.clone(), group: Arc::new(build_group(g, cap)?), extension: None });
    }
    for e in extensions {
        let Some(decl) = decls.iter_mut().find(|d| d.name == e.group) else {
            return Err(ComplexError::UnknownGroup { line: e.line, name: e.group });
        };
        if decl.extension.is_some() {
            return Err(ComplexError::Duplicate { line: e.line, what: "extension of", name: e.group });
        }
        let g = decl.group.clone();
        let center = match e.center.parse::<usize>() {
            Ok(i) => i,
            Err(_) => g.parse_word(&e.center).map_err(|source| ComplexError::Group { line: e.line, name: e.group.clone(), source })?,
        };
        decl.extension = Some(CentralExtensionData::new(g, center, e.order).map_err(|source| ComplexError::Extension { line: e.line, source })?);
    }

    for (c, line) in &cells {
        if !decls.iter().any(|d| d.name == c.stabilizer) {
            return Err(ComplexError::UnknownGroup { line: *line, name: c.stabilizer.clone() });
        }
    }
    let stab_of: HashMap<&str, &str> = cells.iter().map(|(c, _)| (c.id.as_str(), c.stabilizer.as_str())).collect();
    let group_of = |id: &str, line: usize| -> Result<&GroupDecl, ComplexError> {
        let stab = stab_of.get(id).ok_or_else(|| ComplexError::UnknownCell { line, id: id.to_string() })?;
        decls.iter().find(|d| d.name == *stab).ok_or_else(|| ComplexError::UnknownGroup { line, name: stab.to_string() })
    };
    let mut specs = Vec::with_capacity(faces.len());
    for f in &faces {
        let source = &group_of(&f.from, f.line)?.group;
        let target = &group_of(&f.to, f.line)?.group;
        let bad = |line: usize, reason: String| ComplexError::BadHomomorphism {
            line,
            from: f.from.clone(),
            to: f.to.clone(),
            reason,
            pair: None,
        };
        let mut images: Vec<Option<usize>> = vec![None; source.generators().len()];
        for (line, k, word) in &f.homs {
            let slot = images.get_mut(*k).ok_or_else(|| bad(*line, format!("{} has no generator {k}", source.name())))?;
            if slot.is_some() {
                return Err(bad(*line, format!("generator {k} mapped twice")));
            }
            *slot = Some(target.parse_word(word).map_err(|e| bad(*line, e.to_string()))?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(k, x)| x.ok_or_else(|| bad(f.line, format!("no image for generator {k}"))))
            .collect::<Result<Vec<_>, _>>()?;
        specs.push(IncidenceSpec { from: f.from.clone(), to: f.to.clone(), coeff: f.coeff, images, line: f.line });
    }
    EquivariantCellComplex::new(name, decls, cells, specs)
}

fn build_group(g: &RawGroup, cap: usize) -> Result<FiniteGroup, ComplexError> {
    let err = |source| ComplexError::Group { line: g.line, name: g.name.clone(), source };
    match g.kind {
        Kind::Perm => {
            let degree = g.gens.first().map_or(0, |(_, d)| d.len());
            let mut perms = Vec::with_capacity(g.gens.len());
            for (line, data) in &g.gens {
                if data.len() != degree {
                    return Err(syntax(*line, format!("permutation has {} points, expected {degree}", data.len())));
                }
                let p = data
                    .iter()
                    .map(|&x| if x >= 1 && x as usize <= degree { Ok(x as usize - 1) } else { Err(syntax(*line, format!("point {x} out of range 1..={degree}"))) })
                    .collect::<Result<Vec<_>, _>>()?;
                perms.push(p);
            }
            FiniteGroup::from_permutations(g.name.clone(), degree, &perms, cap).map_err(err)
        }
        Kind::Matrix => {
            let len = g.gens.first().map_or(0, |(_, d)| d.len());
            let dim = (len as f64).sqrt().round() as usize;
            for (line, data) in &g.gens {
                if data.len() != dim * dim || data.len() != len {
                    return Err(syntax(*line, format!("matrix generator has {} entries, expected a square count of {}", data.len(), dim * dim)));
                }
            }
            let gens: Vec<Vec<i64>> = g.gens.iter().map(|(_, d)| d.clone()).collect();
            FiniteGroup::from_matrices(g.name.clone(), dim, &gens, cap).map_err(err)
        }
        Kind::Table => {
            if g.rows.len() > cap {
                return Err(err(crate::group::GroupError::ClosureExceedsCap { cap }));
            }
            let rows = g
                .rows
                .iter()
                .map(|(line, r)| r.iter().map(|&x| usize::try_from(x).map_err(|_| syntax(*line, "negative element index"))).collect())
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            let mut gens = Vec::new();
            for (line, data) in &g.gens {
                let [x] = data[..] else {
                    return Err(syntax(*line, "table generators are single element indices"));
                };
                gens.push(usize::try_from(x).map_err(|_| syntax(*line, "negative element index"))?);
            }
            let gens = if g.gens.is_empty() { None } else { Some(gens) };
            FiniteGroup::from_table(g.name.clone(), &rows, gens).map_err(err)
        }
    }
}

/// Canonical text form: name, groups (each followed by its extension),
/// cells by dimension, then faces.
pub fn serialize_complex(x: &EquivariantCellComplex) -> String {
    let mut out = String::new();
    if !x.name().is_empty() {
        writeln!(out, "name {}", x.name()).unwrap();
    }
    for decl in x.groups() {
        out.push('\n');
        write_group(&mut out, &decl.name, &decl.group);
        if let Some(e) = &decl.extension {
            writeln!(out, "extension {} center={} order={}", decl.name, e.center, e.n).unwrap();
        }
    }
    if !x.cells().is_empty() {
        out.push('\n');
    }
    for c in x.cells() {
        write!(out, "cell {} dim={} stab={}", c.id, c.dim, c.stabilizer).unwrap();
        if let Some(o) = &c.orientation {
            write!(out, " orient={o}").unwrap();
        }
        out.push('\n');
    }
    for inc in x.incidences() {
        out.push('\n');
        writeln!(out, "face {} {} coeff={}", x.cells()[inc.from].id, x.cells()[inc.to].id, inc.coeff).unwrap();
        let target = inc.hom.target();
        for (k, &g) in inc.hom.source().generators().iter().enumerate() {
            writeln!(out, "hom {k} {}", target.format_word(inc.hom.apply(g))).unwrap();
        }
    }
    out
}

fn write_group(out: &mut String, name: &str, g: &FiniteGroup) {
    match g.origin() {
        GroupOrigin::Permutations { generators, .. } => {
            writeln!(out, "group {name} perm").unwrap();
            for p in generators {
                let images: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                writeln!(out, "gen {}", images.join(" ")).unwrap();
            }
        }
        GroupOrigin::Matrices { generators, .. } => {
            writeln!(out, "group {name} matrix").unwrap();
            for m in generators {
                let entries: Vec<String> = m.iter().map(ToString::to_string).collect();
                writeln!(out, "gen {}", entries.join(" ")).unwrap();
            }
        }
        _ => {
            writeln!(out, "group {name} table").unwrap();
            let n = g.order();
            for a in 0..n {
                let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
                writeln!(out, "row {}", row.join(" ")).unwrap();
            }
            for &x in g.generators() {
                writeln!(out, "gen {x}").unwrap();
            }
        }
    }
}

//! `bredon`: Bredon homology and cohomology of finite-stabilizer G-CW
//! complexes from `.gcw` files.

mod exit;
mod output;

use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use bredon_core::ahss::{e2_page, k_theory_ranks_if_collapse};
use bredon_core::character::character_table;
use bredon_core::coefficients::CoefficientSystem;
use bredon_core::complex::{validate, EquivariantCellComplex};
use bredon_core::datasets;
use bredon_core::gcw::{parse_complex_with_cap, serialize_complex};
use bredon_core::group::DEFAULT_GROUP_CAP;
use bredon_core::homology::{
    assemble_chain, assemble_cochain, full_range, homology, torsion_free_criterion, ChainComplex, TorsionFreeVerdict,
    DEFAULT_MINOR_CAP,
};
use bredon_core::theorems::{kunneth_check, uct_check};

use exit::CliError;
use output::{group_json, Format, Output};

#[derive(Parser, Debug)]
#[command(name = "bredon", version, about = "Bredon homology of proper G-CW complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest group the closure of a generator set may produce.
    #[arg(long, global = true, env = "BREDON_GROUP_CAP", default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,

    /// Widest vertex block for which the torsion criterion enumerates minors.
    #[arg(long, global = true, env = "BREDON_MINOR_CAP", default_value_t = DEFAULT_MINOR_CAP)]
    minor_cap: usize,

    /// Include wall-clock timings (machine output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bredon homology H_n(X; M).
    Homology(GradedArgs),
    /// Bredon cohomology H^n(X; M).
    Cohomology(GradedArgs),
    /// E2 page of the equivariant Atiyah-Hirzebruch spectral sequence for K-theory.
    E2 { file: String },
    /// Run a structural check.
    Check {
        file: String,
        which: CheckKind,
        #[arg(long, default_value = "rep")]
        coefficients: CoefficientSystem,
    },
    /// Compare the Künneth prediction with the homology of a product.
    Kunneth {
        left: String,
        right: String,
        #[arg(long, default_value = "rep")]
        coefficients: CoefficientSystem,
    },
    /// Character tables of the groups declared in a file.
    Chartable {
        file: String,
        /// Only this group.
        #[arg(long)]
        group: Option<String>,
    },
    /// Print the canonical form of a complex.
    Dump { file: String },
}

#[derive(clap::Args, Debug)]
struct GradedArgs {
    file: String,
    #[arg(long, default_value = "rep")]
    coefficients: CoefficientSystem,
    /// Inclusive degree range `a..b`.
    #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
    degrees: Option<RangeInclusive<i64>>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CheckKind {
    Dsquare,
    Uct,
    Torsionfree,
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

struct Input {
    name: String,
    sha256: String,
    complex: EquivariantCellComplex,
}

/// A path on disk, or failing that the name of a bundled dataset.
fn load(file: &str, cap: usize) -> Result<Input, CliError> {
    let text = if Path::new(file).exists() {
        std::fs::read_to_string(file).map_err(|e| CliError::parse(format!("{file}: {e}")))?
    } else if let Some(src) = datasets::source(file) {
        src.to_string()
    } else {
        return Err(CliError::parse(format!("{file}: no such file or bundled dataset")));
    };
    let sha256 = format!("{:x}", Sha256::digest(text.as_bytes()));
    let complex = parse_complex_with_cap(&text, cap).map_err(|e| CliError::from_complex(file, &e))?;
    Ok(Input { name: file.to_string(), sha256, complex })
}

fn require_valid(input: &Input, sys: CoefficientSystem) -> Result<(), CliError> {
    for i in 0..input.complex.cells().len() {
        sys.rank(input.complex.stabilizer(i)).map_err(|e| CliError::from_coefficient(&e))?;
    }
    let report = validate(&input.complex, &[sys]);
    match report.checks.iter().find(|c| !c.passed) {
        Some(c) => Err(CliError::validation(format!("{}: {} failed: {}", input.name, c.name, c.detail))),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = Output::new(cli.format);
    match run(&cli, &mut out) {
        Ok(()) => {
            out.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            out.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), CliError> {
    let start = Instant::now();
    match &cli.command {
        Command::Homology(args) | Command::Cohomology(args) => {
            let cohomology = matches!(cli.command, Command::Cohomology(_));
            let command = if cohomology { "cohomology" } else { "homology" };
            let input = load(&args.file, cli.group_cap)?;
            require_valid(&input, args.coefficients)?;
            let x = &input.complex;
            let c = if cohomology { assemble_cochain(x, args.coefficients) } else { assemble_chain(x, args.coefficients) }
                .map_err(CliError::from_homology)?;
            let range = args.degrees.clone().unwrap_or_else(|| full_range(&c));
            let h = homology(&c, range).map_err(CliError::from_homology)?;
            out.header(command, &input.name, &input.sha256);
            let sym = if cohomology { "H^" } else { "H_" };
            for (n, g) in &h.groups {
                out.text(format!("{sym}{n} = {g}"));
                out.record(json!({
                    "coefficients": args.coefficients.to_string(),
                    "degree": n,
                    "free_rank": g.free_rank,
                    "torsion": g.torsion_strings(),
                }));
            }
        }
        Command::E2 { file } => {
            let input = load(file, cli.group_cap)?;
            require_valid(&input, CoefficientSystem::ComplexRepRing)?;
            let page = e2_page(&input.complex).map_err(CliError::from_homology)?;
            out.header("e2", &input.name, &input.sha256);
            out.text(page.render());
            for (p, g) in page.even_row.iter().enumerate() {
                out.record(json!({ "p": p, "q": "even", "entry": group_json(g) }));
                out.record(json!({ "p": p, "q": "odd", "entry": group_json(&page.entry(p as i64, 1)) }));
            }
            let k = k_theory_ranks_if_collapse(&page);
            if let Some(k) = &k {
                out.text(format!("K^0 rank {}, K^1 rank {}", k.even, k.odd));
                if !k.even_torsion.is_empty() || !k.odd_torsion.is_empty() {
                    out.text(format!("graded torsion: even [{}], odd [{}]", cyclic(&k.even_torsion), cyclic(&k.odd_torsion)));
                }
                if let Some(c) = k.caveat {
                    out.text(format!("caveat: {c}"));
                }
            }
            out.record(json!({
                "collapse_status": page.collapse_status.to_string(),
                "note": page.note(),
                "k_theory": k.as_ref().map(|k| json!({
                    "even_rank": k.even,
                    "odd_rank": k.odd,
                    "even_torsion": k.even_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "odd_torsion": k.odd_torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    "caveat": k.caveat,
                })),
            }));
        }
        Command::Check { file, which, coefficients } => {
            let input = load(file, cli.group_cap)?;
            out.header("check", &input.name, &input.sha256);
            let passed = match which {
                CheckKind::Dsquare => {
                    let report = validate(&input.complex, &[*coefficients]);
                    for c in &report.checks {
                        out.text(format!("{} {}{}", if c.passed { "pass" } else { "FAIL" }, c.name, detail(&c.detail)));
                        out.record(json!({ "check": c.name, "passed": c.passed, "detail": c.detail }));
                    }
                    report.passed()
                }
                CheckKind::Uct => {
                    require_valid(&input, *coefficients)?;
                    let report = uct_check(&input.complex, *coefficients).map_err(CliError::from_theorem)?;
                    for d in &report.degrees {
                        let ok = d.rank_match && d.torsion_match;
                        out.text(format!(
                            "{} n={}: H_{} = {}, H^{} = {}",
                            if ok { "pass" } else { "FAIL" },
                            d.n,
                            d.n,
                            d.homology,
                            d.n,
                            d.cohomology
                        ));
                        out.record(json!({
                            "degree": d.n,
                            "homology": group_json(&d.homology),
                            "cohomology": group_json(&d.cohomology),
                            "rank_match": d.rank_match,
                            "torsion_match": d.torsion_match,
                        }));
                    }
                    report.overall()
                }
                CheckKind::Torsionfree => {
                    require_valid(&input, *coefficients)?;
                    let c: ChainComplex = assemble_chain(&input.complex, *coefficients).map_err(CliError::from_homology)?;
                    let ids: Vec<String> = input.complex.cells().iter().map(|c| c.id.clone()).collect();
                    match torsion_free_criterion(&c, &ids, cli.minor_cap) {
                        TorsionFreeVerdict::TorsionFree => {
                            out.text("pass: every vertex-block minor is -1, 0 or 1; H_0 is torsion-free".into());
                            out.record(json!({ "verdict": "torsion-free" }));
                            true
                        }
                        TorsionFreeVerdict::CriterionFails { cell, rows, cols, minor } => {
                            out.text(format!(
                                "FAIL: minor {minor} in block of {cell} (rows {rows:?}, columns {cols:?}); \
                                 the criterion does not hold in the irreducible-character basis, which does not imply torsion"
                            ));
                            out.record(json!({
                                "verdict": "criterion-fails",
                                "cell": cell,
                                "rows": rows,
                                "cols": cols,
                                "minor": minor.to_string(),
                            }));
                            false
                        }
                        TorsionFreeVerdict::Inconclusive { cell, reason } => {
                            out.record(json!({ "verdict": "inconclusive", "cell": cell, "reason": reason }));
                            return Err(CliError::cap(format!("inconclusive at {cell}: {reason}")));
                        }
                    }
                }
            };
            out.record(json!({ "passed": passed }));
            if !passed {
                return Err(CliError::check(format!("{} check failed", which_name(*which))));
            }
        }
        Command::Kunneth { left, right, coefficients } => {
            let a = load(left, cli.group_cap)?;
            let b = load(right, cli.group_cap)?;
            require_valid(&a, *coefficients)?;
            require_valid(&b, *coefficients)?;
            let report =
                kunneth_check(&a.complex, &b.complex, *coefficients, *coefficients, cli.group_cap).map_err(CliError::from_theorem)?;
            out.header("kunneth", &format!("{} x {}", a.name, b.name), &format!("{}:{}", a.sha256, b.sha256));
            for d in &report.degrees {
                out.text(format!(
                    "{} n={}: predicted {}, computed {}",
                    if d.matches() { "pass" } else { "FAIL" },
                    d.n,
                    d.predicted,
                    d.computed
                ));
                out.record(json!({
                    "degree": d.n,
                    "predicted": group_json(&d.predicted),
                    "computed": group_json(&d.computed),
                    "matches": d.matches(),
                }));
            }
            if !report.passed() {
                return Err(CliError::check("Künneth prediction does not match".into()));
            }
        }
        Command::Chartable { file, group } => {
            let input = load(file, cli.group_cap)?;
            out.header("chartable", &input.name, &input.sha256);
            let decls: Vec<_> = input.complex.groups().iter().filter(|d| group.as_ref().is_none_or(|g| &d.name == g)).collect();
            if decls.is_empty() {
                return Err(CliError::parse(format!("{}: no group named {}", input.name, group.as_deref().unwrap_or("?"))));
            }
            for d in decls {
                let t = character_table(&d.group).map_err(|e| CliError::from_coefficient(&e.into()))?;
                let classes = t.classes();
                let reps: Vec<String> = classes.classes.iter().map(|c| d.group.format_word(c[0])).collect();
                let sizes: Vec<usize> = classes.classes.iter().map(Vec::len).collect();
                out.text(format!("group {} (order {}, {})", d.name, d.group.order(), d.group.label()));
                out.text(format!("  classes: {}", reps.join(" | ")));
                out.text(format!("  sizes:   {}", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" | ")));
                let mut rows = Vec::new();
                for (i, chi) in t.irreducibles().iter().enumerate() {
                    let vals: Vec<String> = chi.values.iter().map(|v| v.to_string()).collect();
                    out.text(format!("  X{i}: {}", vals.join(" | ")));
                    rows.push(vals);
                }
                out.record(json!({
                    "group": d.name,
                    "order": d.group.order(),
                    "classes": reps,
                    "class_sizes": sizes,
                    "characters": rows,
                }));
            }
        }
        Command::Dump { file } => {
            let input = load(file, cli.group_cap)?;
            let text = serialize_complex(&input.complex);
            out.header("dump", &input.name, &input.sha256);
            out.text(text.trim_end().to_string());
            out.record(json!({ "canonical": text }));
        }
    }
    if cli.timing {
        let ms = start.elapsed().as_millis() as u64;
        out.text(format!("elapsed: {ms} ms"));
        out.record(json!({ "elapsed_ms": ms }));
    }
    Ok(())
}

fn detail(d: &str) -> String {
    if d.is_empty() {
        String::new()
    } else {
        format!(": {d}")
    }
}

fn which_name(k: CheckKind) -> &'static str {
    match k {
        CheckKind::Dsquare => "dsquare",
        CheckKind::Uct => "uct",
        CheckKind::Torsionfree => "torsionfree",
    }
}

fn cyclic<T: std::fmt::Display>(orders: &[T]) -> String {
    orders.iter().map(|x| format!("Z/{x}")).collect::<Vec<_>>().join(" + ")
}

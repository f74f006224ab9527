//! Command-line front end. Exit codes: 0 ok, 1 verification failure,
//! 2 invalid input, 3 outside the tabulated reduction data.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde::Serialize;

use crate::arith::{self, parse_rational};
use crate::curves::{self, WeierstrassCurve};
use crate::error::Error;
use crate::galois::{self, FiniteCover, Limits, SubgroupLattice};
use crate::minkowski::{self, MinkowskiReport};
use crate::monodromy::{self, GENUS_ONE_BOUND};
use crate::padic_cover::{self, ValuationRange};
use crate::regression;
use crate::sweep::{self, LocalEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_TABULATED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "semistab", version, about = "Finite monodromy and semi-stability degrees over Q")]
struct Cli {
    /// Omit the version header line from text and TSV output.
    #[arg(long, global = true)]
    plain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minkowski bounds M(2g) and |GL_2g(Z/mZ)| for g = 1..=G.
    Minkowski {
        #[arg(long)]
        g: Option<u64>,
        /// Also print (M(n)/n!)^(1/n) for this even n.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 12)]
        gl_mod: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Monodromy and d(E) for y^2 = x^3 + s, or for a curve [a1,a2,a3,a4,a6].
    Curve {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "a")]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// p-adic balls of constant monodromy for the family.
    Cover {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        min_val: i64,
        #[arg(long, allow_hyphen_values = true)]
        max_val: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Evaluate integer s over a range and write JSONL records.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Galois closure of a finite cover given by monodromy generators.
    Galois {
        #[arg(long)]
        degree: usize,
        /// Generators in 1-based cycle notation separated by ';'.
        #[arg(long)]
        gens: String,
        /// Check the closure properties and the subgroup criteria exhaustively.
        #[arg(long)]
        check_all: bool,
        #[arg(long)]
        json: bool,
        /// Largest deck group for which subgroups are enumerated.
        #[arg(long, default_value_t = 10_000)]
        max_enum: usize,
    },
    /// Recompute every pinned reference value.
    Verify,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotTabulated { .. } => EXIT_NOT_TABULATED,
        Error::TheoremViolation(_) | Error::Internal(_) => EXIT_VERIFY,
        _ => EXIT_INVALID,
    }
}

fn header(plain: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if !plain {
        writeln!(out, "# semistab {}", env!("CARGO_PKG_VERSION"))?;
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Minkowski { g, n, gl_mod, format } => cmd_minkowski(g, n, gl_mod, format, cli.plain, out),
        Command::Curve { s, a, json } => cmd_curve(s, a, json, cli.plain, out),
        Command::Cover { p, min_val, max_val, format } => cmd_cover(p, min_val, max_val, format, cli.plain, out),
        Command::Sweep { from, to, step, out: path, threads } => cmd_sweep(from, to, step, path, threads, out),
        Command::Galois { degree, gens, check_all, json, max_enum } => {
            cmd_galois(degree, &gens, check_all, json, max_enum, cli.plain, out)
        }
        Command::Verify => cmd_verify(cli.plain, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = std::result::Result<i32, CliError>;

#[derive(Serialize)]
struct MinkowskiJson {
    rows: Vec<MinkowskiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<RatioJson>,
}

#[derive(Serialize)]
struct RatioJson {
    n: u64,
    value: f64,
}

fn cmd_minkowski(
    g: Option<u64>,
    n: Option<u64>,
    gl_mod: u64,
    format: Format,
    plain: bool,
    out: &mut dyn Write,
) -> CliResult {
    if g.is_none() && n.is_none() {
        return Err(Error::invalid("pass --g and/or --n").into());
    }
    let rows = match g {
        Some(g) => {
            if g == 0 {
                return Err(Error::invalid("g must be at least 1").into());
            }
            (1..=g).map(|k| MinkowskiReport::with_gl_modulus(k, gl_mod)).collect::<crate::Result<Vec<_>>>()?
        }
        None => Vec::new(),
    };
    let ratio = n.map(|n| minkowski::asymptotic_ratio_diagnostic(n).map(|value| RatioJson { n, value })).transpose()?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &MinkowskiJson { rows, ratio })?;
            writeln!(out)?;
        }
        Format::Tsv | Format::Text => {
            header(plain, out)?;
            if !rows.is_empty() {
                writeln!(out, "g\tM(2g)\tCard GL_2g(Z/{gl_mod}Z)\tCard GL_2g(Z/{gl_mod}Z) approx")?;
                for r in &rows {
                    writeln!(out, "{}\t{}\t{}\t{}", r.g, r.bound, r.gl_card, arith::sci_two_digits(&r.gl_card))?;
                }
            }
            if let Some(RatioJson { n, value }) = ratio {
                writeln!(out, "(M(n)/n!)^(1/n) at n={n}: {value:.12}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CurveJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curve: Option<Vec<String>>,
    delta: String,
    bad_primes: Vec<u64>,
    monodromy: Vec<LocalEntry>,
    degree: Option<u64>,
    divides_minkowski: Option<bool>,
}

fn parse_coefficients(text: &str) -> crate::Result<WeierstrassCurve> {
    let parts = text
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(parse_rational)
        .collect::<crate::Result<Vec<BigRational>>>()?;
    let [a1, a2, a3, a4, a6]: [BigRational; 5] =
        parts.try_into().map_err(|_| Error::invalid("expected five coefficients a1,a2,a3,a4,a6"))?;
    WeierstrassCurve::new(a1, a2, a3, a4, a6)
}

fn cmd_curve(s: Option<String>, a: Option<String>, json: bool, plain: bool, out: &mut dyn Write) -> CliResult {
    let (s_value, curve, local_results) = match (s, a) {
        (Some(s), None) => {
            let s = parse_rational(&s)?;
            let curve = curves::family_curve(&s)?;
            (Some(s.clone()), curve, monodromy::family_local_results(&s)?)
        }
        (None, Some(a)) => {
            let curve = parse_coefficients(&a)?;
            let locals = monodromy::discriminant_primes(&curve)?
                .into_iter()
                .map(|p| (p, monodromy::phi_general_curve(&curve, p)))
                .collect();
            (None, curve, locals)
        }
        _ => return Err(Error::invalid("pass exactly one of --s or --a").into()),
    };

    let entries =
        local_results.into_iter().map(|(p, r)| LocalEntry::from_result(p, r)).collect::<crate::Result<Vec<_>>>()?;
    let known: Vec<_> = entries
        .iter()
        .filter_map(|e| match e {
            LocalEntry::Known(l) => Some(*l),
            LocalEntry::NotTabulated { .. } => None,
        })
        .collect();
    // good-reduction entries are not bad primes
    let complete = known.len() == entries.len();
    let degree = complete.then(|| monodromy::lcm_of_orders(&known));
    let report = CurveJson {
        s: s_value.as_ref().map(arith::format_rational),
        curve: s_value.is_none().then(|| curve.coefficients().iter().map(arith::format_rational).collect()),
        delta: arith::format_rational(&curve.invariants().delta),
        bad_primes: entries
            .iter()
            .filter(|e| !matches!(e, LocalEntry::Known(l) if l.provenance == monodromy::Provenance::GoodReduction))
            .map(|e| match e {
                LocalEntry::Known(l) => l.p,
                LocalEntry::NotTabulated { p, .. } => *p,
            })
            .collect(),
        monodromy: entries,
        degree,
        divides_minkowski: degree.map(|d| GENUS_ONE_BOUND.is_multiple_of(d)),
    };

    if json {
        serde_json::to_writer(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        header(plain, out)?;
        match (&report.s, &report.curve) {
            (Some(s), _) => writeln!(out, "curve: y^2 = x^3 + {s}")?,
            (None, Some(c)) => writeln!(out, "curve: [{}]", c.join(","))?,
            _ => {}
        }
        writeln!(out, "discriminant: {}", report.delta)?;
        writeln!(out, "{:<6}{:<10}{:<7}provenance", "p", "group", "order")?;
        for e in &report.monodromy {
            match e {
                LocalEntry::Known(l) => {
                    writeln!(out, "{:<6}{:<10}{:<7}{}", l.p, l.group.to_string(), l.group.order(), l.provenance)?
                }
                LocalEntry::NotTabulated { p, reason, .. } => {
                    writeln!(out, "{:<6}{:<10}{:<7}not tabulated ({reason})", p, "-", "-")?
                }
            }
        }
        match degree {
            Some(d) => {
                writeln!(out, "d(E) = {d}; divides M(2) = {GENUS_ONE_BOUND}: {}", GENUS_ONE_BOUND.is_multiple_of(d))?
            }
            None => writeln!(out, "d(E) undetermined: not tabulated at some prime")?,
        }
    }
    Ok(if complete { EXIT_OK } else { EXIT_NOT_TABULATED })
}

fn cmd_cover(
    p: u64,
    min_val: i64,
    max_val: Option<i64>,
    format: Format,
    plain: bool,
    out: &mut dyn Write,
) -> CliResult {
    let max_val = max_val.unwrap_or(min_val);
    let range = ValuationRange::new(min_val, max_val)?;
    let report = padic_cover::enumerate_cover(p, range)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Tsv => {
            header(plain, out)?;
            write!(out, "{}", report.to_tsv())?;
        }
        Format::Text => {
            header(plain, out)?;
            writeln!(out, "p = {p}, valuations {range}: {} balls", report.balls.len())?;
            for b in &report.balls {
                writeln!(out, "  v={:<3}{:<16}{}", b.valuation, b.label(), b.group)?;
            }
            for (g, n) in &report.classes {
                writeln!(out, "  {g}: {n} balls")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(from: i64, to: i64, step: i64, path: Option<PathBuf>, threads: usize, out: &mut dyn Write) -> CliResult {
    let records = sweep::sweep_range(from, to, step, threads)?;
    match path {
        Some(path) => {
            let file =
                File::create(&path).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            sweep::write_jsonl(&records, &mut w)?;
            w.flush()?;
        }
        None => sweep::write_jsonl(&records, out)?,
    }
    let summary = sweep::summarize(&records);
    writeln!(out, "{summary}")?;
    Ok(if summary.all_divide_bound { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Serialize)]
struct GaloisJson {
    degree: usize,
    generators: Vec<String>,
    orbit_size: usize,
    deck_group_order: usize,
    deck_group_abelian: bool,
    subgroup_classes: Option<Vec<ClassRow>>,
    checks: Option<CheckCounts>,
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    order: usize,
    abelian: bool,
    cyclic: bool,
    subgroups: usize,
    conjugacy_classes: usize,
}

#[derive(Serialize, Default)]
struct CheckCounts {
    closure_verified: bool,
    fixed_point_pairs: usize,
    fixed_point_disagreements: usize,
    classified_points: usize,
    classification_failures: usize,
    cells_partition: bool,
}

fn cmd_galois(
    degree: usize,
    gens: &str,
    check_all: bool,
    json: bool,
    max_enum: usize,
    plain: bool,
    out: &mut dyn Write,
) -> CliResult {
    let limits = Limits { max_enumeration_order: max_enum, ..Limits::default() };
    let generators = galois::parse_generators(degree, gens)?;
    let cover = FiniteCover::new(degree, generators)?;
    let closure = galois::galois_closure(&cover, &limits)?;
    let deck = closure.deck_group().clone();

    let lattice = if deck.order() <= limits.max_enumeration_order {
        Some(SubgroupLattice::new(deck.clone(), limits.max_enumeration_order)?)
    } else if check_all {
        return Err(Error::SizeLimit(format!("deck group of order {} is above --max-enum", deck.order())).into());
    } else {
        None
    };

    let classes = lattice.as_ref().map(|lat| {
        let sizes = lat.class_sizes();
        let conj = lat.conjugacy_class_counts();
        lat.class_representatives()
            .iter()
            .enumerate()
            .map(|(k, rep)| {
                let g = lat.group().subgroup_as_group(rep);
                ClassRow {
                    class: k,
                    order: rep.order(),
                    abelian: g.is_abelian(),
                    cyclic: (0..g.order()).any(|x| g.element_order(x) == g.order()),
                    subgroups: sizes[k],
                    conjugacy_classes: conj[k],
                }
            })
            .collect::<Vec<_>>()
    });

    let checks = match (&lattice, check_all) {
        (Some(lat), true) => Some(run_galois_checks(&closure, lat, &limits)),
        _ => None,
    };
    let failed = checks.as_ref().is_some_and(|c| {
        !c.closure_verified || c.fixed_point_disagreements > 0 || c.classification_failures > 0 || !c.cells_partition
    });

    let report = GaloisJson {
        degree,
        generators: cover.generators().iter().map(ToString::to_string).collect(),
        orbit_size: closure.orbit_size(),
        deck_group_order: deck.order(),
        deck_group_abelian: deck.is_abelian(),
        subgroup_classes: classes,
        checks,
    };

    if json {
        serde_json::to_writer_pretty(&mut *out, &report)?;
        writeln!(out)?;
    } else {
        header(plain, out)?;
        writeln!(out, "cover degree:      {}", report.degree)?;
        writeln!(out, "generators:        {}", report.generators.join("; "))?;
        writeln!(out, "closure orbit:     {}", report.orbit_size)?;
        writeln!(
            out,
            "deck group order:  {} ({})",
            report.deck_group_order,
            if report.deck_group_abelian { "abelian" } else { "non-abelian" }
        )?;
        if let Some(rows) = &report.subgroup_classes {
            writeln!(
                out,
                "{:>5} {:>6} {:>8} {:>7} {:>10} {:>12}",
                "class", "order", "abelian", "cyclic", "subgroups", "conj.classes"
            )?;
            for r in rows {
                writeln!(
                    out,
                    "{:>5} {:>6} {:>8} {:>7} {:>10} {:>12}",
                    r.class, r.order, r.abelian, r.cyclic, r.subgroups, r.conjugacy_classes
                )?;
            }
        }
        if let Some(c) = &report.checks {
            writeln!(out, "closure properties verified: {}", c.closure_verified)?;
            writeln!(
                out,
                "fixed-point pairs checked: {} ({} disagreements)",
                c.fixed_point_pairs, c.fixed_point_disagreements
            )?;
            writeln!(out, "points classified: {} ({} failures)", c.classified_points, c.classification_failures)?;
            writeln!(out, "cells partition the subgroups: {}", c.cells_partition)?;
        }
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

fn run_galois_checks(closure: &galois::GaloisClosure, lattice: &SubgroupLattice, limits: &Limits) -> CheckCounts {
    let mut c = CheckCounts { closure_verified: closure.verify(limits).is_ok(), ..CheckCounts::default() };
    let group = lattice.group();
    let subs = lattice.subgroups();
    for h in subs {
        for i in subs {
            c.fixed_point_pairs += 1;
            let direct = galois::fixed_point_check(group, h, i).ok();
            if direct != Some(galois::coset_fixed_point_oracle(group, h, i)) {
                c.fixed_point_disagreements += 1;
            }
        }
    }
    let reps = lattice.class_representatives();
    let mut cell_sizes = vec![0usize; reps.len()];
    for i in subs {
        c.classified_points += 1;
        match galois::classify_point(lattice, i, &reps) {
            Ok(k) => cell_sizes[k] += 1,
            Err(_) => c.classification_failures += 1,
        }
    }
    c.cells_partition = c.classification_failures == 0
        && cell_sizes.iter().sum::<usize>() == subs.len()
        && cell_sizes.iter().all(|&n| n > 0);
    c
}

fn cmd_verify(plain: bool, out: &mut dyn Write) -> CliResult {
    header(plain, out)?;
    let checks = regression::all_checks();
    let mut failures = 0;
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        if !c.passed() {
            failures += 1;
        }
        writeln!(out, "{status}  {:<40} expected {:<14} got {}", c.name, c.expected, c.actual)?;
    }
    writeln!(out, "{} checks, {} failed", checks.len(), failures)?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
}

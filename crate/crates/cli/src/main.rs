//! Command-line front end: build decompositions, check properties, form
//! order complexes and compute their homology.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use cadaudit::arith::{parse_poly, parse_rational, to_f64, MultiPoly};
use cadaudit::cadbuild::{
    build_cad, cad_from_json, cad_to_json, compute_subadjacency, CadTree, CellIndex, Formula, TrackConfig,
};
use cadaudit::decomp::{fixture_names, fixture_source, DecompGraph};
use cadaudit::props::{
    audit_section_extension, check_closure_finite, check_lbc_report, check_reduced, check_strong,
    check_well_based, check_well_bordered, LbcConfig, PropertyReport, Status, StrongSource,
};
use cadaudit::topo::{homology, order_complex, regularity_audit, OrderComplex, Verdict};
use cadaudit::Error;

#[derive(Parser)]
#[command(name = "cadaudit", version, about = "Cylindrical algebraic decompositions and regularity audits")]
struct Cli {
    /// Worker threads for lifting and per-cell checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a decomposition from a polynomial file.
    Build {
        #[arg(short = 'f')]
        file: PathBuf,
        #[arg(short = 'n')]
        dim: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Check structural properties of a decomposition or cell graph.
    Check {
        #[arg(long = "in")]
        input: String,
        /// Comma-separated: closurefinite, wellbordered, reduced, wellbased,
        /// lbc, strong, extension.
        #[arg(long)]
        props: String,
        #[command(flatten)]
        tol: Tolerances,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Order complex of a cell subset.
    Complex {
        #[arg(long = "in")]
        input: String,
        /// A sign formula (decompositions only), `all`, `downset:ID`,
        /// `strict:ID`, or comma-separated cell ids.
        #[arg(long)]
        select: Option<String>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Integer homology of a complex.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        maxdeg: Option<usize>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Homological regularity audit of a cell subset.
    Audit {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        select: Option<String>,
        #[command(flatten)]
        tol: Tolerances,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// List or extract the bundled example decompositions.
    Fixtures {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Tolerances {
    #[arg(long, default_value = "1e-9")]
    tol: String,
    #[arg(long, default_value = "1/4")]
    eps0: String,
    #[arg(long, default_value = "1/2")]
    factor: String,
    #[arg(long, default_value_t = 2)]
    stability: usize,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Schema(_) | Error::Json(_) | Error::Io(_) | Error::UnknownCell(_) => 2,
            Error::FormulaReference { .. } | Error::VarCountMismatch(..) | Error::VarOutOfRange { .. } => 2,
            Error::UnsupportedDimension(_) => 3,
            Error::RefinementBudget(_) => 4,
            Error::MissingData(_) => 5,
            Error::NotPoset(_) | Error::Precondition(_) => 6,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn parse_num(s: &str) -> Res<f64> {
    let v = if s.contains('/') {
        to_f64(&parse_rational(s)?)
    } else {
        s.trim().parse::<f64>().map_err(|_| usage(format!("invalid number '{s}'")))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("invalid number '{s}'")))
    }
}

impl Tolerances {
    fn lbc(&self) -> Res<LbcConfig> {
        let cfg = LbcConfig {
            eps0: parse_num(&self.eps0)?,
            factor: parse_num(&self.factor)?,
            stability: self.stability,
            samples: self.samples,
            seed: self.seed,
            ..LbcConfig::default()
        };
        cfg.validate().map_err(|e| usage(e.to_string()))?;
        Ok(cfg)
    }

    fn tol(&self) -> Res<f64> {
        let t = parse_num(&self.tol)?;
        if t > 0.0 {
            Ok(t)
        } else {
            Err(usage("tolerance must be positive"))
        }
    }
}

fn read_polys(path: &Path, n: usize) -> Res<Vec<MultiPoly>> {
    let text = fs::read_to_string(path).map_err(Error::from)?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = parse_poly(line, Some(n)).map_err(|e| usage(format!("line {}: {e}", k + 1)))?;
        out.push(p);
    }
    Ok(out)
}

fn write_json(out: Option<&Path>, v: &Value) -> Res<()> {
    let text = serde_json::to_string_pretty(v).map_err(Error::from)? + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::from(Error::from(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A decomposition rebuilt from `cad.json`, or a cell graph.
enum Input {
    Cad(Box<CadTree>),
    Graph(DecompGraph),
}

fn load_input(spec: &str) -> Res<Input> {
    let text = match spec.strip_prefix("fixture:") {
        Some(name) => fixture_source(name)
            .ok_or_else(|| usage(format!("unknown fixture '{name}'")))?
            .to_string(),
        None => fs::read_to_string(spec).map_err(Error::from)?,
    };
    let v: Value = serde_json::from_str(&text).map_err(Error::from)?;
    if v.get("nvars").is_some() && v.get("F").is_some() {
        let (f, n) = cad_from_json(&v)?;
        let mut cad = build_cad(&f, n)?;
        compute_subadjacency(&mut cad, &TrackConfig::default())?;
        Ok(Input::Cad(Box::new(cad)))
    } else {
        Ok(Input::Graph(DecompGraph::from_json(&v)?))
    }
}

fn all_top(cad: &CadTree) -> Vec<CellIndex> {
    cad.top_cells().iter().map(|c| c.index.clone()).collect()
}

/// Graph over the selected cells and the positions of the selection in it.
fn select(input: &Input, sel: Option<&str>) -> Res<(DecompGraph, Vec<usize>)> {
    let graph = match (input, sel) {
        (Input::Cad(cad), Some(s)) if !looks_like_ids(s) => {
            let phi = Formula::parse(s)?;
            let chosen: Vec<CellIndex> = cad.select_cells(&phi)?.iter().map(|c| c.index.clone()).collect();
            let g = DecompGraph::from_cad(cad, Some(&chosen))?;
            let all = (0..g.len()).collect();
            return Ok((g, all));
        }
        (Input::Cad(cad), Some(_)) => DecompGraph::from_cad(cad, Some(&all_top(cad)))?,
        (Input::Cad(cad), None) => DecompGraph::from_cad(cad, None)?,
        (Input::Graph(g), _) => g.clone(),
    };
    let chosen = match sel {
        None | Some("all") => (0..graph.len()).collect(),
        Some(s) => {
            if let Some(id) = s.strip_prefix("downset:") {
                graph.downset(graph.index_of(id)?, false).into_iter().collect()
            } else if let Some(id) = s.strip_prefix("strict:") {
                graph.downset(graph.index_of(id)?, true).into_iter().collect()
            } else {
                s.split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|id| graph.index_of(id.trim()).map_err(Fail::from))
                    .collect::<Res<Vec<_>>>()?
            }
        }
    };
    Ok((graph, chosen))
}

fn looks_like_ids(s: &str) -> bool {
    s == "all" || s.starts_with("downset:") || s.starts_with("strict:") || Formula::parse(s).is_err()
}

fn fmt_list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn extension_report(cad: &CadTree, tol: f64) -> Res<PropertyReport> {
    let mut rep = PropertyReport::new("extension", false);
    for c in cad.top_cells().into_iter().filter(|c| c.is_section() && c.bounded) {
        let a = audit_section_extension(cad, &c.index, 2, tol)?;
        let w = (!a.extendable).then(|| a.to_json());
        rep.record(&c.id(), Status::from_bool(a.extendable), w);
    }
    Ok(rep)
}

fn unknown_report(name: &str, note: &str) -> PropertyReport {
    let mut r = PropertyReport::new(name, false);
    r.overall = Status::Unknown;
    r.notes.push(note.to_string());
    r
}

fn cmd_check(input: &str, props: &str, tol: &Tolerances, out: Option<&Path>) -> Res<u8> {
    let wanted: Vec<&str> = props.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    const KNOWN: [&str; 7] = ["closurefinite", "wellbordered", "reduced", "wellbased", "lbc", "strong", "extension"];
    if wanted.is_empty() {
        return Err(usage("no properties requested"));
    }
    if let Some(p) = wanted.iter().find(|p| !KNOWN.contains(p)) {
        return Err(usage(format!("unknown property '{p}'")));
    }
    let cfg = tol.lbc()?;
    let tolerance = tol.tol()?;
    let data = load_input(input)?;
    let (graph, source) = match &data {
        Input::Cad(cad) => (DecompGraph::from_cad(cad, Some(&all_top(cad)))?, StrongSource::Cad(cad)),
        Input::Graph(g) => (g.clone(), StrongSource::Graph),
    };
    let mut reports = Vec::new();
    for p in &wanted {
        let r = match (*p, &data) {
            ("closurefinite", _) => check_closure_finite(&graph),
            ("wellbordered", _) => check_well_bordered(&graph),
            ("lbc", _) => check_lbc_report(&graph, source, &cfg)?,
            ("strong", _) => check_strong(&graph, source, &cfg)?,
            ("reduced", Input::Cad(cad)) => check_reduced(cad, &cad.f)?,
            ("wellbased", Input::Cad(cad)) => check_well_based(cad, &cad.f)?,
            ("extension", Input::Cad(cad)) => extension_report(cad, tolerance)?,
            (name, Input::Graph(_)) => unknown_report(name, "needs a decomposition, not a cell graph"),
            _ => unreachable!(),
        };
        reports.push(r);
    }
    let doc = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Object(reports.iter().map(|r| (r.property.clone(), r.to_json())).collect())
    };
    write_json(out, &doc)?;
    if out.is_some() {
        for r in &reports {
            println!("{}: {}", r.property, r.overall);
        }
    }
    let statuses: Vec<Status> = reports.iter().map(|r| r.overall).collect();
    if statuses.contains(&Status::False) {
        Ok(1)
    } else if statuses.contains(&Status::Unknown) {
        let notes: Vec<&str> = reports.iter().flat_map(|r| r.notes.iter().map(String::as_str)).collect();
        Err(Fail(5, format!("undecided: {}", notes.first().copied().unwrap_or("unknown status"))))
    } else {
        Ok(0)
    }
}

fn run(cli: Cli) -> Res<u8> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Fail(1, e.to_string()))?;
    }
    match cli.command {
        Command::Build { file, dim, out } => {
            if !(1..=3).contains(&dim) {
                return Err(Fail::from(Error::UnsupportedDimension(dim)));
            }
            let f = read_polys(&file, dim)?;
            let mut cad = build_cad(&f, dim)?;
            compute_subadjacency(&mut cad, &TrackConfig::default())?;
            let v = cad_to_json(&cad);
            match out {
                Some(p) => {
                    write_json(Some(&p), &v)?;
                    println!(
                        "cells={} levels={} nullified={}",
                        cad.top_cells().len(),
                        cad.nvars,
                        cad.nullified().len()
                    );
                }
                None => write_json(None, &v)?,
            }
            Ok(0)
        }
        Command::Check { input, props, tol, out } => cmd_check(&input, &props, &tol, out.as_deref()),
        Command::Complex { input, select: sel, out } => {
            let data = load_input(&input)?;
            let (graph, chosen) = select(&data, sel.as_deref())?;
            let cx = order_complex(&graph, &chosen)?;
            write_json(out.as_deref(), &cx.to_json())?;
            if out.is_some() {
                println!("vertices={} f={}", cx.vertices.len(), fmt_list(&cx.f_vector()));
            }
            Ok(0)
        }
        Command::Homology {
            input,
            reduced,
            maxdeg,
            out,
        } => {
            let text = fs::read_to_string(&input).map_err(Error::from)?;
            let cx = OrderComplex::from_json(&serde_json::from_str(&text).map_err(Error::from)?)?;
            let h = homology(&cx, maxdeg, reduced);
            write_json(out.as_deref(), &h.to_json())?;
            if out.is_some() {
                println!("betti={}", fmt_list(&h.betti));
            }
            Ok(0)
        }
        Command::Audit {
            input,
            select: sel,
            tol,
            out,
        } => {
            let cfg = tol.lbc()?;
            let data = load_input(&input)?;
            let (graph, chosen) = select(&data, sel.as_deref())?;
            let source = match &data {
                Input::Cad(cad) => StrongSource::Cad(cad),
                Input::Graph(_) => StrongSource::Graph,
            };
            let report = regularity_audit(&graph, &chosen, Some((source, &cfg)))?;
            write_json(out.as_deref(), &report.to_json())?;
            if out.is_some() {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for c in report.cells.values() {
                    *counts.entry(c.verdict.as_str()).or_default() += 1;
                }
                for (v, n) in counts {
                    println!("{v}: {n}");
                }
            }
            Ok(if report.overall() == Verdict::ConsistentWithRegular { 0 } else { 1 })
        }
        Command::Fixtures { list, emit } => {
            if let Some(dir) = emit {
                fs::create_dir_all(&dir).map_err(Error::from)?;
                for name in fixture_names() {
                    let src = fixture_source(name).expect("bundled");
                    fs::write(dir.join(format!("{name}.json")), src).map_err(Error::from)?;
                }
            } else if list {
                for name in fixture_names() {
                    println!("{name}");
                }
            } else {
                return Err(usage("fixtures needs --list or --emit <dir>"));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let first = e.to_string();
                let line = first.lines().next().unwrap_or("invalid arguments");
                eprintln!("error: usage: {}", line.trim_start_matches("error: "));
                return ExitCode::from(2);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => {
            if code == 1 {
                eprintln!("error: check failed: some property does not hold");
            }
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(code)
        }
    }
}

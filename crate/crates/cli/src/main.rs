use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latgon_core::census::{enumerate_polygons, read_jsonl, verify_relaxed_hull, verify_width_drop, write_jsonl, CensusQuery};
use latgon_core::chipgraph::{
    divisors_equivalent, expand_model, gonality, laplacian_equivalent, rank, reduce, GraphError, MetricGraph, Model,
};
use latgon_core::formats::{
    parse_divisor, parse_graph, parse_heights, parse_polygon, DivisorJson, GraphJson, PolygonJson, RationalPolygonJson,
    SubdivisionJson,
};
use latgon_core::polygon::{
    are_equivalent, genus, gonality_upper_bound, interior_hull, lattice_point_count, lattice_width,
    recognize_standard, relaxed_hull, LatticePolygon, Standard,
};
use latgon_core::subdivision::{staircase_heights, subdivide, HeightFunction};

mod checks;

#[derive(Parser)]
#[command(name = "latgon", version, about = "Lattice polygons, regular subdivisions and divisors on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a single polygon, or equivalence of two
    #[command(subcommand)]
    Polygon(PolygonCommand),
    /// Cells, affine data and adjacencies of the subdivision induced by heights
    Subdivide { heights: PathBuf },
    /// Dual graph of the subdivision induced by heights
    Dualgraph {
        heights: PathBuf,
        /// Stretch every edge to the chain length of its adjacency
        #[arg(long)]
        corrected: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Gonality of a metric graph; levels 1, 2 and 3 unless one is given
    Gon {
        graph: PathBuf,
        #[arg(long)]
        level: Option<u64>,
    },
    /// Rank of a divisor
    Rank {
        graph: PathBuf,
        divisor: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Reduced form of a divisor with respect to a base vertex
    Reduce {
        graph: PathBuf,
        divisor: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Linear equivalence of two divisors
    Equivdiv {
        graph: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Enumerate polygons up to equivalence, or verify a stored census
    Census(CensusArgs),
    /// Compare the polygon's gonality bound with the gonality of its corrected graph
    Bound {
        polygon: PathBuf,
        /// Heights file; the diagonal band heights are used when omitted
        #[arg(long)]
        heights: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        level: u64,
    },
    /// Run the built-in checks of the published claims
    VerifyPaper {
        /// Run only the named checks
        #[arg(long)]
        only: Vec<String>,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum PolygonCommand {
    Analyze { polygon: PathBuf },
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CensusArgs {
    #[command(subcommand)]
    command: Option<CensusCommand>,
    #[arg(long, default_value_t = 3)]
    min: i64,
    #[arg(long, default_value_t = 13)]
    max: i64,
    /// Keep only interior polygons
    #[arg(long)]
    interior: bool,
    /// Include points and segments
    #[arg(long)]
    all_dimensions: bool,
    /// Write the JSONL census here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Check the width recursion and relaxed hulls over a stored census; both when no flag is given
    Verify {
        file: PathBuf,
        #[arg(long)]
        width_drop: bool,
        #[arg(long)]
        relaxed_hull: bool,
    },
}

/// Bad command-line usage detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const VERIFICATION_FAILED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("LATGON_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: LATGON_THREADS must be a positive integer, got {n:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_polygon(path: &Path) -> Result<LatticePolygon> {
    parse_polygon(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_heights(path: &Path) -> Result<HeightFunction> {
    parse_heights(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_graph(path: &Path) -> Result<MetricGraph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_divisor(model: &Model, path: &Path) -> Result<latgon_core::chipgraph::Divisor> {
    parse_divisor(model, &read(path)?).with_context(|| format!("in {}", path.display()))
}

fn print(v: &Value) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(ExitCode::SUCCESS)
}

fn classification(p: &LatticePolygon) -> Value {
    match recognize_standard(p) {
        Standard::Simplex(d) => json!({"kind": "simplex", "multiple": d}),
        Standard::TwoUpsilon => json!({"kind": "two-upsilon"}),
        Standard::Other => json!({"kind": "other"}),
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Polygon(PolygonCommand::Analyze { polygon }) => analyze(&load_polygon(&polygon)?),
        Command::Polygon(PolygonCommand::Equiv { first, second }) => {
            let (p, q) = (load_polygon(&first)?, load_polygon(&second)?);
            let map = are_equivalent(&p, &q);
            print(&json!({
                "equivalent": map.is_some(),
                "map": map.map(|m| json!({"matrix": m.matrix(), "translation": [m.translation().x, m.translation().y]})),
            }))
        }
        Command::Subdivide { heights } => {
            let s = subdivide(&load_heights(&heights)?)?;
            print(&serde_json::to_value(SubdivisionJson::from(&s))?)
        }
        Command::Dualgraph { heights, corrected, format } => {
            let s = subdivide(&load_heights(&heights)?)?;
            let g = if corrected { s.corrected_graph() } else { s.dual_graph() };
            match format {
                GraphFormat::Json => print(&serde_json::to_value(GraphJson::from(&g))?),
                GraphFormat::Dot => {
                    print!("{}", g.to_dot());
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Gon { graph, level } => {
            let g = load_graph(&graph)?;
            let levels: Vec<u64> = match level {
                Some(n) => vec![n],
                None => vec![1, 2, 3],
            };
            let mut rows = Vec::new();
            let mut values = Vec::new();
            for n in levels {
                let r = gonality(&g, n)?;
                let model = expand_model(&g, n)?;
                values.push(r.gonality);
                rows.push(json!({
                    "level": n,
                    "gonality": r.gonality,
                    "witness": DivisorJson::from_divisor(&model, &r.witness),
                }));
            }
            let stable = values.windows(2).all(|w| w[0] == w[1]);
            print(&json!({"levels": rows, "stable": stable}))
        }
        Command::Rank { graph, divisor, level } => {
            let model = expand_model(&load_graph(&graph)?, level)?;
            let d = load_divisor(&model, &divisor)?;
            print(&json!({"level": level, "degree": d.degree(), "rank": rank(&model, &d)?}))
        }
        Command::Reduce { graph, divisor, base, level } => {
            let model = expand_model(&load_graph(&graph)?, level)?;
            let d = load_divisor(&model, &divisor)?;
            let q = model.index_of(&base).ok_or_else(|| GraphError::UnknownVertex(base.clone()))?;
            let r = reduce(&model, &d, q);
            print(&json!({"level": level, "base": base, "reduced": DivisorJson::from_divisor(&model, &r)}))
        }
        Command::Equivdiv { graph, first, second, level } => {
            let model = expand_model(&load_graph(&graph)?, level)?;
            let (d1, d2) = (load_divisor(&model, &first)?, load_divisor(&model, &second)?);
            match divisors_equivalent(&model, &d1, &d2) {
                Err(GraphError::DegreeMismatch(a, b)) => {
                    print(&json!({"equivalent": false, "degree_mismatch": [a, b]}))
                }
                r => {
                    let by_reduction = r?;
                    let by_laplacian = laplacian_equivalent(&model, &d1, &d2);
                    if by_reduction != by_laplacian {
                        bail!("reduction and Laplacian tests disagree");
                    }
                    print(&json!({"level": level, "equivalent": by_reduction}))
                }
            }
        }
        Command::Census(args) => census(args),
        Command::Bound { polygon, heights, level } => bound(&load_polygon(&polygon)?, heights.as_deref(), level),
        Command::VerifyPaper { only, json } => checks::run(&only, json),
    }
}

fn analyze(p: &LatticePolygon) -> Result<ExitCode> {
    let lw = lattice_width(p);
    let relaxed = (p.dimension() == 2).then(|| relaxed_hull(p).expect("two-dimensional"));
    print(&json!({
        "polygon": PolygonJson::from(p),
        "dimension": p.dimension(),
        "lattice_points": lattice_point_count(p),
        "boundary_points": p.boundary_point_count(),
        "double_area": p.double_area(),
        "genus": genus(p),
        "lattice_width": {"width": lw.width, "direction": lw.direction.map(|w| [w.x, w.y])},
        "interior_hull": PolygonJson::from(&interior_hull(p)),
        "relaxed_hull": relaxed.as_ref().map(|r| json!({
            "vertices": RationalPolygonJson::from(&r.polygon).vertices,
            "is_lattice": r.is_lattice(),
        })),
        "interior_polygon": relaxed.as_ref().map(|r| r.is_lattice()),
        "classification": classification(p),
        "gonality_upper_bound": gonality_upper_bound(p).ok(),
    }))
}

fn census(args: CensusArgs) -> Result<ExitCode> {
    if let Some(CensusCommand::Verify { file, width_drop, relaxed_hull }) = args.command {
        let f = fs::File::open(&file).with_context(|| format!("cannot read {}", file.display()))?;
        let classes = read_jsonl(BufReader::new(f)).with_context(|| format!("in {}", file.display()))?;
        let both = !width_drop && !relaxed_hull;
        let mut out = serde_json::Map::new();
        let mut ok = true;
        out.insert("classes".into(), json!(classes.len()));
        if width_drop || both {
            let r = verify_width_drop(&classes);
            ok &= r.passed();
            out.insert("width_drop".into(), json!({"passed": r.passed(), "report": r}));
        }
        if relaxed_hull || both {
            let r = verify_relaxed_hull(&classes);
            ok &= r.passed();
            out.insert("relaxed_hull".into(), json!({"passed": r.passed(), "report": r}));
        }
        print(&Value::Object(out))?;
        return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(VERIFICATION_FAILED) });
    }
    let query = CensusQuery::new(args.min, args.max, args.interior, !args.all_dimensions)
        .map_err(|e| UsageError(e.to_string()))?;
    let classes = enumerate_polygons(&query);
    match args.out {
        Some(path) => {
            let f = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
            let mut w = io::BufWriter::new(f);
            write_jsonl(&mut w, &classes)?;
            w.flush()?;
            print(&json!({"classes": classes.len(), "out": path.display().to_string()}))
        }
        None => {
            write_jsonl(io::stdout().lock(), &classes)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bound(p: &LatticePolygon, heights: Option<&Path>, level: u64) -> Result<ExitCode> {
    let h = match heights {
        Some(path) => load_heights(path)?,
        None => staircase_heights(p).context("no heights given")?,
    };
    if h.base() != p {
        bail!("heights are given on {}, not on {}", h.base(), p);
    }
    let upper = gonality_upper_bound(p)?;
    let interior_formula = match recognize_standard(p) {
        Standard::TwoUpsilon => 3,
        _ => lattice_width(&interior_hull(p)).width + 2,
    };
    let s = subdivide(&h)?;
    let g = s.corrected_graph();
    let gon = gonality(&g, level)?;
    print(&json!({
        "upper_bound": upper,
        "interior_width_formula": interior_formula,
        "cells": s.cells.len(),
        "graph": GraphJson::from(&g),
        "graph_gonality": gon.gonality,
        "level": level,
        "meets": gon.gonality as i64 == upper,
        "exceeds_bound": gon.gonality as i64 > upper,
    }))
}

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use latgon_core::census::{enumerate_polygons, two_dimensional_levels, verify_relaxed_hull, verify_width_drop, CensusQuery};
use latgon_core::chipgraph::{
    divisors_equivalent, expand_model, gonality, graph_isomorphic, laplacian_equivalent, layered_path_graph,
    rank, rank_at_least, reduce, reduce_with, small_multigraphs, Divisor, FiringStrategy,
};
use latgon_core::polygon::{
    apply_map, dilate, genus, gonality_upper_bound, interior_hull, lattice_point_count, lattice_width,
    lattice_width_recursive, standard_simplex, staircase_family, upsilon, AffineLatticeMap, LatticePolygon, Point,
};
use latgon_core::subdivision::{staircase_band_subdivision, subdivide, unimodular_lifts, HeightFunction, LiftSearch};

use crate::UsageError;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Basis {
    /// Stated in the published text.
    Published,
    /// Computed by an independent method in this crate.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    name: &'static str,
    status: Status,
    basis: Basis,
    expected: String,
    computed: String,
    runtime_ms: u128,
}

struct Outcome {
    pass: bool,
    expected: String,
    computed: String,
}

fn outcome(pass: bool, expected: impl Into<String>, computed: impl Into<String>) -> Outcome {
    Outcome { pass, expected: expected.into(), computed: computed.into() }
}

type Check = (&'static str, Basis, fn() -> Outcome);

const CHECKS: &[Check] = &[
    ("lw-simplex", Basis::Published, lw_simplex),
    ("width-recursion-census", Basis::Published, width_recursion_census),
    ("relaxed-hull-census", Basis::Published, relaxed_hull_census),
    ("interior-census-count", Basis::Published, interior_census_count),
    ("gamma-gonality", Basis::Published, gamma_gonality),
    ("staircase-pipeline", Basis::Published, staircase_pipeline),
    ("corrected-graph-example", Basis::Published, corrected_graph_example),
    ("two-upsilon-graph", Basis::Published, two_upsilon_graph),
    ("laplacian-oracle", Basis::Derived, laplacian_oracle),
    ("invariant-suites", Basis::Derived, invariant_suites),
];

pub fn run(only: &[String], json: bool) -> Result<ExitCode> {
    for name in only {
        if !CHECKS.iter().any(|(n, _, _)| n == name) {
            let known: Vec<&str> = CHECKS.iter().map(|(n, _, _)| *n).collect();
            return Err(UsageError(format!("unknown check {name:?}; known checks: {}", known.join(", "))).into());
        }
    }
    let mut reports = Vec::new();
    for &(name, basis, check) in CHECKS {
        if !only.is_empty() && !only.iter().any(|n| n == name) {
            continue;
        }
        let start = Instant::now();
        let o = check();
        reports.push(CheckReport {
            name,
            status: if o.pass { Status::Pass } else { Status::Fail },
            basis,
            expected: o.expected,
            computed: o.computed,
            runtime_ms: start.elapsed().as_millis(),
        });
    }
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        for r in &reports {
            let status = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {:<26} {:>8} ms  [{:?}] expected {}; computed {}", r.name, r.runtime_ms, r.basis, r.expected, r.computed)?;
        }
    }
    let all = reports.iter().all(|r| r.status == Status::Pass);
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(crate::VERIFICATION_FAILED) })
}

fn lw_simplex() -> Outcome {
    let mut computed = Vec::new();
    let mut pass = true;
    for d in 1..=8 {
        let s = standard_simplex(d);
        let (a, b) = (lattice_width(&s).width, lattice_width_recursive(&s));
        pass &= a == d && b == d;
        computed.push(format!("{a}/{b}"));
    }
    let two_ups = dilate(&upsilon(), 2);
    let (a, b) = (lattice_width(&two_ups).width, lattice_width_recursive(&two_ups));
    pass &= a == 4 && b == 4;
    outcome(pass, "lw(dΣ) = d for d = 1..8, lw(2Υ) = 4", format!("direct/recursive {}; 2Υ {a}/{b}", computed.join(" ")))
}

fn census13() -> Vec<LatticePolygon> {
    two_dimensional_levels(13).into_iter().flatten().collect()
}

fn width_recursion_census() -> Outcome {
    let r = verify_width_drop(&census13());
    outcome(
        r.passed(),
        "no violations",
        format!(
            "{} classes, {} simplex branch, {} violations, {} recursion mismatches",
            r.checked,
            r.exception_branch,
            r.violations.len(),
            r.recursion_mismatches.len()
        ),
    )
}

fn relaxed_hull_census() -> Outcome {
    let r = verify_relaxed_hull(&census13());
    outcome(
        r.passed(),
        "no failures",
        format!(
            "{} interior classes, {} round-trip failures, {} pairs, {} maximality failures",
            r.interior_classes,
            r.round_trip_failures.len(),
            r.maximality_pairs,
            r.maximality_failures.len()
        ),
    )
}

fn interior_census_count() -> Outcome {
    let q = CensusQuery::new(3, 13, true, true).expect("valid query");
    let classes = enumerate_polygons(&q);
    let six = classes
        .iter()
        .filter(|p| lattice_point_count(p) == 10 && lattice_point_count(&interior_hull(p)) == 2)
        .count();
    outcome(
        classes.len() == 176 && six == 6,
        "176 classes; 6 with 10 points and a 2-point interior hull",
        format!("{} classes; {six}", classes.len()),
    )
}

fn gamma_gonality() -> Outcome {
    let mut pass = true;
    let mut computed = Vec::new();
    for r in 2..=4 {
        let g = layered_path_graph(r);
        let values: Vec<usize> = (1..=3).map(|n| gonality(&g, n).expect("valid level").gonality).collect();
        pass &= values.iter().all(|&v| v == r);
        computed.push(format!("r={r}: {values:?}"));
    }
    outcome(pass, "gonality r at levels 1, 2, 3 for r = 2, 3, 4", computed.join("; "))
}

fn staircase_polygon(a: i64, b: i64) -> LatticePolygon {
    staircase_family(a, b, &[Point::new(0, a), Point::new(1, a), Point::new(b, 0)]).expect("concave chain")
}

fn staircase_pipeline() -> Outcome {
    let mut pass = true;
    let mut computed = Vec::new();
    for (a, b) in [(2, 3), (3, 4), (3, 5)] {
        let p = staircase_polygon(a, b);
        let g = staircase_band_subdivision(&p).expect("in the family").corrected_graph();
        let iso = graph_isomorphic(&g, &layered_path_graph(a as usize));
        let gon = gonality(&g, 1).expect("valid level").gonality as i64;
        let bound = gonality_upper_bound(&p).expect("two-dimensional");
        pass &= iso && gon == a && bound == a;
        computed.push(format!("({a},{b}): iso {iso}, gon {gon}, bound {bound}"));
    }
    let s3 = standard_simplex(3);
    let g = staircase_band_subdivision(&s3).expect("in the family").corrected_graph();
    let iso = graph_isomorphic(&g, &layered_path_graph(2));
    let gon = gonality(&g, 1).expect("valid level").gonality as i64;
    let formula = lattice_width(&interior_hull(&s3)).width + 2;
    pass &= iso && gon == 2 && formula == 2;
    computed.push(format!("3Σ: iso {iso}, gon {gon}, lw(interior)+2 = {formula}"));
    outcome(pass, "graph ≅ Γ_a with gonality a = bound; 3Σ gives Γ_2 with gonality 2", computed.join("; "))
}

fn four_cell_heights() -> HeightFunction {
    let base = LatticePolygon::from_points([(-3, 0), (3, 0), (0, 3)]);
    HeightFunction::from_fn(base, |p| match (p.x, p.y) {
        (-1, 1) | (1, 1) | (0, 2) => 0,
        (-3, 0) | (3, 0) | (0, 3) => 1,
        _ => 10,
    })
}

fn corrected_graph_example() -> Outcome {
    let s = subdivide(&four_cell_heights()).expect("integral lift");
    let mut d: Vec<i64> = s.adjacencies.iter().map(|a| a.chain_length).collect();
    d.sort();
    let corrected = s.corrected_graph();
    let triple_pairs = |g: &latgon_core::chipgraph::MetricGraph| {
        let m = expand_model(g, 1).expect("valid level");
        let mut pairs = Vec::new();
        for i in 0..s.cells.len() {
            for j in i + 1..s.cells.len() {
                let (a, b) = (Divisor::from_points(&m, &[i, i, i]), Divisor::from_points(&m, &[j, j, j]));
                if divisors_equivalent(&m, &a, &b).expect("equal degrees") {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    };
    let on_corrected = triple_pairs(&corrected);
    let on_dual = triple_pairs(&s.dual_graph());
    let pass = s.cells.len() == 4
        && d == [1, 1, 1, 1, 1, 2]
        && corrected.first_betti_number() == 4
        && !on_corrected.is_empty()
        && on_dual.is_empty();
    outcome(
        pass,
        "4 cells; d = 1,1,1,1,1,2; Betti 4; some 3v_i ~ 3v_j only after correction",
        format!(
            "{} cells; d = {d:?}; Betti {}; equivalent pairs corrected {on_corrected:?}, uncorrected {on_dual:?}",
            s.cells.len(),
            corrected.first_betti_number()
        ),
    )
}

fn two_upsilon_graph() -> Outcome {
    let found = unimodular_lifts(&dilate(&upsilon(), 2), LiftSearch { max_height: 3, cap: 200 });
    let mut gonalities = Vec::new();
    let mut witnessed = false;
    for (_, s) in &found {
        let g = s.corrected_graph();
        let gon = gonality(&g, 1).expect("valid level").gonality;
        gonalities.push(gon);
        if gon == 3 && !witnessed {
            let m = expand_model(&g, 1).expect("valid level");
            let cells = s.cells.len();
            witnessed = (0..cells).any(|i| {
                (i + 1..cells).any(|j| {
                    (j + 1..cells).any(|k| {
                        rank_at_least(&m, &Divisor::from_points(&m, &[i, j, k]), 1).expect("matching model")
                    })
                })
            });
        }
    }
    let max = gonalities.iter().copied().max().unwrap_or(0);
    outcome(
        witnessed && max <= 4,
        "some triangulation with gonality 3 and a rank-1 sum of three cell vertices; none above 4",
        format!("{} triangulations, gonalities {gonalities:?}, witness found {witnessed}", found.len()),
    )
}

/// Effective divisors of degree `deg` on `n` vertices.
fn effective(n: usize, deg: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in effective(n - 1, deg - first) {
            rest.insert(0, first as i64);
            out.push(rest);
        }
    }
    out
}

fn laplacian_oracle() -> Outcome {
    let graphs = small_multigraphs(4, 6);
    let mut pairs = 0usize;
    let mut disagreements = 0usize;
    for g in &graphs {
        let m = expand_model(g, 1).expect("valid level");
        for deg in 0..=3 {
            let divisors = effective(m.vertex_count(), deg);
            for a in &divisors {
                for b in &divisors {
                    let (a, b) = (Divisor(a.clone()), Divisor(b.clone()));
                    pairs += 1;
                    if divisors_equivalent(&m, &a, &b).expect("equal degrees") != laplacian_equivalent(&m, &a, &b) {
                        disagreements += 1;
                    }
                }
            }
        }
    }
    outcome(
        disagreements == 0,
        "0 disagreements",
        format!("{disagreements} disagreements over {pairs} pairs on {} graphs", graphs.len()),
    )
}

fn invariant_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77);
    let mut failures = Vec::new();
    let graphs = small_multigraphs(4, 6);
    for _ in 0..200 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let m = expand_model(g, rng.gen_range(1..=2)).expect("valid level");
        let n = m.vertex_count();
        let d = Divisor((0..n).map(|_| rng.gen_range(-3..=4)).collect());
        let q = rng.gen_range(0..n);
        let r = reduce(&m, &d, q);
        if reduce(&m, &r, q) != r {
            failures.push("reduce idempotence");
        }
        if reduce_with(&m, &d, q, FiringStrategy::Single) != r {
            failures.push("reduce uniqueness");
        }
        if r.degree() != d.degree() || !laplacian_equivalent(&m, &d, &r) {
            failures.push("reduce preserves class");
        }
    }
    for _ in 0..40 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let m = expand_model(g, 1).expect("valid level");
        let n = m.vertex_count();
        let d = Divisor((0..n).map(|_| rng.gen_range(0..=2)).collect());
        let rd = rank(&m, &d).expect("matching model");
        for p in 0..n {
            let mut e = d.clone();
            e.0[p] -= 1;
            let re = rank(&m, &e).expect("matching model");
            if !(rd >= re && re >= rd - 1) {
                failures.push("rank superharmonicity");
            }
        }
    }
    for _ in 0..100 {
        let pts: Vec<(i64, i64)> = (0..rng.gen_range(3..7)).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect();
        let p = LatticePolygon::from_points(pts);
        let m = random_unimodular(&mut rng);
        if lattice_width(&apply_map(&p, &m)).width != lattice_width(&p).width {
            failures.push("width invariance");
        }
        if p.dimension() == 2 && 2 * genus(&p) != p.double_area() - p.boundary_point_count() + 2 {
            failures.push("Pick");
        }
    }
    failures.dedup();
    outcome(failures.is_empty(), "all invariants hold", if failures.is_empty() { "all hold".into() } else { failures.join(", ") })
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> AffineLatticeMap {
    let mut m = AffineLatticeMap::identity();
    for _ in 0..6 {
        let k = rng.gen_range(-2..=2);
        let step = match rng.gen_range(0..3) {
            0 => [[1, k], [0, 1]],
            1 => [[1, 0], [k, 1]],
            _ => [[0, 1], [1, 0]],
        };
        m = AffineLatticeMap::new(step, Point::ORIGIN).expect("unimodular").compose(&m);
    }
    let t = Point::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5));
    AffineLatticeMap::translation_by(t).compose(&m)
}

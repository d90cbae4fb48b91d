//! Lattice polygons up to equivalence, by number of lattice points.
//!
//! Classes with `n + 1` points are grown from classes with `n` points: a
//! polygon with at least four points has a vertex whose removal leaves a
//! two-dimensional polygon `Q` with one point fewer, and that vertex lies in
//! the relaxed hull of `Q` (a point two steps beyond an edge would force a
//! further lattice point one step beyond it). So adding each lattice point of
//! the relaxed hull to each smaller class and keeping the hulls with exactly
//! one new point reaches every class.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formats::PolygonJson;
use crate::polygon::{
    apply_map, canonical_form, canonical_form_with_map, interior_hull, is_interior_polygon, lattice_point_count,
    lattice_width, lattice_width_recursive, recognize_standard, relaxed_hull, LatticePolygon, Point, Standard,
};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("line {line}")]
    Parse { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusQuery {
    pub min_points: i64,
    pub max_points: i64,
    pub require_interior: bool,
    pub require_two_dimensional: bool,
}

impl CensusQuery {
    /// Two-dimensional classes need `min_points >= 3`; otherwise points and
    /// segments (one class per point count) are allowed from `min_points >= 1`.
    pub fn new(min_points: i64, max_points: i64, require_interior: bool, require_two_dimensional: bool) -> Result<Self, CensusError> {
        let floor = if require_two_dimensional { 3 } else { 1 };
        if min_points < floor || min_points > max_points {
            return Err(CensusError::InvalidQuery(format!(
                "need {floor} <= min_points <= max_points, got {min_points}..{max_points}"
            )));
        }
        Ok(CensusQuery { min_points, max_points, require_interior, require_two_dimensional })
    }
}

/// Canonical two-dimensional classes with exactly `n` lattice points for each `n` in `3..=max_points`.
pub fn two_dimensional_levels(max_points: i64) -> Vec<BTreeSet<LatticePolygon>> {
    let mut levels = Vec::new();
    if max_points < 3 {
        return levels;
    }
    let mut current = BTreeSet::from([canonical_form(&LatticePolygon::from_points([(0, 0), (1, 0), (0, 1)]))]);
    for n in 3..=max_points {
        if n > 3 {
            current = grow(&current, n);
        }
        levels.push(current.clone());
    }
    levels
}

fn grow(level: &BTreeSet<LatticePolygon>, target: i64) -> BTreeSet<LatticePolygon> {
    level
        .par_iter()
        .fold(BTreeSet::new, |mut acc, q| {
            let relaxed = relaxed_hull(q).expect("two-dimensional");
            for p in relaxed.lattice_points() {
                if q.contains(p) {
                    continue;
                }
                let mut pts = q.vertices().to_vec();
                pts.push(p);
                let hull = LatticePolygon::from_points(pts);
                if lattice_point_count(&hull) == target {
                    acc.insert(canonical_form(&hull));
                }
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// One canonical representative per class meeting the query, ordered by
/// lattice-point count and then by vertex list.
pub fn enumerate_polygons(q: &CensusQuery) -> Vec<LatticePolygon> {
    let mut out = Vec::new();
    if !q.require_two_dimensional && !q.require_interior {
        out.extend((q.min_points..=q.max_points).map(segment));
    }
    let mut two_dim = Vec::new();
    for (i, level) in two_dimensional_levels(q.max_points).into_iter().enumerate() {
        let n = i as i64 + 3;
        if n < q.min_points {
            continue;
        }
        two_dim.extend(level);
    }
    let kept: Vec<LatticePolygon> = if q.require_interior {
        two_dim.into_par_iter().filter(|p| is_interior_polygon(p).expect("two-dimensional")).collect()
    } else {
        two_dim
    };
    out.extend(kept);
    out.sort_by_cached_key(|p| (lattice_point_count(p), p.dimension(), p.clone()));
    out
}

/// The class of lattice-point count `n` in dimension at most one.
fn segment(n: i64) -> LatticePolygon {
    if n == 1 {
        LatticePolygon::point(Point::ORIGIN)
    } else {
        LatticePolygon::from_points([(0, 0), (n - 1, 0)])
    }
}

/// Outcome of checking `lw(P) = lw(P^(1)) + 2`, with `lw(dΣ) = d` as the exception.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WidthDropReport {
    pub checked: usize,
    pub exception_branch: usize,
    pub generic_branch: usize,
    pub skipped_low_dimensional: usize,
    pub violations: Vec<PolygonJson>,
    /// Polygons where the recursive and direct widths disagree.
    pub recursion_mismatches: Vec<PolygonJson>,
}

impl WidthDropReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.recursion_mismatches.is_empty()
    }
}

pub fn verify_width_drop(classes: &[LatticePolygon]) -> WidthDropReport {
    // (exception branch, dichotomy holds, recursion agrees) per two-dimensional class
    let rows: Vec<Option<(bool, bool, bool)>> = classes
        .par_iter()
        .map(|p| {
            if p.dimension() < 2 {
                return None;
            }
            let lw = lattice_width(p).width;
            let recursive = lattice_width_recursive(p) == lw;
            Some(match recognize_standard(p) {
                Standard::Simplex(d) => (true, lw == d, recursive),
                _ => (false, lw == lattice_width(&interior_hull(p)).width + 2, recursive),
            })
        })
        .collect();
    let mut report = WidthDropReport::default();
    for (p, row) in classes.iter().zip(rows) {
        let Some((exception, holds, recursive)) = row else {
            report.skipped_low_dimensional += 1;
            continue;
        };
        report.checked += 1;
        if exception {
            report.exception_branch += 1;
        } else {
            report.generic_branch += 1;
        }
        if !holds {
            report.violations.push(p.into());
        }
        if !recursive {
            report.recursion_mismatches.push(p.into());
        }
    }
    report
}

/// Outcome of the relaxed-hull checks: `(P^(-1))^(1) = P` for every interior
/// polygon `P`, and every listed `Γ` with `Γ^(1) ≅ P` maps into `P^(-1)`
/// under the map carrying `Γ^(1)` onto `P`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelaxedHullReport {
    pub interior_classes: usize,
    pub round_trip_failures: Vec<PolygonJson>,
    pub maximality_pairs: usize,
    pub maximality_failures: Vec<(PolygonJson, PolygonJson)>,
    /// Classes whose interior hull is two-dimensional but not an interior polygon.
    pub inconsistent: Vec<PolygonJson>,
}

impl RelaxedHullReport {
    pub fn passed(&self) -> bool {
        self.round_trip_failures.is_empty() && self.maximality_failures.is_empty() && self.inconsistent.is_empty()
    }
}

pub fn verify_relaxed_hull(classes: &[LatticePolygon]) -> RelaxedHullReport {
    let mut report = RelaxedHullReport::default();
    let two_dim: Vec<&LatticePolygon> = classes.iter().filter(|p| p.dimension() == 2).collect();

    let round: Vec<(bool, bool)> = two_dim
        .par_iter()
        .map(|p| {
            let r = relaxed_hull(p).expect("two-dimensional");
            match r.to_lattice() {
                Some(big) => (true, interior_hull(&big) == **p),
                None => (false, true),
            }
        })
        .collect();
    for (p, (interior, ok)) in two_dim.iter().zip(&round) {
        if *interior {
            report.interior_classes += 1;
            if !ok {
                report.round_trip_failures.push((*p).into());
            }
        }
    }

    // group every polygon with a two-dimensional interior hull by the class of that hull
    let mut groups: BTreeMap<LatticePolygon, Vec<(&LatticePolygon, crate::polygon::AffineLatticeMap)>> = BTreeMap::new();
    let placed: Vec<_> = two_dim
        .par_iter()
        .filter_map(|g| {
            let inner = interior_hull(g);
            (inner.dimension() == 2).then(|| {
                let (form, map) = canonical_form_with_map(&inner);
                (*g, form, map)
            })
        })
        .collect();
    for (g, form, map) in placed {
        groups.entry(form).or_default().push((g, map));
    }
    let results: Vec<_> = groups
        .par_iter()
        .map(|(p, members)| {
            let relaxed = relaxed_hull(p).expect("two-dimensional");
            let Some(big) = relaxed.to_lattice() else {
                return (p, members.len(), Err(()));
            };
            let failures: Vec<_> = members
                .iter()
                .filter(|(g, map)| !big.contains_polygon(&apply_map(g, map)))
                .map(|(g, _)| (PolygonJson::from(*g), PolygonJson::from(p)))
                .collect();
            (p, members.len(), Ok(failures))
        })
        .collect();
    for (p, n, r) in results {
        report.maximality_pairs += n;
        match r {
            Ok(f) => report.maximality_failures.extend(f),
            Err(()) => report.inconsistent.push(p.into()),
        }
    }
    report
}

/// One canonical polygon per line, lines sorted.
pub fn write_jsonl<W: Write>(mut w: W, polygons: &[LatticePolygon]) -> io::Result<()> {
    let mut lines: Vec<String> = polygons
        .iter()
        .map(|p| serde_json::to_string(&PolygonJson::from(p)).expect("serializable"))
        .collect();
    lines.sort();
    for l in lines {
        writeln!(w, "{l}")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<LatticePolygon>, CensusError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let p: PolygonJson = serde_json::from_str(&line).map_err(|source| CensusError::Parse { line: i + 1, source })?;
        out.push(p.to_polygon());
    }
    Ok(out)
}

//! Regular subdivisions induced by integer heights on the lattice points of
//! a polygon, and the dual metric graphs built from them.
//!
//! Heights are lifted to `(x, y, h)` and the cells are the projections of the
//! lower facets of the lifted point set. A cell carries the integer affine
//! function `h = αx + βy + γ` of its facet; adjacent cells give rise to
//! `L` parallel edges (the integral length of the shared edge) which the
//! corrected graph subdivides into chains of length `d`, the gcd of the
//! 2×2 minors of the two stacked facet normals.

mod search;
mod staircase;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use thiserror::Error;

use crate::chipgraph::{GraphError, MetricGraph};
use crate::polygon::{lattice_points, LatticePolygon, Point, PolygonError};

pub use search::{unimodular_lifts, LiftSearch};
pub use staircase::{staircase_band_subdivision, staircase_heights, staircase_parameters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("no height given for lattice point {0}")]
    MissingHeight(Point),
    #[error("height given for {0}, which is not a lattice point of the base polygon")]
    ForeignPoint(Point),
    #[error("two heights given for {0}")]
    DuplicateHeight(Point),
    #[error("lower facet over {0} has a non-integral affine function")]
    NonIntegralCell(LatticePolygon),
    #[error("facet normal {0:?} does not have third coordinate 1")]
    NormalNotLifted([i64; 3]),
    #[error("adjacent cells have equal normals {0:?}")]
    EqualNormals([i64; 3]),
    #[error("polygon is not in the staircase family: {0}")]
    NotStaircase(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Integer heights on every lattice point of a base polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    base: LatticePolygon,
    heights: BTreeMap<Point, i64>,
}

impl HeightFunction {
    /// Fails unless every lattice point of `base` gets exactly one height.
    pub fn new<I>(base: LatticePolygon, heights: I) -> Result<Self, SubdivisionError>
    where
        I: IntoIterator<Item = (Point, i64)>,
    {
        let points: BTreeSet<Point> = lattice_points(&base).into_iter().collect();
        let mut map = BTreeMap::new();
        for (p, h) in heights {
            if !points.contains(&p) {
                return Err(SubdivisionError::ForeignPoint(p));
            }
            if map.insert(p, h).is_some() {
                return Err(SubdivisionError::DuplicateHeight(p));
            }
        }
        if let Some(p) = points.iter().find(|p| !map.contains_key(p)) {
            return Err(SubdivisionError::MissingHeight(*p));
        }
        Ok(HeightFunction { base, heights: map })
    }

    pub fn from_fn(base: LatticePolygon, f: impl Fn(Point) -> i64) -> Self {
        let heights = lattice_points(&base).into_iter().map(|p| (p, f(p))).collect();
        HeightFunction { base, heights }
    }

    pub fn base(&self) -> &LatticePolygon {
        &self.base
    }

    pub fn get(&self, p: Point) -> Option<i64> {
        self.heights.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.heights.iter().map(|(p, h)| (*p, *h))
    }
}

/// `h = alpha*x + beta*y + gamma` on a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellAffine {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl CellAffine {
    pub fn eval(&self, p: Point) -> i64 {
        self.alpha * p.x + self.beta * p.y + self.gamma
    }
}

/// Primitive normal `(a1, a2, 1)` of a lifted cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FacetNormal(pub [i64; 3]);

pub fn facet_normal(affine: &CellAffine) -> FacetNormal {
    FacetNormal([-affine.alpha, -affine.beta, 1])
}

/// gcd of the three 2×2 minors of the matrix with rows `n1`, `n2`.
pub fn chain_length(n1: FacetNormal, n2: FacetNormal) -> Result<i64, SubdivisionError> {
    for n in [n1, n2] {
        if n.0[2] != 1 {
            return Err(SubdivisionError::NormalNotLifted(n.0));
        }
    }
    if n1 == n2 {
        return Err(SubdivisionError::EqualNormals(n1.0));
    }
    let (a, b) = (n1.0, n2.0);
    let m01 = a[0] * b[1] - a[1] * b[0];
    let m02 = a[0] * b[2] - a[2] * b[0];
    let m12 = a[1] * b[2] - a[2] * b[1];
    Ok(m01.gcd(&m02).gcd(&m12))
}

/// Number of lattice points on the segment minus one.
pub fn integral_length(a: Point, b: Point) -> i64 {
    (b - a).content()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub polygon: LatticePolygon,
    pub affine: CellAffine,
}

impl Cell {
    pub fn normal(&self) -> FacetNormal {
        facet_normal(&self.affine)
    }
}

/// Two cells sharing an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    pub cells: (usize, usize),
    pub edge: (Point, Point),
    pub lattice_length: i64,
    pub chain_length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub base: LatticePolygon,
    /// Sorted by vertex list.
    pub cells: Vec<Cell>,
    pub adjacencies: Vec<Adjacency>,
    /// Lower-hull value at every lattice point of the base.
    pub induced: BTreeMap<Point, i64>,
    /// Points whose given height lies strictly above the lower hull.
    pub above_hull: Vec<Point>,
}

/// Lower facet planes `n·(x, y, z) = off` with `n_z > 0`, normalized by gcd.
pub(crate) fn lower_planes(lifted: &[[i64; 3]]) -> BTreeSet<[i64; 4]> {
    let n = lifted.len();
    let mut planes = BTreeSet::new();
    for i in 0..n {
        let p = lifted[i];
        for j in i + 1..n {
            let e1 = [lifted[j][0] - p[0], lifted[j][1] - p[1], lifted[j][2] - p[2]];
            for k in j + 1..n {
                let e2 = [lifted[k][0] - p[0], lifted[k][1] - p[1], lifted[k][2] - p[2]];
                let mut nz = e1[0] * e2[1] - e1[1] * e2[0];
                if nz == 0 {
                    continue;
                }
                let mut nx = e1[1] * e2[2] - e1[2] * e2[1];
                let mut ny = e1[2] * e2[0] - e1[0] * e2[2];
                if nz < 0 {
                    nx = -nx;
                    ny = -ny;
                    nz = -nz;
                }
                let off = nx * p[0] + ny * p[1] + nz * p[2];
                if lifted.iter().all(|q| nx * q[0] + ny * q[1] + nz * q[2] >= off) {
                    let g = nx.gcd(&ny).gcd(&nz);
                    planes.insert([nx / g, ny / g, nz / g, off / g]);
                }
            }
        }
    }
    planes
}

/// Shared edge of two convex cells, if they meet in a segment of positive length.
fn shared_edge(a: &LatticePolygon, b: &LatticePolygon) -> Option<(Point, Point)> {
    for (p, q) in a.edges() {
        let d = q - p;
        for (r, s) in b.edges() {
            if d.cross(r - p) != 0 || d.cross(s - p) != 0 {
                continue;
            }
            let t = |x: Point| d.dot(x - p);
            let (lo1, hi1) = (0, t(q));
            let (lo2, hi2) = (t(r).min(t(s)), t(r).max(t(s)));
            let lo = lo1.max(lo2);
            let hi = hi1.min(hi2);
            if lo < hi {
                let at = |v: i64| [p, q, r, s].into_iter().find(|&x| t(x) == v).expect("overlap ends at an endpoint");
                let (x, y) = (at(lo), at(hi));
                return Some((x.min(y), x.max(y)));
            }
        }
    }
    None
}

/// Cells of the regular subdivision induced by `h`.
///
/// Heights above the lower hull do not create cells; they are replaced by
/// the induced values and reported in `above_hull`.
pub fn subdivide(h: &HeightFunction) -> Result<RegularSubdivision, SubdivisionError> {
    let base = h.base();
    if base.dimension() < 2 {
        return Err(PolygonError::NotTwoDimensional(base.dimension()).into());
    }
    let lifted: Vec<[i64; 3]> = h.iter().map(|(p, z)| [p.x, p.y, z]).collect();
    let planes = lower_planes(&lifted);

    let mut cells = Vec::with_capacity(planes.len());
    for [nx, ny, nz, off] in &planes {
        let on: Vec<Point> = lifted
            .iter()
            .filter(|q| nx * q[0] + ny * q[1] + nz * q[2] == *off)
            .map(|q| Point::new(q[0], q[1]))
            .collect();
        let polygon = LatticePolygon::from_points(on);
        if *nz != 1 {
            return Err(SubdivisionError::NonIntegralCell(polygon));
        }
        cells.push(Cell { polygon, affine: CellAffine { alpha: -nx, beta: -ny, gamma: *off } });
    }
    cells.sort_by(|a, b| a.polygon.vertices().cmp(b.polygon.vertices()));

    let mut induced = BTreeMap::new();
    let mut above_hull = Vec::new();
    for (p, z) in h.iter() {
        let v = cells.iter().map(|c| c.affine.eval(p)).max().expect("at least one cell");
        if z > v {
            above_hull.push(p);
        }
        induced.insert(p, v);
    }

    let mut adjacencies = Vec::new();
    for l in 0..cells.len() {
        for m in l + 1..cells.len() {
            if let Some(edge) = shared_edge(&cells[l].polygon, &cells[m].polygon) {
                adjacencies.push(Adjacency {
                    cells: (l, m),
                    edge,
                    lattice_length: integral_length(edge.0, edge.1),
                    chain_length: chain_length(cells[l].normal(), cells[m].normal())?,
                });
            }
        }
    }
    Ok(RegularSubdivision { base: base.clone(), cells, adjacencies, induced, above_hull })
}

impl RegularSubdivision {
    pub fn vertex_labels(&self) -> Vec<String> {
        (1..=self.cells.len()).map(|i| format!("v{i}")).collect()
    }

    fn graph(&self, corrected: bool) -> MetricGraph {
        let mut edges = Vec::new();
        for adj in &self.adjacencies {
            let len = if corrected { adj.chain_length as u64 } else { 1 };
            for _ in 0..adj.lattice_length {
                edges.push((adj.cells.0, adj.cells.1, len));
            }
        }
        MetricGraph::from_indices(self.vertex_labels(), edges).expect("dual graph of a subdivision is connected")
    }

    /// One vertex per cell, `L` parallel unit edges per adjacency.
    pub fn dual_graph(&self) -> MetricGraph {
        self.graph(false)
    }

    /// As [`Self::dual_graph`], with every edge of an adjacency stretched to its chain length.
    pub fn corrected_graph(&self) -> MetricGraph {
        self.graph(true)
    }

    /// Whether every cell is a unimodular triangle.
    pub fn is_unimodular(&self) -> bool {
        self.cells.iter().all(|c| c.polygon.vertices().len() == 3 && c.polygon.double_area() == 1)
    }
}

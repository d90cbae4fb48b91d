//! Lattice polygons and their invariants.
//!
//! A [`LatticePolygon`] is the convex hull of finitely many integer points.
//! Empty, zero- and one-dimensional hulls are ordinary values so that
//! recursive constructions (interior hulls of interior hulls, ...) never
//! need a special case.

mod equivalence;
mod families;
mod hull;
mod invariants;
mod width;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use equivalence::{are_equivalent, canonical_form, canonical_form_with_map, recognize_standard, Standard};
pub use families::{
    dilate, hirzebruch, kawaguchi, rect, staircase_family, staircase_from_values, standard_simplex,
    upsilon,
};
pub use invariants::{
    genus, gonality_upper_bound, interior_hull, interior_points, is_interior_polygon, lattice_point_count,
    lattice_points, relaxed_hull, RelaxedHull,
};
pub use width::{lattice_width, lattice_width_recursive, width_in_direction, LatticeWidth};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon is empty")]
    Empty,
    #[error("operation needs a two-dimensional polygon, got dimension {0}")]
    NotTwoDimensional(i32),
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("direction ({}, {}) is not primitive", .0.x, .0.y)]
    NotPrimitive(Point),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
}

/// An integer point, also used for integer vectors. Ordered lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> i64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// gcd of the coordinates; 0 for the zero vector.
    pub fn content(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// The primitive vector pointing the same way. Panics on the zero vector.
    pub fn primitive(self) -> Point {
        let g = self.content();
        assert!(g != 0, "zero vector has no primitive direction");
        Point::new(self.x / g, self.y / g)
    }

    pub fn scale(self, k: i64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Constraint `a*x + b*y <= c` with `gcd(a, b) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HalfPlane {
    /// Outward half-plane of the directed edge `from -> to` of a counterclockwise polygon.
    pub fn from_edge(from: Point, to: Point) -> Self {
        let d = to - from;
        let n = Point::new(d.y, -d.x).primitive();
        HalfPlane { a: n.x, b: n.y, c: n.dot(from) }
    }

    pub fn value(&self, p: Point) -> i64 {
        self.a * p.x + self.b * p.y
    }

    pub fn contains(&self, p: Point) -> bool {
        self.value(p) <= self.c
    }

    pub fn shifted(&self, by: i64) -> HalfPlane {
        HalfPlane { c: self.c + by, ..*self }
    }
}

/// Convex hull of integer points.
///
/// Vertices are stored counterclockwise, without collinear points, starting
/// at the lexicographically smallest vertex. A segment stores its two
/// endpoints in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    pub fn empty() -> Self {
        LatticePolygon { vertices: Vec::new() }
    }

    pub fn point(p: Point) -> Self {
        LatticePolygon { vertices: vec![p] }
    }

    /// Convex hull of the given points (any order, duplicates allowed).
    pub fn from_points<I>(points: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Point>,
    {
        let pts: Vec<Point> = points.into_iter().map(Into::into).collect();
        LatticePolygon { vertices: hull::convex_hull(pts) }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// -1 for the empty polygon, otherwise 0, 1 or 2.
    pub fn dimension(&self) -> i32 {
        match self.vertices.len() {
            0 => -1,
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`; empty unless two-dimensional.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        let count = if n >= 3 { n } else { 0 };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Primitive outward half-planes, one per edge.
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        self.edges().map(|(p, q)| HalfPlane::from_edge(p, q)).collect()
    }

    pub fn contains(&self, p: Point) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b - a).cross(p - a) == 0 && (p - a).dot(p - b) <= 0
            }
            _ => self.edges().all(|(a, b)| (b - a).cross(p - a) >= 0),
        }
    }

    /// Twice the Euclidean area.
    pub fn double_area(&self) -> i64 {
        self.edges().map(|(p, q)| p.cross(q)).sum()
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_point_count(&self) -> i64 {
        match self.vertices.len() {
            0 => 0,
            1 => 1,
            2 => (self.vertices[1] - self.vertices[0]).content() + 1,
            _ => self.edges().map(|(p, q)| (q - p).content()).sum(),
        }
    }

    pub fn translate(&self, by: Point) -> LatticePolygon {
        LatticePolygon { vertices: self.vertices.iter().map(|&v| v + by).collect() }
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("hull{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn to_lattice(self) -> Option<Point> {
        (self.x.is_integer() && self.y.is_integer()).then(|| Point::new(self.x.to_integer(), self.y.to_integer()))
    }
}

impl From<Point> for RationalPoint {
    fn from(p: Point) -> Self {
        RationalPoint::new(Rational::from_integer(p.x), Rational::from_integer(p.y))
    }
}

/// Convex polygon with rational vertices, counterclockwise from the
/// lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<RationalPoint>,
}

impl RationalPolygon {
    pub fn from_points(points: Vec<RationalPoint>) -> Self {
        RationalPolygon { vertices: hull::convex_hull(points) }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.to_lattice().is_some())
    }

    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        let pts: Option<Vec<Point>> = self.vertices.iter().map(|v| v.to_lattice()).collect();
        pts.map(LatticePolygon::from_points)
    }

    /// Closed containment test; the polygon must be two-dimensional.
    pub fn contains(&self, p: Point) -> bool {
        let p = RationalPoint::from(p);
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= Rational::from_integer(0)
        })
    }
}

/// Integer affine map `x -> A x + b` with `det A = +-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineLatticeMap {
    matrix: [[i64; 2]; 2],
    translation: Point,
}

impl AffineLatticeMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: Point) -> Result<Self, PolygonError> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det.abs() != 1 {
            return Err(PolygonError::NotUnimodular(det));
        }
        Ok(AffineLatticeMap { matrix, translation })
    }

    pub fn identity() -> Self {
        AffineLatticeMap { matrix: [[1, 0], [0, 1]], translation: Point::ORIGIN }
    }

    pub fn translation_by(t: Point) -> Self {
        AffineLatticeMap { translation: t, ..Self::identity() }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn determinant(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply_linear(&self, v: Point) -> Point {
        let m = self.matrix;
        Point::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn apply(&self, p: Point) -> Point {
        self.apply_linear(p) + self.translation
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn compose(&self, first: &AffineLatticeMap) -> AffineLatticeMap {
        let (a, b) = (self.matrix, first.matrix);
        let matrix = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        AffineLatticeMap { matrix, translation: self.apply(first.translation) }
    }

    pub fn inverse(&self) -> AffineLatticeMap {
        let m = self.matrix;
        let det = self.determinant();
        let inv = [[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]];
        let lin = AffineLatticeMap { matrix: inv, translation: Point::ORIGIN };
        AffineLatticeMap { matrix: inv, translation: -lin.apply_linear(self.translation) }
    }
}

/// Image of a polygon under a unimodular map, re-canonicalized.
pub fn apply_map(polygon: &LatticePolygon, map: &AffineLatticeMap) -> LatticePolygon {
    LatticePolygon::from_points(polygon.vertices().iter().map(|&v| map.apply(v)))
}

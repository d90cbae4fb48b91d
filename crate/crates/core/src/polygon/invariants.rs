use num_integer::Integer;

use super::{
    lattice_width, recognize_standard, HalfPlane, LatticePolygon, Point, PolygonError, Rational,
    RationalPoint, RationalPolygon, Standard,
};

/// Visit the lattice points of `{a x + b y <= c}` row by row for `y` in `ys`,
/// in lexicographic order (x-major is produced by the caller sorting).
fn for_each_row<F: FnMut(i64, i64, i64)>(planes: &[HalfPlane], ys: std::ops::RangeInclusive<i64>, mut row: F) {
    for y in ys {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        let mut feasible = true;
        for h in planes {
            let rhs = h.c - h.b * y;
            if h.a > 0 {
                hi = hi.min(Integer::div_floor(&rhs, &h.a));
            } else if h.a < 0 {
                lo = lo.max(Integer::div_ceil(&rhs, &h.a));
            } else if rhs < 0 {
                feasible = false;
                break;
            }
        }
        if feasible && lo <= hi {
            row(y, lo, hi);
        }
    }
}

fn y_range(p: &LatticePolygon) -> std::ops::RangeInclusive<i64> {
    let ymin = p.vertices().iter().map(|v| v.y).min().unwrap_or(0);
    let ymax = p.vertices().iter().map(|v| v.y).max().unwrap_or(-1);
    ymin..=ymax
}

/// Lattice points of the polygon obtained by shifting every edge half-plane by `shift`.
/// `shift = 0` gives the polygon itself, `-1` its interior points.
pub(crate) fn shifted_points(p: &LatticePolygon, shift: i64, ys: std::ops::RangeInclusive<i64>) -> Vec<Point> {
    let planes: Vec<HalfPlane> = p.half_planes().into_iter().map(|h| h.shifted(shift)).collect();
    let mut out = Vec::new();
    for_each_row(&planes, ys, |y, lo, hi| out.extend((lo..=hi).map(|x| Point::new(x, y))));
    out.sort();
    out
}

/// All integer points inside or on the polygon, in lexicographic order.
pub fn lattice_points(p: &LatticePolygon) -> Vec<Point> {
    match p.dimension() {
        -1 => Vec::new(),
        0 => p.vertices().to_vec(),
        1 => {
            let (a, b) = (p.vertices()[0], p.vertices()[1]);
            let g = (b - a).content();
            let step = (b - a).primitive();
            (0..=g).map(|k| a + step.scale(k)).collect()
        }
        _ => shifted_points(p, 0, y_range(p)),
    }
}

pub fn lattice_point_count(p: &LatticePolygon) -> i64 {
    if p.dimension() < 2 {
        return lattice_points(p).len() as i64;
    }
    let planes = p.half_planes();
    let mut n = 0;
    for_each_row(&planes, y_range(p), |_, lo, hi| n += hi - lo + 1);
    n
}

/// Lattice points in the topological interior; none for dimension below two.
pub fn interior_points(p: &LatticePolygon) -> Vec<Point> {
    if p.dimension() < 2 {
        return Vec::new();
    }
    shifted_points(p, -1, y_range(p))
}

/// Number of interior lattice points.
pub fn genus(p: &LatticePolygon) -> i64 {
    if p.dimension() < 2 {
        return 0;
    }
    let planes: Vec<HalfPlane> = p.half_planes().into_iter().map(|h| h.shifted(-1)).collect();
    let mut n = 0;
    for_each_row(&planes, y_range(p), |_, lo, hi| n += hi - lo + 1);
    n
}

/// Convex hull of the interior lattice points.
pub fn interior_hull(p: &LatticePolygon) -> LatticePolygon {
    LatticePolygon::from_points(interior_points(p))
}

/// The polygon cut out by the edge half-planes pushed outward by one lattice step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedHull {
    pub polygon: RationalPolygon,
    pub half_planes: Vec<HalfPlane>,
}

impl RelaxedHull {
    pub fn is_lattice(&self) -> bool {
        self.polygon.is_lattice()
    }

    pub fn to_lattice(&self) -> Option<LatticePolygon> {
        self.polygon.to_lattice()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.half_planes.iter().all(|h| h.contains(p))
    }

    /// Lattice points of the relaxed polygon.
    pub fn lattice_points(&self) -> Vec<Point> {
        let ys = self.polygon.vertices().iter().map(|v| v.y);
        let ymin = ys.clone().min().map(|y| y.floor().to_integer()).unwrap_or(0);
        let ymax = ys.max().map(|y| y.ceil().to_integer()).unwrap_or(-1);
        let mut out = Vec::new();
        for_each_row(&self.half_planes, ymin..=ymax, |y, lo, hi| out.extend((lo..=hi).map(|x| Point::new(x, y))));
        out.sort();
        out
    }
}

fn intersect(h1: &HalfPlane, h2: &HalfPlane) -> Option<RationalPoint> {
    let det = h1.a * h2.b - h1.b * h2.a;
    if det == 0 {
        return None;
    }
    let x = Rational::new(h1.c * h2.b - h1.b * h2.c, det);
    let y = Rational::new(h1.a * h2.c - h1.c * h2.a, det);
    Some(RationalPoint::new(x, y))
}

fn satisfies(h: &HalfPlane, p: &RationalPoint) -> bool {
    Rational::from_integer(h.a) * p.x + Rational::from_integer(h.b) * p.y <= Rational::from_integer(h.c)
}

/// Relax every primitive edge inequality `a x + b y <= c` to `<= c + 1` and intersect.
///
/// Edges may disappear in the relaxation, so the vertices are found among all
/// pairwise line intersections rather than by walking adjacent edges.
pub fn relaxed_hull(p: &LatticePolygon) -> Result<RelaxedHull, PolygonError> {
    if p.dimension() < 2 {
        return Err(PolygonError::NotTwoDimensional(p.dimension()));
    }
    let planes: Vec<HalfPlane> = p.half_planes().into_iter().map(|h| h.shifted(1)).collect();
    let mut corners = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            if let Some(q) = intersect(&planes[i], &planes[j]) {
                if planes.iter().all(|h| satisfies(h, &q)) {
                    corners.push(q);
                }
            }
        }
    }
    Ok(RelaxedHull { polygon: RationalPolygon::from_points(corners), half_planes: planes })
}

/// Whether `p` is the interior hull of some lattice polygon, decided by the
/// latticeness of its relaxation.
pub fn is_interior_polygon(p: &LatticePolygon) -> Result<bool, PolygonError> {
    Ok(relaxed_hull(p)?.is_lattice())
}

/// Lattice width, lowered by one for the two exceptional shapes `dΣ (d >= 2)` and `2Υ`.
pub fn gonality_upper_bound(p: &LatticePolygon) -> Result<i64, PolygonError> {
    if p.dimension() < 2 {
        return Err(PolygonError::NotTwoDimensional(p.dimension()));
    }
    let lw = lattice_width(p).width;
    Ok(match recognize_standard(p) {
        Standard::Simplex(d) if d >= 2 => lw - 1,
        Standard::TwoUpsilon => lw - 1,
        _ => lw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{dilate, rect, standard_simplex, upsilon};

    fn lp(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_points(pts.iter().copied())
    }

    #[test]
    fn lattice_points_examples() {
        assert_eq!(
            lattice_points(&standard_simplex(1)),
            vec![Point::new(0, 0), Point::new(0, 1), Point::new(1, 0)]
        );
        let two_ups = dilate(&upsilon(), 2);
        let pts = lattice_points(&two_ups);
        assert_eq!(pts.len(), 10);
        // direct scan of the bounding box
        let scan = (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| Point::new(x, y)))
            .filter(|&q| two_ups.contains(q))
            .count();
        assert_eq!(scan, 10);
        assert!(lattice_points(&LatticePolygon::empty()).is_empty());
        assert_eq!(lattice_points(&lp(&[(0, 0), (4, 2)])).len(), 3);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&dilate(&upsilon(), 2)), 4);
        assert_eq!(genus(&standard_simplex(1)), 0);
        assert_eq!(genus(&lp(&[(-3, 0), (3, 0), (0, 3)])), 4);
        assert_eq!(genus(&lp(&[(0, 0), (5, 5)])), 0);
    }

    #[test]
    fn pick_holds_on_examples() {
        for p in [dilate(&upsilon(), 2), rect(3, 5), standard_simplex(7), lp(&[(0, 0), (7, 2), (3, 5), (-1, 3)])] {
            let b = p.boundary_point_count();
            assert_eq!(2 * genus(&p), p.double_area() - b + 2);
            assert_eq!(lattice_point_count(&p), genus(&p) + b);
            assert_eq!(lattice_points(&p).len() as i64, lattice_point_count(&p));
        }
    }

    #[test]
    fn interior_hull_examples() {
        assert_eq!(interior_hull(&standard_simplex(3)), LatticePolygon::point(Point::new(1, 1)));
        assert!(interior_hull(&standard_simplex(2)).is_empty());
        let inner = interior_hull(&dilate(&upsilon(), 2));
        assert!(crate::polygon::are_equivalent(&inner, &upsilon()).is_some());
    }

    #[test]
    fn relaxed_hull_examples() {
        // Upsilon relaxes to 2*Upsilon
        let r = relaxed_hull(&upsilon()).unwrap();
        assert_eq!(r.to_lattice(), Some(dilate(&upsilon(), 2)));
        // d*Sigma relaxes to a translate of (d+3)*Sigma
        for d in 1..5 {
            let r = relaxed_hull(&standard_simplex(d)).unwrap().to_lattice().unwrap();
            assert_eq!(r, standard_simplex(d + 3).translate(Point::new(-1, -1)));
        }
        let r = relaxed_hull(&rect(1, 1)).unwrap().to_lattice().unwrap();
        assert_eq!(r, lp(&[(-1, -1), (2, -1), (2, 2), (-1, 2)]));
        assert!(matches!(relaxed_hull(&lp(&[(0, 0), (1, 1)])), Err(PolygonError::NotTwoDimensional(1))));
    }

    #[test]
    fn relaxed_hull_can_be_non_lattice() {
        // relaxes to x >= -1, y >= -1, x + 3y <= 4 with corner (-1, 5/3)
        let p = lp(&[(0, 0), (3, 0), (0, 1)]);
        let r = relaxed_hull(&p).unwrap();
        assert!(!r.is_lattice());
        let corner = RationalPoint::new(Rational::from_integer(-1), Rational::new(5, 3));
        assert!(r.polygon.vertices().contains(&corner));
        assert!(!is_interior_polygon(&p).unwrap());
    }

    #[test]
    fn interior_polygon_examples() {
        assert!(is_interior_polygon(&upsilon()).unwrap());
        assert!(is_interior_polygon(&standard_simplex(1)).unwrap());
        assert!(is_interior_polygon(&rect(1, 1)).unwrap());
    }

    #[test]
    fn gonality_bound_examples() {
        assert_eq!(gonality_upper_bound(&standard_simplex(5)), Ok(4));
        assert_eq!(gonality_upper_bound(&dilate(&upsilon(), 2)), Ok(3));
        assert_eq!(gonality_upper_bound(&rect(3, 5)), Ok(3));
        assert!(gonality_upper_bound(&LatticePolygon::point(Point::ORIGIN)).is_err());
    }
}

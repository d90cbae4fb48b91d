use super::{interior_hull, recognize_standard, LatticePolygon, Point, PolygonError, Standard};

/// Lattice width with a primitive direction attaining it.
///
/// `direction` is `None` only for the empty polygon (width -1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeWidth {
    pub width: i64,
    pub direction: Option<Point>,
}

/// `max <w, p> - min <w, p>` over the polygon.
pub fn width_in_direction(p: &LatticePolygon, w: Point) -> Result<i64, PolygonError> {
    if !w.is_primitive() {
        return Err(PolygonError::NotPrimitive(w));
    }
    if p.is_empty() {
        return Err(PolygonError::Empty);
    }
    Ok(unchecked_width(p, w))
}

fn unchecked_width(p: &LatticePolygon, w: Point) -> i64 {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for v in p.vertices() {
        let t = w.dot(*v);
        lo = lo.min(t);
        hi = hi.max(t);
    }
    hi - lo
}

/// Sign-normalized so that `w` and `-w` are the same direction.
fn normalize_sign(w: Point) -> Point {
    if w.x < 0 || (w.x == 0 && w.y < 0) {
        -w
    } else {
        w
    }
}

/// Primitive directions that can attain the lattice width of a
/// two-dimensional polygon.
///
/// For any points `u, v` of the polygon, the width in direction `w` is at
/// least `|<w, u - v>|`. With two independent edge vectors `e1, e2` and an
/// upper bound `bound` on the lattice width, every optimal direction
/// satisfies `|<w, e1>| <= bound` and `|<w, e2>| <= bound`, a bounded set.
pub(crate) fn candidate_directions(p: &LatticePolygon) -> Vec<Point> {
    let v = p.vertices();
    let n = v.len();
    debug_assert!(n >= 3);
    let e1 = v[1] - v[0];
    let e2 = v[n - 1] - v[0];
    let bound = unchecked_width(p, Point::new(1, 0)).min(unchecked_width(p, Point::new(0, 1)));
    let det = e1.cross(e2).abs();
    // w = adj(M) s / det(M) with M = [e1; e2] and |s_i| <= bound
    let xmax = (e1.y.abs() + e2.y.abs()) * bound / det;
    let ymax = (e1.x.abs() + e2.x.abs()) * bound / det;
    let mut out = Vec::new();
    for x in 0..=xmax {
        for y in -ymax..=ymax {
            let w = Point::new(x, y);
            if (x == 0 && y <= 0) || !w.is_primitive() {
                continue;
            }
            if w.dot(e1).abs() <= bound && w.dot(e2).abs() <= bound {
                out.push(w);
            }
        }
    }
    out
}

/// Minimal width over all primitive directions; `-1` for the empty polygon.
///
/// Ties are broken towards the lexicographically smallest sign-normalized direction.
pub fn lattice_width(p: &LatticePolygon) -> LatticeWidth {
    match p.dimension() {
        -1 => LatticeWidth { width: -1, direction: None },
        0 => LatticeWidth { width: 0, direction: Some(Point::new(0, 1)) },
        1 => {
            let d = (p.vertices()[1] - p.vertices()[0]).primitive();
            LatticeWidth { width: 0, direction: Some(normalize_sign(Point::new(-d.y, d.x))) }
        }
        _ => {
            let (width, w) = candidate_directions(p)
                .into_iter()
                .map(|w| (unchecked_width(p, w), w))
                .min()
                .expect("candidate set always contains an optimal direction");
            LatticeWidth { width, direction: Some(w) }
        }
    }
}

/// Lattice width by peeling interior hulls: two more than the width of the
/// interior hull, except for `dΣ (d >= 2)` whose width is `d`.
pub fn lattice_width_recursive(p: &LatticePolygon) -> i64 {
    match p.dimension() {
        -1 => -1,
        0 | 1 => 0,
        _ => match recognize_standard(p) {
            Standard::Simplex(d) if d >= 2 => d,
            _ => lattice_width_recursive(&interior_hull(p)) + 2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{dilate, hirzebruch, rect, standard_simplex, upsilon};

    /// All primitive directions in a box, no certificate involved.
    fn brute_width(p: &LatticePolygon, r: i64) -> i64 {
        let mut best = i64::MAX;
        for x in -r..=r {
            for y in -r..=r {
                let w = Point::new(x, y);
                if w.is_primitive() {
                    best = best.min(unchecked_width(p, w));
                }
            }
        }
        best
    }

    #[test]
    fn simplex_width() {
        for d in 1..=8 {
            assert_eq!(lattice_width(&standard_simplex(d)).width, d);
            assert_eq!(lattice_width_recursive(&standard_simplex(d)), d);
        }
    }

    #[test]
    fn two_upsilon_width() {
        let p = dilate(&upsilon(), 2);
        assert_eq!(lattice_width(&p).width, 4);
        assert_eq!(lattice_width_recursive(&p), 4);
        assert_eq!(lattice_width(&upsilon()).width, 2);
    }

    #[test]
    fn width_in_direction_examples() {
        assert_eq!(width_in_direction(&standard_simplex(6), Point::new(0, 1)), Ok(6));
        assert_eq!(width_in_direction(&dilate(&upsilon(), 2), Point::new(1, 1)), Ok(6));
        assert_eq!(width_in_direction(&LatticePolygon::point(Point::new(4, 4)), Point::new(3, 7)), Ok(0));
        assert_eq!(width_in_direction(&LatticePolygon::empty(), Point::new(1, 0)), Err(PolygonError::Empty));
        assert_eq!(
            width_in_direction(&standard_simplex(2), Point::new(2, 2)),
            Err(PolygonError::NotPrimitive(Point::new(2, 2)))
        );
    }

    #[test]
    fn hirzebruch_width() {
        // k = 1 example, checked against plain direction enumeration
        let p = hirzebruch(2, 3, 1).unwrap();
        assert_eq!(lattice_width(&p).width, 3);
        assert_eq!(brute_width(&p, 8), 3);
        assert_eq!(lattice_width(&rect(3, 5)).width, 3);
        assert_eq!(lattice_width(&rect(7, 2)).width, 2);
    }

    #[test]
    fn degenerate_widths() {
        assert_eq!(lattice_width(&LatticePolygon::empty()).width, -1);
        assert_eq!(lattice_width(&LatticePolygon::point(Point::new(1, 2))).width, 0);
        let seg = LatticePolygon::from_points([(0, 0), (4, 6)]);
        let lw = lattice_width(&seg);
        assert_eq!(lw.width, 0);
        assert_eq!(width_in_direction(&seg, lw.direction.unwrap()), Ok(0));
    }

    #[test]
    fn lawrence_prism_has_width_one() {
        let p = LatticePolygon::from_points([(0, 0), (5, 0), (2, 1), (0, 1)]);
        assert_eq!(lattice_width(&p).width, 1);
        assert_eq!(lattice_width_recursive(&p), 1);
    }

    #[test]
    fn witness_attains_width() {
        let p = LatticePolygon::from_points([(0, 0), (9, 2), (4, 7), (-3, 5)]);
        let lw = lattice_width(&p);
        assert_eq!(width_in_direction(&p, lw.direction.unwrap()), Ok(lw.width));
        assert_eq!(lw.width, brute_width(&p, 12));
    }
}

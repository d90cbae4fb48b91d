use num_integer::Integer;

use super::{
    apply_map, dilate, genus, lattice_point_count, standard_simplex, upsilon, AffineLatticeMap,
    LatticePolygon, Point,
};

/// `z` with `det[u | z] = 1`, for primitive `u`.
fn complete_basis(u: Point) -> Point {
    let e = u.x.extended_gcd(&u.y);
    debug_assert_eq!(e.gcd, 1);
    Point::new(-e.y, e.x)
}

/// The unimodular map sending `u -> w` (both primitive), fixing orientation.
fn align(u: Point, w: Point) -> AffineLatticeMap {
    let zu = complete_basis(u);
    let zw = complete_basis(w);
    // [w | zw] * [u | zu]^{-1}, the inverse having determinant 1
    let inv = [[zu.y, -zu.x], [-u.y, u.x]];
    let b = [[w.x, zw.x], [w.y, zw.y]];
    let m = [
        [b[0][0] * inv[0][0] + b[0][1] * inv[1][0], b[0][0] * inv[0][1] + b[0][1] * inv[1][1]],
        [b[1][0] * inv[0][0] + b[1][1] * inv[1][0], b[1][0] * inv[0][1] + b[1][1] * inv[1][1]],
    ];
    AffineLatticeMap::new(m, Point::ORIGIN).expect("product of unimodular matrices")
}

/// Linear map with `A u1 = w1`, `A u2 = w2`, if it is integral and unimodular.
fn solve_pair(u1: Point, u2: Point, w1: Point, w2: Point) -> Option<[[i64; 2]; 2]> {
    let det = u1.cross(u2);
    if det == 0 {
        return None;
    }
    let adj = [[u2.y, -u2.x], [-u1.y, u1.x]];
    let w = [[w1.x, w2.x], [w1.y, w2.y]];
    let mut m = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let v = w[i][0] * adj[0][j] + w[i][1] * adj[1][j];
            if v % det != 0 {
                return None;
            }
            m[i][j] = v / det;
        }
    }
    Some(m)
}

/// Primitive directions along the outgoing and incoming edges at vertex `i`.
fn corner(v: &[Point], i: usize) -> (Point, Point) {
    let n = v.len();
    let next = (v[(i + 1) % n] - v[i]).primitive();
    let prev = (v[(i + n - 1) % n] - v[i]).primitive();
    (next, prev)
}

/// A unimodular map `φ` with `φ(p) = q`, or `None` when the polygons are not equivalent.
///
/// For two-dimensional polygons, the corner at the first vertex of `p` is
/// matched against every corner of `q` in both orientations; each candidate
/// map is solved exactly and verified by applying it.
pub fn are_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> Option<AffineLatticeMap> {
    if p.dimension() != q.dimension() {
        return None;
    }
    match p.dimension() {
        -1 => Some(AffineLatticeMap::identity()),
        0 => Some(AffineLatticeMap::translation_by(q.vertices()[0] - p.vertices()[0])),
        1 => {
            let (pa, pb) = (p.vertices()[0], p.vertices()[1]);
            let (qa, qb) = (q.vertices()[0], q.vertices()[1]);
            if (pb - pa).content() != (qb - qa).content() {
                return None;
            }
            let lin = align((pb - pa).primitive(), (qb - qa).primitive());
            Some(AffineLatticeMap::translation_by(qa - lin.apply(pa)).compose(&lin))
        }
        _ => {
            let (pv, qv) = (p.vertices(), q.vertices());
            if pv.len() != qv.len()
                || p.double_area() != q.double_area()
                || p.boundary_point_count() != q.boundary_point_count()
            {
                return None;
            }
            let (u_next, u_prev) = corner(pv, 0);
            for j in 0..qv.len() {
                let (w_next, w_prev) = corner(qv, j);
                for (w1, w2) in [(w_next, w_prev), (w_prev, w_next)] {
                    let Some(m) = solve_pair(u_next, u_prev, w1, w2) else { continue };
                    let Ok(lin) = AffineLatticeMap::new(m, Point::ORIGIN) else { continue };
                    let map = AffineLatticeMap::translation_by(qv[j] - lin.apply(pv[0])).compose(&lin);
                    if apply_map(p, &map) == *q {
                        return Some(map);
                    }
                }
            }
            None
        }
    }
}

/// Places the corner at vertex `i` (with `first` as the leading edge
/// direction) so that `first -> (1, 0)` and the other edge goes to `(a, b)`
/// with `b > 0` and `0 <= a < b`.
fn normalizing_map(v: &[Point], i: usize, reversed: bool) -> AffineLatticeMap {
    let (next, prev) = corner(v, i);
    let (first, second) = if reversed { (prev, next) } else { (next, prev) };
    let z = complete_basis(first);
    // inverse of [first | z]
    let a0 = AffineLatticeMap::new([[z.y, -z.x], [-first.y, first.x]], Point::ORIGIN).unwrap();
    let mut img = a0.apply_linear(second);
    let mut lin = a0;
    if img.y < 0 {
        let flip = AffineLatticeMap::new([[1, 0], [0, -1]], Point::ORIGIN).unwrap();
        lin = flip.compose(&lin);
        img = flip.apply_linear(img);
    }
    let k = Integer::div_floor(&img.x, &img.y);
    let shear = AffineLatticeMap::new([[1, -k], [0, 1]], Point::ORIGIN).unwrap();
    let lin = shear.compose(&lin);
    AffineLatticeMap::translation_by(-lin.apply(v[i])).compose(&lin)
}

/// A unique representative of the equivalence class of `p`, with a map onto it.
///
/// Every corner in both orientations gives a normalized placement; the
/// representative is the one whose vertex list, translated so that the
/// lexicographically smallest vertex sits at the origin, is smallest.
/// Since a polygon is determined by its vertex list, this orders placements
/// exactly as their lattice-point lists would.
pub fn canonical_form_with_map(p: &LatticePolygon) -> (LatticePolygon, AffineLatticeMap) {
    match p.dimension() {
        -1 => (p.clone(), AffineLatticeMap::identity()),
        0 => {
            let t = AffineLatticeMap::translation_by(-p.vertices()[0]);
            (LatticePolygon::point(Point::ORIGIN), t)
        }
        1 => {
            let (a, b) = (p.vertices()[0], p.vertices()[1]);
            let lin = align((b - a).primitive(), Point::new(1, 0));
            let map = AffineLatticeMap::translation_by(-lin.apply(a)).compose(&lin);
            (apply_map(p, &map), map)
        }
        _ => {
            let v = p.vertices();
            let mut best: Option<(LatticePolygon, AffineLatticeMap)> = None;
            for i in 0..v.len() {
                for reversed in [false, true] {
                    let map = normalizing_map(v, i, reversed);
                    let img = apply_map(p, &map);
                    let shift = AffineLatticeMap::translation_by(-img.vertices()[0]);
                    let img = img.translate(-img.vertices()[0]);
                    if best.as_ref().is_none_or(|(b, _)| img.vertices() < b.vertices()) {
                        best = Some((img, shift.compose(&map)));
                    }
                }
            }
            best.expect("polygon has vertices")
        }
    }
}

pub fn canonical_form(p: &LatticePolygon) -> LatticePolygon {
    canonical_form_with_map(p).0
}

/// Classification against the two exceptional shapes of the gonality bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Standard {
    /// Equivalent to `d` times the standard triangle (`d = 0` is a point).
    Simplex(i64),
    /// Equivalent to `2Υ`.
    TwoUpsilon,
    Other,
}

/// Filters by lattice-point counts before running the equivalence search.
pub fn recognize_standard(p: &LatticePolygon) -> Standard {
    match p.dimension() {
        0 => return Standard::Simplex(0),
        2 => {}
        _ => return Standard::Other,
    }
    if p.vertices().len() != 3 {
        return Standard::Other;
    }
    let boundary = p.boundary_point_count();
    let g = genus(p);
    if boundary % 3 == 0 {
        let d = boundary / 3;
        if g == (d - 1) * (d - 2) / 2 && are_equivalent(p, &standard_simplex(d)).is_some() {
            return Standard::Simplex(d);
        }
    }
    if boundary == 6 && g == 4 && lattice_point_count(p) == 10 && are_equivalent(p, &dilate(&upsilon(), 2)).is_some() {
        return Standard::TwoUpsilon;
    }
    Standard::Other
}

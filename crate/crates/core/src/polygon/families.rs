use super::{LatticePolygon, Point, PolygonError};

/// `d` times the standard triangle `hull{(0,0),(1,0),(0,1)}`.
pub fn standard_simplex(d: i64) -> LatticePolygon {
    assert!(d >= 0, "dilation factor must be non-negative");
    LatticePolygon::from_points([(0, 0), (d, 0), (0, d)])
}

/// `hull{(-1,-1),(1,0),(0,1)}`.
pub fn upsilon() -> LatticePolygon {
    LatticePolygon::from_points([(-1, -1), (1, 0), (0, 1)])
}

/// Minkowski multiple `d * p`.
pub fn dilate(p: &LatticePolygon, d: i64) -> LatticePolygon {
    assert!(d >= 0, "dilation factor must be non-negative");
    if p.is_empty() {
        return LatticePolygon::empty();
    }
    LatticePolygon::from_points(p.vertices().iter().map(|v| v.scale(d)))
}

pub fn rect(a: i64, b: i64) -> LatticePolygon {
    LatticePolygon::from_points([(0, 0), (a, 0), (a, b), (0, b)])
}

/// `hull{(0,0),(a+bk,0),(a,b),(0,b)}`.
pub fn hirzebruch(a: i64, b: i64, k: i64) -> Result<LatticePolygon, PolygonError> {
    if a < 1 || b < 1 || k < 0 {
        return Err(PolygonError::InvalidFamily(format!("need a, b >= 1 and k >= 0, got a={a}, b={b}, k={k}")));
    }
    Ok(LatticePolygon::from_points([(0, 0), (a + b * k, 0), (a, b), (0, b)]))
}

/// Checks that `chain` is the graph of a concave piecewise linear function
/// with lattice breakpoints listed by strictly increasing `x`.
fn check_concave_chain(chain: &[Point]) -> Result<(), PolygonError> {
    if chain.len() < 2 {
        return Err(PolygonError::InvalidFamily("chain needs at least two breakpoints".into()));
    }
    for w in chain.windows(2) {
        if w[1].x <= w[0].x {
            return Err(PolygonError::InvalidFamily(format!("breakpoint x-coordinates must increase at {}", w[1])));
        }
    }
    for w in chain.windows(3) {
        // slope(w0,w1) >= slope(w1,w2)
        let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
        if d1.y * d2.x < d2.y * d1.x {
            return Err(PolygonError::InvalidFamily(format!("chain is not concave at {}", w[1])));
        }
    }
    Ok(())
}

/// Hull of a concave chain over `[0, a+bk]` together with `(0,0)` and `(a,0)`.
///
/// The chain must satisfy `f(0) > 0`, `f(a) = b`, `k f(a+bk) = 0`, contain a
/// horizontal segment, and be linear on `[a, a+bk]`.
pub fn kawaguchi(a: i64, b: i64, k: i64, chain: &[Point]) -> Result<LatticePolygon, PolygonError> {
    if a < 1 || b < 1 || k < 0 {
        return Err(PolygonError::InvalidFamily(format!("need a, b >= 1 and k >= 0, got a={a}, b={b}, k={k}")));
    }
    check_concave_chain(chain)?;
    let first = chain[0];
    let last = chain[chain.len() - 1];
    let end = a + b * k;
    if first.x != 0 || first.y <= 0 || last.x != end {
        return Err(PolygonError::InvalidFamily(format!("chain must run over [0, {end}] with f(0) > 0")));
    }
    if k * last.y != 0 {
        return Err(PolygonError::InvalidFamily("need k * f(a + bk) = 0".into()));
    }
    if !chain.windows(2).any(|w| w[0].y == w[1].y) {
        return Err(PolygonError::InvalidFamily("chain needs a horizontal segment".into()));
    }
    // f(a) = b, and no breakpoint strictly inside (a, a+bk)
    let at_a = chain.iter().find(|p| p.x == a);
    if at_a.map(|p| p.y) != Some(b) {
        return Err(PolygonError::InvalidFamily(format!("need a breakpoint (a, b) = ({a}, {b})")));
    }
    if chain.iter().any(|p| p.x > a && p.x < end) {
        return Err(PolygonError::InvalidFamily("chain must be linear on [a, a+bk]".into()));
    }
    let mut pts = chain.to_vec();
    pts.push(Point::new(0, 0));
    pts.push(Point::new(a, 0));
    Ok(LatticePolygon::from_points(pts))
}

/// Hull of `(0,0)` with the graph of a concave function `f: [0, b] -> R>=0`
/// having `f(0) = a >= f(1)`, `f(b) = 0`, `1 <= a <= b`, given by its
/// lattice breakpoints.
pub fn staircase_family(a: i64, b: i64, chain: &[Point]) -> Result<LatticePolygon, PolygonError> {
    if a < 1 || a > b {
        return Err(PolygonError::InvalidFamily(format!("need 1 <= a <= b, got a={a}, b={b}")));
    }
    check_concave_chain(chain)?;
    let first = chain[0];
    let last = chain[chain.len() - 1];
    if first != Point::new(0, a) || last != Point::new(b, 0) {
        return Err(PolygonError::InvalidFamily(format!("chain must run from (0, {a}) to ({b}, 0)")));
    }
    if chain[1].y > a {
        return Err(PolygonError::InvalidFamily("need f(0) >= f(1)".into()));
    }
    let mut pts = chain.to_vec();
    pts.push(Point::new(0, 0));
    Ok(LatticePolygon::from_points(pts))
}

/// As [`staircase_family`] with `f` given by its values at `x = 0..=b`.
pub fn staircase_from_values(a: i64, b: i64, values: &[i64]) -> Result<LatticePolygon, PolygonError> {
    if values.len() as i64 != b + 1 {
        return Err(PolygonError::InvalidFamily(format!("expected {} values, got {}", b + 1, values.len())));
    }
    let chain: Vec<Point> = values.iter().enumerate().map(|(x, &y)| Point::new(x as i64, y)).collect();
    staircase_family(a, b, &chain)
}

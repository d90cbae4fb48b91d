use super::{subdivide, HeightFunction, RegularSubdivision, SubdivisionError};
use crate::polygon::{LatticePolygon, Point};

/// Reads off `(a, b)` when `p` is the hull of `(0,0)` with the graph of a
/// concave function on `[0, b]` starting at height `a` and ending at `(b, 0)`.
pub fn staircase_parameters(p: &LatticePolygon) -> Result<(i64, i64), SubdivisionError> {
    let bad = |msg: &str| Err(SubdivisionError::NotStaircase(format!("{p}: {msg}")));
    if p.dimension() != 2 {
        return bad("not two-dimensional");
    }
    let v = p.vertices();
    if v.iter().any(|q| q.x < 0 || q.y < 0) {
        return bad("not in the first quadrant");
    }
    if !v.contains(&Point::ORIGIN) {
        return bad("(0,0) is not a vertex");
    }
    let a = v.iter().map(|q| q.y).max().expect("non-empty");
    let b = v.iter().map(|q| q.x).max().expect("non-empty");
    if !v.contains(&Point::new(0, a)) {
        return bad("top height is not attained on the y-axis");
    }
    if v.iter().filter(|q| q.x == b).count() != 1 || !v.contains(&Point::new(b, 0)) {
        return bad("rightmost point is not a single vertex on the x-axis");
    }
    if a > b {
        return bad("height exceeds length");
    }
    Ok((a, b))
}

/// `c(t)`: zero up to 2, slope `t - 2` on `[t - 1, t]` up to `a`, slope `a - 1` beyond.
fn band_height(a: i64, t: i64) -> i64 {
    if t <= 2 {
        0
    } else if t <= a {
        (t - 2) * (t - 1) / 2
    } else {
        band_height(a, a) + (a - 1).max(0) * (t - a)
    }
}

/// Heights `c(x + y)` whose lower hull cuts the polygon into the diagonal
/// bands `x + y <= 2`, `i <= x + y <= i + 1` for `2 <= i < a`, and `x + y >= a`.
pub fn staircase_heights(p: &LatticePolygon) -> Result<HeightFunction, SubdivisionError> {
    let (a, _) = staircase_parameters(p)?;
    Ok(HeightFunction::from_fn(p.clone(), |q| band_height(a, q.x + q.y)))
}

/// The band subdivision; it has `a` cells, or `a - 1` when the polygon is `aΣ`.
pub fn staircase_band_subdivision(p: &LatticePolygon) -> Result<RegularSubdivision, SubdivisionError> {
    subdivide(&staircase_heights(p)?)
}

use std::ops::{Mul, Sub};

use super::{Point, Rational, RationalPoint};

/// Coordinates the monotone-chain hull can work with.
pub(crate) trait HullPoint: Copy + Ord {
    type Scalar: Copy + PartialOrd + Sub<Output = Self::Scalar> + Mul<Output = Self::Scalar> + Default;
    fn xy(&self) -> (Self::Scalar, Self::Scalar);
}

impl HullPoint for Point {
    type Scalar = i64;
    fn xy(&self) -> (i64, i64) {
        (self.x, self.y)
    }
}

impl HullPoint for RationalPoint {
    type Scalar = Rational;
    fn xy(&self) -> (Rational, Rational) {
        (self.x, self.y)
    }
}

fn turn<P: HullPoint>(o: &P, a: &P, b: &P) -> P::Scalar {
    let (ox, oy) = o.xy();
    let (ax, ay) = a.xy();
    let (bx, by) = b.xy();
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Andrew's monotone chain. Counterclockwise, strictly convex, starting at the
/// lexicographically smallest point; collinear input yields its two endpoints.
pub(crate) fn convex_hull<P: HullPoint>(mut pts: Vec<P>) -> Vec<P> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let zero = P::Scalar::default();
    let mut lower: Vec<P> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<P> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] > lower[1] {
        lower.swap(0, 1);
    }
    lower
}

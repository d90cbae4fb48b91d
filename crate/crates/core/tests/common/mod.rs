//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use latgon_core::chipgraph::{Divisor, Model};
use latgon_core::polygon::{canonical_form, lattice_point_count, LatticePolygon, Point};

/// Canonical classes of two-dimensional polygons with at most `max_points`
/// lattice points whose vertices lie in `[0, side)²`, keyed by point count.
///
/// Grows vertex sets in index order and prunes once the hull holds too many points.
pub fn box_census(side: i64, max_points: i64) -> BTreeMap<i64, BTreeSet<LatticePolygon>> {
    let grid: Vec<Point> = (0..side).flat_map(|x| (0..side).map(move |y| Point::new(x, y))).collect();
    let mut out: BTreeMap<i64, BTreeSet<LatticePolygon>> = BTreeMap::new();
    fn grow(
        grid: &[Point],
        chosen: &mut Vec<Point>,
        next: usize,
        max_points: i64,
        out: &mut BTreeMap<i64, BTreeSet<LatticePolygon>>,
    ) {
        for i in next..grid.len() {
            chosen.push(grid[i]);
            let hull = LatticePolygon::from_points(chosen.iter().map(|p| (p.x, p.y)));
            let n = lattice_point_count(&hull);
            if n <= max_points {
                if hull.dimension() == 2 {
                    out.entry(n).or_default().insert(canonical_form(&hull));
                }
                grow(grid, chosen, i + 1, max_points, out);
            }
            chosen.pop();
        }
    }
    // translations let the lexicographically first point sit on the left column
    for i in 0..side as usize {
        let mut chosen = vec![grid[i]];
        grow(&grid, &mut chosen, i + 1, max_points, &mut out);
    }
    out
}

/// Width over every primitive direction with entries in `-bound..=bound`.
pub fn width_by_directions(p: &LatticePolygon, bound: i64) -> i64 {
    let mut best = i64::MAX;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            let values: Vec<i64> = p.vertices().iter().map(|v| a * v.x + b * v.y).collect();
            best = best.min(values.iter().max().unwrap() - values.iter().min().unwrap());
        }
    }
    best
}

/// Lattice points counted by scanning the bounding box.
pub fn scanned_point_count(p: &LatticePolygon) -> (i64, i64) {
    let vs = p.vertices();
    if vs.is_empty() {
        return (0, 0);
    }
    let (x0, x1) = (vs.iter().map(|v| v.x).min().unwrap(), vs.iter().map(|v| v.x).max().unwrap());
    let (y0, y1) = (vs.iter().map(|v| v.y).min().unwrap(), vs.iter().map(|v| v.y).max().unwrap());
    let edges: Vec<(Point, Point)> = (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect();
    let (mut inside, mut total) = (0, 0);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let sides: Vec<i64> =
                edges.iter().map(|&(a, b)| (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x)).collect();
            if sides.iter().all(|&s| s >= 0) {
                total += 1;
                if sides.iter().all(|&s| s > 0) {
                    inside += 1;
                }
            }
        }
    }
    (inside, total)
}

/// Determinant by fraction-free elimination.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].checked_mul(m[k][k]).unwrap() - m[i][k].checked_mul(m[k][j]).unwrap();
                m[i][j] = t / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Divisor classes modulo the Laplacian, via the adjugate of the Laplacian
/// with the last vertex deleted.
pub struct ClassMap {
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl ClassMap {
    pub fn new(model: &Model) -> Self {
        let k = model.vertex_count() - 1;
        let mut lap = vec![vec![0i128; k]; k];
        for v in 0..k {
            for &(w, m) in model.neighbors(v) {
                lap[v][v] += m as i128;
                if w < k {
                    lap[v][w] -= m as i128;
                }
            }
        }
        let det_l = det(lap.clone());
        assert_ne!(det_l, 0, "connected graph has invertible reduced Laplacian");
        let mut adj = vec![vec![0i128; k]; k];
        for i in 0..k {
            for j in 0..k {
                let minor: Vec<Vec<i128>> = (0..k)
                    .filter(|&r| r != j)
                    .map(|r| (0..k).filter(|&c| c != i).map(|c| lap[r][c]).collect())
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[i][j] = sign * det(minor);
            }
        }
        ClassMap { adj, det: det_l.abs() }
    }

    /// Equal for divisors of equal degree exactly when they are equivalent.
    pub fn class(&self, d: &Divisor) -> Vec<i128> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(&d.0).map(|(a, &c)| a * c as i128).sum::<i128>().rem_euclid(self.det))
            .collect()
    }

    pub fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> bool {
        d1.degree() == d2.degree() && self.class(d1) == self.class(d2)
    }

    /// `D - v` is equivalent to an effective divisor for every vertex `v`.
    pub fn rank_positive(&self, d: &Divisor) -> bool {
        let n = d.0.len();
        let pool: HashSet<Vec<i128>> = effective(n, d.degree() - 1).into_iter().map(|c| self.class(&Divisor(c))).collect();
        (0..n).all(|v| {
            let mut e = d.clone();
            e.0[v] -= 1;
            pool.contains(&self.class(&e))
        })
    }

    /// Smallest degree of an effective divisor with positive rank.
    pub fn gonality(&self, n: usize) -> i64 {
        (1..)
            .find(|&k| {
                let pool: HashSet<Vec<i128>> = effective(n, k - 1).into_iter().map(|c| self.class(&Divisor(c))).collect();
                effective(n, k).into_iter().any(|c| {
                    (0..n).all(|v| {
                        let mut e = Divisor(c.clone());
                        e.0[v] -= 1;
                        pool.contains(&self.class(&e))
                    })
                })
            })
            .unwrap()
    }
}

/// Equivalence on a single pair.
pub fn cramer_equivalent(model: &Model, d1: &Divisor, d2: &Divisor) -> bool {
    ClassMap::new(model).equivalent(d1, d2)
}

/// Effective divisors of degree `deg` on `n` points.
pub fn effective(n: usize, deg: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in effective(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Graph isomorphism over all vertex bijections, comparing sorted edge lists.
pub fn permutation_isomorphic(a: &latgon_core::chipgraph::MetricGraph, b: &latgon_core::chipgraph::MetricGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let key = |e: (usize, usize, u64)| (e.0.min(e.1), e.0.max(e.1), e.2);
    let mut target: Vec<_> = b.edges().iter().map(|e| key((e.u, e.v, e.length))).collect();
    target.sort();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut mapped: Vec<_> = a.edges().iter().map(|e| key((perm[e.u], perm[e.v], e.length))).collect();
        mapped.sort();
        if mapped == target {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

use rayon::prelude::*;

use super::reduce::{burn, reduce};
use super::{Divisor, GraphError, MetricGraph, Model};

/// Nondecreasing index lists of length `k` over `0..n`, in lexicographic order.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Whether `|D - E|` is nonempty for every effective `E` of degree `r` on model vertices.
pub fn rank_at_least(model: &Model, d: &Divisor, r: usize) -> Result<bool, GraphError> {
    d.check(model)?;
    if r == 0 {
        let q = model.base_vertex();
        return Ok(reduce(model, d, q).0[q] >= 0);
    }
    if d.degree() < r as i64 {
        return Ok(false);
    }
    let n = model.vertex_count();
    Ok(multisets(n, r).into_par_iter().all(|e| {
        let mut diff = d.clone();
        for &p in &e {
            diff.0[p] -= 1;
        }
        let q = e[0];
        reduce(model, &diff, q).0[q] >= 0
    }))
}

/// Largest `r` with [`rank_at_least`], or `-1` when `|D|` is empty.
pub fn rank(model: &Model, d: &Divisor) -> Result<i64, GraphError> {
    let mut r = 0;
    while rank_at_least(model, d, r)? {
        r += 1;
    }
    Ok(r as i64 - 1)
}

/// Rank at least one, for a `q0`-reduced effective divisor with a chip at `q0`:
/// it suffices that the `p`-reduced form keeps a chip at every `p`.
fn moves_everywhere(model: &Model, d: &Divisor) -> bool {
    (0..model.vertex_count()).all(|p| d.0[p] > 0 || reduce(model, d, p).0[p] > 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalityResult {
    pub gonality: usize,
    pub level: u64,
    /// Lexicographically first `q0`-reduced rank-one divisor of minimal degree.
    pub witness: Divisor,
}

/// Minimal degree of a rank-one divisor supported on the model vertices at level `N`.
///
/// Each class of effective divisors has exactly one `q0`-reduced member, and
/// a rank-one class has a member containing `q0`, so only `q0`-reduced
/// divisors `q0 + E` are tried.
pub fn gonality(graph: &MetricGraph, level: u64) -> Result<GonalityResult, GraphError> {
    let model = super::expand_model(graph, level)?;
    let q0 = model.base_vertex();
    let n = model.vertex_count();
    for deg in 1.. {
        let found = multisets(n, deg - 1).into_par_iter().find_first(|e| {
            let mut d = Divisor::zero(&model);
            d.0[q0] = 1;
            for &p in e {
                d.0[p] += 1;
            }
            !burn(&model, &d, q0).iter().any(|&u| u) && moves_everywhere(&model, &d)
        });
        if let Some(e) = found {
            let mut d = Divisor::zero(&model);
            d.0[q0] = 1;
            for &p in &e {
                d.0[p] += 1;
            }
            return Ok(GonalityResult { gonality: deg, level, witness: d });
        }
    }
    unreachable!("a divisor of degree |V| + |E| has rank one")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chipgraph::{expand_model, layered_path_graph};

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(5, 3).len(), 35);
        assert_eq!(multisets(3, 2)[1], vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        let m = expand_model(&layered_path_graph(2), 1).unwrap();
        let zero = Divisor::zero(&m);
        assert_eq!(rank_at_least(&m, &zero, 0), Ok(true));
        assert_eq!(rank_at_least(&m, &zero, 1), Ok(false));
        assert_eq!(rank(&m, &zero), Ok(0));
        let m2 = expand_model(&layered_path_graph(2), 2).unwrap();
        assert_eq!(rank_at_least(&m2, &Divisor::from_points(&m2, &[0]), 1), Ok(false));
        assert_eq!(rank(&m2, &Divisor(vec![-1, 0, 0, 0])), Ok(-1));
        for n in 1..=3 {
            let m = expand_model(&layered_path_graph(2), n).unwrap();
            let k = m.vertex_count();
            for i in 0..k {
                for j in i..k {
                    assert_eq!(rank(&m, &Divisor::from_points(&m, &[i, j])), Ok(1));
                }
            }
        }
        let m3 = expand_model(&layered_path_graph(3), 1).unwrap();
        assert_eq!(rank(&m3, &Divisor(vec![1, 1, 1])), Ok(1));
    }

    #[test]
    fn gonality_examples() {
        for r in 2..=4 {
            assert_eq!(gonality(&layered_path_graph(r), 1).unwrap().gonality, r);
        }
        let tree = MetricGraph::new(["a", "b", "c"], [("a", "b", 2), ("b", "c", 1)]).unwrap();
        assert_eq!(gonality(&tree, 2).unwrap().gonality, 1);
        let g = gonality(&layered_path_graph(2), 3).unwrap();
        assert_eq!(g.gonality, 2);
        assert_eq!(g.witness.degree(), 2);
        assert_eq!(layered_path_graph(1).vertex_count(), 1);
        assert_eq!(gonality(&layered_path_graph(1), 1).unwrap().gonality, 1);
    }
}

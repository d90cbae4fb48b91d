use std::collections::VecDeque;

use super::{Divisor, GraphError, Model};

/// Runs the burning process from `q` and returns the unburnt vertices.
///
/// A vertex catches fire once the number of burning edges reaching it
/// exceeds its chip count. An empty result means `d` is `q`-reduced.
pub fn dhar_burn(model: &Model, d: &Divisor, q: usize) -> Result<Vec<bool>, GraphError> {
    d.check(model)?;
    if let Some(v) = (0..d.0.len()).find(|&v| v != q && d.0[v] < 0) {
        return Err(GraphError::NegativeAwayFromBase(model.label(v).to_string()));
    }
    Ok(burn(model, d, q))
}

pub(crate) fn burn(model: &Model, d: &Divisor, q: usize) -> Vec<bool> {
    let n = model.vertex_count();
    let mut unburnt = vec![true; n];
    let mut heat = vec![0i64; n];
    unburnt[q] = false;
    let mut queue = VecDeque::from([q]);
    while let Some(x) = queue.pop_front() {
        for &(y, m) in model.neighbors(x) {
            if !unburnt[y] {
                continue;
            }
            heat[y] += m;
            if heat[y] > d.0[y] {
                unburnt[y] = false;
                queue.push_back(y);
            }
        }
    }
    unburnt
}

/// How the unburnt set is fired during reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FiringStrategy {
    /// Once per burning round.
    Single,
    /// As many times as stays effective away from the base vertex.
    #[default]
    Batched,
}

/// The unique `q`-reduced divisor equivalent to `d`.
pub fn reduce(model: &Model, d: &Divisor, q: usize) -> Divisor {
    reduce_with(model, d, q, FiringStrategy::default())
}

pub fn reduce_with(model: &Model, d: &Divisor, q: usize, strategy: FiringStrategy) -> Divisor {
    let mut d = d.clone();
    make_effective_away(model, &mut d, q);
    loop {
        let unburnt = burn(model, &d, q);
        if !unburnt.iter().any(|&u| u) {
            return d;
        }
        let times = match strategy {
            FiringStrategy::Single => 1,
            FiringStrategy::Batched => legal_multiple(model, &d, &unburnt),
        };
        model.fire(&mut d, &unburnt, times);
    }
}

/// Fires the balls `{dist(q, .) < k}` for `k` from the outermost layer
/// inwards until every vertex of layer `k` is nonnegative.
fn make_effective_away(model: &Model, d: &mut Divisor, q: usize) {
    let dist = model.distances(q);
    let max = dist.iter().copied().max().unwrap_or(0);
    for k in (1..=max).rev() {
        let mut times = 0;
        for v in (0..dist.len()).filter(|&v| dist[v] == k && d.0[v] < 0) {
            let inward: i64 = model.neighbors(v).iter().filter(|&&(w, _)| dist[w] == k - 1).map(|&(_, m)| m).sum();
            times = times.max((-d.0[v] + inward - 1) / inward);
        }
        if times > 0 {
            let ball: Vec<bool> = dist.iter().map(|&x| x < k).collect();
            model.fire(d, &ball, times);
        }
    }
}

/// Largest `t` such that firing `set` `t` times keeps it nonnegative.
fn legal_multiple(model: &Model, d: &Divisor, set: &[bool]) -> i64 {
    let mut t = i64::MAX;
    for v in (0..set.len()).filter(|&v| set[v]) {
        let out: i64 = model.neighbors(v).iter().filter(|&&(w, _)| !set[w]).map(|&(_, m)| m).sum();
        if out > 0 {
            t = t.min(d.0[v] / out);
        }
    }
    t.max(1)
}

/// Compares reductions at the model's base vertex.
pub fn divisors_equivalent(model: &Model, d1: &Divisor, d2: &Divisor) -> Result<bool, GraphError> {
    d1.check(model)?;
    d2.check(model)?;
    if d1.degree() != d2.degree() {
        return Err(GraphError::DegreeMismatch(d1.degree(), d2.degree()));
    }
    let q = model.base_vertex();
    Ok(reduce(model, d1, q) == reduce(model, d2, q))
}

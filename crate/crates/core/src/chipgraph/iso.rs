use std::collections::BTreeMap;

use super::MetricGraph;

/// Sorted edge lengths between each unordered pair.
fn pair_lengths(g: &MetricGraph) -> BTreeMap<(usize, usize), Vec<u64>> {
    let mut map: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for e in g.edges() {
        map.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(e.length);
    }
    for v in map.values_mut() {
        v.sort_unstable();
    }
    map
}

fn signatures(g: &MetricGraph) -> Vec<Vec<u64>> {
    let mut sig = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        sig[e.u].push(e.length);
        sig[e.v].push(e.length);
    }
    for s in &mut sig {
        s.sort_unstable();
    }
    sig
}

/// Multigraph isomorphism preserving edge lengths, by backtracking over
/// vertices with matching incident-length signatures.
pub fn graph_isomorphic(g1: &MetricGraph, g2: &MetricGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let (s1, s2) = (signatures(g1), signatures(g2));
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return false;
    }
    let (p1, p2) = (pair_lengths(g1), pair_lengths(g2));
    let n = g1.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
        s: (&[Vec<u64>], &[Vec<u64>]),
        p: (&BTreeMap<(usize, usize), Vec<u64>>, &BTreeMap<(usize, usize), Vec<u64>>),
    ) -> bool {
        let n = map.len();
        if v == n {
            return true;
        }
        let empty = Vec::new();
        for w in 0..n {
            if used[w] || s.0[v] != s.1[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let a = p.0.get(&(u.min(v), u.max(v))).unwrap_or(&empty);
                let (x, y) = (map[u], w);
                let b = p.1.get(&(x.min(y), x.max(y))).unwrap_or(&empty);
                a == b
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(v + 1, map, used, s, p) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    extend(0, &mut map, &mut used, (&s1, &s2), (&p1, &p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chipgraph::{expand_model, layered_path_graph};

    #[test]
    fn isomorphism_examples() {
        let g3 = layered_path_graph(3);
        let relabeled = MetricGraph::new(
            ["c", "a", "b"],
            [("b", "c", 1), ("a", "b", 1), ("c", "b", 1), ("a", "b", 1), ("b", "a", 1)],
        )
        .unwrap();
        assert!(graph_isomorphic(&g3, &relabeled));
        let four_cycle = MetricGraph::new(["a", "b", "c", "d"], [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)]).unwrap();
        assert!(!graph_isomorphic(&layered_path_graph(2), &four_cycle));
        assert!(graph_isomorphic(&expand_model(&layered_path_graph(2), 2).unwrap().to_graph(), &four_cycle));
        let stretched = MetricGraph::new(["a", "b"], [("a", "b", 1), ("a", "b", 3)]).unwrap();
        let other = MetricGraph::new(["a", "b"], [("a", "b", 2), ("a", "b", 2)]).unwrap();
        assert!(!graph_isomorphic(&stretched, &other));
    }

    #[test]
    fn same_signatures_different_graphs() {
        // K33 and the triangular prism are both 3-regular on six vertices
        let k33 = MetricGraph::new(
            ["a", "b", "c", "x", "y", "z"],
            ["x", "y", "z"].into_iter().flat_map(|t| ["a", "b", "c"].map(|s| (s, t, 1))),
        )
        .unwrap();
        let prism = MetricGraph::new(
            ["a", "b", "c", "x", "y", "z"],
            [("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("x", "y", 1), ("y", "z", 1), ("z", "x", 1), ("a", "x", 1), ("b", "y", 1), ("c", "z", 1)],
        )
        .unwrap();
        assert!(!graph_isomorphic(&k33, &prism));
        assert!(graph_isomorphic(&prism, &prism));
        let k4 = MetricGraph::new(
            ["a", "b", "c", "d"],
            [("a", "b", 1), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)],
        )
        .unwrap();
        let prism_half = MetricGraph::new(
            ["a", "b", "c", "d"],
            [("a", "b", 2), ("a", "c", 1), ("a", "d", 1), ("b", "c", 1), ("b", "d", 1), ("c", "d", 1)],
        )
        .unwrap();
        assert!(graph_isomorphic(&k4, &k4));
        assert!(!graph_isomorphic(&k4, &prism_half));
    }
}

use std::collections::BTreeSet;

use super::MetricGraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, pairs: &[(usize, usize)], mult: &[usize]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if mult[k] > 0 {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
    }
    let r = find(&mut comp, 0);
    (0..n).all(|x| find(&mut comp, x) == r)
}

/// Connected loopless multigraphs with unit edges, `1..=max_vertices`
/// vertices and at most `max_edges` edges, one per isomorphism class.
pub fn small_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<MetricGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut mult = vec![0usize; pairs.len()];
        loop {
            let total: usize = mult.iter().sum();
            if total <= max_edges && connected(n, &pairs, &mult) {
                let key = perms
                    .iter()
                    .map(|p| {
                        let mut m = vec![0; pairs.len()];
                        for (k, &(a, b)) in pairs.iter().enumerate() {
                            let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                            let idx = pairs.iter().position(|&q| q == (x, y)).expect("pair exists");
                            m[idx] = mult[k];
                        }
                        m
                    })
                    .min()
                    .expect("at least one permutation");
                if seen.insert(key.clone()) {
                    let labels = (0..n).map(|i| format!("v{}", i + 1)).collect();
                    let mut edges = Vec::new();
                    for (k, &(a, b)) in pairs.iter().enumerate() {
                        edges.extend(std::iter::repeat_n((a, b, 1), key[k]));
                    }
                    out.push(MetricGraph::from_indices(labels, edges).expect("checked connected"));
                }
            }
            // odometer over multiplicities 0..=max_edges
            let mut i = 0;
            while i < mult.len() {
                mult[i] += 1;
                if mult.iter().sum::<usize>() <= max_edges {
                    break;
                }
                mult[i] = 0;
                i += 1;
            }
            if i == mult.len() {
                break;
            }
        }
    }
    out
}

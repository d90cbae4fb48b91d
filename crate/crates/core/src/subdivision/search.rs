use std::collections::HashSet;

use rayon::prelude::*;

use super::{lower_planes, subdivide, HeightFunction, RegularSubdivision};
use crate::polygon::{lattice_points, LatticePolygon};

/// Exhaustive search over integer heights `0..=max_height` on every lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftSearch {
    pub max_height: i64,
    /// Stop after this many distinct triangulations.
    pub cap: usize,
}

/// Distinct unimodular triangulations reached by the search, each with the
/// first height vector (in base-`(max_height+1)` counting order) producing it.
///
/// A lift is kept when every lower facet contains exactly three lifted
/// points spanning a unimodular triangle. Triangulations are distinguished by
/// their cells together with the chain lengths of their adjacencies.
pub fn unimodular_lifts(base: &LatticePolygon, search: LiftSearch) -> Vec<(HeightFunction, RegularSubdivision)> {
    let points = lattice_points(base);
    let n = points.len();
    let radix = (search.max_height + 1) as u64;
    let total = radix.checked_pow(n as u32).expect("search space fits in u64");
    let triangles = base.double_area() as usize;
    let decode = |mut idx: u64| -> Vec<i64> {
        let mut h = vec![0; n];
        for slot in h.iter_mut().rev() {
            *slot = (idx % radix) as i64;
            idx /= radix;
        }
        h
    };

    let hits: Vec<(u64, Vec<[usize; 3]>)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let h = decode(idx);
            let lifted: Vec<[i64; 3]> = points.iter().zip(&h).map(|(p, &z)| [p.x, p.y, z]).collect();
            let planes = lower_planes(&lifted);
            if planes.len() != triangles {
                return None;
            }
            let mut cells = Vec::with_capacity(triangles);
            for [nx, ny, nz, off] in &planes {
                let on: Vec<usize> = (0..n).filter(|&i| nx * lifted[i][0] + ny * lifted[i][1] + nz * lifted[i][2] == *off).collect();
                if on.len() != 3 {
                    return None;
                }
                let (a, b, c) = (points[on[0]], points[on[1]], points[on[2]]);
                if (b - a).cross(c - a).abs() != 1 {
                    return None;
                }
                cells.push([on[0], on[1], on[2]]);
            }
            cells.sort_unstable();
            Some((idx, cells))
        })
        .collect();

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (idx, _) in hits {
        let heights = decode(idx);
        let hf = HeightFunction::new(base.clone(), points.iter().copied().zip(heights)).expect("total heights");
        let s = subdivide(&hf).expect("unimodular cells are integral");
        let key = (
            s.cells.iter().map(|c| c.polygon.clone()).collect::<Vec<_>>(),
            s.adjacencies.iter().map(|a| (a.cells, a.chain_length)).collect::<Vec<_>>(),
        );
        if seen.insert(key) {
            out.push((hf, s));
            if out.len() >= search.cap {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{rect, standard_simplex};

    #[test]
    fn square_has_two_triangulations() {
        // each diagonal appears once with chain length 1 and once with 2
        let found = unimodular_lifts(&rect(1, 1), LiftSearch { max_height: 1, cap: 100 });
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|(_, s)| s.is_unimodular() && s.cells.len() == 2));
        let diagonals: HashSet<_> = found.iter().map(|(_, s)| s.adjacencies[0].edge).collect();
        assert_eq!(diagonals.len(), 2);
        let mut d: Vec<i64> = found.iter().map(|(_, s)| s.adjacencies[0].chain_length).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 2, 2]);
    }

    #[test]
    fn cap_is_respected() {
        let found = unimodular_lifts(&standard_simplex(2), LiftSearch { max_height: 2, cap: 3 });
        assert_eq!(found.len(), 3);
    }
}

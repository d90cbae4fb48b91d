use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Divisor, Model};

/// Whether `d1 - d2` lies in the integer image of the model's Laplacian.
///
/// The reduced Laplacian (base row and column removed) is invertible for a
/// connected graph; the difference is equivalent to zero iff the unique
/// rational solution with zero potential at the base is integral.
pub fn laplacian_equivalent(model: &Model, d1: &Divisor, d2: &Divisor) -> bool {
    if d1.degree() != d2.degree() {
        return false;
    }
    let q = model.base_vertex();
    let keep: Vec<usize> = (0..model.vertex_count()).filter(|&v| v != q).collect();
    let n = keep.len();
    if n == 0 {
        return true;
    }
    let mut pos = vec![usize::MAX; model.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let zero = BigRational::zero();
    let mut a = vec![vec![zero.clone(); n + 1]; n];
    for (i, &v) in keep.iter().enumerate() {
        a[i][i] = BigRational::from_integer(BigInt::from(model.degree(v)));
        for &(w, m) in model.neighbors(v) {
            if w != q {
                a[i][pos[w]] -= BigRational::from_integer(BigInt::from(m));
            }
        }
        a[i][n] = BigRational::from_integer(BigInt::from(d1.0[v] - d2.0[v]));
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("reduced Laplacian is nonsingular");
        a.swap(col, pivot);
        let inv = BigRational::one() / &a[col][col];
        for c in col..=n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    a.iter().all(|row| row[n].is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chipgraph::{expand_model, layered_path_graph};

    #[test]
    fn oracle_on_two_cycle() {
        let m = expand_model(&layered_path_graph(2), 1).unwrap();
        assert!(laplacian_equivalent(&m, &Divisor(vec![2, 0]), &Divisor(vec![0, 2])));
        assert!(!laplacian_equivalent(&m, &Divisor(vec![2, 0]), &Divisor(vec![1, 1])));
        assert!(!laplacian_equivalent(&m, &Divisor(vec![2, 0]), &Divisor(vec![1, 0])));
    }

    #[test]
    fn oracle_on_subdivided_cycle() {
        // the 4-cycle has Jacobian Z/4: a point minus its neighbour has order 4
        let m = expand_model(&layered_path_graph(2), 2).unwrap();
        let p = |i: usize| Divisor::from_points(&m, &[i]);
        assert!(!laplacian_equivalent(&m, &p(0), &p(2)));
        let k = |i: usize, c: usize| Divisor::from_points(&m, &vec![i; c]);
        assert!(!laplacian_equivalent(&m, &k(0, 2), &k(2, 2)));
        assert!(laplacian_equivalent(&m, &k(0, 4), &k(2, 4)));
        // antipodal points differ by twice a generator
        assert!(laplacian_equivalent(&m, &k(0, 2), &k(1, 2)));
    }
}

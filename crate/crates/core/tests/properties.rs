mod common;

use proptest::prelude::*;

use latgon_core::chipgraph::{
    dhar_burn, divisors_equivalent, expand_model, laplacian_equivalent, rank, reduce, reduce_with, small_multigraphs,
    Divisor, FiringStrategy, MetricGraph, Model,
};
use latgon_core::polygon::{
    apply_map, are_equivalent, canonical_form, genus, lattice_point_count, lattice_width, lattice_width_recursive,
    AffineLatticeMap, LatticePolygon, Point,
};
use latgon_core::subdivision::{subdivide, HeightFunction};

fn polygon() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 3..8)
        .prop_map(LatticePolygon::from_points)
        .prop_filter("two-dimensional", |p| p.dimension() == 2)
}

fn unimodular() -> impl Strategy<Value = AffineLatticeMap> {
    (prop::collection::vec((0u8..3, -2i64..=2), 0..6), -6i64..=6, -6i64..=6).prop_map(|(steps, tx, ty)| {
        let mut m = AffineLatticeMap::translation_by(Point::new(tx, ty));
        for (kind, k) in steps {
            let step = match kind {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                _ => [[0, 1], [1, 0]],
            };
            m = AffineLatticeMap::new(step, Point::new(0, 0)).unwrap().compose(&m);
        }
        m
    })
}

fn graphs() -> Vec<MetricGraph> {
    small_multigraphs(4, 6)
}

fn model_and_divisor(max_level: u64, lo: i64, hi: i64) -> impl Strategy<Value = (Model, Divisor, usize)> {
    let count = graphs().len();
    (0..count, 1..=max_level).prop_flat_map(move |(g, level)| {
        let m = expand_model(&graphs()[g], level).unwrap();
        let n = m.vertex_count();
        (Just(m), prop::collection::vec(lo..=hi, n), 0..n).prop_map(|(m, c, q)| (m, Divisor(c), q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn width_is_unimodular_invariant(p in polygon(), m in unimodular()) {
        let q = apply_map(&p, &m);
        prop_assert_eq!(lattice_width(&q).width, lattice_width(&p).width);
        prop_assert_eq!(lattice_width(&p).width, common::width_by_directions(&p, 12));
        prop_assert_eq!(lattice_width_recursive(&p), lattice_width(&p).width);
    }

    #[test]
    fn pick_agrees_with_scanned_counts(p in polygon()) {
        let (inside, total) = common::scanned_point_count(&p);
        prop_assert_eq!(genus(&p), inside);
        prop_assert_eq!(lattice_point_count(&p), total);
        prop_assert_eq!(2 * genus(&p), p.double_area() - p.boundary_point_count() + 2);
    }

    #[test]
    fn canonical_form_is_a_class_invariant(p in polygon(), m in unimodular()) {
        let q = apply_map(&p, &m);
        prop_assert_eq!(canonical_form(&p), canonical_form(&q));
        let witness = are_equivalent(&p, &q).expect("images are equivalent");
        prop_assert_eq!(apply_map(&p, &witness), q);
    }

    #[test]
    fn reduction_is_idempotent_unique_and_degree_preserving((m, d, q) in model_and_divisor(3, -3, 4)) {
        let r = reduce(&m, &d, q);
        prop_assert_eq!(r.degree(), d.degree());
        prop_assert!(r.0.iter().enumerate().all(|(v, &c)| v == q || c >= 0));
        prop_assert!(dhar_burn(&m, &r, q).unwrap().iter().all(|&u| !u));
        prop_assert_eq!(reduce(&m, &r, q), r.clone());
        prop_assert_eq!(reduce_with(&m, &d, q, FiringStrategy::Single), r);
    }

    #[test]
    fn equivalence_is_an_equivalence_relation((m, d, _q) in model_and_divisor(2, -2, 3), fire in prop::collection::vec(any::<bool>(), 40), times in 1i64..3) {
        let set: Vec<bool> = fire.into_iter().cycle().take(m.vertex_count()).collect();
        let mut e = d.clone();
        m.fire(&mut e, &set, times);
        prop_assert_eq!(divisors_equivalent(&m, &d, &d), Ok(true));
        prop_assert_eq!(divisors_equivalent(&m, &d, &e), Ok(true));
        prop_assert_eq!(divisors_equivalent(&m, &e, &d), Ok(true));
        prop_assert!(laplacian_equivalent(&m, &d, &e));
        let mut f = e.clone();
        f.0[0] += 1;
        f.0[m.vertex_count() - 1] -= 1;
        prop_assert_eq!(divisors_equivalent(&m, &d, &f).unwrap(), divisors_equivalent(&m, &e, &f).unwrap());
        prop_assert_eq!(divisors_equivalent(&m, &d, &f).unwrap(), common::cramer_equivalent(&m, &d, &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn rank_drops_by_at_most_one((m, d, p) in model_and_divisor(1, 0, 2)) {
        let r = rank(&m, &d).unwrap();
        let mut e = d.clone();
        e.0[p] -= 1;
        let s = rank(&m, &e).unwrap();
        prop_assert!(s <= r && r <= s + 1, "r(D) = {}, r(D - p) = {}", r, s);
        e.0[p] += 2;
        prop_assert!(rank(&m, &e).unwrap() >= r);
    }

    #[test]
    fn subdivision_tiles_the_base(p in polygon(), seed in prop::collection::vec(0i64..6, 81), shift in (-3i64..=3, -3i64..=3, -5i64..=5)) {
        let h = HeightFunction::from_fn(p.clone(), |q| {
            let i = ((q.x + 4) * 9 + (q.y + 4)) as usize;
            seed[i] + q.x * q.x + q.y * q.y
        });
        let s = subdivide(&h);
        prop_assume!(s.is_ok(), "non-integral cell");
        let s = s.unwrap();
        let area: i64 = s.cells.iter().map(|c| c.polygon.double_area()).sum();
        prop_assert_eq!(area, p.double_area());
        for c in &s.cells {
            for &v in c.polygon.vertices() {
                prop_assert_eq!(c.affine.eval(v), h.get(v).unwrap());
            }
        }
        for a in &s.adjacencies {
            let (x, y) = (s.cells[a.cells.0].affine, s.cells[a.cells.1].affine);
            prop_assert_eq!(a.chain_length, num_integer::gcd(x.alpha - y.alpha, x.beta - y.beta));
        }
        let (a, b, c) = shift;
        let shifted = HeightFunction::from_fn(p.clone(), |q| h.get(q).unwrap() + a * q.x + b * q.y + c);
        let t = subdivide(&shifted).unwrap();
        let cells = |s: &latgon_core::subdivision::RegularSubdivision| s.cells.iter().map(|c| c.polygon.clone()).collect::<Vec<_>>();
        prop_assert_eq!(cells(&s), cells(&t));
        let chains = |s: &latgon_core::subdivision::RegularSubdivision| s.adjacencies.iter().map(|a| (a.cells, a.chain_length)).collect::<Vec<_>>();
        prop_assert_eq!(chains(&s), chains(&t));
        prop_assert_eq!(&s.above_hull, &t.above_hull);
    }
}

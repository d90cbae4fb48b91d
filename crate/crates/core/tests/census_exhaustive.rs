mod common;

use latgon_core::census::{enumerate_polygons, two_dimensional_levels, CensusQuery};
use latgon_core::polygon::{is_interior_polygon, lattice_point_count};

#[test]
fn growth_matches_box_brute_force() {
    let small = common::box_census(7, 6);
    let large = common::box_census(8, 6);
    assert_eq!(small, large, "box census has not stabilised");
    let levels = two_dimensional_levels(6);
    for n in 3..=6 {
        assert_eq!(levels[(n - 3) as usize], large[&n], "{n} points");
    }
}

#[test]
fn level_counts() {
    let counts: Vec<usize> = two_dimensional_levels(13).iter().map(|l| l.len()).collect();
    assert_eq!(counts, [1, 3, 6, 13, 21, 41, 67, 111, 175, 286, 419]);
}

#[test]
fn interior_query_filters_levels() {
    let q = CensusQuery::new(3, 13, true, true).unwrap();
    let classes = enumerate_polygons(&q);
    assert_eq!(classes.len(), 176);
    let expected: usize = two_dimensional_levels(13)
        .iter()
        .flatten()
        .filter(|p| is_interior_polygon(p).unwrap())
        .count();
    assert_eq!(classes.len(), expected);
    assert!(classes.windows(2).all(|w| lattice_point_count(&w[0]) <= lattice_point_count(&w[1])));
}

mod common;

use common::{polygon_strategy, pt};
use proptest::prelude::*;
use sightline_core::geom::{kernel, point_location, segment_in_closure, Location};
use sightline_core::visibility::{self, vertices_visible};
use sightline_core::{Point, Polygon, Segment, Sign};

fn cross_i128(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128
}

fn coord() -> impl Strategy<Value = (i64, i64)> {
    (-1_000_000i64..=1_000_000, -1_000_000i64..=1_000_000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orientation_matches_wide_integers(a in coord(), b in coord(), c in coord()) {
        let o = kernel::orient(&pt(a.0, a.1), &pt(b.0, b.1), &pt(c.0, c.1));
        let expect = Sign::from_ordering(cross_i128(a, b, c).cmp(&0));
        prop_assert_eq!(o, expect);
        prop_assert_eq!(kernel::orient(&pt(b.0, b.1), &pt(a.0, a.1), &pt(c.0, c.1)), expect.flip());
        prop_assert_eq!(kernel::orient(&pt(b.0, b.1), &pt(c.0, c.1), &pt(a.0, a.1)), expect);
    }

    #[test]
    fn simplicity_ignores_rotation_and_reversal(
        raw in prop::collection::vec((0i64..6, 0i64..6), 3..8),
        shift in 0usize..8,
    ) {
        let v: Vec<Point> = raw.iter().map(|&(x, y)| pt(x, y)).collect();
        let simple = kernel::check_simple(&v).is_ok();
        let mut rotated = v.clone();
        rotated.rotate_left(shift % v.len());
        let mut reversed = v.clone();
        reversed.reverse();
        prop_assert_eq!(kernel::check_simple(&rotated).is_ok(), simple);
        prop_assert_eq!(kernel::check_simple(&reversed).is_ok(), simple);
    }

    #[test]
    fn local_simplicity_check_agrees(poly in polygon_strategy(8, 6), k in 0usize..8, x in -7i64..=7, y in -7i64..=7) {
        let k = k % poly.len();
        let mut v = poly.vertices().to_vec();
        v[k] = pt(x, y);
        prop_assert_eq!(kernel::check_simple_after_move(&v, k).is_ok(), kernel::check_simple(&v).is_ok());
    }

    #[test]
    fn edges_lie_in_the_closure(poly in polygon_strategy(10, 8)) {
        for i in 0..poly.len() {
            let e = poly.edge(i);
            prop_assert!(segment_in_closure(&poly, &e));
        }
    }

    #[test]
    fn vertices_are_on_the_boundary(poly in polygon_strategy(10, 8)) {
        for p in poly.vertices() {
            prop_assert_eq!(point_location(&poly, p), Location::Boundary);
        }
    }

    #[test]
    fn caller_order_survives_normalization(poly in polygon_strategy(9, 8)) {
        let mut cw = poly.caller_order();
        cw[1..].reverse();
        let back = Polygon::new(cw.clone()).unwrap();
        prop_assert_eq!(&back, &poly);
        prop_assert_eq!(back.caller_order(), cw);
        for i in 0..back.len() {
            prop_assert_eq!(back.internal_index(back.caller_index(i)), i);
        }
    }

    #[test]
    fn visibility_is_symmetric_and_never_adjacent(poly in polygon_strategy(9, 8)) {
        let n = poly.len();
        let g = visibility::visibility_graph(&poly);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = vertices_visible(&poly, i, j).unwrap();
                prop_assert_eq!(v, vertices_visible(&poly, j, i).unwrap());
                prop_assert_eq!(v, g.is_visible(i, j));
                if poly.are_adjacent(i, j) {
                    prop_assert!(!v);
                }
            }
        }
        prop_assert!(g.nonvisible_count() >= n);
    }
}

#[test]
fn rejects_bow_tie_with_edge_pair() {
    let err = Polygon::from_ints(&[(0, 0), (2, 2), (2, 0), (0, 2)]).unwrap_err();
    assert!(matches!(err, sightline_core::GeomError::NotSimple { edge_a: 0, edge_b: 2 }));
}

#[test]
fn degenerate_segment_rejected() {
    assert!(Segment::new(pt(1, 1), pt(1, 1)).is_err());
}

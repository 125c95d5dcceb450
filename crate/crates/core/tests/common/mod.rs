#![allow(dead_code)]

use proptest::prelude::*;
use sightline_core::geom::kernel;
use sightline_core::{Point, Polygon};

pub fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

/// Angle order around the origin on i128, upper half-plane first.
fn angle_key(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

/// Lattice points sorted by angle around the origin, kept only if simple.
pub fn star_polygon(points: Vec<(i64, i64)>) -> Option<Polygon> {
    let mut pts = points;
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 || pts.contains(&(0, 0)) {
        return None;
    }
    pts.sort_by(|&a, &b| angle_key(a, b));
    if pts.windows(2).any(|w| angle_key(w[0], w[1]).is_eq()) {
        return None;
    }
    let v: Vec<Point> = pts.iter().map(|&(x, y)| pt(x, y)).collect();
    kernel::check_simple(&v).ok()?;
    Polygon::new(v).ok()
}

pub fn polygon_strategy(max_n: usize, r: i64) -> impl Strategy<Value = Polygon> {
    prop::collection::vec((-r..=r, -r..=r), 3..=max_n).prop_filter_map("not a simple star", star_polygon)
}

//! Seeded random simple polygons on an integer grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use sightline_core::geom::kernel;
use sightline_core::{Point, Polygon, Scalar};

pub const MAX_ATTEMPTS: u64 = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RandomError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFew(usize),
    #[error("no simple polygon after {MAX_ATTEMPTS} attempts")]
    Exhausted,
}

/// Upper half-plane first, then counter-clockwise by cross product.
fn angle_cmp(a: &Point, b: &Point) -> std::cmp::Ordering {
    let zero = Scalar::from_integer(0.into());
    let half = |p: &Point| if p.y > zero || (p.y == zero && p.x > zero) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a.x * &b.y - &a.y * &b.x;
        cross.cmp(&zero).reverse()
    })
}

fn attempt(n: usize, rng: &mut ChaCha8Rng) -> Option<Polygon> {
    let grid = (4 * n as i64).max(16);
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.random_range(0..grid), rng.random_range(0..grid));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let nn = Scalar::from_integer((n as i64).into());
    let cx = Scalar::from_integer(pts.iter().map(|p| p.0).sum::<i64>().into()) / &nn;
    let cy = Scalar::from_integer(pts.iter().map(|p| p.1).sum::<i64>().into()) / &nn;
    let rel = |p: &(i64, i64)| Point::new(Scalar::from_integer(p.0.into()) - &cx, Scalar::from_integer(p.1.into()) - &cy);
    let zero = Scalar::from_integer(0.into());
    if pts.iter().map(rel).any(|r| r.x == zero && r.y == zero) {
        return None;
    }
    pts.sort_by(|a, b| angle_cmp(&rel(a), &rel(b)));
    // Equal angles mean two points collinear with the centroid on one ray.
    if pts.windows(2).any(|w| angle_cmp(&rel(&w[0]), &rel(&w[1])).is_eq()) {
        return None;
    }
    let mut verts: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    // 2-opt: reversing the chain between two crossing edges removes the
    // crossing and strictly shortens the perimeter, so this terminates.
    for _ in 0..n * n * n + 16 {
        match kernel::check_simple(&verts) {
            Ok(()) => return Polygon::new(verts).ok(),
            Err((a, b)) => {
                let (a, b) = (a.min(b), a.max(b));
                if b == a + 1 || (a == 0 && b == n - 1) {
                    return None;
                }
                verts[a + 1..=b].reverse();
            }
        }
    }
    None
}

/// Deterministic in `(n, seed)`: distinct grid points sorted by angle around
/// their centroid, then untangled by 2-opt. Degenerate samples are redrawn
/// from the next sub-stream of the same seed.
pub fn random_simple_polygon(n: usize, seed: u64) -> Result<Polygon, RandomError> {
    if n < 3 {
        return Err(RandomError::TooFew(n));
    }
    for sub in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sub);
        if let Some(p) = attempt(n, &mut rng) {
            debug_assert!(kernel::check_simple(p.vertices()).is_ok());
            return Ok(p);
        }
    }
    Err(RandomError::Exhausted)
}

//! Critical tuples, the conservative safe radius, and the visibility-increasing
//! single-vertex move at a critical polygon.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::CriticalError;
use crate::geom::{kernel, Location, Point, Polygon, Pt, Segment};
use crate::motion::{Length, Orbit, SingleVertexMove};
use crate::scalar::{self, Scalar};
use crate::verifier::{self, Triple};

/// Collinear vertices, sorted along their line, whose spanning segment has no
/// exterior point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalTuple {
    pub indices: Vec<usize>,
    pub witness: Segment,
}

/// Maximal critical tuples. A collinear set whose hull crosses the exterior
/// still contributes its stretches that stay in the closure.
pub fn critical_tuples(poly: &Polygon) -> Vec<CriticalTuple> {
    let v = poly.vertices();
    kernel::critical_runs(v)
        .into_iter()
        .map(|run| {
            let a = v[run[0]].clone();
            let b = v[run[run.len() - 1]].clone();
            CriticalTuple { indices: run, witness: Segment { a, b } }
        })
        .collect()
}

/// Every critical triple, as sorted index triples.
pub fn critical_triples(poly: &Polygon) -> Vec<Triple> {
    let mut out = Vec::new();
    for run in kernel::critical_runs(poly.vertices()) {
        let m = run.len();
        for x in 0..m {
            for y in (x + 1)..m {
                for z in (y + 1)..m {
                    let mut t = [run[x], run[y], run[z]];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn is_critical(poly: &Polygon) -> bool {
    !kernel::critical_runs(poly.vertices()).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SafeRadiusMethod {
    /// The closed-form bound on a single polygon.
    ConservativeBound,
    /// Minimum of the closed-form bound over sampled polygons of a motion.
    Adaptive,
}

/// Which term of the bound attains the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SafeRadiusTerm {
    /// Smallest altitude of a non-collinear vertex triple.
    Altitude,
    /// Clearance of an exterior point on the hull of a non-critical collinear triple.
    Clearance,
    /// Distance from a vertex to an edge not incident to it.
    Separation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SafeRadius {
    /// Rational lower bound on the radius, within 2^-24 relative error.
    pub value: Scalar,
    /// Exact square of the radius the bound describes.
    pub squared: Scalar,
    pub term: SafeRadiusTerm,
    /// Vertices attaining the minimum: a triple, or a vertex followed by the
    /// two endpoints of an edge.
    pub witness: Vec<usize>,
    pub method: SafeRadiusMethod,
}

impl SafeRadius {
    pub fn length(&self) -> Length {
        Length::from_squared(self.squared.clone())
    }

    fn candidate(&mut self, sq4: Scalar, term: SafeRadiusTerm, witness: Vec<usize>) {
        // Terms arrive as the square of the unscaled quantity; the radius is a
        // quarter of it. The division happens once, in the caller.
        if sq4 < self.squared {
            self.squared = sq4;
            self.term = term;
            self.witness = witness;
        }
    }
}

/// `min(d1, d2, d3) / 4` over the polygon, ignoring the triples in `skip`.
///
/// `d1` is the smallest altitude of a non-collinear triple (the altitude onto
/// its longest side), `d2` the smallest clearance from the boundary of a point
/// in the exterior part of the hull of a non-critical collinear triple, and
/// `d3` the smallest distance from a vertex to a non-incident edge.
pub fn safe_radius_excluding(poly: &Polygon, skip: &[Triple]) -> SafeRadius {
    let v = poly.vertices();
    let n = v.len();
    let mut best = SafeRadius {
        value: Scalar::zero(),
        squared: Scalar::from_integer(i64::MAX.into()) * Scalar::from_integer(i64::MAX.into()),
        term: SafeRadiusTerm::Separation,
        witness: Vec::new(),
        method: SafeRadiusMethod::ConservativeBound,
    };
    let critical = critical_triples(poly);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let tri = [i, j, k];
                if skip.contains(&tri) {
                    continue;
                }
                let cross = kernel::cross3(&v[i], &v[j], &v[k]);
                if !cross.is_zero() {
                    let longest = [v[j].sub(&v[i]).norm2(), v[k].sub(&v[j]).norm2(), v[i].sub(&v[k]).norm2()]
                        .into_iter()
                        .max()
                        .expect("three sides");
                    best.candidate(&cross * &cross / longest, SafeRadiusTerm::Altitude, tri.to_vec());
                } else if critical.binary_search(&tri).is_err() {
                    if let Some(c) = exterior_clearance2(v, &tri) {
                        best.candidate(c, SafeRadiusTerm::Clearance, tri.to_vec());
                    }
                }
            }
        }
    }
    for i in 0..n {
        for e in 0..n {
            let f = (e + 1) % n;
            if e == i || f == i {
                continue;
            }
            let d = kernel::point_segment_dist2(&v[i], &v[e], &v[f]);
            best.candidate(d, SafeRadiusTerm::Separation, vec![i, e, f]);
        }
    }
    best.squared /= scalar::int(16);
    best.value = scalar::sqrt_lower(&best.squared);
    best
}

pub fn safe_radius(poly: &Polygon) -> SafeRadius {
    safe_radius_excluding(poly, &[])
}

/// Largest squared boundary distance among the midpoints of the exterior
/// pieces of the triple's hull segment.
fn exterior_clearance2(v: &[Point], tri: &Triple) -> Option<Scalar> {
    let [i, j, k] = *tri;
    let dir = v[j].sub(&v[i]);
    let mut idx = [i, j, k];
    idx.sort_by(|&p, &q| v[p].sub(&v[i]).dot(&dir).cmp(&v[q].sub(&v[i]).dot(&dir)));
    let (a, b) = (&v[idx[0]], &v[idx[2]]);
    kernel::classify_pieces(v, a, b)
        .into_iter()
        .filter(|(_, _, loc)| *loc == Location::Exterior)
        .map(|(s0, s1, _)| {
            let mid = Pt::lerp(a, b, &scalar::midpoint(&s0, &s1));
            kernel::boundary_dist2(v, &mid)
        })
        .max()
}

const MOVE_RETRIES: usize = 12;

/// A single-vertex move that keeps the polygon simple, loses no visible pair
/// and gains at least one.
///
/// A vertex strictly inside a critical run steps perpendicular to the run's
/// line by at most half the safe radius, first towards the side where the
/// polygon's exterior lies next to it. Each candidate is certified by the
/// verifier; the step is halved when no candidate certifies.
pub fn visibility_increasing_move(poly: &Polygon) -> Result<SingleVertexMove, CriticalError> {
    visibility_increasing_move_at(poly, &Scalar::zero())
}

/// As [`visibility_increasing_move`], with the move running over `[t0, t0 + 1]`.
pub fn visibility_increasing_move_at(poly: &Polygon, t0: &Scalar) -> Result<SingleVertexMove, CriticalError> {
    let runs = kernel::critical_runs(poly.vertices());
    if runs.is_empty() {
        return Err(CriticalError::NotCritical);
    }
    let v = poly.vertices();
    let t1 = t0 + Scalar::one();
    let mut h = scalar::pow2_floor(&scalar::half(&safe_radius(poly).value));
    let mut attempts = 0;
    for _ in 0..MOVE_RETRIES {
        for run in &runs {
            let a = &v[run[0]];
            let b = &v[run[run.len() - 1]];
            let dir = b.sub(a);
            let len_hi = scalar::pow2_sqrt_ceil(&dir.norm2());
            let normal = Pt::new(-dir.y.clone(), dir.x.clone()).scale(&(&h / &len_hi));
            let inner = &run[1..run.len() - 1];
            let outer = [run[0], run[run.len() - 1]];
            for &q in inner.iter().chain(outer.iter()) {
                let p = &v[q];
                let probe = Pt::new(-dir.y.clone(), dir.x.clone()).scale(&(&h / &len_hi / scalar::int(64)));
                let exterior_left = kernel::locate(v, &p.add(&probe)) == Location::Exterior;
                let sides = if exterior_left { [normal.clone(), normal.scale(&-Scalar::one())] } else { [normal.scale(&-Scalar::one()), normal.clone()] };
                for step in sides {
                    attempts += 1;
                    let target = p.add(&step);
                    let Ok(path) = Orbit::linear(t0.clone(), p.clone(), t1.clone(), target) else { continue };
                    let m = SingleVertexMove::new(q, path);
                    let Ok(cert) = verifier::verify_move(poly, &m) else { continue };
                    if cert.is_preserving() && cert.gained() > 0 {
                        return Ok(m);
                    }
                }
            }
        }
        h = scalar::half(&h);
    }
    Err(CriticalError::CertificationFailed { attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::visibility::nonvisible_pair_count;

    fn square() -> Polygon {
        Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn straight_quad() -> Polygon {
        Polygon::from_ints(&[(0, 0), (1, 0), (2, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn tuples_examples() {
        assert!(critical_tuples(&square()).is_empty());
        let t = critical_tuples(&straight_quad());
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].indices, vec![0, 1, 2]);
        assert_eq!(t[0].witness, Segment::new(Point::from_ints(0, 0), Point::from_ints(2, 0)).unwrap());
        // Four tips on y = 3 and two diagonals, all crossing the open notch.
        let comb = Polygon::from_ints(&[(0, 0), (6, 0), (6, 3), (4, 3), (4, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        assert!(critical_tuples(&comb).is_empty());
    }

    #[test]
    fn hexagon_vertex_on_long_diagonal_is_critical() {
        let hex = Polygon::from_ints(&[(2, 0), (4, 0), (6, 2), (4, 4), (2, 4), (0, 2)]).unwrap();
        assert!(!is_critical(&hex));
        // Vertex 1 pulled in onto the diagonal from (2, 0) to (6, 2).
        let moved = hex.with_vertex(1, Point::from_ints(4, 1)).unwrap();
        assert!(is_critical(&moved));
    }

    #[test]
    fn safe_radius_examples() {
        let sq = safe_radius(&square());
        assert_eq!(sq.squared, rat(1, 2) / int(16));
        assert_eq!(sq.term, SafeRadiusTerm::Altitude);
        let tri = Polygon::from_ints(&[(0, 0), (2, 0), (1, 1)]).unwrap();
        let r = safe_radius(&tri);
        assert_eq!(r.squared, rat(1, 16));
        assert_eq!(r.value, rat(1, 4));
    }

    #[test]
    fn safe_radius_shrinks_with_offset() {
        let with = |num: i64, den: i64| {
            Polygon::new(vec![
                Point::from_ints(0, 0),
                Point::from_ints(4, 0),
                Point::from_ints(4, 4),
                Pt::new(int(2), int(2) + rat(num, den)),
                Point::from_ints(0, 4),
            ])
            .unwrap()
        };
        let a = safe_radius(&with(1, 10));
        let b = safe_radius(&with(1, 100));
        assert!(b.squared < a.squared);
    }

    #[test]
    fn move_on_straight_quad() {
        let q = straight_quad();
        let m = visibility_increasing_move(&q).unwrap();
        assert_eq!(m.vertex, 1);
        let end = m.path.end_point();
        assert_eq!(end.x, int(1));
        assert!(end.y < int(0));
        let fin = m.apply(&q).unwrap();
        assert!(nonvisible_pair_count(&fin) < nonvisible_pair_count(&q));
        assert!(crate::visibility::vertices_visible(&fin, 0, 2).unwrap());
    }

    #[test]
    fn move_requires_critical_input() {
        assert_eq!(visibility_increasing_move(&square()), Err(CriticalError::NotCritical));
    }
}

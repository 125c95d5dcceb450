//! A best-effort convexifier: push one reflex vertex at a time toward or past
//! the line through its neighbours, keeping only verified moves. It can get
//! stuck; it never returns an unverified motion.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::OracleError;
use crate::geom::{convexity, kernel, Convexity, Point, Polygon};
use crate::motion::{Orbit, Plan, SingleVertexMove, Transformation};
use crate::planner::ConvexificationOracle;
use crate::scalar::{int, rat, Scalar};
use crate::verifier::{self, VerifyOptions};
use crate::visibility::Pair;

/// Fractions of the way from a reflex vertex to its projection onto the line
/// through its neighbours. Past 1 the vertex becomes convex.
const REFLEX_FACTORS: [(i64, i64); 6] = [(3, 2), (5, 4), (9, 8), (1, 1), (1, 2), (1, 4)];

/// Outward pushes of a straight vertex, as fractions of its neighbour span.
const STRAIGHT_FACTORS: [(i64, i64); 4] = [(1, 4), (1, 16), (1, 64), (1, 256)];

#[derive(Debug, Clone, Default)]
pub struct GreedyOracle {
    /// Largest number of accepted moves; `None` picks `8n + 16`.
    pub max_steps: Option<usize>,
}

pub fn greedy_oracle() -> GreedyOracle {
    GreedyOracle::default()
}

fn projection(p: &Point, a: &Point, b: &Point) -> Point {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let s = ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / (&dx * &dx + &dy * &dy);
    Point::new(&a.x + &s * dx, &a.y + s * dy)
}

fn toward(p: &Point, q: &Point, f: &Scalar) -> Point {
    Point::new(&p.x + f * (&q.x - &p.x), &p.y + f * (&q.y - &p.y))
}

fn candidates(poly: &Polygon) -> Vec<(usize, Point)> {
    let v = poly.vertices();
    let n = v.len();
    let mut out = Vec::new();
    let prev = |i: usize| (i + n - 1) % n;
    let next = |i: usize| (i + 1) % n;
    match convexity(poly) {
        Convexity::Strict => {}
        Convexity::NotConvex { reflex } => {
            for &(num, den) in &REFLEX_FACTORS {
                let f = rat(num, den);
                for &i in &reflex {
                    let (a, b) = (prev(i), next(i));
                    out.push((i, toward(&v[i], &projection(&v[i], &v[a], &v[b]), &f)));
                }
            }
        }
        Convexity::Degenerate { straight } => {
            for &(num, den) in &STRAIGHT_FACTORS {
                let f = rat(num, den);
                for &i in &straight {
                    let (a, b) = (prev(i), next(i));
                    // Counter-clockwise order puts the exterior on the right.
                    let out_dir = Point::new(&v[b].y - &v[a].y, &v[a].x - &v[b].x);
                    out.push((i, Point::new(&v[i].x + &f * &out_dir.x, &v[i].y + &f * out_dir.y)));
                }
            }
        }
    }
    out
}

impl ConvexificationOracle for GreedyOracle {
    fn convexify(&self, poly: &Polygon) -> Result<Transformation, OracleError> {
        let limit = self.max_steps.unwrap_or(8 * poly.len() + 16);
        let opts = VerifyOptions { stop_at_violation: true, ..VerifyOptions::default() };
        let mut plan = Plan::empty(poly.clone());
        let mut visible: BTreeSet<Pair> = kernel::visible_pairs(poly.vertices()).into_iter().collect();
        let mut clock = int(0);
        while convexity(plan.final_polygon()) != Convexity::Strict {
            let stuck = |steps: usize, reason: alloc::string::String, plan: &Plan| OracleError::Stuck {
                steps,
                reason,
                partial: if plan.is_empty() { None } else { Some(Box::new(plan.to_transformation())) },
            };
            if plan.len() >= limit {
                return Err(stuck(plan.len(), format!("step limit {limit} reached"), &plan));
            }
            let cur = plan.final_polygon().clone();
            let next_clock = &clock + int(1);
            let mut last_block = None;
            let mut accepted = None;
            for (i, target) in candidates(&cur) {
                let Ok(path) = Orbit::linear(clock.clone(), cur.vertex(i).clone(), next_clock.clone(), target) else {
                    continue;
                };
                let m = SingleVertexMove::new(i, path);
                let Ok(t) = m.as_transformation(&cur) else { continue };
                match verifier::verify_transformation_from(&t, &opts, visible.clone()) {
                    Ok(cert) if cert.is_preserving() => {
                        accepted = Some((m, cert.final_visible));
                        break;
                    }
                    Ok(cert) => {
                        if let Some(e) = cert.first_violation() {
                            last_block = Some(format!("vertex {i}: {} of {:?} near t = {}", e.kind.name(), e.vertices, e.time.approx()));
                        }
                    }
                    Err(e) => last_block = Some(format!("vertex {i}: {e}")),
                }
            }
            match accepted {
                Some((m, vis)) => {
                    plan.push(m).map_err(OracleError::Motion)?;
                    visible = vis;
                    clock = next_clock;
                }
                None => {
                    let reason = last_block.unwrap_or_else(|| "no candidate move".into());
                    return Err(stuck(plan.len(), reason, &plan));
                }
            }
        }
        if plan.is_empty() {
            return Ok(Transformation::constant(poly, int(0), int(0)));
        }
        Ok(plan.to_transformation())
    }
}

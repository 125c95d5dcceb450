//! Converting a visibility-preserving convexification into single-vertex moves.
//!
//! The planner repeats stages until the polygon is strictly convex. A critical
//! polygon gets a visibility-increasing move. Otherwise the oracle's
//! convexification is verified, followed on a grid up to its first critical
//! time one vertex at a time, and cut at the first critical polygon reached.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::critical;
use crate::error::{CriticalError, MotionError, OracleError, VerifyError};
use crate::geom::{convexity, is_convex, kernel, Convexity, Polygon};
use crate::motion::{Plan, SingleVertexMove, Transformation};
use crate::scalar::{self, Scalar};
use crate::verifier::{self, EventCertificate, EventKind, Triple, VerifyOptions};
use crate::visibility::Pair;

/// Supplies a visibility-preserving convexification of a polygon. Answers are
/// verified by the planner, never trusted.
pub trait ConvexificationOracle {
    fn convexify(&self, poly: &Polygon) -> Result<Transformation, OracleError>;
}

/// An oracle that knows the answer for exactly one polygon.
#[derive(Debug, Clone)]
pub struct FixedOracle {
    transformation: Transformation,
    initial: Polygon,
}

impl FixedOracle {
    pub fn new(transformation: Transformation) -> Result<FixedOracle, MotionError> {
        let initial = transformation.initial_polygon()?;
        Ok(FixedOracle { transformation, initial })
    }

    pub fn transformation(&self) -> &Transformation {
        &self.transformation
    }
}

impl ConvexificationOracle for FixedOracle {
    fn convexify(&self, poly: &Polygon) -> Result<Transformation, OracleError> {
        if poly == &self.initial {
            Ok(self.transformation.clone())
        } else {
            Err(OracleError::Mismatch(alloc::format!("stored convexification starts at {}", self.initial)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StageKind {
    /// One visibility-increasing move at a critical polygon.
    VisibilityIncrease,
    /// Grid discretization of an oracle convexification.
    Discretized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub kind: StageKind,
    /// Oracle-time interval `[a, c]` followed in this stage.
    pub interval: Option<(Scalar, Scalar)>,
    pub delta: Option<Scalar>,
    pub tau: Option<Scalar>,
    pub steps: Option<u64>,
    /// The radius-derived step count exceeded the cap and was clamped.
    pub clamped: bool,
    pub vertex_order: Vec<usize>,
    /// Critical triples of the polygon the stage ended at, if critical.
    pub critical: Vec<Triple>,
    pub nonvisible_before: usize,
    pub nonvisible_after: usize,
    pub moves: usize,
    pub retries: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StageLog {
    pub stages: Vec<Stage>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("oracle failed: {0}")]
    Oracle(OracleError),
    #[error("oracle answer rejected: {reason}")]
    OracleRejected { reason: String, certificate: Option<Box<EventCertificate>> },
    #[error("stage {stage}: no verified discretization within the retry budget")]
    RetryBudget { stage: usize, log: StageLog },
    #[error("stage limit of {limit} reached without a convex polygon")]
    StageLimit { limit: usize, log: StageLog },
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Motion(#[from] MotionError),
}

impl PlanError {
    /// Failures caused by the oracle rather than by the planner.
    pub fn is_oracle_failure(&self) -> bool {
        matches!(self, PlanError::Oracle(_) | PlanError::OracleRejected { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannerOptions {
    /// Vertex order inside each grid step; index order when `None`.
    pub vertex_order: Option<Vec<usize>>,
    /// Halvings of the grid step allowed per stage after a failed move.
    pub retry_budget: usize,
    /// Most polygons sampled along `[a, c]` when minimizing the safe radius.
    pub max_samples: usize,
    /// Rounds of sample refinement when computing the stage radius.
    pub refinements: usize,
    /// Upper bound on grid steps per stage; the radius-derived count is
    /// clamped to it and the moves are verified regardless.
    pub max_steps: u64,
    pub verify: VerifyOptions,
}

impl Default for PlannerOptions {
    fn default() -> PlannerOptions {
        PlannerOptions {
            vertex_order: None,
            retry_budget: 6,
            max_samples: 64,
            refinements: 4,
            max_steps: 256,
            verify: VerifyOptions::default(),
        }
    }
}

/// `tau = (c - a) / L` with `L = max(1, ceil((c - a) * speed / delta) + 1)`,
/// where `speed` is the largest vertex speed of `t` on `[a, c]`. Then vertex
/// displacements over any time span of at most `tau` stay below `delta`.
pub fn compute_tau(t: &Transformation, delta: &Scalar, a: &Scalar, c: &Scalar) -> (Scalar, BigInt) {
    assert!(delta > &Scalar::zero(), "delta must be positive");
    assert!(c > a, "interval must have positive length");
    let speed2 = t.restrict(a, c).max_speed().squared;
    let ratio = (c - a) / delta;
    let ceil = scalar::ceil_sqrt(&(&ratio * &ratio * speed2));
    let l = if ceil.is_zero() { BigInt::one() } else { ceil + BigInt::one() };
    let tau = (c - a) / Scalar::from_integer(l.clone());
    (tau, l)
}

fn default_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Moves each vertex in turn along its orbit over each of `steps` equal grid
/// steps of `[t0, t1]`. Inside step `l` the vertex at position `r` of `order`
/// uses the `r`-th of `n` equal sub-slots, so plan time increases. Moves of
/// vertices at rest are left out.
pub fn discretize_interval(
    t: &Transformation,
    t0: &Scalar,
    t1: &Scalar,
    steps: u64,
    order: &[usize],
) -> Result<Plan, MotionError> {
    let n = t.n();
    let initial = t.polygon_at(t0)?;
    let mut plan = Plan::empty(initial);
    if t1 <= t0 || steps == 0 {
        return Ok(plan);
    }
    let tau = (t1 - t0) / Scalar::from_integer(steps.into());
    let slot = &tau / Scalar::from_integer((n as u64).into());
    let scale = Scalar::new(BigInt::one(), BigInt::from(n));
    for l in 0..steps {
        let s0 = t0 + &tau * Scalar::from_integer(l.into());
        let s1 = if l + 1 == steps { t1.clone() } else { &s0 + &tau };
        for (r, &i) in order.iter().enumerate() {
            let piece = t.orbits()[i].restrict(&s0, &s1);
            if piece.is_constant() {
                continue;
            }
            let slot_start = &s0 + &slot * Scalar::from_integer((r as u64).into());
            let path = piece.retimed(&s0, &slot_start, &scale);
            plan.push(SingleVertexMove::new(i, path))?;
        }
    }
    Ok(plan)
}

type Followed = (Vec<SingleVertexMove>, BTreeSet<Pair>, bool);

struct Planner<'o, O: ConvexificationOracle + ?Sized> {
    oracle: &'o O,
    opts: PlannerOptions,
    plan: Plan,
    visible: BTreeSet<Pair>,
    log: StageLog,
}

enum StageEnd {
    /// Reached a critical polygon.
    Critical,
    /// Followed the convexification to its end.
    Finished,
}

fn nonvisible(n: usize, visible: &BTreeSet<Pair>) -> usize {
    n * (n - 1) / 2 - visible.len()
}

impl<'o, O: ConvexificationOracle + ?Sized> Planner<'o, O> {
    fn current(&self) -> &Polygon {
        self.plan.final_polygon()
    }

    fn clock(&self) -> Scalar {
        self.plan.end_time().cloned().unwrap_or_else(Scalar::zero)
    }

    fn increase_visibility(&mut self) -> Result<(), PlanError> {
        let before = nonvisible(self.current().len(), &self.visible);
        let crit = critical::critical_triples(self.current());
        let m = critical::visibility_increasing_move_at(self.current(), &self.clock())?;
        let cert = verifier::verify_transformation_from(
            &m.as_transformation(self.current())?,
            &self.opts.verify,
            self.visible.clone(),
        )?;
        self.plan.push(m.clone())?;
        self.visible = cert.final_visible;
        self.log.stages.push(Stage {
            kind: StageKind::VisibilityIncrease,
            interval: None,
            delta: None,
            tau: None,
            steps: None,
            clamped: false,
            vertex_order: alloc::vec![m.vertex],
            critical: crit,
            nonvisible_before: before,
            nonvisible_after: nonvisible(self.current().len(), &self.visible),
            moves: 1,
            retries: 0,
        });
        Ok(())
    }

    fn query(&self) -> Result<Transformation, PlanError> {
        let poly = self.current();
        let t = self.oracle.convexify(poly).map_err(PlanError::Oracle)?;
        let reject = |reason: &str, cert: Option<EventCertificate>| PlanError::OracleRejected {
            reason: reason.to_string(),
            certificate: cert.map(Box::new),
        };
        match t.initial_polygon() {
            Ok(p) if &p == poly => {}
            _ => return Err(reject("initial polygon differs from the query", None)),
        }
        match t.final_polygon() {
            Ok(p) if is_convex(&p) => {}
            _ => return Err(reject("final polygon is not convex", None)),
        }
        let cert = verifier::verify_transformation_with(&t, &self.opts.verify)
            .map_err(|e| reject(&alloc::format!("{e}"), None))?;
        if !cert.is_preserving() {
            return Err(reject("convexification is not visibility-preserving", Some(cert)));
        }
        Ok(t)
    }

    /// Smallest safe radius over polygons sampled on `[a, c]`, skipping the
    /// triples that are critical at `c`, refined until the sample spacing is
    /// no coarser than the grid step it induces.
    fn stage_radius(&self, t: &Transformation, a: &Scalar, c: &Scalar, skip: &[Triple]) -> Scalar {
        let span = c - a;
        let mut samples = 8usize;
        let mut best: Option<Scalar> = None;
        let mut seen = BTreeSet::new();
        for _ in 0..self.opts.refinements.max(1) {
            for k in 0..=samples {
                let s = a + &span * Scalar::new(BigInt::from(k), BigInt::from(samples));
                if !seen.insert(s.clone()) {
                    continue;
                }
                let Ok(p) = t.polygon_at(&s) else { continue };
                let r = critical::safe_radius_excluding(&p, skip);
                if best.as_ref().map(|b| r.value < *b).unwrap_or(true) {
                    best = Some(r.value);
                }
            }
            let d = best.clone().unwrap_or_else(Scalar::one);
            let (tau, _) = compute_tau(t, &d, a, c);
            let spacing = &span / Scalar::from_integer(samples.into());
            if spacing <= tau || samples >= self.opts.max_samples {
                break;
            }
            samples = (samples * 2).min(self.opts.max_samples);
        }
        best.unwrap_or_else(Scalar::one)
    }

    /// Follows the grid moves of `[a, c]`, verifying each move and cutting at
    /// the first critical polygon. Runs of grid moves by one vertex are merged
    /// into one move first; the polygons passed through are the same. Returns
    /// the moves, the visible set after them and whether they end critical,
    /// or `None` when a move loses visibility.
    fn follow(
        &self,
        t: &Transformation,
        a: &Scalar,
        c: &Scalar,
        steps: u64,
        order: &[usize],
    ) -> Result<Option<Followed>, PlanError> {
        let grid = discretize_interval(t, a, c, steps, order)?;
        let mut cur = self.current().clone();
        let mut visible = self.visible.clone();
        let mut out = Vec::new();
        let opts = VerifyOptions { stop_at_violation: true, ..self.opts.verify.clone() };
        for m in grid.compacted().moves() {
            let tm = m.as_transformation(&cur)?;
            let cert = verifier::verify_transformation_from(&tm, &opts, visible.clone())?;
            let crit = cert.events_of(EventKind::CriticalConfiguration).next().map(|e| e.time.clone());
            let loss = cert.first_violation().map(|e| e.time.clone());
            let crit = match (crit, loss) {
                (Some(ct), Some(l)) if l <= ct => return Ok(None),
                (None, Some(_)) => return Ok(None),
                (crit, _) => crit,
            };
            let Some(ct) = crit else {
                visible = cert.final_visible;
                cur = m.apply(&cur)?;
                out.push(m.clone());
                continue;
            };
            let ct = ct.as_rational().expect("single-vertex events are rational").clone();
            if &ct > m.start_time() {
                let cut = SingleVertexMove::new(m.vertex, m.path.restrict(m.start_time(), &ct));
                let tc = cut.as_transformation(&cur)?;
                let c2 = verifier::verify_transformation_from(&tc, &opts, visible.clone())?;
                if !c2.is_preserving() {
                    return Ok(None);
                }
                visible = c2.final_visible;
                out.push(cut);
            }
            return Ok(Some((out, visible, true)));
        }
        Ok(Some((out, visible, false)))
    }

    fn follow_oracle(&mut self, t: &Transformation) -> Result<StageEnd, PlanError> {
        let n = t.n();
        let order = self.opts.vertex_order.clone().unwrap_or_else(|| default_order(n));
        let mut a = t.start().clone();
        let d = t.end().clone();
        loop {
            let rest = t.restrict(&a, &d);
            let hit = verifier::first_critical(&rest, &self.opts.verify)?;
            let (c, skip) = match &hit {
                Some(h) if h.time.cmp_rational(&a).is_eq() => return Ok(StageEnd::Critical),
                Some(h) => (h.bracket.hi.clone(), h.triples.clone()),
                None => (d.clone(), Vec::new()),
            };
            if c <= a {
                return Ok(StageEnd::Finished);
            }
            let radius_end = match &hit {
                Some(h) => h.bracket.lo.clone(),
                None => c.clone(),
            };
            let radius_end = if radius_end > a { radius_end } else { c.clone() };
            let delta = self.stage_radius(t, &a, &radius_end, &skip);
            let (tau, l) = compute_tau(t, &delta, &a, &c);
            let wanted = l.to_u64().unwrap_or(u64::MAX);
            let clamped = wanted > self.opts.max_steps;
            let mut steps = wanted.min(self.opts.max_steps).max(1);
            let before = nonvisible(n, &self.visible);
            let mut retries = 0;
            let (moves, visible, critical_end) = loop {
                match self.follow(t, &a, &c, steps, &order)? {
                    Some(r) => break r,
                    None if retries < self.opts.retry_budget => {
                        retries += 1;
                        steps = steps.saturating_mul(2);
                    }
                    None => {
                        return Err(PlanError::RetryBudget { stage: self.log.stages.len(), log: self.log.clone() });
                    }
                }
            };
            let count = moves.len();
            for m in moves {
                self.plan.push_retimed(m)?;
            }
            self.visible = visible;
            let crit = if critical_end { critical::critical_triples(self.current()) } else { Vec::new() };
            self.log.stages.push(Stage {
                kind: StageKind::Discretized,
                interval: Some((a.clone(), c.clone())),
                delta: Some(delta),
                tau: Some(if steps == wanted { tau } else { (&c - &a) / Scalar::from_integer(steps.into()) }),
                steps: Some(steps),
                clamped,
                vertex_order: order.clone(),
                critical: crit,
                nonvisible_before: before,
                nonvisible_after: nonvisible(n, &self.visible),
                moves: count,
                retries,
            });
            if critical_end {
                return Ok(StageEnd::Critical);
            }
            if c >= d {
                return Ok(StageEnd::Finished);
            }
            // An irrational critical time was stepped over by verified moves;
            // carry on along the same convexification.
            a = c;
        }
    }
}

/// Builds a verified plan of single-vertex moves from `poly` to a strictly
/// convex polygon, using `oracle` for convexifications.
pub fn single_vertex_convexify<O: ConvexificationOracle + ?Sized>(
    poly: &Polygon,
    oracle: &O,
) -> Result<(Plan, StageLog), PlanError> {
    single_vertex_convexify_with(poly, oracle, &PlannerOptions::default())
}

pub fn single_vertex_convexify_with<O: ConvexificationOracle + ?Sized>(
    poly: &Polygon,
    oracle: &O,
    opts: &PlannerOptions,
) -> Result<(Plan, StageLog), PlanError> {
    let n = poly.len();
    let visible: BTreeSet<Pair> = kernel::visible_pairs(poly.vertices()).into_iter().collect();
    let mut p = Planner { oracle, opts: opts.clone(), plan: Plan::empty(poly.clone()), visible, log: StageLog::default() };
    // Every visibility increase removes a nonvisible pair; every other stage
    // ends critical (followed by an increase) or at the oracle's convex end.
    let limit = 2 * (n * (n - 1) / 2 - n) + 4;
    for _ in 0..limit {
        match convexity(p.current()) {
            Convexity::Strict => return Ok((p.plan, p.log)),
            _ if critical::is_critical(p.current()) => p.increase_visibility()?,
            _ => {
                let t = p.query()?;
                p.follow_oracle(&t)?;
            }
        }
    }
    if convexity(p.current()) == Convexity::Strict {
        return Ok((p.plan, p.log));
    }
    Err(PlanError::StageLimit { limit, log: p.log })
}

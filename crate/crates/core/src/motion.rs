//! Time-parameterized polygon motion: piecewise-linear orbits, transformations,
//! single-vertex moves and plans, plus the polygon distances.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::MotionError;
use crate::geom::{kernel, Point, Polygon, Pt};
use crate::matching::bottleneck_assignment;
use crate::scalar::{self, Scalar};

/// A nonnegative length known through its exact square.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Length {
    pub squared: Scalar,
}

impl Length {
    pub fn from_squared(squared: Scalar) -> Length {
        Length { squared }
    }

    pub fn zero() -> Length {
        Length { squared: Scalar::zero() }
    }

    pub fn approx(&self) -> f64 {
        scalar::sqrt_f64(&self.squared)
    }

    pub fn lower_bound(&self) -> Scalar {
        scalar::sqrt_lower(&self.squared)
    }

    pub fn upper_bound(&self) -> Scalar {
        scalar::sqrt_upper(&self.squared)
    }

    /// The value itself, when it is rational.
    pub fn exact(&self) -> Option<Scalar> {
        scalar::exact_sqrt(&self.squared)
    }
}

/// Piecewise-linear path of one vertex. Keyframe times strictly increase.
/// Outside its keyframe range the orbit holds its end positions, so a
/// single-keyframe orbit is constant for all times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orbit {
    keyframes: Vec<(Scalar, Point)>,
}

impl Orbit {
    pub fn new(keyframes: Vec<(Scalar, Point)>) -> Result<Orbit, MotionError> {
        if keyframes.is_empty() {
            return Err(MotionError::EmptyOrbit);
        }
        if keyframes.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(MotionError::NonIncreasingTimes { orbit: 0 });
        }
        Ok(Orbit { keyframes })
    }

    pub fn constant(p: Point) -> Orbit {
        Orbit { keyframes: vec![(Scalar::zero(), p)] }
    }

    pub fn linear(t0: Scalar, p0: Point, t1: Scalar, p1: Point) -> Result<Orbit, MotionError> {
        Orbit::new(vec![(t0, p0), (t1, p1)])
    }

    pub fn keyframes(&self) -> &[(Scalar, Point)] {
        &self.keyframes
    }

    pub fn start_time(&self) -> &Scalar {
        &self.keyframes[0].0
    }

    pub fn end_time(&self) -> &Scalar {
        &self.keyframes[self.keyframes.len() - 1].0
    }

    pub fn start_point(&self) -> &Point {
        &self.keyframes[0].1
    }

    pub fn end_point(&self) -> &Point {
        &self.keyframes[self.keyframes.len() - 1].1
    }

    pub fn is_constant(&self) -> bool {
        self.keyframes.iter().all(|(_, p)| p == self.start_point())
    }

    /// Whether the orbit is defined on all of `[a, d]`.
    pub fn covers(&self, a: &Scalar, d: &Scalar) -> bool {
        self.keyframes.len() == 1 || (self.start_time() <= a && d <= self.end_time())
    }

    pub fn position_at(&self, t: &Scalar) -> Point {
        let k = &self.keyframes;
        if t <= &k[0].0 {
            return k[0].1.clone();
        }
        for w in k.windows(2) {
            let (t0, p0) = &w[0];
            let (t1, p1) = &w[1];
            if t <= t1 {
                let s = (t - t0) / (t1 - t0);
                return Pt::lerp(p0, p1, &s);
            }
        }
        k[k.len() - 1].1.clone()
    }

    /// Keyframe times strictly inside `(a, d)`.
    pub fn breakpoints_in<'a>(&'a self, a: &'a Scalar, d: &'a Scalar) -> impl Iterator<Item = &'a Scalar> + 'a {
        self.keyframes.iter().map(|(t, _)| t).filter(move |t| *t > a && *t < d)
    }

    /// Position at `t0` and velocity on `[t0, t1]`, which must not contain a
    /// keyframe in its interior.
    pub fn linear_piece(&self, t0: &Scalar, t1: &Scalar) -> (Point, Point) {
        debug_assert!(self.breakpoints_in(t0, t1).next().is_none());
        let p0 = self.position_at(t0);
        if t1 == t0 {
            return (p0, Point::from_ints(0, 0));
        }
        let p1 = self.position_at(t1);
        let inv = Scalar::one() / (t1 - t0);
        let v = p1.sub(&p0).scale(&inv);
        (p0, v)
    }

    /// The orbit restricted to `[t0, t1]` (keyframes at both ends).
    pub fn restrict(&self, t0: &Scalar, t1: &Scalar) -> Orbit {
        let mut kf = vec![(t0.clone(), self.position_at(t0))];
        if t1 > t0 {
            kf.extend(self.keyframes.iter().filter(|(t, _)| t > t0 && t < t1).cloned());
            kf.push((t1.clone(), self.position_at(t1)));
        }
        Orbit { keyframes: kf }
    }

    /// Maps every keyframe time through `t -> offset + scale * (t - origin)`.
    pub fn retimed(&self, origin: &Scalar, offset: &Scalar, scale: &Scalar) -> Orbit {
        Orbit {
            keyframes: self
                .keyframes
                .iter()
                .map(|(t, p)| (offset + scale * (t - origin), p.clone()))
                .collect(),
        }
    }

    /// The same path with stationary stretches cut out (later keyframes move
    /// earlier) and consecutive pieces of equal velocity merged. Visits the
    /// same points in the same order.
    pub fn without_pauses(&self) -> Orbit {
        let mut kf: Vec<(Scalar, Point)> = vec![self.keyframes[0].clone()];
        let mut shift = Scalar::zero();
        for w in self.keyframes.windows(2) {
            if w[1].1 == w[0].1 {
                shift += &w[1].0 - &w[0].0;
                continue;
            }
            let next = (&w[1].0 - &shift, w[1].1.clone());
            if kf.len() >= 2 {
                let (t0, p0) = &kf[kf.len() - 2];
                let (t1, p1) = &kf[kf.len() - 1];
                let same = p1.sub(p0).scale(&(&next.0 - t1)) == next.1.sub(p1).scale(&(t1 - t0));
                if same {
                    kf.pop();
                }
            }
            kf.push(next);
        }
        Orbit { keyframes: kf }
    }

    /// Largest speed over the linear pieces, as an exact square.
    pub fn max_speed(&self) -> Length {
        let mut best = Scalar::zero();
        for w in self.keyframes.windows(2) {
            let dt = &w[1].0 - &w[0].0;
            let s2 = w[1].1.sub(&w[0].1).norm2() / (&dt * &dt);
            if s2 > best {
                best = s2;
            }
        }
        Length::from_squared(best)
    }
}

/// A continuous map `t -> P^t` on `[start, end]`, one orbit per vertex.
///
/// Orbits are stored in the internal (counterclockwise) order of the initial
/// polygon; `reversed` records whether that differs from the caller's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    start: Scalar,
    end: Scalar,
    orbits: Vec<Orbit>,
    reversed: bool,
}

impl Transformation {
    /// Orbits are given in caller order. The initial polygon must be simple.
    pub fn new(start: Scalar, end: Scalar, orbits: Vec<Orbit>) -> Result<Transformation, MotionError> {
        if end < start {
            return Err(MotionError::InvertedDomain { start, end });
        }
        for (i, o) in orbits.iter().enumerate() {
            if !o.covers(&start, &end) {
                return Err(MotionError::OrbitDomain { orbit: i });
            }
        }
        let initial: Vec<Point> = orbits.iter().map(|o| o.position_at(&start)).collect();
        let poly = Polygon::new(initial)?;
        let mut orbits = orbits;
        if poly.reversed() {
            orbits[1..].reverse();
        }
        Ok(Transformation { start, end, orbits, reversed: poly.reversed() })
    }

    /// Orbits already in the internal order of `reference`.
    pub fn aligned_with(reference: &Polygon, start: Scalar, end: Scalar, orbits: Vec<Orbit>) -> Result<Transformation, MotionError> {
        if orbits.len() != reference.len() {
            return Err(MotionError::VertexCountMismatch { left: reference.len(), right: orbits.len() });
        }
        if end < start {
            return Err(MotionError::InvertedDomain { start, end });
        }
        for (i, o) in orbits.iter().enumerate() {
            if !o.covers(&start, &end) {
                return Err(MotionError::OrbitDomain { orbit: i });
            }
        }
        let t = Transformation { start, end, orbits, reversed: reference.reversed() };
        t.polygon_at(&t.start)?;
        Ok(t)
    }

    pub fn constant(poly: &Polygon, start: Scalar, end: Scalar) -> Transformation {
        Transformation {
            orbits: poly.vertices().iter().cloned().map(Orbit::constant).collect(),
            start,
            end,
            reversed: poly.reversed(),
        }
    }

    pub fn start(&self) -> &Scalar {
        &self.start
    }

    pub fn end(&self) -> &Scalar {
        &self.end
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn n(&self) -> usize {
        self.orbits.len()
    }

    pub fn reversed(&self) -> bool {
        self.reversed
    }

    /// Orbits in the caller's vertex order.
    pub fn caller_orbits(&self) -> Vec<Orbit> {
        let mut o = self.orbits.clone();
        if self.reversed {
            o[1..].reverse();
        }
        o
    }

    pub fn positions_at(&self, t: &Scalar) -> Vec<Point> {
        self.orbits.iter().map(|o| o.position_at(t)).collect()
    }

    pub fn polygon_at(&self, t: &Scalar) -> Result<Polygon, MotionError> {
        if t < &self.start || t > &self.end {
            return Err(MotionError::TimeOutOfDomain { t: t.clone(), start: self.start.clone(), end: self.end.clone() });
        }
        let pts = self.positions_at(t);
        if let Err((edge_a, edge_b)) = kernel::check_simple(&pts) {
            return Err(MotionError::NotSimpleAt { t: t.clone(), edge_a, edge_b });
        }
        Ok(Polygon::with_orientation(pts, self.reversed)?)
    }

    pub fn initial_polygon(&self) -> Result<Polygon, MotionError> {
        self.polygon_at(&self.start)
    }

    pub fn final_polygon(&self) -> Result<Polygon, MotionError> {
        self.polygon_at(&self.end)
    }

    /// `start`, every keyframe time strictly inside the domain, and `end`,
    /// sorted and deduplicated. Consecutive entries bound the linear pieces.
    pub fn breakpoints(&self) -> Vec<Scalar> {
        self.breakpoints_between(&self.start, &self.end)
    }

    pub fn breakpoints_between(&self, a: &Scalar, d: &Scalar) -> Vec<Scalar> {
        let mut times = vec![a.clone(), d.clone()];
        for o in &self.orbits {
            times.extend(o.breakpoints_in(a, d).cloned());
        }
        times.sort();
        times.dedup();
        times
    }

    pub fn restrict(&self, a: &Scalar, d: &Scalar) -> Transformation {
        Transformation {
            start: a.clone(),
            end: d.clone(),
            orbits: self.orbits.iter().map(|o| o.restrict(a, d)).collect(),
            reversed: self.reversed,
        }
    }

    /// Indices of vertices whose orbit moves somewhere in `[a, d]`.
    pub fn moving_vertices(&self, a: &Scalar, d: &Scalar) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.orbits[i].restrict(a, d).is_constant()).collect()
    }

    /// Largest speed of any vertex on any linear piece.
    pub fn max_speed(&self) -> Length {
        self.orbits.iter().map(Orbit::max_speed).max().unwrap_or_else(Length::zero)
    }
}

pub fn max_speed(t: &Transformation) -> Length {
    t.max_speed()
}

/// One vertex follows `path`; every other vertex stays put.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingleVertexMove {
    pub vertex: usize,
    pub path: Orbit,
}

impl SingleVertexMove {
    pub fn new(vertex: usize, path: Orbit) -> SingleVertexMove {
        SingleVertexMove { vertex, path }
    }

    pub fn start_time(&self) -> &Scalar {
        self.path.start_time()
    }

    pub fn end_time(&self) -> &Scalar {
        self.path.end_time()
    }

    /// The move as a transformation of `from`, whose vertex must sit at the
    /// path's start.
    pub fn as_transformation(&self, from: &Polygon) -> Result<Transformation, MotionError> {
        let orbits = (0..from.len())
            .map(|i| if i == self.vertex { self.path.clone() } else { Orbit::constant(from.vertex(i).clone()) })
            .collect();
        Transformation::aligned_with(from, self.start_time().clone(), self.end_time().clone(), orbits)
    }

    pub fn apply(&self, from: &Polygon) -> Result<Polygon, MotionError> {
        from.with_vertex(self.vertex, self.path.end_point().clone())
            .map_err(|e| match e {
                crate::error::GeomError::NotSimple { edge_a, edge_b } => {
                    MotionError::NotSimpleAt { t: self.end_time().clone(), edge_a, edge_b }
                }
                other => other.into(),
            })
    }
}

/// A time-ordered sequence of single-vertex moves starting at `initial`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plan {
    initial: Polygon,
    moves: Vec<SingleVertexMove>,
    current: Polygon,
}

impl Plan {
    pub fn empty(initial: Polygon) -> Plan {
        Plan { current: initial.clone(), initial, moves: Vec::new() }
    }

    pub fn new(initial: Polygon, moves: Vec<SingleVertexMove>) -> Result<Plan, MotionError> {
        let mut plan = Plan::empty(initial);
        for m in moves {
            plan.push(m)?;
        }
        Ok(plan)
    }

    pub fn initial(&self) -> &Polygon {
        &self.initial
    }

    pub fn moves(&self) -> &[SingleVertexMove] {
        &self.moves
    }

    pub fn final_polygon(&self) -> &Polygon {
        &self.current
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn start_time(&self) -> Option<&Scalar> {
        self.moves.first().map(|m| m.start_time())
    }

    pub fn end_time(&self) -> Option<&Scalar> {
        self.moves.last().map(|m| m.end_time())
    }

    /// Appends a move after checking it continues the chain.
    pub fn push(&mut self, m: SingleVertexMove) -> Result<(), MotionError> {
        let index = self.moves.len();
        self.current.check_index(m.vertex)?;
        if m.path.start_point() != self.current.vertex(m.vertex) {
            return Err(MotionError::PathStart { index, vertex: m.vertex });
        }
        if let Some(end) = self.end_time() {
            if m.start_time() < end {
                return Err(MotionError::MoveTimes { index });
            }
        }
        self.current = m.apply(&self.current)?;
        self.moves.push(m);
        Ok(())
    }

    /// Appends a move whose path is shifted to start where the plan ends.
    pub fn push_retimed(&mut self, m: SingleVertexMove) -> Result<(), MotionError> {
        let offset = self.end_time().cloned().unwrap_or_else(Scalar::zero);
        let path = m.path.retimed(m.start_time(), &offset, &Scalar::one());
        self.push(SingleVertexMove::new(m.vertex, path))
    }

    /// Polygons at every move boundary: the initial polygon, then the
    /// polygon after each move.
    pub fn boundary_polygons(&self) -> Vec<Polygon> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = self.initial.clone();
        out.push(cur.clone());
        for m in &self.moves {
            cur = m.apply(&cur).expect("plan chain validated on push");
            out.push(cur.clone());
        }
        out
    }

    /// Merges consecutive moves of the same vertex into one move; the motion
    /// itself is unchanged.
    pub fn coalesced(&self) -> Plan {
        let mut moves: Vec<SingleVertexMove> = Vec::new();
        for m in &self.moves {
            match moves.last_mut() {
                Some(last) if last.vertex == m.vertex => {
                    let mut kf = last.path.keyframes().to_vec();
                    for (t, p) in m.path.keyframes() {
                        if kf.last().map(|(lt, _)| lt) == Some(t) {
                            continue;
                        }
                        kf.push((t.clone(), p.clone()));
                    }
                    last.path = Orbit { keyframes: kf };
                }
                _ => moves.push(m.clone()),
            }
        }
        Plan { initial: self.initial.clone(), current: self.current.clone(), moves }
    }

    /// Coalesces same-vertex runs, removes their pauses and restarts each move
    /// where the previous one ends. The sequence of polygons passed through is
    /// unchanged; only the timing is.
    pub fn compacted(&self) -> Plan {
        let mut out = Plan::empty(self.initial.clone());
        let start = self.start_time().cloned().unwrap_or_else(Scalar::zero);
        for m in self.coalesced().moves {
            let path = m.path.without_pauses();
            let offset = out.end_time().cloned().unwrap_or_else(|| start.clone());
            let path = path.retimed(path.start_time(), &offset, &Scalar::one());
            out.push(SingleVertexMove::new(m.vertex, path)).expect("same polygons as a validated plan");
        }
        out
    }

    /// The plan as one transformation over its whole time span.
    pub fn to_transformation(&self) -> Transformation {
        let start = self.start_time().cloned().unwrap_or_else(Scalar::zero);
        let end = self.end_time().cloned().unwrap_or_else(|| start.clone());
        let mut frames: Vec<Vec<(Scalar, Point)>> =
            self.initial.vertices().iter().map(|p| vec![(start.clone(), p.clone())]).collect();
        for m in &self.moves {
            let kf = &mut frames[m.vertex];
            for (t, p) in m.path.keyframes() {
                match kf.last() {
                    Some((lt, lp)) if lt == t => debug_assert_eq!(lp, p),
                    _ => kf.push((t.clone(), p.clone())),
                }
            }
        }
        let orbits = frames
            .into_iter()
            .map(|mut kf| {
                let last = kf.last().cloned().expect("nonempty");
                if last.0 < end {
                    kf.push((end.clone(), last.1));
                }
                Orbit { keyframes: kf }
            })
            .collect();
        Transformation { start, end, orbits, reversed: self.initial.reversed() }
    }
}

/// Chains plans end to end, shifting each one to start where the previous one
/// stops on a single increasing clock.
pub fn concatenate(plans: &[Plan]) -> Result<Plan, MotionError> {
    let Some(first) = plans.first() else {
        return Err(MotionError::EmptyOrbit);
    };
    let mut out = Plan::empty(first.initial().clone());
    for (k, plan) in plans.iter().enumerate() {
        if plan.initial() != out.final_polygon() {
            return Err(MotionError::JunctionMismatch { junction: k.saturating_sub(1) });
        }
        let Some(plan_start) = plan.start_time() else { continue };
        let offset = out.end_time().cloned().unwrap_or_else(|| plan_start.clone());
        for m in plan.moves() {
            let path = m.path.retimed(plan_start, &offset, &Scalar::one());
            out.push(SingleVertexMove::new(m.vertex, path))?;
        }
    }
    Ok(out)
}

fn check_counts(p: &Polygon, q: &Polygon) -> Result<(), MotionError> {
    if p.len() != q.len() {
        return Err(MotionError::VertexCountMismatch { left: p.len(), right: q.len() });
    }
    Ok(())
}

/// Minimum over vertex bijections of the largest matched displacement.
pub fn distance(p: &Polygon, q: &Polygon) -> Result<Length, MotionError> {
    check_counts(p, q)?;
    let cost: Vec<Vec<Scalar>> = p
        .vertices()
        .iter()
        .map(|a| q.vertices().iter().map(|b| a.sub(b).norm2()).collect())
        .collect();
    Ok(Length::from_squared(bottleneck_assignment(&cost).0))
}

/// Largest displacement under the index correspondence.
pub fn labeled_distance(p: &Polygon, q: &Polygon) -> Result<Length, MotionError> {
    check_counts(p, q)?;
    let best = p
        .vertices()
        .iter()
        .zip(q.vertices())
        .map(|(a, b)| a.sub(b).norm2())
        .max()
        .unwrap_or_else(Scalar::zero);
    Ok(Length::from_squared(best))
}

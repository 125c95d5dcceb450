//! Exact event-driven certification of transformations and plans.
//!
//! Between consecutive roots of the orientation polynomials of all vertex
//! triples, every orientation sign is constant, so simplicity, visibility and
//! criticality are too. The scan evaluates the polygon exactly at each root
//! (in `Q(sqrt(d))` when the root is irrational) and at a rational time
//! strictly between consecutive roots, and compares successive states.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::VerifyError;
use crate::field::{ExactField, Surd};
use crate::geom::{kernel, Point, Pt};
use crate::motion::{Plan, Transformation};
use crate::poly::{EventTime, Quadratic};
use crate::scalar::{self, Scalar, Sign};
use crate::visibility::{pair, Pair};

pub type Triple = [usize; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    VisibilityGain,
    VisibilityLoss,
    SimplicityViolation,
    CriticalConfiguration,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::VisibilityGain => "visibility-gain",
            EventKind::VisibilityLoss => "visibility-loss",
            EventKind::SimplicityViolation => "simplicity-violation",
            EventKind::CriticalConfiguration => "critical-configuration",
        }
    }

    pub fn is_violation(self) -> bool {
        matches!(self, EventKind::VisibilityLoss | EventKind::SimplicityViolation)
    }
}

/// Closed time interval with rational endpoints; `lo == hi` for exact times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TimeBracket {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl TimeBracket {
    pub fn exact(t: Scalar) -> TimeBracket {
        TimeBracket { lo: t.clone(), hi: t }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub kind: EventKind,
    pub time: EventTime,
    pub bracket: TimeBracket,
    /// Internal vertex indices: the pair for visibility events, the edge
    /// endpoints for simplicity violations, the collinear vertices otherwise.
    pub vertices: Vec<usize>,
    /// Position of the move within a plan, for plan certificates.
    pub move_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Preserving,
    Violating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventCertificate {
    pub verdict: Verdict,
    pub events: Vec<Event>,
    pub initial_visible: BTreeSet<Pair>,
    pub final_visible: BTreeSet<Pair>,
    /// Number of times at which the polygon was evaluated exactly.
    pub checked_times: usize,
}

impl EventCertificate {
    pub fn is_preserving(&self) -> bool {
        self.verdict == Verdict::Preserving
    }

    pub fn first_violation(&self) -> Option<&Event> {
        self.events.iter().find(|e| e.kind.is_violation())
    }

    pub fn events_of(&self, kind: EventKind) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(move |e| e.kind == kind)
    }

    pub fn gained(&self) -> usize {
        self.final_visible.difference(&self.initial_visible).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Largest width of an irrational event bracket; defaults to 2^-16 of the
    /// transformation's duration.
    pub epsilon: Option<Scalar>,
    /// Recompute every visible pair at every check time instead of only the
    /// pairs of triples with an event there. For cross-checking.
    pub full_recompute: bool,
    /// Stop scanning at the first visibility loss.
    pub stop_at_violation: bool,
}

impl VerifyOptions {
    fn epsilon_for(&self, a: &Scalar, d: &Scalar) -> Scalar {
        match &self.epsilon {
            Some(e) => e.clone(),
            None if d > a => (d - a) / Scalar::from_integer((1u64 << 16).into()),
            None => Scalar::one(),
        }
    }
}

/// First time at which the transformation is critical.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalHit {
    pub time: EventTime,
    pub bracket: TimeBracket,
    pub triples: Vec<Triple>,
}

/// One linear piece of all orbits: vertex `i` sits at `base[i] + t vel[i]`.
struct Piece {
    lo: Scalar,
    hi: Scalar,
    base: Vec<Point>,
    vel: Vec<Point>,
}

impl Piece {
    fn new(t: &Transformation, lo: &Scalar, hi: &Scalar) -> Piece {
        let mut base = Vec::with_capacity(t.n());
        let mut vel = Vec::with_capacity(t.n());
        for o in t.orbits() {
            let (p0, v) = o.linear_piece(lo, hi);
            base.push(p0.sub(&v.scale(lo)));
            vel.push(v);
        }
        Piece { lo: lo.clone(), hi: hi.clone(), base, vel }
    }

    fn positions<F: ExactField>(&self, t: &F) -> Vec<Pt<F>> {
        self.base
            .iter()
            .zip(&self.vel)
            .map(|(b, v)| {
                Pt::new(
                    F::from_scalar(&b.x) + F::from_scalar(&v.x) * t.clone(),
                    F::from_scalar(&b.y) + F::from_scalar(&v.y) * t.clone(),
                )
            })
            .collect()
    }

    fn coord(&self, i: usize) -> (Quadratic, Quadratic) {
        (
            Quadratic::linear(self.base[i].x.clone(), self.vel[i].x.clone()),
            Quadratic::linear(self.base[i].y.clone(), self.vel[i].y.clone()),
        )
    }

    fn moving(&self, i: usize) -> bool {
        !self.vel[i].x.is_zero() || !self.vel[i].y.is_zero()
    }

    fn orientation_poly(&self, i: usize, j: usize, k: usize) -> Quadratic {
        if !self.moving(i) && !self.moving(j) && !self.moving(k) {
            return Quadratic::constant(kernel::cross3(&self.base[i], &self.base[j], &self.base[k]));
        }
        let (ax, ay) = self.coord(i);
        let (bx, by) = self.coord(j);
        let (cx, cy) = self.coord(k);
        let ux = bx.sub(&ax);
        let uy = by.sub(&ay);
        let wx = cx.sub(&ax);
        let wy = cy.sub(&ay);
        ux.mul_linear(&wy).sub(&uy.mul_linear(&wx))
    }
}

fn check_piece(t: &Transformation, lo: &Scalar, hi: &Scalar, vertices: &[usize]) -> Result<(), VerifyError> {
    for &v in vertices {
        if let Some(at) = t.orbits()[v].breakpoints_in(lo, hi).next() {
            return Err(VerifyError::SpansKeyframe { lo: lo.clone(), hi: hi.clone(), at: at.clone() });
        }
    }
    Ok(())
}

/// The orientation polynomial of the moving triple `(i, j, k)` on `[lo, hi]`:
/// its sign at `t` is the orientation of `p_i^t, p_j^t, p_k^t`.
pub fn collinearity_event_polynomial(
    t: &Transformation,
    i: usize,
    j: usize,
    k: usize,
    lo: &Scalar,
    hi: &Scalar,
) -> Result<Quadratic, VerifyError> {
    for idx in [i, j, k] {
        if idx >= t.n() {
            return Err(crate::error::GeomError::IndexOutOfRange { index: idx, len: t.n() }.into());
        }
    }
    if lo > hi || lo < t.start() || hi > t.end() {
        return Err(crate::error::MotionError::TimeOutOfDomain { t: lo.clone(), start: t.start().clone(), end: t.end().clone() }.into());
    }
    check_piece(t, lo, hi, &[i, j, k])?;
    Ok(Piece::new(t, lo, hi).orientation_poly(i, j, k))
}

/// A rational strictly between two distinct event times `x < y`.
fn rational_between(x: &EventTime, y: &EventTime, scale: &Scalar) -> Scalar {
    if let (Some(a), Some(b)) = (x.as_rational(), y.as_rational()) {
        return scalar::midpoint(a, b);
    }
    let mut w = if scale.is_zero() { Scalar::one() } else { scale.clone() };
    loop {
        let (_, xh) = x.bracket(&w);
        let (yl, _) = y.bracket(&w);
        if xh < yl {
            return scalar::midpoint(&xh, &yl);
        }
        w /= scalar::int(256);
    }
}

/// Bracket of width at most `eps` whose endpoints give the polynomial opposite
/// nonzero signs, or the exact time when it is rational.
fn event_bracket(time: &EventTime, poly: &Quadratic, eps: &Scalar) -> TimeBracket {
    if let Some(r) = time.as_rational() {
        return TimeBracket::exact(r.clone());
    }
    let mut w = eps.clone();
    loop {
        let (lo, hi) = time.bracket(&w);
        let sl = Sign::of(&poly.eval(&lo));
        let sh = Sign::of(&poly.eval(&hi));
        if !sl.is_zero() && !sh.is_zero() && sl != sh {
            return TimeBracket { lo, hi };
        }
        w /= scalar::int(4);
    }
}

struct Group {
    time: EventTime,
    triples: Vec<Triple>,
    poly: Quadratic,
}

fn event_groups(piece: &Piece, n: usize, zero: &mut Vec<Triple>) -> Vec<Group> {
    let mut roots: Vec<(EventTime, Triple, Quadratic)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let p = piece.orientation_poly(i, j, k);
                if p.is_zero() {
                    zero.push([i, j, k]);
                    continue;
                }
                if p.degree() == Some(0) {
                    continue;
                }
                for r in p.roots_in(&piece.lo, &piece.hi) {
                    roots.push((r, [i, j, k], p.clone()));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let mut groups: Vec<Group> = Vec::new();
    for (time, tri, p) in roots {
        match groups.last_mut() {
            Some(g) if g.time == time => g.triples.push(tri),
            _ => groups.push(Group { time, triples: vec![tri], poly: p }),
        }
    }
    groups
}

fn hull_ends<F: ExactField>(pts: &[Pt<F>], tri: &Triple) -> (usize, usize) {
    let [i, j, k] = *tri;
    let dir = if pts[i] != pts[j] { pts[j].sub(&pts[i]) } else { pts[k].sub(&pts[i]) };
    let mut idx = [i, j, k];
    idx.sort_by(|&p, &q| pts[p].sub(&pts[i]).dot(&dir).cmp_exact(&pts[q].sub(&pts[i]).dot(&dir)));
    (idx[0], idx[2])
}

/// Triples among `candidates` that are collinear with hull in the closure.
fn critical_among<F: ExactField>(pts: &[Pt<F>], candidates: &[Triple]) -> Vec<Triple> {
    let mut out: Vec<Triple> = candidates
        .iter()
        .filter(|tri| kernel::orient(&pts[tri[0]], &pts[tri[1]], &pts[tri[2]]).is_zero())
        .filter(|tri| {
            let (a, b) = hull_ends(pts, tri);
            kernel::segment_in_closure(pts, &pts[a], &pts[b])
        })
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

fn pair_visible<F: ExactField>(pts: &[Pt<F>], p: Pair) -> bool {
    let n = pts.len();
    if (p.0 + 1) % n == p.1 || (p.1 + 1) % n == p.0 {
        return false;
    }
    kernel::open_segment_interior(pts, &pts[p.0], &pts[p.1])
}

struct Snapshot {
    visible: BTreeSet<Pair>,
    critical: Vec<Triple>,
}

/// Evaluates simplicity, then visibility (fully or for `affected` pairs) and
/// the critical triples among `candidates`.
fn snapshot<F: ExactField>(
    pts: &[Pt<F>],
    prev: Option<&BTreeSet<Pair>>,
    affected: &BTreeSet<Pair>,
    candidates: &[Triple],
    track_visibility: bool,
) -> Result<Snapshot, (usize, usize)> {
    kernel::check_simple(pts)?;
    let visible = if !track_visibility {
        BTreeSet::new()
    } else {
        match prev {
            None => kernel::visible_pairs(pts).into_iter().collect(),
            Some(prev) => {
                let mut v = prev.clone();
                for &p in affected {
                    if pair_visible(pts, p) {
                        v.insert(p);
                    } else {
                        v.remove(&p);
                    }
                }
                v
            }
        }
    };
    Ok(Snapshot { visible, critical: critical_among(pts, candidates) })
}

fn snapshot_at(
    piece: &Piece,
    time: &EventTime,
    prev: Option<&BTreeSet<Pair>>,
    affected: &BTreeSet<Pair>,
    candidates: &[Triple],
    track_visibility: bool,
) -> Result<Snapshot, (usize, usize)> {
    match time {
        EventTime::Rational(r) => snapshot(&piece.positions(r), prev, affected, candidates, track_visibility),
        EventTime::Irrational(s) => {
            snapshot::<Surd>(&piece.positions(s), prev, affected, candidates, track_visibility)
        }
    }
}

fn triple_pairs(triples: &[Triple], out: &mut BTreeSet<Pair>) {
    for t in triples {
        out.insert(pair(t[0], t[1]));
        out.insert(pair(t[0], t[2]));
        out.insert(pair(t[1], t[2]));
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Certify,
    FirstCritical,
}

struct ScanResult {
    events: Vec<Event>,
    initial_visible: BTreeSet<Pair>,
    final_visible: BTreeSet<Pair>,
    first_critical: Option<CriticalHit>,
    checked: usize,
    violating: bool,
}

fn vertices_of(triples: &[Triple]) -> Vec<usize> {
    let mut v: Vec<usize> = triples.iter().flatten().copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn scan(
    t: &Transformation,
    opts: &VerifyOptions,
    mode: Mode,
    initial_visible: Option<BTreeSet<Pair>>,
) -> Result<ScanResult, VerifyError> {
    // A visibility change is reported at the event ending its interval, which
    // can trail a later check's events; keep the list in time order.
    let mut r = scan_checks(t, opts, mode, initial_visible)?;
    r.events.sort_by(|a, b| a.time.cmp(&b.time));
    Ok(r)
}

fn scan_checks(
    t: &Transformation,
    opts: &VerifyOptions,
    mode: Mode,
    initial_visible: Option<BTreeSet<Pair>>,
) -> Result<ScanResult, VerifyError> {
    let n = t.n();
    let eps = opts.epsilon_for(t.start(), t.end());
    let track = mode == Mode::Certify;
    let first_pts = t.positions_at(t.start());
    if let Err((edge_a, edge_b)) = kernel::check_simple(&first_pts) {
        return Err(VerifyError::NonSimpleInitial { edge_a, edge_b });
    }

    let mut out = ScanResult {
        events: Vec::new(),
        initial_visible: BTreeSet::new(),
        final_visible: BTreeSet::new(),
        first_critical: None,
        checked: 0,
        violating: false,
    };

    let times = t.breakpoints();
    let mut spans: Vec<(Scalar, Scalar)> = times.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    if spans.is_empty() {
        spans.push((t.start().clone(), t.end().clone()));
    }

    let mut prev_visible: Option<BTreeSet<Pair>> = initial_visible.filter(|_| !opts.full_recompute);
    let mut prev_critical: Vec<Triple> = Vec::new();
    let mut prev_triples: Vec<Triple> = Vec::new();
    let mut prev_bracket = TimeBracket::exact(t.start().clone());
    let mut prev_time = EventTime::Rational(t.start().clone());
    let mut started = false;

    for (lo, hi) in &spans {
        let piece = Piece::new(t, lo, hi);
        let mut zero: Vec<Triple> = Vec::new();
        let groups = event_groups(&piece, n, &mut zero);

        // Check times of this piece: (time, index of the event group there).
        let mut checks: Vec<(EventTime, Option<usize>)> = Vec::new();
        let lo_t = EventTime::Rational(lo.clone());
        let hi_t = EventTime::Rational(hi.clone());
        let mut gi = 0;
        if groups.first().map(|g| g.time == lo_t).unwrap_or(false) {
            checks.push((lo_t.clone(), Some(0)));
            gi = 1;
        } else {
            checks.push((lo_t.clone(), None));
        }
        for (k, g) in groups.iter().enumerate().skip(gi) {
            let last = &checks.last().expect("nonempty").0;
            let mid = rational_between(last, &g.time, &eps);
            checks.push((EventTime::Rational(mid), None));
            checks.push((g.time.clone(), Some(k)));
        }
        if checks.last().map(|c| c.0 != hi_t).unwrap_or(true) {
            if checks.len() > 1 {
                let last = &checks.last().expect("nonempty").0;
                let mid = rational_between(last, &hi_t, &eps);
                checks.push((EventTime::Rational(mid), None));
            }
            checks.push((hi_t.clone(), None));
        }

        for (ci, (time, group)) in checks.iter().enumerate() {
            let here: &[Triple] = group.map(|g| groups[g].triples.as_slice()).unwrap_or(&[]);
            if ci == 0 && started {
                // Same instant as the end of the previous piece; only the new
                // piece's events there matter for the next interval.
                prev_triples.extend_from_slice(here);
                continue;
            }
            let mut affected = BTreeSet::new();
            triple_pairs(&prev_triples, &mut affected);
            triple_pairs(here, &mut affected);
            let mut candidates = zero.clone();
            candidates.extend_from_slice(here);
            let bracket = match group {
                Some(g) => event_bracket(time, &groups[*g].poly, &eps),
                None => TimeBracket::exact(time.as_rational().expect("check times off events are rational").clone()),
            };
            let prev_ref = if opts.full_recompute { None } else { prev_visible.as_ref() };
            let skip_visibility = started && here.is_empty() && prev_triples.is_empty() && !opts.full_recompute;
            out.checked += 1;
            let snap = if skip_visibility {
                // No triple changes orientation across this interval, so
                // neither visibility nor criticality can change.
                let pts_ok = match time {
                    EventTime::Rational(r) => kernel::check_simple(&piece.positions(r)),
                    EventTime::Irrational(s) => kernel::check_simple(&piece.positions(s)),
                };
                pts_ok.map(|_| Snapshot { visible: prev_visible.clone().unwrap_or_default(), critical: prev_critical.clone() })
            } else {
                snapshot_at(&piece, time, prev_ref, &affected, &candidates, track)
            };
            let snap = match snap {
                Ok(s) => s,
                Err((ea, eb)) => {
                    let mut verts = vec![ea, (ea + 1) % n, eb, (eb + 1) % n];
                    verts.sort_unstable();
                    verts.dedup();
                    out.events.push(Event {
                        kind: EventKind::SimplicityViolation,
                        time: time.clone(),
                        bracket,
                        vertices: verts,
                        move_index: None,
                    });
                    out.violating = true;
                    out.final_visible = prev_visible.unwrap_or_default();
                    return Ok(out);
                }
            };

            if !snap.critical.is_empty() {
                if out.first_critical.is_none() {
                    out.first_critical = Some(CriticalHit {
                        time: time.clone(),
                        bracket: bracket.clone(),
                        triples: snap.critical.clone(),
                    });
                    if mode == Mode::FirstCritical {
                        return Ok(out);
                    }
                }
                if snap.critical != prev_critical {
                    out.events.push(Event {
                        kind: EventKind::CriticalConfiguration,
                        time: time.clone(),
                        bracket: bracket.clone(),
                        vertices: vertices_of(&snap.critical),
                        move_index: None,
                    });
                }
            }

            if !started {
                out.initial_visible = snap.visible.clone();
                started = true;
            } else if track {
                let prev = prev_visible.as_ref().expect("set after first check");
                // The change sits at whichever endpoint of the interval is an event.
                let (ctime, cbracket) = if group.is_some() || prev_triples.is_empty() {
                    (time.clone(), bracket.clone())
                } else {
                    (prev_time.clone(), prev_bracket.clone())
                };
                for &p in prev.difference(&snap.visible) {
                    out.events.push(Event {
                        kind: EventKind::VisibilityLoss,
                        time: ctime.clone(),
                        bracket: cbracket.clone(),
                        vertices: vec![p.0, p.1],
                        move_index: None,
                    });
                    out.violating = true;
                }
                for &p in snap.visible.difference(prev) {
                    out.events.push(Event {
                        kind: EventKind::VisibilityGain,
                        time: ctime.clone(),
                        bracket: cbracket.clone(),
                        vertices: vec![p.0, p.1],
                        move_index: None,
                    });
                }
            }
            prev_visible = Some(snap.visible);
            prev_critical = snap.critical;
            prev_triples = here.to_vec();
            prev_time = time.clone();
            prev_bracket = bracket;
            if out.violating && opts.stop_at_violation {
                out.final_visible = prev_visible.unwrap_or_default();
                return Ok(out);
            }
        }
    }
    out.final_visible = prev_visible.unwrap_or_default();
    Ok(out)
}

fn certificate(r: ScanResult) -> EventCertificate {
    EventCertificate {
        verdict: if r.violating { Verdict::Violating } else { Verdict::Preserving },
        events: r.events,
        initial_visible: r.initial_visible,
        final_visible: r.final_visible,
        checked_times: r.checked,
    }
}

pub fn verify_transformation(t: &Transformation) -> Result<EventCertificate, VerifyError> {
    verify_transformation_with(t, &VerifyOptions::default())
}

pub fn verify_transformation_with(t: &Transformation, opts: &VerifyOptions) -> Result<EventCertificate, VerifyError> {
    scan(t, opts, Mode::Certify, None).map(certificate)
}

/// As [`verify_transformation_with`], trusting `initial_visible` as the
/// visible-pair set of the initial polygon instead of recomputing it.
pub fn verify_transformation_from(
    t: &Transformation,
    opts: &VerifyOptions,
    initial_visible: BTreeSet<Pair>,
) -> Result<EventCertificate, VerifyError> {
    scan(t, opts, Mode::Certify, Some(initial_visible)).map(certificate)
}

/// Certifies every move of the plan in order, carrying the visible-pair set
/// across move boundaries.
pub fn verify_plan(plan: &Plan) -> Result<EventCertificate, VerifyError> {
    verify_plan_with(plan, &VerifyOptions::default())
}

pub fn verify_plan_with(plan: &Plan, opts: &VerifyOptions) -> Result<EventCertificate, VerifyError> {
    let initial: BTreeSet<Pair> = kernel::visible_pairs(plan.initial().vertices()).into_iter().collect();
    let mut cert = EventCertificate {
        verdict: Verdict::Preserving,
        events: Vec::new(),
        initial_visible: initial.clone(),
        final_visible: initial,
        checked_times: 0,
    };
    let mut cur = plan.initial().clone();
    for (idx, m) in plan.moves().iter().enumerate() {
        let t = m.as_transformation(&cur)?;
        let r = scan(&t, opts, Mode::Certify, Some(cert.final_visible.clone()))?;
        if !r.initial_visible.is_superset(&cert.final_visible) {
            // Cannot happen for a chain-consistent plan; kept as a guard.
            for &p in cert.final_visible.difference(&r.initial_visible) {
                cert.events.push(Event {
                    kind: EventKind::VisibilityLoss,
                    time: EventTime::Rational(m.start_time().clone()),
                    bracket: TimeBracket::exact(m.start_time().clone()),
                    vertices: vec![p.0, p.1],
                    move_index: Some(idx),
                });
            }
            cert.verdict = Verdict::Violating;
        }
        cert.checked_times += r.checked;
        cert.events.extend(r.events.into_iter().map(|mut e| {
            e.move_index = Some(idx);
            e
        }));
        cert.final_visible = r.final_visible;
        if r.violating {
            cert.verdict = Verdict::Violating;
            if opts.stop_at_violation || cert.events.iter().any(|e| e.kind == EventKind::SimplicityViolation) {
                return Ok(cert);
            }
        }
        cur = m.apply(&cur)?;
    }
    Ok(cert)
}

/// Certificate for one single-vertex move applied to `from`.
pub fn verify_move(from: &crate::geom::Polygon, m: &crate::motion::SingleVertexMove) -> Result<EventCertificate, VerifyError> {
    let t = m.as_transformation(from)?;
    verify_transformation(&t)
}

/// Earliest time at which the transformation is critical, with the critical
/// triples there. A critical initial polygon gives `[a, a]`.
pub fn first_critical(t: &Transformation, opts: &VerifyOptions) -> Result<Option<CriticalHit>, VerifyError> {
    Ok(scan(t, opts, Mode::FirstCritical, None)?.first_critical)
}

pub fn first_critical_time(t: &Transformation) -> Result<Option<TimeBracket>, VerifyError> {
    Ok(first_critical(t, &VerifyOptions::default())?.map(|h| h.bracket))
}

/// Whether two event times are ordered `x <= r` for a rational `r`.
pub fn time_at_most(x: &EventTime, r: &Scalar) -> bool {
    x.cmp_rational(r) != Ordering::Greater
}

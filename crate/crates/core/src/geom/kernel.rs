//! Exact predicates over an arbitrary [`ExactField`].
//!
//! Everything here works on bare vertex slices so the same code runs on
//! rational polygons and on polygons evaluated at irrational event times.
//! Orientation of the vertex order never matters to these routines.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::ExactField;
use crate::scalar::Sign;

/// A point with coordinates in `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pt<F> {
    pub x: F,
    pub y: F,
}

impl<F> Pt<F> {
    pub const fn new(x: F, y: F) -> Pt<F> {
        Pt { x, y }
    }
}

impl<F: ExactField> Pt<F> {
    pub fn sub(&self, o: &Pt<F>) -> Pt<F> {
        Pt::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &Pt<F>) -> Pt<F> {
        Pt::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn scale(&self, k: &F) -> Pt<F> {
        Pt::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// `a + s (b - a)`
    pub fn lerp(a: &Pt<F>, b: &Pt<F>, s: &F) -> Pt<F> {
        a.add(&b.sub(a).scale(s))
    }

    pub fn midpoint(a: &Pt<F>, b: &Pt<F>) -> Pt<F> {
        Pt::new(
            (a.x.clone() + b.x.clone()).half(),
            (a.y.clone() + b.y.clone()).half(),
        )
    }

    pub fn dot(&self, o: &Pt<F>) -> F {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Pt<F>) -> F {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm2(&self) -> F {
        self.dot(self)
    }
}

/// Point classification relative to a closed polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

pub fn cross3<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>) -> F {
    b.sub(a).cross(&c.sub(a))
}

/// Sign of the turn a -> b -> c: positive for a left turn.
pub fn orient<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>) -> Sign {
    if let Some(s) = orient_filtered(a, b, c) {
        return s;
    }
    cross3(a, b, c).sign()
}

/// Float evaluation of the turn, trusted only when it clears an error bound.
/// Inputs carry relative error at most 2^-50, so with `m` the largest
/// coordinate magnitude the computed cross product is within `2^-45 m^2` of
/// the true one; the bound used is 32 times wider.
fn orient_filtered<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>) -> Option<Sign> {
    let v = [a.x.approx_f64()?, a.y.approx_f64()?, b.x.approx_f64()?, b.y.approx_f64()?, c.x.approx_f64()?, c.y.approx_f64()?];
    let m = v.iter().fold(0.0f64, |m, &x| if x < 0.0 { m.max(-x) } else { m.max(x) });
    if !(1e-100..=1e100).contains(&m) {
        return None;
    }
    let det = (v[2] - v[0]) * (v[5] - v[1]) - (v[3] - v[1]) * (v[4] - v[0]);
    let bound = m * m * (1.0 / (1u64 << 40) as f64);
    if det > bound {
        Some(Sign::Positive)
    } else if det < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

fn between<F: ExactField>(v: &F, a: &F, b: &F) -> bool {
    let (lo, hi) = if a.cmp_exact(b) == Ordering::Greater { (b, a) } else { (a, b) };
    v.cmp_exact(lo) != Ordering::Less && v.cmp_exact(hi) != Ordering::Greater
}

/// `p` lies on the closed segment `ab` (which may be degenerate).
pub fn on_closed_segment<F: ExactField>(p: &Pt<F>, a: &Pt<F>, b: &Pt<F>) -> bool {
    orient(a, b, p).is_zero() && between(&p.x, &a.x, &b.x) && between(&p.y, &a.y, &b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn closed_segments_intersect<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>, d: &Pt<F>) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let proper = !o1.is_zero() && o1.flip() == o2 && !o3.is_zero() && o3.flip() == o4;
    proper
        || (o1.is_zero() && on_closed_segment(c, a, b))
        || (o2.is_zero() && on_closed_segment(d, a, b))
        || (o3.is_zero() && on_closed_segment(a, c, d))
        || (o4.is_zero() && on_closed_segment(b, c, d))
}

/// Projection key along the dominant axis of `ab`, used to order collinear points.
fn axis_key<F: ExactField>(p: &Pt<F>, a: &Pt<F>, b: &Pt<F>) -> F {
    p.sub(a).dot(&b.sub(a))
}

/// The open segment `ab` (endpoints excluded, `a != b`) meets the closed segment `cd`.
pub fn open_hits_closed<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>, d: &Pt<F>) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.is_zero() && o2.is_zero() {
        // Collinear: open interval (0, L) against closed [kc, kd] on the line.
        let len = b.sub(a).norm2();
        let kc = axis_key(c, a, b);
        let kd = axis_key(d, a, b);
        let (lo, hi) = if kc.cmp_exact(&kd) == Ordering::Greater { (kd, kc) } else { (kc, kd) };
        return lo.cmp_exact(&len) == Ordering::Less && hi.sign() == Sign::Positive;
    }
    if o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    // Unique crossing point; it is inside the open segment iff a and b lie
    // strictly on opposite sides of line cd.
    !o3.is_zero() && !o4.is_zero() && o3 != o4
}

/// The two closed segments share a point interior to at least one of them,
/// or overlap along a piece of positive length. Touching at a common endpoint
/// does not count.
pub fn segments_properly_intersect<F: ExactField>(a: &Pt<F>, b: &Pt<F>, c: &Pt<F>, d: &Pt<F>) -> bool {
    if !closed_segments_intersect(a, b, c, d) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1.is_zero() && o2.is_zero() && o3.is_zero() && o4.is_zero() {
        let len = b.sub(a).norm2();
        let kc = axis_key(c, a, b);
        let kd = axis_key(d, a, b);
        let (lo, hi) = if kc.cmp_exact(&kd) == Ordering::Greater { (kd, kc) } else { (kc, kd) };
        let zero = F::zero_elem();
        let start = if lo.cmp_exact(&zero) == Ordering::Greater { lo } else { zero };
        let end = if hi.cmp_exact(&len) == Ordering::Less { hi } else { len };
        return start.cmp_exact(&end) == Ordering::Less;
    }
    let endpoint_of_first = o3.is_zero() || o4.is_zero();
    let endpoint_of_second = o1.is_zero() || o2.is_zero();
    !(endpoint_of_first && endpoint_of_second)
}

/// Exact point location by winding number; boundary points are detected first.
pub fn locate<F: ExactField>(poly: &[Pt<F>], q: &Pt<F>) -> Location {
    let n = poly.len();
    let mut winding: i64 = 0;
    for i in 0..n {
        let c = &poly[i];
        let d = &poly[(i + 1) % n];
        if on_closed_segment(q, c, d) {
            return Location::Boundary;
        }
        let c_below = c.y.cmp_exact(&q.y) != Ordering::Greater;
        let d_below = d.y.cmp_exact(&q.y) != Ordering::Greater;
        if c_below && !d_below {
            if orient(c, d, q) == Sign::Positive {
                winding += 1;
            }
        } else if !c_below && d_below && orient(c, d, q) == Sign::Negative {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Twice the signed area; positive for counterclockwise order.
pub fn signed_area2<F: ExactField>(poly: &[Pt<F>]) -> F {
    let n = poly.len();
    let mut acc = F::zero_elem();
    for i in 0..n {
        acc = acc + poly[i].cross(&poly[(i + 1) % n]);
    }
    acc
}

/// Checks that the closed chain is a simple polygon. On failure returns the
/// indices of two offending edges (edge `i` joins vertex `i` to `i + 1`).
pub fn check_simple<F: ExactField>(poly: &[Pt<F>]) -> Result<(), (usize, usize)> {
    let n = poly.len();
    if n < 3 {
        return Err((0, 0));
    }
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return Err((i, i));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if edges_conflict(poly, i, j) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Whether edges `i < j` of the chain meet anywhere they should not.
fn edges_conflict<F: ExactField>(poly: &[Pt<F>], i: usize, j: usize) -> bool {
    let n = poly.len();
    let a = &poly[i];
    let b = &poly[(i + 1) % n];
    let c = &poly[j];
    let d = &poly[(j + 1) % n];
    if j == i + 1 || (i == 0 && j == n - 1) {
        // Adjacent edges share exactly one vertex; they may only fold back
        // onto each other when collinear.
        let (u, v, w) = if j == i + 1 { (a, b, d) } else { (b, a, c) };
        return orient(u, v, w).is_zero() && u.sub(v).dot(&w.sub(v)).sign() == Sign::Positive;
    }
    closed_segments_intersect(a, b, c, d)
}

/// As [`check_simple`], for a chain that was simple before vertex `k` was
/// moved: only the two edges at `k` are tested, in linear time.
pub fn check_simple_after_move<F: ExactField>(poly: &[Pt<F>], k: usize) -> Result<(), (usize, usize)> {
    let n = poly.len();
    if n < 3 {
        return Err((0, 0));
    }
    let before = (k + n - 1) % n;
    for e in [before, k] {
        if poly[e] == poly[(e + 1) % n] {
            return Err((e, e));
        }
        for j in 0..n {
            if j != e && edges_conflict(poly, e.min(j), e.max(j)) {
                return Err((e.min(j), e.max(j)));
            }
        }
    }
    Ok(())
}

/// Parameters `s` in the open interval (0, 1) at which the segment `a + s (b - a)`
/// meets the polygon boundary, sorted and deduplicated.
pub fn boundary_parameters<F: ExactField>(poly: &[Pt<F>], a: &Pt<F>, b: &Pt<F>) -> Vec<F> {
    let n = poly.len();
    let dir = b.sub(a);
    let len2 = dir.norm2();
    let zero = F::zero_elem();
    let one = F::one_elem();
    let inside = |s: &F| s.cmp_exact(&zero) == Ordering::Greater && s.cmp_exact(&one) == Ordering::Less;
    let mut params: Vec<F> = Vec::new();
    for i in 0..n {
        let c = &poly[i];
        let d = &poly[(i + 1) % n];
        let o1 = orient(a, b, c);
        let o2 = orient(a, b, d);
        if o1.is_zero() && o2.is_zero() {
            for p in [c, d] {
                let s = p.sub(a).dot(&dir) / len2.clone();
                if inside(&s) {
                    params.push(s);
                }
            }
            continue;
        }
        if !closed_segments_intersect(a, b, c, d) {
            continue;
        }
        let e = d.sub(c);
        let s = c.sub(a).cross(&e) / dir.cross(&e);
        if inside(&s) {
            params.push(s);
        }
    }
    params.sort_by(|x, y| x.cmp_exact(y));
    params.dedup_by(|x, y| x.cmp_exact(y) == Ordering::Equal);
    params
}

/// Splits the segment at its boundary contacts and classifies the midpoint of
/// every open piece. Returns `(s_lo, s_hi, location)` triples covering [0, 1].
pub fn classify_pieces<F: ExactField>(poly: &[Pt<F>], a: &Pt<F>, b: &Pt<F>) -> Vec<(F, F, Location)> {
    let params = boundary_parameters(poly, a, b);
    let mut cuts = Vec::with_capacity(params.len() + 2);
    cuts.push(F::zero_elem());
    cuts.extend(params);
    cuts.push(F::one_elem());
    cuts.windows(2)
        .map(|w| {
            let mid = (w[0].clone() + w[1].clone()).half();
            let p = Pt::lerp(a, b, &mid);
            (w[0].clone(), w[1].clone(), locate(poly, &p))
        })
        .collect()
}

/// No point of the closed segment `ab` lies in the polygon's exterior.
pub fn segment_in_closure<F: ExactField>(poly: &[Pt<F>], a: &Pt<F>, b: &Pt<F>) -> bool {
    if locate(poly, a) == Location::Exterior || locate(poly, b) == Location::Exterior {
        return false;
    }
    if a == b {
        return true;
    }
    classify_pieces(poly, a, b).iter().all(|(_, _, loc)| *loc != Location::Exterior)
}

/// Every point of the open segment `ab` lies in the polygon's open interior.
pub fn open_segment_interior<F: ExactField>(poly: &[Pt<F>], a: &Pt<F>, b: &Pt<F>) -> bool {
    if a == b {
        return false;
    }
    let n = poly.len();
    for i in 0..n {
        if open_hits_closed(a, b, &poly[i], &poly[(i + 1) % n]) {
            return false;
        }
    }
    locate(poly, &Pt::midpoint(a, b)) == Location::Interior
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn point_segment_dist2<F: ExactField>(p: &Pt<F>, a: &Pt<F>, b: &Pt<F>) -> F {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = ab.norm2();
    if len2.is_zero_elem() {
        return ap.norm2();
    }
    let t = ap.dot(&ab);
    if t.sign() != Sign::Positive {
        return ap.norm2();
    }
    if t.cmp_exact(&len2) != Ordering::Less {
        return p.sub(b).norm2();
    }
    let c = ap.cross(&ab);
    c.clone() * c / len2
}

/// Squared distance from `p` to the polygon boundary.
pub fn boundary_dist2<F: ExactField>(poly: &[Pt<F>], p: &Pt<F>) -> F {
    let n = poly.len();
    let mut best: Option<F> = None;
    for i in 0..n {
        let d = point_segment_dist2(p, &poly[i], &poly[(i + 1) % n]);
        best = Some(match best {
            Some(b) if b.cmp_exact(&d) != Ordering::Greater => b,
            _ => d,
        });
    }
    best.unwrap_or_else(F::zero_elem)
}

/// Pairs `{i, j}` (as `i < j`) whose open segment lies in the open interior.
pub fn visible_pairs<F: ExactField>(poly: &[Pt<F>]) -> Vec<(usize, usize)> {
    let n = poly.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if open_segment_interior(poly, &poly[i], &poly[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Maximal critical runs: for each maximal set of at least three collinear
/// vertices, sorted along their line, the maximal contiguous stretches whose
/// spanning segment avoids the exterior and holds at least three vertices.
pub fn critical_runs<F: ExactField>(poly: &[Pt<F>]) -> Vec<Vec<usize>> {
    let n = poly.len();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut runs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut line: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || orient(&poly[i], &poly[j], &poly[k]).is_zero())
                .collect();
            if line.len() < 3 {
                continue;
            }
            // Each maximal collinear set is reached from its two smallest members first.
            if line[0] != i || line[1] != j {
                continue;
            }
            if seen.contains(&line) {
                continue;
            }
            seen.push(line.clone());
            let a = poly[i].clone();
            let dir = poly[j].sub(&a);
            line.sort_by(|&p, &q| poly[p].sub(&a).dot(&dir).cmp_exact(&poly[q].sub(&a).dot(&dir)));
            let mut start = 0;
            for k in 0..line.len() {
                let gap_ok = k + 1 < line.len() && segment_in_closure(poly, &poly[line[k]], &poly[line[k + 1]]);
                if !gap_ok {
                    if k + 1 - start >= 3 {
                        runs.push(line[start..=k].to_vec());
                    }
                    start = k + 1;
                }
            }
        }
    }
    runs
}

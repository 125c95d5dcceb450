//! Acceptance run. Prints one PASS/FAIL line per criterion with the time it
//! took against its limit, and exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sightline::random_simple_polygon;
use sightline_core::critical::{critical_triples, safe_radius, visibility_increasing_move};
use sightline_core::geom::{convexity, is_convex, Convexity};
use sightline_core::greedy::greedy_oracle;
use sightline_core::motion::{distance, Orbit, Plan, SingleVertexMove, Transformation};
use sightline_core::planner::{discretize_interval, single_vertex_convexify, ConvexificationOracle, FixedOracle, StageKind, StageLog};
use sightline_core::scalar::{int, pow2_sqrt_ceil, rat};
use sightline_core::verifier::{verify_plan, verify_transformation, EventKind, Triple};
use sightline_core::visibility::{nonvisible_pair_count, property_a, vertices_visible, visibility_graph};
use sightline_core::{Point, Polygon, Scalar};

// Wide-integer geometry, written independently of the library kernel.

type P = (i128, i128);

fn ip(p: &Point) -> P {
    assert!(p.x.is_integer() && p.y.is_integer(), "oracle needs integer coordinates");
    (p.x.to_integer().to_i128().unwrap(), p.y.to_integer().to_i128().unwrap())
}

fn cross(a: P, b: P, c: P) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// `c` on the closed segment `ab`.
fn on_seg(a: P, b: P, c: P) -> bool {
    cross(a, b, c) == 0 && a.0.min(b.0) <= c.0 && c.0 <= a.0.max(b.0) && a.1.min(b.1) <= c.1 && c.1 <= a.1.max(b.1)
}

fn seg_meet(a: P, b: P, c: P, d: P) -> bool {
    let (d1, d2) = (cross(c, d, a).signum(), cross(c, d, b).signum());
    let (d3, d4) = (cross(a, b, c).signum(), cross(a, b, d).signum());
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_seg(c, d, a) || on_seg(c, d, b) || on_seg(a, b, c) || on_seg(a, b, d)
}

fn simple_i(v: &[P]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (c, d) = (v[j], v[(j + 1) % n]);
            if j == i + 1 {
                if on_seg(c, d, a) || on_seg(a, b, d) {
                    return false;
                }
            } else if i == 0 && j == n - 1 {
                if on_seg(c, d, b) || on_seg(a, b, c) {
                    return false;
                }
            } else if seg_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn in_cone(v: &[P], a: usize, b: usize) -> bool {
    let n = v.len();
    let (a0, pa, a1, pb) = (v[(a + n - 1) % n], v[a], v[(a + 1) % n], v[b]);
    if cross(pa, a1, a0) >= 0 {
        cross(pa, pb, a0) > 0 && cross(pb, pa, a1) > 0
    } else {
        !(cross(pa, pb, a1) >= 0 && cross(pb, pa, a0) >= 0)
    }
}

/// Diagonal test for a counter-clockwise simple polygon.
fn diagonal_i(v: &[P], i: usize, j: usize) -> bool {
    let n = v.len();
    if (i + 1) % n == j || (j + 1) % n == i {
        return false;
    }
    for k in 0..n {
        if k != i && k != j && on_seg(v[i], v[j], v[k]) {
            return false;
        }
        let k1 = (k + 1) % n;
        if ![i, j].contains(&k) && ![i, j].contains(&k1) && seg_meet(v[i], v[j], v[k], v[k1]) {
            return false;
        }
    }
    in_cone(v, i, j) && in_cone(v, j, i)
}

#[derive(PartialEq)]
enum Loc {
    Inside,
    Boundary,
    Outside,
}

fn locate(v: &[P], q: P) -> Loc {
    let n = v.len();
    let mut odd = false;
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        if on_seg(a, b, q) {
            return Loc::Boundary;
        }
        if (a.1 > q.1) != (b.1 > q.1) {
            let s = (a.0 - q.0) * (b.1 - a.1) + (q.1 - a.1) * (b.0 - a.0);
            if s.signum() * (b.1 - a.1).signum() > 0 {
                odd = !odd;
            }
        }
    }
    if odd {
        Loc::Inside
    } else {
        Loc::Outside
    }
}

fn ipoly(p: &Polygon) -> Vec<P> {
    p.vertices().iter().map(ip).collect()
}

fn sq(x: i128) -> i128 {
    x * x
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

/// Inserts the midpoint of edge `e` as a new vertex, giving a straight vertex.
fn with_edge_midpoint(p: &Polygon, e: usize) -> Polygon {
    let n = p.len();
    let a = p.vertex(e);
    let b = p.vertex((e + 1) % n);
    let m = Point::new((&a.x + &b.x) / int(2), (&a.y + &b.y) / int(2));
    let mut v = p.vertices().to_vec();
    v.insert(e + 1, m);
    Polygon::new(v).unwrap()
}

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn run(&mut self, id: &str, title: &str, limit: Duration, f: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let (ok, detail) = match res {
            Ok(d) => (took < limit, d),
            Err(d) => (false, d),
        };
        let line = format!(
            "{id} {} {title}: {detail} [{:.2}s, limit {}s]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
        println!("{line}");
        self.lines.push((ok, line));
    }
}

fn ac1(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    // Regular polygons rounded to a fine integer grid stay strictly convex.
    let r = 1_000_000f64;
    for n in 3..=10usize {
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                pt((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
            })
            .collect();
        let p = Polygon::new(pts).map_err(|e| format!("n={n}: {e}"))?;
        if convexity(&p) != Convexity::Strict {
            return Err(format!("n={n}: rounded polygon not strictly convex"));
        }
        let g = visibility_graph(&p);
        let want = n * (n - 3) / 2;
        if g.visible_count() != want || nonvisible_pair_count(&p) != n {
            return Err(format!("n={n}: visible {} (want {want}), nonvisible {} (want {n})", g.visible_count(), nonvisible_pair_count(&p)));
        }
        corpus.push(p);
    }
    Ok("n=3..10 exact".into())
}

fn ac2(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    const SAMPLES: i128 = 1000;
    let mut pairs = 0usize;
    for s in 0..200u64 {
        let n = 3 + (s % 10) as usize;
        let p = random_simple_polygon(n, 2000 + s).map_err(|e| e.to_string())?;
        let v: Vec<P> = ipoly(&p);
        let scaled: Vec<P> = v.iter().map(|&(x, y)| (x * (SAMPLES + 1), y * (SAMPLES + 1))).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let inside = (1..=SAMPLES).all(|m| {
                    let q = (v[i].0 * (SAMPLES + 1 - m) + v[j].0 * m, v[i].1 * (SAMPLES + 1 - m) + v[j].1 * m);
                    locate(&scaled, q) == Loc::Inside
                });
                // Sampling cannot see a single boundary touch; check vertices exactly.
                let touches = (0..n).any(|k| k != i && k != j && on_seg(v[i], v[j], v[k]));
                let oracle = inside && !touches;
                let got = vertices_visible(&p, i, j).map_err(|e| e.to_string())?;
                if got != oracle {
                    return Err(format!("seed {} pair ({i},{j}): library {got}, oracle {oracle}", 2000 + s));
                }
                pairs += 1;
            }
        }
        corpus.push(p);
    }
    Ok(format!("200 polygons, {pairs} pairs agree"))
}

fn brute_distance(p: &Polygon, q: &Polygon) -> i128 {
    let (a, b) = (ipoly(p), ipoly(q));
    all_perms(a.len())
        .iter()
        .map(|perm| perm.iter().enumerate().map(|(i, &j)| sq(a[i].0 - b[j].0) + sq(a[i].1 - b[j].1)).max().unwrap())
        .min()
        .unwrap()
}

fn ac3(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    for s in 0..100u64 {
        let n = 3 + (s % 5) as usize;
        let p = random_simple_polygon(n, 3000 + s).map_err(|e| e.to_string())?;
        let q = random_simple_polygon(n, 4000 + s).map_err(|e| e.to_string())?;
        let d = distance(&p, &q).map_err(|e| e.to_string())?;
        let want = Scalar::from_integer(brute_distance(&p, &q).into());
        if d.squared != want {
            return Err(format!("pair {s}: {} vs brute force {want}", d.squared));
        }
        corpus.push(p);
        corpus.push(q);
    }
    for s in 0..100u64 {
        let n = 3 + (s % 5) as usize;
        let ps: Vec<Polygon> = (0..3).map(|k| random_simple_polygon(n, 5000 + 3 * s + k).unwrap()).collect();
        let d = |a: &Polygon, b: &Polygon| distance(a, b).unwrap().squared;
        let (ab, ba) = (d(&ps[0], &ps[1]), d(&ps[1], &ps[0]));
        if ab != ba {
            return Err(format!("triple {s}: asymmetric"));
        }
        // |pr| <= |pq| + |qr| on squares: A - B - C <= 0 or (A - B - C)^2 <= 4BC.
        let (a, b, c) = (d(&ps[0], &ps[2]), ab, d(&ps[1], &ps[2]));
        let s2 = &a - &b - &c;
        if s2.is_positive() && &s2 * &s2 > int(4) * &b * &c {
            return Err(format!("triple {s}: triangle inequality fails"));
        }
    }
    Ok("100 pairs brute-force equal, 100 triples symmetric and triangular".into())
}

fn ac4(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    const K: i128 = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let (mut caught, mut flagged, mut moves) = (0usize, 0usize, 0usize);
    let mut seed = 6000u64;
    while moves < 200 {
        seed += 1;
        let n = rng.random_range(4..=8usize);
        let p = random_simple_polygon(n, seed).map_err(|e| e.to_string())?;
        let v = rng.random_range(0..n);
        let from = ip(p.vertex(v));
        let to = if rng.random_bool(0.5) {
            (from.0 + rng.random_range(-3..=3), from.1 + rng.random_range(-3..=3))
        } else {
            let g = (4 * n as i128).max(16);
            (rng.random_range(-2..=g + 2), rng.random_range(-2..=g + 2))
        };
        if to == from {
            continue;
        }
        let path = Orbit::linear(int(0), p.vertex(v).clone(), int(1), pt(to.0 as i64, to.1 as i64)).map_err(|e| e.to_string())?;
        let t = SingleVertexMove::new(v, path).as_transformation(&p).map_err(|e| e.to_string())?;
        let cert = verify_transformation(&t).map_err(|e| format!("seed {seed}: {e}"))?;
        moves += 1;
        // Exact visibility at t = k / K, with every coordinate scaled by K.
        let base: Vec<P> = ipoly(&p);
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut violation = None;
        'time: for k in 0..=K {
            let mut w: Vec<P> = base.iter().map(|&(x, y)| (x * K, y * K)).collect();
            w[v] = (from.0 * (K - k) + to.0 * k, from.1 * (K - k) + to.1 * k);
            if !simple_i(&w) {
                violation = Some(k);
                break;
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let vis = diagonal_i(&w, i, j);
                    if vis {
                        seen.insert((i, j));
                    } else if seen.contains(&(i, j)) {
                        violation = Some(k);
                        break 'time;
                    }
                }
            }
        }
        if cert.verdict != sightline_core::verifier::Verdict::Preserving {
            flagged += 1;
        }
        if let Some(k) = violation {
            caught += 1;
            if cert.is_preserving() {
                return Err(format!("seed {seed}: oracle violation at t = {k}/{K}, verifier says preserving"));
            }
        }
        corpus.push(p);
    }
    // The documented counterexample: a square corner pushed through the diagonal.
    let square = Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
    let path = Orbit::linear(int(0), pt(0, 0), int(1), Point::new(rat(3, 5), rat(3, 5))).unwrap();
    let t = SingleVertexMove::new(0, path).as_transformation(&square).unwrap();
    let cert = verify_transformation(&t).map_err(|e| e.to_string())?;
    let first = cert.first_violation().ok_or("square move certified preserving")?;
    if first.kind != EventKind::VisibilityLoss || first.vertices != vec![1, 3] {
        return Err(format!("square: first violation {:?} {:?}", first.kind, first.vertices));
    }
    if !first.bracket.contains(&rat(5, 6)) || first.bracket.width() > rat(1, 1 << 16) {
        return Err("square: bracket misses 5/6 or is too wide".into());
    }
    Ok(format!("200 moves, {caught} sampled violations all flagged ({flagged} flagged in total); square loss of (1,3) bracketed at 5/6"))
}

/// A displacement of length strictly below `delta`.
fn small_step(rng: &mut ChaCha8Rng, delta: &Scalar, k: i64) -> (Scalar, Scalar) {
    loop {
        let (a, b) = (rng.random_range(-k..=k), rng.random_range(-k..=k));
        if (a as i128) * (a as i128) + (b as i128) * (b as i128) < (k as i128) * (k as i128) {
            return (delta * rat(a, k), delta * rat(b, k));
        }
    }
}

fn ac5(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut tried = 0usize;
    for s in 0..50u64 {
        let n = 4 + (s % 4) as usize;
        let mut p = random_simple_polygon(n, 7000 + s).map_err(|e| e.to_string())?;
        if s % 3 == 0 {
            p = with_edge_midpoint(&p, (s as usize) % n);
        }
        let n = p.len();
        let base: BTreeSet<Triple> = critical_triples(&p).into_iter().collect();
        let delta = safe_radius(&p).value;
        if !delta.is_positive() {
            return Err(format!("polygon {s}: non-positive safe radius"));
        }
        let v = p.vertices();
        for trial in 0..1000 {
            let mut w: Vec<Point> = v.to_vec();
            match trial % 3 {
                0 => {
                    for q in w.iter_mut() {
                        let (dx, dy) = small_step(&mut rng, &delta, 1 << 20);
                        *q = Point::new(&q.x + dx, &q.y + dy);
                    }
                }
                1 => {
                    for q in w.iter_mut() {
                        let (dx, dy) = small_step(&mut rng, &delta, 8);
                        *q = Point::new(&q.x + dx, &q.y + dy);
                    }
                }
                _ => {
                    // Push one vertex almost delta towards the line of two others.
                    let i = rng.random_range(0..n);
                    let j = (i + rng.random_range(1..n)) % n;
                    let k = (0..n).filter(|&k| k != i && k != j).nth(rng.random_range(0..n - 2)).unwrap();
                    let (a, b, c) = (&v[i], &v[j], &v[k]);
                    let (nx, ny) = (-(&b.y - &a.y), &b.x - &a.x);
                    let side = (&c.x - &a.x) * &nx + (&c.y - &a.y) * &ny;
                    let len = pow2_sqrt_ceil(&(&nx * &nx + &ny * &ny));
                    let mut f = &delta * rat(1023, 1024) / len;
                    if side.is_positive() {
                        f = -f;
                    }
                    w[k] = Point::new(&c.x + &nx * &f, &c.y + &ny * &f);
                }
            }
            tried += 1;
            let q = Polygon::new(w).map_err(|e| format!("polygon {s} trial {trial}: perturbation not simple: {e}"))?;
            if q.reversed() {
                return Err(format!("polygon {s} trial {trial}: orientation changed"));
            }
            if let Some(t) = critical_triples(&q).into_iter().find(|t| !base.contains(t)) {
                return Err(format!("polygon {s} trial {trial}: new critical triple {t:?}"));
            }
        }
        corpus.push(p);
    }
    Ok(format!("{tried} perturbations, no new critical triple"))
}

fn ac6(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    let mut built = 0usize;
    let mut seed = 8000u64;
    while built < 50 {
        seed += 1;
        let n = 4 + (seed % 5) as usize;
        let p = random_simple_polygon(n, seed).map_err(|e| e.to_string())?;
        let c = match seed % 3 {
            0 => with_edge_midpoint(&p, (seed as usize) % n),
            1 => with_edge_midpoint(&with_edge_midpoint(&p, 0), 2),
            _ => {
                // Pull a vertex onto the segment joining its neighbours.
                let k = (seed as usize) % n;
                let (a, b) = (p.vertex((k + n - 1) % n), p.vertex((k + 1) % n));
                let m = Point::new((&a.x + &b.x) / int(2), (&a.y + &b.y) / int(2));
                let mut v = p.vertices().to_vec();
                v[k] = m;
                match Polygon::new(v) {
                    Ok(q) => q,
                    Err(_) => continue,
                }
            }
        };
        if critical_triples(&c).is_empty() {
            continue;
        }
        let m = visibility_increasing_move(&c).map_err(|e| format!("seed {seed}: {e}"))?;
        let plan = Plan::new(c.clone(), vec![m]).map_err(|e| format!("seed {seed}: {e}"))?;
        let cert = verify_plan(&plan).map_err(|e| format!("seed {seed}: {e}"))?;
        if !cert.is_preserving() {
            return Err(format!("seed {seed}: move not preserving"));
        }
        let (before, after) = (nonvisible_pair_count(&c), nonvisible_pair_count(plan.final_polygon()));
        if after >= before {
            return Err(format!("seed {seed}: nonvisible {before} -> {after}"));
        }
        corpus.push(c);
        corpus.push(plan.final_polygon().clone());
        built += 1;
    }
    Ok("50 critical polygons, every move preserving and visibility-increasing".into())
}

/// Checks (a) to (e) on one plan.
fn check_plan(name: &str, poly: &Polygon, plan: &Plan, log: &StageLog, corpus: &mut Vec<Polygon>) -> Result<(), String> {
    let bounds = plan.boundary_polygons();
    for (i, m) in plan.moves().iter().enumerate() {
        let changed = (0..poly.len()).filter(|&k| bounds[i].vertex(k) != bounds[i + 1].vertex(k)).count();
        let t = m.as_transformation(&bounds[i]).map_err(|e| format!("{name}: {e}"))?;
        if changed > 1 || t.moving_vertices(t.start(), t.end()).len() != 1 {
            return Err(format!("{name}: move {i} is not a single-vertex move"));
        }
    }
    let cert = verify_plan(plan).map_err(|e| format!("{name}: {e}"))?;
    if !cert.is_preserving() {
        return Err(format!("{name}: plan not preserving"));
    }
    if !is_convex(plan.final_polygon()) {
        return Err(format!("{name}: final polygon not convex"));
    }
    let (g0, g1) = (visibility_graph(poly), visibility_graph(plan.final_polygon()));
    if !g0.visible_pairs().is_subset(g1.visible_pairs()) || !cert.initial_visible.is_subset(&cert.final_visible) {
        return Err(format!("{name}: initial visible pairs not kept"));
    }
    let mut at = 0usize;
    let mut last_increase: Option<usize> = None;
    for (k, st) in log.stages.iter().enumerate() {
        let (b, a) = (nonvisible_pair_count(&bounds[at]), nonvisible_pair_count(&bounds[at + st.moves]));
        if (b, a) != (st.nonvisible_before, st.nonvisible_after) || a > b {
            return Err(format!("{name}: stage {k} counts {b} -> {a}, logged {} -> {}", st.nonvisible_before, st.nonvisible_after));
        }
        if st.kind == StageKind::VisibilityIncrease {
            if a >= b || last_increase.is_some_and(|l| a >= l) {
                return Err(format!("{name}: stage {k} does not decrease the nonvisible count"));
            }
            last_increase = Some(a);
        }
        at += st.moves;
    }
    if at != plan.len() {
        return Err(format!("{name}: stage log covers {at} of {} moves", plan.len()));
    }
    corpus.extend(bounds);
    Ok(())
}

fn ac7(corpus: &mut Vec<Polygon>) -> Result<String, String> {
    let dart = Polygon::from_ints(&[(0, 0), (2, 0), (1, 3), (1, 1)]).unwrap();
    let path = Orbit::linear(int(0), pt(1, 1), int(1), pt(0, 2)).unwrap();
    let oracle = FixedOracle::new(SingleVertexMove::new(3, path).as_transformation(&dart).unwrap()).map_err(|e| e.to_string())?;
    let (plan, log) = single_vertex_convexify(&dart, &oracle).map_err(|e| format!("dart: {e}"))?;
    check_plan("dart", &dart, &plan, &log, corpus)?;

    let quad = Polygon::from_ints(&[(0, 0), (1, 0), (2, 0), (1, 1)]).unwrap();
    let (plan, log) = single_vertex_convexify(&quad, &greedy_oracle()).map_err(|e| format!("quad: {e}"))?;
    check_plan("critical quadrilateral", &quad, &plan, &log, corpus)?;

    let greedy = greedy_oracle();
    let (mut ok, mut later_oracle_failures, mut moves) = (0usize, 0usize, 0usize);
    let mut seed = 9000u64;
    while ok < 20 {
        seed += 1;
        if seed > 9400 {
            return Err(format!("only {ok} generated cases"));
        }
        let n = 5 + (seed % 3) as usize;
        let p = random_simple_polygon(n, seed).map_err(|e| e.to_string())?;
        if is_convex(&p) || greedy.convexify(&p).is_err() {
            continue;
        }
        match single_vertex_convexify(&p, &greedy) {
            Ok((plan, log)) => {
                check_plan(&format!("seed {seed}"), &p, &plan, &log, corpus)?;
                moves += plan.len();
                ok += 1;
            }
            // The greedy oracle failed on a later query: not a successful-oracle case.
            Err(e) if e.is_oracle_failure() => later_oracle_failures += 1,
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
    }
    Ok(format!("dart, critical quadrilateral and {ok} generated polygons ({moves} moves); {later_oracle_failures} skipped for later oracle failure"))
}

fn ac8(corpus: &[Polygon]) -> Result<String, String> {
    let mut triples = 0usize;
    for (k, p) in corpus.iter().enumerate() {
        for t in critical_triples(p) {
            triples += 1;
            if property_a(p, t[0], t[1], t[2]).map_err(|e| e.to_string())? {
                return Err(format!("corpus polygon {k}: critical triple {t:?} has the property"));
            }
        }
    }
    if triples == 0 {
        return Err("no critical triples in the corpus".into());
    }
    Ok(format!("{} polygons, {triples} critical triples, none with the property", corpus.len()))
}

fn ac9() -> Result<String, String> {
    let (mut grids, mut verified) = (0usize, 0usize);
    let greedy = greedy_oracle();
    for seed in 10_000..10_040u64 {
        let n = 5 + (seed % 3) as usize;
        let p = random_simple_polygon(n, seed).map_err(|e| e.to_string())?;
        let c = Point::new(
            p.vertices().iter().map(|v| v.x.clone()).fold(Scalar::zero(), |a, b| a + b) / int(n as i64),
            p.vertices().iter().map(|v| v.y.clone()).fold(Scalar::zero(), |a, b| a + b) / int(n as i64),
        );
        let shrink = Transformation::aligned_with(
            &p,
            int(0),
            int(1),
            p.vertices()
                .iter()
                .map(|v| Orbit::linear(int(0), v.clone(), int(1), Point::new((&v.x + &c.x) / int(2), (&v.y + &c.y) / int(2))).unwrap())
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let mut ts = vec![shrink];
        if let Ok(t) = greedy.convexify(&p) {
            ts.push(t);
        }
        for t in &ts {
            let (s, e) = (t.start().clone(), t.end().clone());
            if s == e {
                continue;
            }
            for steps in [3u64, 8] {
                let id: Vec<usize> = (0..n).collect();
                let Ok(plan) = discretize_interval(t, &s, &e, steps, &id) else { continue };
                grids += 1;
                let bounds = plan.boundary_polygons();
                let tau = (&e - &s) / int(steps as i64);
                for l in 0..=steps {
                    let at = &s + &tau * int(l as i64);
                    let done = plan.moves().iter().filter(|m| m.end_time() <= &at).count();
                    let want = t.polygon_at(&at).map_err(|e| e.to_string())?;
                    if bounds[done] != want {
                        return Err(format!("seed {seed}: step {l} of {steps} off the grid"));
                    }
                }
                if !verify_plan(&plan).map_err(|e| e.to_string())?.is_preserving() {
                    continue;
                }
                verified += 1;
                let mut rev = id.clone();
                rev.reverse();
                let mut rot = id.clone();
                rot.rotate_left(2);
                for order in [rev, rot] {
                    let other = discretize_interval(t, &s, &e, steps, &order).map_err(|e| format!("seed {seed}: {e}"))?;
                    if other.final_polygon() != plan.final_polygon() {
                        return Err(format!("seed {seed}: order {order:?} ends elsewhere"));
                    }
                }
            }
        }
    }
    if verified < 10 {
        return Err(format!("only {verified} verified stages"));
    }
    Ok(format!("{grids} discretizations on the grid, {verified} verified stages order-independent"))
}

fn main() -> ExitCode {
    let mut r = Report { lines: Vec::new() };
    let mut corpus: Vec<Polygon> = Vec::new();
    let secs = Duration::from_secs;
    r.run("AC1", "convex baseline", secs(1), || ac1(&mut corpus));
    r.run("AC2", "visibility vs dense sampling", secs(60), || ac2(&mut corpus));
    r.run("AC3", "bottleneck distance", secs(30), || ac3(&mut corpus));
    r.run("AC4", "event soundness", secs(120), || ac4(&mut corpus));
    r.run("AC5", "safe radius", secs(60), || ac5(&mut corpus));
    r.run("AC6", "visibility-increasing move", secs(30), || ac6(&mut corpus));
    r.run("AC7", "end-to-end convexification", secs(300), || ac7(&mut corpus));
    r.run("AC8", "critical triples fail the pair property", secs(60), || ac8(&corpus));
    r.run("AC9", "grid fidelity and order independence", secs(60), ac9);
    let failed = r.lines.iter().filter(|(ok, _)| !ok).count();
    println!("{} of {} criteria pass", r.lines.len() - failed, r.lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

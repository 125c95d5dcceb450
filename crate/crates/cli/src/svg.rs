//! SVG rendering of plans: the outline animated with native SVG animation,
//! sight lines and critical tuples at move boundaries.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use sightline_core::critical;
use sightline_core::geom::kernel;
use sightline_core::motion::{Plan, Transformation};
use sightline_core::scalar;
use sightline_core::{Point, Polygon, Scalar};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 24.0;
/// Most boundary snapshots drawn in one animated document.
const MAX_SNAPSHOTS: usize = 200;

struct View {
    min_x: f64,
    max_y: f64,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(points: &[Point]) -> View {
        let xs: Vec<f64> = points.iter().map(|p| scalar::to_f64(&p.x)).collect();
        let ys: Vec<f64> = points.iter().map(|p| scalar::to_f64(&p.y)).collect();
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (min_x, max_x) = (fold(&xs, f64::min, f64::INFINITY), fold(&xs, f64::max, f64::NEG_INFINITY));
        let (min_y, max_y) = (fold(&ys, f64::min, f64::INFINITY), fold(&ys, f64::max, f64::NEG_INFINITY));
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        View { min_x, max_y, scale, height: (max_y - min_y) * scale + 2.0 * MARGIN }
    }

    fn xy(&self, p: &Point) -> (f64, f64) {
        (
            (scalar::to_f64(&p.x) - self.min_x) * self.scale + MARGIN,
            (self.max_y - scalar::to_f64(&p.y)) * self.scale + MARGIN,
        )
    }

    fn points(&self, ps: &[Point]) -> String {
        ps.iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn header(out: &mut String, view: &View) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{h:.0}" viewBox="0 0 {WIDTH:.0} {h:.0}">"#,
        h = view.height
    );
    let _ = writeln!(
        out,
        "<style>.outline{{fill:#eef3fb;stroke:#1f3b73;stroke-width:2}} .sight{{stroke:#6a9f58;stroke-width:1}} \
         .critical{{stroke:#c0392b;stroke-width:4;stroke-linecap:round}} .track{{fill:none;stroke:#999;stroke-dasharray:4 3}} \
         .mover{{fill:#e67e22}}</style>"
    );
}

/// Sight lines and critical tuples of one polygon.
fn overlay(out: &mut String, view: &View, poly: &Polygon) {
    let v = poly.vertices();
    for (i, j) in kernel::visible_pairs(v) {
        let (x1, y1) = view.xy(&v[i]);
        let (x2, y2) = view.xy(&v[j]);
        let _ = writeln!(out, r#"<line class="sight" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    for t in critical::critical_tuples(poly) {
        let (x1, y1) = view.xy(&t.witness.a);
        let (x2, y2) = view.xy(&t.witness.b);
        let _ = writeln!(out, r#"<line class="critical" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
}

fn all_points(plan: &Plan) -> Vec<Point> {
    let mut pts = plan.initial().vertices().to_vec();
    for m in plan.moves() {
        pts.extend(m.path.keyframes().iter().map(|(_, p)| p.clone()));
    }
    pts
}

/// Sample times: every keyframe, plus at least `fps` evenly spaced samples
/// per unit of time inside each move.
fn sample_times(plan: &Plan, fps: u32) -> Vec<Scalar> {
    let mut ts = Vec::new();
    for m in plan.moves() {
        let (s, e) = (m.start_time(), m.end_time());
        let k = scalar::ceil_int(&((e - s) * Scalar::from_integer(BigInt::from(fps)))).to_usize().unwrap_or(1).max(1);
        for j in 0..=k {
            ts.push(s + (e - s) * Scalar::new(BigInt::from(j), BigInt::from(k)));
        }
        ts.extend(m.path.keyframes().iter().map(|(t, _)| t.clone()));
    }
    ts.sort();
    ts.dedup();
    ts
}

fn fraction(t: &Scalar, t0: &Scalar, dur: &Scalar) -> f64 {
    scalar::to_f64(&((t - t0) / dur))
}

fn secs(x: &Scalar) -> String {
    format!("{:.4}s", scalar::to_f64(x))
}

fn snapshot_indices(count: usize) -> Vec<usize> {
    if count <= MAX_SNAPSHOTS {
        return (0..count).collect();
    }
    let mut idx: Vec<usize> = (0..MAX_SNAPSHOTS).map(|k| k * (count - 1) / (MAX_SNAPSHOTS - 1)).collect();
    idx.dedup();
    idx
}

/// A standalone animated SVG of `plan`. An empty plan gives a static picture
/// of its polygon.
pub fn export_svg(plan: &Plan, fps: u32) -> String {
    let fps = fps.max(1);
    let view = View::fit(&all_points(plan));
    let mut out = String::new();
    header(&mut out, &view);
    let (Some(t0), Some(t1)) = (plan.start_time().cloned(), plan.end_time().cloned()) else {
        let _ = writeln!(out, r#"<polygon class="outline" points="{}"/>"#, view.points(plan.initial().vertices()));
        let _ = writeln!(out, r#"<g class="frame">"#);
        overlay(&mut out, &view, plan.initial());
        let _ = writeln!(out, "</g>\n</svg>");
        return out;
    };
    let dur = &t1 - &t0;
    let t = plan.to_transformation();
    let times = sample_times(plan, fps);
    let key_times: Vec<String> = times
        .iter()
        .enumerate()
        .map(|(i, s)| match i {
            0 => "0".to_string(),
            _ if i + 1 == times.len() => "1".to_string(),
            _ => format!("{:.6}", fraction(s, &t0, &dur)),
        })
        .collect();
    let frames: Vec<Vec<Point>> = times.iter().map(|s| t.positions_at(s)).collect();
    let values: Vec<String> = frames.iter().map(|f| view.points(f)).collect();
    let _ = writeln!(
        out,
        r#"<polygon class="outline" points="{}"><animate attributeName="points" dur="{}" fill="freeze" keyTimes="{}" values="{}"/></polygon>"#,
        values[0],
        secs(&dur),
        key_times.join(";"),
        values.join(";")
    );

    // Boundaries between moves, each shown until the next one starts.
    let coalesced = plan.coalesced();
    let polys = coalesced.boundary_polygons();
    let mut starts: Vec<Scalar> = vec![t0.clone()];
    starts.extend(coalesced.moves().iter().map(|m| m.end_time().clone()));
    let shown = snapshot_indices(polys.len());
    for (k, &i) in shown.iter().enumerate() {
        let begin = secs(&(&starts[i] - &t0));
        let end = shown.get(k + 1).map(|&j| format!(r#" end="{}""#, secs(&(&starts[j] - &t0)))).unwrap_or_default();
        let _ = writeln!(
            out,
            r#"<g class="frame" visibility="hidden"><set attributeName="visibility" to="visible" begin="{begin}"{end} fill="freeze"/>"#
        );
        overlay(&mut out, &view, &polys[i]);
        let _ = writeln!(out, "</g>");
    }

    for vtx in moving_vertices(&t) {
        let track: Vec<Point> = t.orbits()[vtx].keyframes().iter().map(|(_, p)| p.clone()).collect();
        let _ = writeln!(out, r#"<polyline class="track" points="{}"/>"#, view.points(&track));
        let cx: Vec<String> = frames.iter().map(|f| format!("{:.3}", view.xy(&f[vtx]).0)).collect();
        let cy: Vec<String> = frames.iter().map(|f| format!("{:.3}", view.xy(&f[vtx]).1)).collect();
        let (x, y) = view.xy(&frames[0][vtx]);
        let _ = writeln!(
            out,
            r#"<circle class="mover" r="4" cx="{x:.3}" cy="{y:.3}"><animate attributeName="cx" dur="{d}" fill="freeze" keyTimes="{k}" values="{cx}"/><animate attributeName="cy" dur="{d}" fill="freeze" keyTimes="{k}" values="{cy}"/></circle>"#,
            d = secs(&dur),
            k = key_times.join(";"),
            cx = cx.join(";"),
            cy = cy.join(";"),
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn moving_vertices(t: &Transformation) -> Vec<usize> {
    t.moving_vertices(t.start(), t.end())
}

/// Static SVGs sampled `fps` times per unit of time, first and last
/// instants included.
pub fn export_frames(plan: &Plan, fps: u32) -> Vec<String> {
    let fps = fps.max(1);
    let view = View::fit(&all_points(plan));
    let (Some(t0), Some(t1)) = (plan.start_time().cloned(), plan.end_time().cloned()) else {
        return vec![static_frame(&view, plan.initial())];
    };
    let t = plan.to_transformation();
    let step = Scalar::new(1.into(), BigInt::from(fps));
    let mut out = Vec::new();
    let mut s = t0.clone();
    while s < t1 {
        out.push(frame_at(&view, &t, &s));
        s = &s + &step;
    }
    out.push(frame_at(&view, &t, &t1));
    out
}

fn frame_at(view: &View, t: &Transformation, s: &Scalar) -> String {
    match t.polygon_at(s) {
        Ok(p) => static_frame(view, &p),
        // Plans are simple at every time, but render what is there anyway.
        Err(_) => {
            let mut out = String::new();
            header(&mut out, view);
            let _ = writeln!(out, r#"<polygon class="outline" points="{}"/>"#, view.points(&t.positions_at(s)));
            let _ = writeln!(out, "</svg>");
            out
        }
    }
}

fn static_frame(view: &View, poly: &Polygon) -> String {
    let mut out = String::new();
    header(&mut out, view);
    let _ = writeln!(out, r#"<polygon class="outline" points="{}"/>"#, view.points(poly.vertices()));
    let _ = writeln!(out, r#"<g class="frame">"#);
    overlay(&mut out, view, poly);
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

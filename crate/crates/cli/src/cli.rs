//! The `sightline` command line.
//!
//! Exit codes: 0 success, 1 violation or planner failure, 2 bad input,
//! 3 critical polygon (`critical` only), 4 oracle answer rejected.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use sightline_core::critical;
use sightline_core::geom::{convexity, Convexity};
use sightline_core::greedy::GreedyOracle;
use sightline_core::planner::{self, ConvexificationOracle, PlanError, PlannerOptions};
use sightline_core::verifier::{self, EventCertificate, VerifyOptions};
use sightline_core::visibility;
use sightline_core::Polygon;

use crate::format::{self, show, FormatError, Rat};
use crate::random::random_simple_polygon;
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CRITICAL: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sightline", version, about = "Exact vertex visibility and visibility-preserving single-vertex convexification of simple polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the vertex count, the sorted visible pairs and the number of nonvisible pairs.
    Visgraph {
        /// Polygon file.
        polygon: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the maximal critical tuples; exits 3 if there are any.
    Critical {
        /// Polygon file.
        polygon: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the certified safe radius and the vertices attaining it.
    SafeRadius {
        /// Polygon file.
        polygon: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a plan (or transformation) never loses a visible pair; exits 1 if it does.
    Verify {
        /// Plan file, or transformation file with --transformation.
        file: PathBuf,
        /// Read FILE as a transformation instead of a plan.
        #[arg(long)]
        transformation: bool,
        /// List every event, not just the verdict.
        #[arg(long)]
        events: bool,
        /// Largest width of irrational event brackets, as "p/q" (default: duration / 2^16).
        #[arg(long)]
        epsilon: Option<Rat>,
        /// Write the report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a verified single-vertex convexification plan.
    Plan {
        /// Polygon file.
        polygon: PathBuf,
        /// Transformation file answering the convexification query for this polygon.
        #[arg(long, required_unless_present = "greedy", conflicts_with = "greedy")]
        oracle_file: Option<PathBuf>,
        /// Use the built-in greedy convexifier as the oracle.
        #[arg(long)]
        greedy: bool,
        /// Write the plan here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the stage log to this file.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Cap on grid steps per stage.
        #[arg(long, default_value_t = 256)]
        max_steps: u64,
    },
    /// Render a plan as an animated SVG.
    Animate {
        /// Plan file.
        plan: PathBuf,
        /// Samples per unit of plan time.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        fps: u32,
        /// Write the SVG here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write numbered static frames frame-00000.svg, ... into this directory instead.
        #[arg(long)]
        frames: Option<PathBuf>,
        /// Render without verifying the plan first.
        #[arg(long)]
        skip_verify: bool,
    },
    /// Generate a random simple polygon.
    Random {
        /// Number of vertices (at least 3).
        #[arg(short, long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(3..))]
        n: u32,
        /// Seed; equal seeds give equal polygons.
        #[arg(short, long, default_value_t = 0)]
        seed: u64,
        /// Write the polygon here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failed command: message for stderr and exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure { code: EXIT_INPUT, message: e.to_string() }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(input),
    }
}

fn load_polygon(path: &Path) -> Result<Polygon, Failure> {
    format::parse_polygon(&format::read_file(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn convexity_line(p: &Polygon) -> &'static str {
    match convexity(p) {
        Convexity::Strict => "convex",
        Convexity::Degenerate { .. } => "convex (degenerate)",
        Convexity::NotConvex { .. } => "not convex",
    }
}

fn visgraph(p: &Polygon) -> String {
    let g = visibility::visibility_graph(p);
    let mut pairs: Vec<(usize, usize)> = g
        .visible_pairs()
        .iter()
        .map(|&(i, j)| visibility::pair(p.caller_index(i), p.caller_index(j)))
        .collect();
    pairs.sort_unstable();
    let list: Vec<String> = pairs.iter().map(|(i, j)| format!("{i}-{j}")).collect();
    format!(
        "n {}\nvisible {}\nnonvisible {}\nconvexity {}\n",
        p.len(),
        list.join(" "),
        g.nonvisible_count(),
        convexity_line(p)
    )
}

fn critical_report(p: &Polygon) -> (String, bool) {
    let tuples = critical::critical_tuples(p);
    if tuples.is_empty() {
        return ("not critical\n".into(), false);
    }
    let mut lines: Vec<String> = tuples
        .iter()
        .map(|t| {
            let mut idx: Vec<usize> = t.indices.iter().map(|&i| p.caller_index(i)).collect();
            idx.sort_unstable();
            let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            format!("critical {}", idx.join(" "))
        })
        .collect();
    lines.sort();
    (lines.join("\n") + "\n", true)
}

fn safe_radius_report(p: &Polygon) -> String {
    let r = critical::safe_radius(p);
    let w: Vec<String> = r.witness.iter().map(|&i| p.caller_index(i).to_string()).collect();
    let term = match r.term {
        critical::SafeRadiusTerm::Altitude => "altitude",
        critical::SafeRadiusTerm::Clearance => "clearance",
        critical::SafeRadiusTerm::Separation => "separation",
    };
    format!(
        "squared {}\nlower_bound {}\napprox {:.9}\nterm {term}\nwitness {}\n",
        show(&r.squared),
        show(&r.value),
        r.length().approx(),
        w.join(" ")
    )
}

fn event_line(p: &Polygon, e: &verifier::Event) -> String {
    let v: Vec<String> = e.vertices.iter().map(|&i| p.caller_index(i).to_string()).collect();
    let when = if e.bracket.is_exact() {
        format!("t = {}", show(&e.bracket.lo))
    } else {
        format!("t in [{}, {}] (~{:.9})", show(&e.bracket.lo), show(&e.bracket.hi), e.time.approx())
    };
    let mv = e.move_index.map(|m| format!(" move {m}")).unwrap_or_default();
    format!("{} vertices [{}] {when}{mv}", e.kind.name(), v.join(", "))
}

fn verify_report(p: &Polygon, cert: &EventCertificate, events: bool) -> String {
    let mut out = String::new();
    if cert.is_preserving() {
        out.push_str("PRESERVING\n");
    } else {
        out.push_str("VIOLATING\n");
        if let Some(e) = cert.first_violation() {
            out.push_str(&format!("first {}\n", event_line(p, e)));
        }
    }
    out.push_str(&format!(
        "visible_pairs initial {} final {} gained {}\n",
        cert.initial_visible.len(),
        cert.final_visible.len(),
        cert.gained()
    ));
    if events {
        for e in &cert.events {
            out.push_str(&format!("event {}\n", event_line(p, e)));
        }
    }
    out
}

fn plan_failure(e: PlanError) -> Failure {
    let code = if e.is_oracle_failure() { EXIT_ORACLE } else { EXIT_FAILED };
    let mut message = e.to_string();
    if let PlanError::OracleRejected { certificate: Some(c), .. } = &e {
        if let Some(v) = c.first_violation() {
            message.push_str(&format!(" ({} of {:?})", v.kind.name(), v.vertices));
        }
    }
    Failure { code, message }
}

fn execute(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Visgraph { polygon, output } => {
            let p = load_polygon(&polygon)?;
            write_out(output.as_deref(), &visgraph(&p))?;
            Ok(EXIT_OK)
        }
        Command::Critical { polygon, output } => {
            let p = load_polygon(&polygon)?;
            let (text, crit) = critical_report(&p);
            write_out(output.as_deref(), &text)?;
            Ok(if crit { EXIT_CRITICAL } else { EXIT_OK })
        }
        Command::SafeRadius { polygon, output } => {
            let p = load_polygon(&polygon)?;
            write_out(output.as_deref(), &safe_radius_report(&p))?;
            Ok(EXIT_OK)
        }
        Command::Verify { file, transformation, events, epsilon, output } => {
            let text = format::read_file(&file)?;
            let opts = VerifyOptions { epsilon: epsilon.map(|r| r.0), ..VerifyOptions::default() };
            let (poly, cert) = if transformation {
                let t = format::parse_transformation(&text).map_err(|e| input(format!("{}: {e}", file.display())))?;
                let p = t.initial_polygon().map_err(input)?;
                (p, verifier::verify_transformation_with(&t, &opts).map_err(input)?)
            } else {
                let plan = format::parse_plan(&text).map_err(|e| input(format!("{}: {e}", file.display())))?;
                (plan.initial().clone(), verifier::verify_plan_with(&plan, &opts).map_err(input)?)
            };
            write_out(output.as_deref(), &verify_report(&poly, &cert, events))?;
            Ok(if cert.is_preserving() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Plan { polygon, oracle_file, greedy, output, log, max_steps } => {
            let p = load_polygon(&polygon)?;
            let oracle: Box<dyn ConvexificationOracle> = match (&oracle_file, greedy) {
                (_, true) => Box::new(GreedyOracle::default()),
                (Some(f), false) => Box::new(format::oracle_from_file(f)?),
                (None, false) => return Err(input("one of --oracle-file or --greedy is required")),
            };
            let opts = PlannerOptions { max_steps, ..PlannerOptions::default() };
            let result = planner::single_vertex_convexify_with(&p, oracle.as_ref(), &opts);
            let (plan, stages) = match result {
                Ok(r) => r,
                Err(e) => {
                    let log_of = match &e {
                        PlanError::RetryBudget { log, .. } | PlanError::StageLimit { log, .. } => Some(log.clone()),
                        _ => None,
                    };
                    if let (Some(path), Some(l)) = (&log, log_of) {
                        write_out(Some(path), &format::emit_stage_log(&p, &l))?;
                    }
                    return Err(plan_failure(e));
                }
            };
            eprintln!(
                "plan: {} moves in {} stages, nonvisible pairs {} -> {}",
                plan.len(),
                stages.stages.len(),
                visibility::nonvisible_pair_count(&p),
                visibility::nonvisible_pair_count(plan.final_polygon())
            );
            if let Some(path) = &log {
                write_out(Some(path), &format::emit_stage_log(&p, &stages))?;
            }
            write_out(output.as_deref(), &format::emit_plan(&plan))?;
            Ok(EXIT_OK)
        }
        Command::Animate { plan, fps, output, frames, skip_verify } => {
            let text = format::read_file(&plan)?;
            let plan = format::parse_plan(&text).map_err(|e| input(format!("{}: {e}", plan.display())))?;
            if !skip_verify {
                let cert = verifier::verify_plan(&plan).map_err(input)?;
                if !cert.is_preserving() {
                    let first = cert.first_violation().map(|e| event_line(plan.initial(), e)).unwrap_or_default();
                    return Err(Failure { code: EXIT_FAILED, message: format!("plan is not visibility-preserving: {first}") });
                }
            }
            match frames {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
                    let all = svg::export_frames(&plan, fps);
                    for (i, f) in all.iter().enumerate() {
                        write_out(Some(&dir.join(format!("frame-{i:05}.svg"))), f)?;
                    }
                    eprintln!("animate: wrote {} frames to {}", all.len(), dir.display());
                }
                None => write_out(output.as_deref(), &svg::export_svg(&plan, fps))?,
            }
            Ok(EXIT_OK)
        }
        Command::Random { n, seed, output } => {
            let p = random_simple_polygon(n as usize, seed).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })?;
            write_out(output.as_deref(), &format::emit_polygon(&p))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

//! Command line front door: generate inputs, embed, verify, render, and a
//! self-contained dodecahedron demo. Failures exit nonzero with a one-line
//! JSON error object on stderr.

use clap::{Parser, Subcommand, ValueEnum};
use dualgrid::generate::{platonic, sparsified, triangulation};
use dualgrid::graph::PlanarGraph;
use dualgrid::labeling::find_labeling;
use dualgrid::placement::{place, place_traced, quad_for_drawing, Drawing, Engine};
use dualgrid::quad::{BendTarget, QuadGraph};
use dualgrid::render::{render_svg, RenderStyle};
use dualgrid::verify::{check_requirements, check_strict_convexity, Report};
use std::error::Error;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "dualgrid",
    version,
    about = "Simultaneous straight-line grid drawings of a 3-connected planar graph and its dual"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BendArg {
    Primal,
    Dual,
}

impl From<BendArg> for BendTarget {
    fn from(b: BendArg) -> BendTarget {
        match b {
            BendArg::Primal => BendTarget::Primal,
            BendArg::Dual => BendTarget::Dual,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EngineArg {
    Reference,
    Offset,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Platonic,
    Triangulation,
    Sparsified,
}

#[derive(Subcommand)]
enum Cmd {
    /// Embed a graph and its dual on the grid; writes drawing JSON.
    Embed {
        /// Graph JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Which side gets the single bent edge.
        #[arg(long, value_enum, default_value_t = BendArg::Primal)]
        bend: BendArg,
        /// Placement engine; both produce identical drawings.
        #[arg(long, value_enum, default_value_t = EngineArg::Offset)]
        engine: EngineArg,
        /// Write per-step frontier snapshots (JSON lines) to this file;
        /// implies the reference engine.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Outer edge "A,B" naming the bent primal edge instead of the
        /// default choice.
        #[arg(long, value_name = "A,B")]
        outer_edge: Option<String>,
        /// Skip the quadratic 3-connectivity precheck (the construction
        /// still fails on inputs that are not quadrangulatable).
        #[arg(long)]
        skip_3conn_check: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a drawing against every requirement; exit 0 iff all pass.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
        /// Write the report JSON here as well as stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render a drawing to SVG.
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
        /// Pixels per grid unit.
        #[arg(long, default_value_t = 20)]
        scale: u32,
        /// Draw the underlying lattice.
        #[arg(long)]
        show_grid: bool,
        /// Render even if verification fails.
        #[arg(long)]
        force: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a test graph; writes graph JSON.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Platonic solid name (platonic kind).
        #[arg(long)]
        name: Option<String>,
        /// Vertex count (triangulation and sparsified kinds).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge deletion rate in [0, 1) (sparsified kind).
        #[arg(long, default_value_t = 0.3)]
        rate: f64,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the dodecahedron end to end and write all artifacts.
    Demo {
        #[arg(long, default_value = "demo-out")]
        outdir: PathBuf,
        #[arg(long, value_enum, default_value_t = BendArg::Primal)]
        bend: BendArg,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let msg = serde_json::json!({ "error": e.to_string() });
            eprintln!("{msg}");
            std::process::exit(1);
        }
    }
}

fn read_graph(path: &Path) -> Result<PlanarGraph, Box<dyn Error>> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(PlanarGraph::from_json(&text)?)
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), Box<dyn Error>> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display()))?
        }
        None => println!("{content}"),
    }
    Ok(())
}

/// Rebuild the quadrangulation a drawing was made against: the drawing's
/// bent edge pins down both the bend side and the chosen outer edge.
fn full_report(q: &QuadGraph, d: &Drawing) -> Report {
    check_requirements(q, d).merged(check_strict_convexity(q, d))
}

fn run(cli: Cli) -> Result<i32, Box<dyn Error>> {
    match cli.cmd {
        Cmd::Embed {
            input,
            bend,
            engine,
            trace,
            outer_edge,
            skip_3conn_check,
            output,
        } => {
            let g1 = read_graph(&input)?;
            if !skip_3conn_check {
                g1.check_three_connected()?;
            }
            let bend = BendTarget::from(bend);
            let q = match &outer_edge {
                None => QuadGraph::build(g1, bend)?,
                Some(spec) => {
                    let (a, b) = spec
                        .split_once(',')
                        .ok_or("--outer-edge expects two names separated by a comma")?;
                    QuadGraph::build_with_edge(g1, bend, a.trim(), b.trim())?
                }
            };
            let lab = find_labeling(&q)?;
            let drawing = match &trace {
                Some(path) => {
                    let mut sink = fs::File::create(path)
                        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
                    let d = place_traced(&q, &lab, &mut sink)?;
                    sink.flush()?;
                    d
                }
                None => {
                    let eng = match engine {
                        EngineArg::Reference => Engine::Reference,
                        EngineArg::Offset => Engine::Offset,
                    };
                    place(&q, &lab, eng)
                }
            };
            write_out(output.as_deref(), &drawing.to_json(&q))?;
            Ok(0)
        }
        Cmd::Verify {
            graph,
            drawing,
            report,
        } => {
            let g1 = read_graph(&graph)?;
            let text = fs::read_to_string(&drawing)
                .map_err(|e| format!("cannot read {}: {e}", drawing.display()))?;
            let q = quad_for_drawing(g1, &text)?;
            let d = Drawing::from_json(&text, &q)?;
            let rep = full_report(&q, &d);
            let json = rep.to_json();
            if let Some(p) = &report {
                fs::write(p, &json).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            }
            println!("{json}");
            if rep.all_pass {
                Ok(0)
            } else {
                let failed = rep.checks.iter().filter(|c| !c.pass).count();
                eprintln!(
                    "{}",
                    serde_json::json!({
                        "error": format!("verification failed: {failed} of {} checks", rep.checks.len())
                    })
                );
                Ok(1)
            }
        }
        Cmd::Render {
            graph,
            drawing,
            scale,
            show_grid,
            force,
            output,
        } => {
            let g1 = read_graph(&graph)?;
            let text = fs::read_to_string(&drawing)
                .map_err(|e| format!("cannot read {}: {e}", drawing.display()))?;
            let q = quad_for_drawing(g1, &text)?;
            let d = Drawing::from_json(&text, &q)?;
            if !force {
                let rep = full_report(&q, &d);
                if !rep.all_pass {
                    return Err("drawing fails verification; use --force to render anyway".into());
                }
            }
            let style = RenderStyle {
                scale,
                show_grid,
                ..RenderStyle::default()
            };
            write_out(output.as_deref(), &render_svg(&q, &d, &style))?;
            Ok(0)
        }
        Cmd::Gen {
            kind,
            name,
            n,
            seed,
            rate,
            out,
        } => {
            let g = match kind {
                KindArg::Platonic => {
                    let name = name.ok_or("--kind platonic requires --name")?;
                    platonic(&name)?
                }
                KindArg::Triangulation => {
                    let n = n.ok_or("--kind triangulation requires --n")?;
                    triangulation(n, seed)?
                }
                KindArg::Sparsified => {
                    let n = n.ok_or("--kind sparsified requires --n")?;
                    if !(0.0..1.0).contains(&rate) {
                        return Err("--rate must lie in [0, 1)".into());
                    }
                    sparsified(n, seed, rate)?
                }
            };
            write_out(out.as_deref(), &g.to_json())?;
            Ok(0)
        }
        Cmd::Demo { outdir, bend } => {
            fs::create_dir_all(&outdir)
                .map_err(|e| format!("cannot create {}: {e}", outdir.display()))?;
            let g1 = platonic("dodecahedron")?;
            let q = QuadGraph::build(g1, BendTarget::from(bend))?;
            let lab = find_labeling(&q)?;
            let d = place(&q, &lab, Engine::Offset);
            let rep = full_report(&q, &d);
            let style = RenderStyle {
                scale: 16,
                show_grid: true,
                ..RenderStyle::default()
            };
            let svg = render_svg(&q, &d, &style);
            let files = [
                ("graph.json", q.primal().to_json()),
                ("drawing.json", d.to_json(&q)),
                ("report.json", rep.to_json()),
                ("drawing.svg", svg),
            ];
            for (name, content) in &files {
                fs::write(outdir.join(name), content)
                    .map_err(|e| format!("cannot write {name}: {e}"))?;
            }
            let bound = 2 * q.n() - 2;
            println!(
                "dodecahedron: n={}, grid [0, {bound}]^2, checks {}, wrote {} files to {}",
                q.n(),
                if rep.all_pass { "all pass" } else { "FAILED" },
                files.len(),
                outdir.display()
            );
            Ok(if rep.all_pass { 0 } else { 1 })
        }
    }
}

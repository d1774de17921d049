use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kpartition::bounds::{bound_reports, count_convex_crossings, count_crossings};
use kpartition::clique::DEFAULT_BUDGET;
use kpartition::convex::{self, block_planarity, check_crossing_counts, slope_partition};
use kpartition::geometry::{
    gen_convex_polygon, gen_perfect_crossing_family_pointset, gen_random_pointset,
};
use kpartition::io::{parse_coloring, parse_instance, write_coloring, write_instance, Instance};
use kpartition::quasi::{
    double_star_partition, halving_line_partition, is_k_quasi_planar, theorem7_partition,
    verify_partition, CrossingFamily,
};
use kpartition::svg::{render_svg, Layout, SvgOptions};
use kpartition::{Coloring, PointSet};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Build, verify and draw k-planar and k-quasi-planar partitions of
/// complete geometric graphs.
#[derive(Parser)]
#[command(name = "kpartition", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        mode: GenMode,
    },
    /// Partition the edges of an instance; writes a coloring file.
    Partition {
        #[command(subcommand)]
        mode: PartitionMode,
    },
    /// Check every class of a coloring file.
    Verify {
        #[command(subcommand)]
        mode: VerifyMode,
    },
    /// Evaluate the bounds for a convex K_n against constructions and oracles.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Draw a coloring as SVG.
    Render {
        /// Coloring file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Instance file; without it vertices are placed on a circle.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenMode {
    /// n points in convex position, clockwise in index order.
    Convex(GenArgs),
    /// n random points in general position.
    Random(GenArgs),
    /// 2n points with a perfect crossing family of n edges.
    CrossingFamily(GenArgs),
}

#[derive(Args)]
struct PartitionIo {
    /// Instance file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Coloring file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PartitionMode {
    /// Slope blocks of size s on a convex instance.
    Slope {
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        io: PartitionIo,
    },
    /// Double-star spanning trees on an even number of points.
    Doublestar {
        #[command(flatten)]
        io: PartitionIo,
    },
    /// Halving-line partition; the instance must carry a perfect family.
    Halving {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        io: PartitionIo,
    },
    /// Maximum crossing family plus star groups, for any instance.
    Theorem7 {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        io: PartitionIo,
    },
}

#[derive(Subcommand)]
enum VerifyMode {
    /// Every edge crosses at most k edges of its class.
    Kplanar {
        #[arg(long)]
        k: usize,
        /// Coloring file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Instance file; without it the vertices are taken to be in convex
        /// position in index order.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// No class contains k pairwise crossing edges.
    Quasiplanar {
        #[arg(long)]
        k: usize,
        /// Coloring file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Instance file.
        #[arg(long)]
        points: PathBuf,
    },
}

/// A failed command: usage or input problems exit 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Verification(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    parse_coloring(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes `body` to `out`, or to stdout; the summary goes to stdout when
/// writing a file and to stderr otherwise.
fn emit(out: Option<&Path>, body: &str, summary: &str) -> CmdResult {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            print!("{body}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn gen(mode: GenMode) -> CmdResult {
    let (kind, args) = match mode {
        GenMode::Convex(a) => ("convex", a),
        GenMode::Random(a) => ("random", a),
        GenMode::CrossingFamily(a) => ("crossing-family", a),
    };
    let instance = match kind {
        "convex" => Instance {
            points: gen_convex_polygon(args.n, args.seed).map_err(usage)?,
            family: None,
        },
        "random" => Instance {
            points: gen_random_pointset(args.n, args.seed).map_err(usage)?,
            family: None,
        },
        _ => {
            let (points, family) =
                gen_perfect_crossing_family_pointset(args.n, args.seed).map_err(usage)?;
            Instance {
                points,
                family: Some(CrossingFamily::new(family)),
            }
        }
    };
    let summary = format!(
        "ok gen={kind} points={} seed={}",
        instance.points.len(),
        args.seed
    );
    emit(args.out.as_deref(), &write_instance(&instance), &summary)
}

fn partition(mode: PartitionMode) -> CmdResult {
    let (name, coloring, io, extra) = match mode {
        PartitionMode::Slope { s, io } => {
            if s == 0 {
                return Err(usage("--s must be positive"));
            }
            let instance = read_instance(&io.input)?;
            let order = convex_order(&instance.points)?;
            let coloring = convex::relabel(&slope_partition(order.len(), s), &order);
            ("slope", coloring, io, format!(" s={s} k={}", block_planarity(s)))
        }
        PartitionMode::Doublestar { io } => {
            let instance = read_instance(&io.input)?;
            let trees = double_star_partition(&instance.points).map_err(usage)?;
            let coloring = trees.to_coloring().map_err(usage)?;
            ("doublestar", coloring, io, " k=3".to_string())
        }
        PartitionMode::Halving { k, io } => {
            let instance = read_instance(&io.input)?;
            let family = instance
                .family
                .as_ref()
                .ok_or_else(|| usage("halving partition needs a `family` section"))?;
            let coloring = halving_line_partition(&instance.points, family, k).map_err(usage)?;
            ("halving", coloring, io, format!(" k={k}"))
        }
        PartitionMode::Theorem7 { k, budget, io } => {
            let instance = read_instance(&io.input)?;
            let result = theorem7_partition(&instance.points, k, budget).map_err(usage)?;
            if let Some(note) = &result.note {
                eprintln!("note: {note}");
            }
            let extra = format!(" k={k} m={}", result.m());
            ("theorem7", result.coloring, io, extra)
        }
    };
    let summary = format!(
        "ok partition={name} n={} colors={}{extra}",
        coloring.n(),
        coloring.num_colors()
    );
    emit(io.out.as_deref(), &write_coloring(&coloring), &summary)
}

/// Clockwise cyclic order of a convex instance.
fn convex_order(points: &PointSet) -> Result<Vec<usize>, Failure> {
    let report = points.validate().map_err(usage)?;
    report
        .convex_cyclic_order
        .ok_or_else(|| usage("slope partition needs points in convex position"))
}

fn verify(mode: VerifyMode) -> CmdResult {
    match mode {
        VerifyMode::Kplanar { k, input, points } => {
            let coloring = read_coloring(&input)?;
            let points = points.map(|p| read_instance(&p)).transpose()?.map(|i| i.points);
            if let Some(points) = &points {
                if !verify_partition(points, &coloring) {
                    return Err(Failure::Verification(format!(
                        "FAIL verify=kplanar reason=coloring is over K_{} but the instance has {} points",
                        coloring.n(),
                        points.len()
                    )));
                }
            }
            let mut total_crossings = 0;
            for (color, class) in coloring.classes().iter().enumerate() {
                let counts = match &points {
                    Some(p) => p.crossing_counts(class),
                    None => convex::crossing_counts(coloring.n(), class),
                };
                total_crossings += match &points {
                    Some(p) => count_crossings(p, class),
                    None => count_convex_crossings(coloring.n(), class),
                };
                if let Err(v) = check_crossing_counts(class, &counts, k) {
                    return Err(Failure::Verification(format!(
                        "FAIL verify=kplanar k={k} color={color} edge={} crossings={}",
                        v.edge, v.crossings
                    )));
                }
            }
            println!(
                "ok verify=kplanar k={k} n={} colors={} crossings={total_crossings}",
                coloring.n(),
                coloring.num_colors()
            );
            Ok(())
        }
        VerifyMode::Quasiplanar { k, input, points } => {
            if k < 2 {
                return Err(usage("--k must be at least 2"));
            }
            let coloring = read_coloring(&input)?;
            let points = read_instance(&points)?.points;
            if !verify_partition(&points, &coloring) {
                return Err(Failure::Verification(format!(
                    "FAIL verify=quasiplanar reason=coloring is over K_{} but the instance has {} points",
                    coloring.n(),
                    points.len()
                )));
            }
            for (color, class) in coloring.classes().iter().enumerate() {
                if let Err(witness) = is_k_quasi_planar(&points, class, k) {
                    let edges: Vec<String> = witness.iter().map(ToString::to_string).collect();
                    return Err(Failure::Verification(format!(
                        "FAIL verify=quasiplanar k={k} color={color} witness={}",
                        edges.join(",")
                    )));
                }
            }
            println!(
                "ok verify=quasiplanar k={k} n={} colors={}",
                coloring.n(),
                coloring.num_colors()
            );
            Ok(())
        }
    }
}

fn bounds(n: usize, k: usize, budget: u64) -> CmdResult {
    let reports = bound_reports(n, k, budget).map_err(usage)?;
    for r in &reports {
        println!("{r}");
    }
    match reports.iter().filter(|r| !r.satisfied).count() {
        0 => Ok(()),
        bad => Err(Failure::Verification(format!("FAIL bounds violated={bad}"))),
    }
}

fn render(input: &Path, points: Option<&Path>, out: Option<&Path>) -> CmdResult {
    let coloring = read_coloring(input)?;
    let instance = points.map(read_instance).transpose()?;
    let layout = match &instance {
        Some(inst) => {
            if inst.points.len() != coloring.n() {
                return Err(usage(format!(
                    "coloring is over K_{} but the instance has {} points",
                    coloring.n(),
                    inst.points.len()
                )));
            }
            Layout::Points(&inst.points)
        }
        None => Layout::Convex,
    };
    let svg = render_svg(layout, &coloring, &SvgOptions::default());
    let summary = format!("ok render n={} colors={}", coloring.n(), coloring.num_colors());
    emit(out, &svg, &summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { mode } => gen(mode),
        Command::Partition { mode } => partition(mode),
        Command::Verify { mode } => verify(mode),
        Command::Bounds { n, k, budget } => bounds(n, k, budget),
        Command::Render { input, points, out } => render(&input, points.as_deref(), out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(line)) => {
            println!("{line}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

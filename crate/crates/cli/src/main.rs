use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ringline_core::chaintrafo::{
    commutes, gamma_apply, gamma_domain, group_b, group_n, group_t, AlgebraDescriptor, KAlgebra,
    MatrixGroup, DEFAULT_SEED,
};
use ringline_core::models::{export_figure_data, model_line_set, Example, FigureRange};
use ringline_core::projline::{DistantGraph, Matrix2, ProjectiveLine};
use ringline_core::radpar::parallel_classes;
use ringline_core::ring::{build_ring_with, BuildOptions, DEFAULT_MAX_SIZE};
use ringline_core::verify::{plan_all, run_items, SuiteItem, VerificationReport};
use ringline_core::{Error, Ring, RingDescriptor};

/// Finite rings, projective lines over them, radical parallelism and the
/// parabola models.
#[derive(Parser)]
#[command(name = "ringline", version)]
struct Cli {
    /// Largest ring that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    size_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ring inspection.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Points and the distant graph of P(R).
    #[command(subcommand)]
    Projline(ProjlineCmd),
    /// Parallel classes of P(R).
    Parallelism {
        ring: RingDescriptor,
        #[arg(long)]
        json: bool,
    },
    /// Induced maps of the affine chart.
    #[command(subcommand)]
    Trafo(TrafoCmd),
    /// Sizes of B, T, N and their commutation.
    Groups { algebra: AlgebraDescriptor },
    /// Parabola models.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Theorem suites; exit status 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum RingCmd {
    /// Size, units, radical, nil exponent and locality.
    Info { ring: RingDescriptor },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum ProjlineCmd {
    /// Canonical representatives, one per line.
    Enumerate { ring: RingDescriptor },
    /// The distant graph.
    Graph {
        ring: RingDescriptor,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
}

#[derive(Subcommand)]
enum TrafoCmd {
    /// Image of one element under the map induced by a matrix.
    Apply {
        algebra: AlgebraDescriptor,
        /// Entries `a,b,c,d` of the matrix.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        z: String,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// The line set of a model over a finite field.
    Lines {
        #[arg(long)]
        example: Example,
        #[arg(long)]
        field: RingDescriptor,
        /// Nonzero field element.
        #[arg(long)]
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// Real-valued CSV samples for plotting.
    Figures {
        #[arg(long)]
        example: Example,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// `start:end:step`
        #[arg(long, allow_hyphen_values = true)]
        range: FigureRange,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: VerifySuite,
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall times in the reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Every suite over the catalog.
    All {
        #[arg(long, default_value_t = 27)]
        max_size: usize,
    },
    Ring { ring: RingDescriptor },
    Projline { ring: RingDescriptor },
    Parallelism { ring: RingDescriptor },
    Trafo { algebra: AlgebraDescriptor },
    Model {
        #[arg(long)]
        example: Example,
        #[arg(long)]
        field: RingDescriptor,
        #[arg(long)]
        t: String,
    },
}

type Outcome = Result<ExitCode, Error>;

fn seed() -> Result<u64, Error> {
    match std::env::var("RINGLINE_SEED") {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(s) => {
            let s = s.trim();
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("RINGLINE_SEED is not an integer: {s:?}"),
            })
        }
    }
}

fn build(desc: &RingDescriptor, opts: &BuildOptions) -> Result<Arc<Ring>, Error> {
    Ok(Arc::new(build_ring_with(desc, opts)?))
}

fn ring_info(desc: &RingDescriptor, opts: &BuildOptions) -> Outcome {
    let r = build(desc, opts)?;
    let units: Vec<_> = r.units().collect();
    println!("ring: {desc}");
    println!("size: {}", r.size());
    println!("characteristic: {}", r.characteristic());
    println!("commutative: {}", r.is_commutative());
    println!("field: {}", r.is_field());
    println!("units ({}): {}", units.len(), r.format_set(&units));
    println!("local: {}, radical: {}", r.is_local(), r.format_set(r.radical().members()));
    println!("nil exponent: {}", r.nil_exponent());
    Ok(ExitCode::SUCCESS)
}

fn projline(cmd: &ProjlineCmd, opts: &BuildOptions) -> Outcome {
    match cmd {
        ProjlineCmd::Enumerate { ring } => {
            let line = ProjectiveLine::enumerate(build(ring, opts)?);
            println!("{} points", line.len());
            for p in 0..line.len() {
                println!("{p} {}", line.label(p));
            }
        }
        ProjlineCmd::Graph { ring, format } => {
            let line = ProjectiveLine::enumerate(build(ring, opts)?);
            let graph = DistantGraph::build(&line);
            match format {
                GraphFormat::Dot => print!("{}", graph.to_dot(&line)),
                GraphFormat::Json => println!("{}", graph.to_json(&line)),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parallelism(desc: &RingDescriptor, json: bool, opts: &BuildOptions) -> Outcome {
    let line = ProjectiveLine::enumerate(build(desc, opts)?);
    let graph = DistantGraph::build(&line);
    let rep = parallel_classes(&line, &graph);
    if json {
        println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "{}: {} points, {} classes, class size {}",
        rep.ring,
        rep.points,
        rep.classes.len(),
        rep.class_size.map_or("varies".into(), |s| s.to_string())
    );
    for (i, class) in rep.classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(|&p| line.label(p)).collect();
        println!("class {i}: {}", members.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn trafo_apply(alg: &AlgebraDescriptor, matrix: &str, z: &str, opts: &BuildOptions) -> Outcome {
    let a = KAlgebra::build_with(alg, *opts)?;
    let r = a.ring();
    let m = Matrix2::parse(r, matrix)?;
    let z = r.parse_element(z)?;
    let domain = gamma_domain(&a, &m)?;
    let total = domain.len() == r.size();
    println!("matrix: {}", m.display(r));
    println!("domain: {} of {} elements{}", domain.len(), r.size(), if total { " (total)" } else { "" });
    match gamma_apply(&a, &m, z) {
        Ok(w) => println!("{} -> {}", r.label(z), r.label(w)),
        Err(Error::OutsideDomain(_)) => println!("{} is outside the domain", r.label(z)),
        Err(e) => return Err(e),
    }
    Ok(ExitCode::SUCCESS)
}

fn groups(alg: &AlgebraDescriptor, opts: &BuildOptions) -> Outcome {
    let a = KAlgebra::build_with(alg, *opts)?;
    let (b, t, n) = (group_b(&a), group_t(&a), group_n(&a));
    let describe = |g: &MatrixGroup| {
        format!(
            "|{}| = {}, closed: {}, commutative: {}",
            g.kind,
            g.len(),
            g.is_closed(&a),
            g.is_commutative(&a)
        )
    };
    println!("algebra: {alg}");
    for g in [&b, &t, &n] {
        println!("{}", describe(g));
    }
    let mut pairs = 0;
    let mut commuting = 0;
    for nu in &n.members {
        for beta in &b.members {
            pairs += 1;
            if commutes(&a, nu, beta)? {
                commuting += 1;
            }
        }
    }
    println!("N x B commuting pairs: {commuting} of {pairs}");
    Ok(ExitCode::SUCCESS)
}

fn model(cmd: &ModelCmd, opts: &BuildOptions) -> Outcome {
    match cmd {
        ModelCmd::Lines { example, field, t, json } => {
            let a = example.algebra(field)?;
            if a.ring().size() > opts.max_size {
                return Err(Error::SizeOverflow {
                    size: a.ring().size() as u64,
                    max: opts.max_size,
                });
            }
            let t = a.field().parse_element(t)?;
            let set = model_line_set(&a, *example, t)?;
            if *json {
                let r = a.ring();
                let lines: Vec<_> = set
                    .lines
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "tag": l.tag,
                            "kind": l.kind,
                            "points": l.points.iter().map(|&p| r.label(p)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let doc = serde_json::json!({
                    "example": set.example,
                    "field": set.field,
                    "t": set.t,
                    "lines": lines,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                print!("{}", set.render(&a));
            }
        }
        ModelCmd::Figures { example, t, range, out } => {
            let csv = export_figure_data(*example, *t, range)?;
            std::fs::write(out, csv).map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("cannot write {}: {e}", out.display()),
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs, opts: &BuildOptions) -> Outcome {
    let items = match &args.suite {
        VerifySuite::All { max_size } => plan_all(*max_size),
        VerifySuite::Ring { ring } => vec![SuiteItem::Ring(ring.clone())],
        VerifySuite::Projline { ring } => vec![SuiteItem::Projline(ring.clone())],
        VerifySuite::Parallelism { ring } => vec![SuiteItem::Parallelism(ring.clone())],
        VerifySuite::Trafo { algebra } => vec![SuiteItem::Trafo(algebra.clone())],
        VerifySuite::Model { example, field, t } => {
            let a = example.algebra(field)?;
            let t = a.field().parse_element(t)?;
            vec![SuiteItem::Model(*example, field.clone(), t.index())]
        }
    };
    let seed = seed()?;
    let run = || run_items(&items, opts, seed, args.timings);
    let results = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let reports: Vec<VerificationReport> = results.into_iter().collect::<Result<_, _>>()?;
    let passed = reports.iter().all(VerificationReport::passed);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialize"));
    } else {
        for rep in &reports {
            print!("{}", rep.render());
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        println!("{} reports, {} failed", reports.len(), failed);
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli) -> Outcome {
    let opts = BuildOptions { max_size: cli.size_cap };
    match &cli.command {
        Command::Ring(RingCmd::Info { ring }) => ring_info(ring, &opts),
        Command::Projline(cmd) => projline(cmd, &opts),
        Command::Parallelism { ring, json } => parallelism(ring, *json, &opts),
        Command::Trafo(TrafoCmd::Apply { algebra, matrix, z }) => trafo_apply(algebra, matrix, z, &opts),
        Command::Groups { algebra } => groups(algebra, &opts),
        Command::Model(cmd) => model(cmd, &opts),
        Command::Verify(args) => verify(args, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

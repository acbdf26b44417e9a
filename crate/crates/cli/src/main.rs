use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rrlab_core::lab::{
    default_degree_window, Check, CheckReport, DivisorEnumeration, PerturbedOracle, DEFAULT_CASE_CAP,
};
use rrlab_core::reduction::{equivalent, reduce};
use rrlab_core::{generate_family, graph_rank, Error, GraphFamily, GraphFamilySpec, GraphOracle, Point, RankOracle};

mod backend;

/// Exact divisor theories on graphs and small curves, with Riemann-Roch checks.
#[derive(Debug, Parser)]
#[command(name = "rrlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertex and edge counts, genus and canonical divisor of a graph.
    Info { graph: String },
    /// The q-reduced form of a divisor.
    Reduce {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = 0)]
        q: usize,
        /// Also print the recorded firing sequence.
        #[arg(long)]
        trace: bool,
    },
    /// Rank of a divisor, by enumeration.
    Rank {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Whether two divisors are linearly equivalent.
    Equiv {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        d1: String,
        #[arg(allow_hyphen_values = true)]
        d2: String,
    },
    /// Builds N = D + P1 + ... + Pn of degree g-1 with rank -1.
    Witness {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Runs checking campaigns against one or more backends.
    Check(CheckArgs),
    /// Writes a graph from a standard family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    /// Graph/curve file, `cycle:3..6`, `complete:4`, `banana:3`, `path:4`,
    /// `random:5`, `elliptic:p,a,b` or `p1:m`.
    backend: String,
    /// Comma-separated: rr, rr1, rr2, riemann, noether, cnr, all.
    #[arg(long, default_value = "all")]
    which: String,
    #[arg(long, allow_hyphen_values = true)]
    degree_lo: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    degree_hi: Option<i64>,
    #[arg(long, default_value_t = 2)]
    coeff_bound: i64,
    /// Seeded random sampling with this many divisors instead of the full box.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CASE_CAP)]
    case_cap: usize,
    /// Write all reports as a JSON array to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Fault drill: shift the backend's rank at this divisor.
    #[arg(long, allow_hyphen_values = true)]
    perturb_at: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    perturb_by: i64,
}

/// Exit codes: 0 all good, 1 a check failed, 2 bad usage or input.
enum Failure {
    Finding(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) => Failure::Finding(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info { graph } => {
            let (g, _) = backend::load_graph(&graph, 0)?;
            println!("n = {}", g.vertex_count());
            println!("m = {}", g.edge_count());
            println!("g = {}", g.genus());
            println!("K = {}", g.canonical());
        }
        Command::Reduce { graph, divisor, q, trace } => {
            let (g, _) = backend::load_graph(&graph, 0)?;
            let d = backend::load_divisor(&divisor)?;
            let r = reduce(&g, &d, Point(q))?;
            println!("{}", r.reduced.divisor());
            if trace {
                for f in &r.firings {
                    println!("fire {:?} x{}", f.set, f.times);
                }
            }
        }
        Command::Rank { graph, divisor } => {
            let (g, _) = backend::load_graph(&graph, 0)?;
            let d = backend::load_divisor(&divisor)?;
            println!("{}", graph_rank(&g, &d)?);
        }
        Command::Equiv { graph, d1, d2 } => {
            let (g, _) = backend::load_graph(&graph, 0)?;
            let a = backend::load_divisor(&d1)?;
            let b = backend::load_divisor(&d2)?;
            println!("{}", equivalent(&g, &a, &b)?);
        }
        Command::Witness { graph, divisor } => {
            let (g, label) = backend::load_graph(&graph, 0)?;
            let d = backend::load_divisor(&divisor)?;
            let oracle = GraphOracle::with_label(g, label);
            let w = rrlab_core::lab::witness_chain(&oracle, &d)?;
            let chain: Vec<usize> = w.chain.iter().map(|p| p.index()).collect();
            println!("chain = {chain:?}");
            println!("N = {}", w.divisor);
        }
        Command::Check(args) => return run_checks(args),
        Command::Gen {
            family,
            size,
            seed,
            format,
            out,
        } => {
            let family: GraphFamily = family.parse()?;
            let g = generate_family(&GraphFamilySpec::new(family, size).with_seed(seed))?;
            let text = match format {
                GraphFormat::Text => g.to_text(),
                GraphFormat::Json => {
                    serde_json::to_string(&g.to_json()).expect("graph json serializes") + "\n"
                }
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn enumerations(args: &CheckArgs, oracle: &dyn RankOracle) -> (DivisorEnumeration, DivisorEnumeration) {
    let g = oracle.genus();
    let (dlo, dhi) = default_degree_window(g);
    let lo = args.degree_lo.unwrap_or(dlo);
    let hi = args.degree_hi.unwrap_or(dhi);
    let main = match args.samples {
        Some(count) => DivisorEnumeration::seeded(count, args.coeff_bound, lo, hi, args.seed),
        None => DivisorEnumeration::exhaustive(args.coeff_bound, lo, hi),
    };
    let effective = DivisorEnumeration::effective(lo.max(0), args.degree_hi.unwrap_or(2 * g));
    (main.with_case_cap(args.case_cap), effective.with_case_cap(args.case_cap))
}

fn run_checks(args: CheckArgs) -> Result<(), Failure> {
    let which = Check::parse_list(&args.which)?;
    let mut backends = backend::load_backends(&args.backend, args.seed)?;
    if let Some(at) = &args.perturb_at {
        let target = backend::load_divisor(at)?;
        backends = backends
            .into_iter()
            .map(|b| Box::new(PerturbedOracle::new(b, target.clone(), args.perturb_by)) as Box<dyn RankOracle>)
            .collect();
    }
    let mut reports: Vec<CheckReport> = Vec::new();
    let mut violation = None;
    'backends: for oracle in &backends {
        let (en, effective) = enumerations(&args, oracle.as_ref());
        for check in &which {
            match check.run(oracle.as_ref(), &en, &effective) {
                Ok(r) => {
                    println!("{r}");
                    for cx in r.counterexamples.iter().take(5) {
                        println!(
                            "    D={:?}{} observed={:?} expected {}",
                            cx.inputs.divisor,
                            cx.inputs.point.map(|p| format!(" P={p}")).unwrap_or_default(),
                            cx.observed,
                            cx.expected
                        );
                    }
                    reports.push(r);
                }
                Err(Error::TheoremViolation(msg)) => {
                    violation = Some(msg);
                    break 'backends;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
        fs::write(path, json + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(msg) = violation {
        return Err(Failure::Finding(format!("theorem violation: {msg}")));
    }
    let failed = reports.iter().filter(|r| !r.is_pass()).count();
    if failed > 0 {
        return Err(Failure::Finding(format!("{failed} of {} reports failed", reports.len())));
    }
    println!("all {} reports passed", reports.len());
    Ok(())
}

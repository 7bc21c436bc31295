use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ddg_forge_core::catalog;
use ddg_forge_core::ddg::{
    self, construct_ddg_family, decompose_to_rq, validate_rq_pair, DdgRecord, Family, Ps22Variant,
    ThinDdg,
};
use ddg_forge_core::designs::{self, Sign};
use ddg_forge_core::graphs::{self, Graph, Partition};
use ddg_forge_core::matrix::IntMatrix;
use ddg_forge_core::symplectic;

const THREADS_VAR: &str = "DDG_FORGE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ddg-forge", version, about = "Construct and verify thin divisible design graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member and write it to a directory.
    Construct(ConstructArgs),
    /// Verify an object read from a matrix file.
    Verify(VerifyArgs),
    /// Run the full check grid and write a JSON report.
    Catalog(CatalogArgs),
    /// Print the supported families, kinds and thread count.
    Info,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Sp4ComplementDdg,
    Multipartite,
    Bipartite,
    PairOfCliques,
    Ps22,
    Lattice4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantName {
    A,
    B,
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<Sign>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<Sign>,
    #[arg(long, value_enum)]
    variant: Option<VariantName>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Srg,
    Vkl,
    Weighing,
    Hadamard,
    Rshcd,
    Conference,
    DistanceRegular,
    Ddg,
    Rq,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Class partition, for `--kind ddg`.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Partner matrix Q, for `--kind rq` (the input is R).
    #[arg(long)]
    partner: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct CatalogArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["3", "5", "7"]))]
    max_q: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit elapsed times so repeated runs give identical reports.
    #[arg(long)]
    no_timing: bool,
}

enum Failure {
    Usage(String),
    Verify(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn verify_failed(e: impl ToString) -> Failure {
    Failure::Verify(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Construct(args) => construct(&args),
        Command::Verify(args) => verify(&args),
        Command::Catalog(args) => run_catalog(&args),
        Command::Info => {
            info();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn need<T>(value: Option<T>, flag: &str, family: FamilyName) -> Result<T, Failure> {
    let name = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    value.ok_or_else(|| usage(format!("--{flag} is required for --family {name}")))
}

fn build(args: &ConstructArgs) -> Result<ThinDdg, Failure> {
    let f = args.family;
    let family = match f {
        FamilyName::Sp4ComplementDdg => {
            let q = need(args.q, "q", f)?;
            return symplectic::sp4_complement_ddg(q).map_err(|e| match e {
                symplectic::SymplecticError::EvenQ(_)
                | symplectic::SymplecticError::TooLarge { .. }
                | symplectic::SymplecticError::Field(_) => usage(e),
                _ => verify_failed(e),
            });
        }
        FamilyName::Lattice4 => {
            let g = graphs::lattice_graph(4);
            let report = graphs::involution_analyze(&g, &graphs::lattice_involution(4)).map_err(verify_failed)?;
            return ThinDdg::new(g, report.orbits).map_err(verify_failed);
        }
        FamilyName::Multipartite => Family::Multipartite {
            t: need(args.t, "t", f)?,
            u: need(args.u, "u", f)?,
            eps: need(args.eps, "eps", f)?,
        },
        FamilyName::Bipartite => Family::Bipartite {
            u: need(args.u, "u", f)?,
            eps: need(args.eps, "eps", f)?,
        },
        FamilyName::PairOfCliques => Family::PairOfCliques {
            u: need(args.u, "u", f)?,
            delta: need(args.delta, "delta", f)?,
        },
        FamilyName::Ps22 => Family::Ps22 {
            t: need(args.t, "t", f)?,
            variant: match need(args.variant, "variant", f)? {
                VariantName::A => Ps22Variant::A,
                VariantName::B => Ps22Variant::B,
            },
        },
    };
    construct_ddg_family(family).map(|d| d.ddg).map_err(|e| match e {
        ddg::DdgError::BadFamilyParameters(_) | ddg::DdgError::Design(designs::DesignError::NoConference(_)) => usage(e),
        _ => verify_failed(e),
    })
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> CmdResult {
    let file = File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    write(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    let file = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    IntMatrix::read_text(BufReader::new(file)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_partition(path: &Path, n: usize) -> Result<Partition, Failure> {
    let file = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Partition::read_text(BufReader::new(file), n).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn construct(args: &ConstructArgs) -> CmdResult {
    let ddg = build(args)?;
    let pair = decompose_to_rq(&ddg).map_err(verify_failed)?;
    fs::create_dir_all(&args.out).map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
    let path = |name: &str| args.out.join(name);

    write_file(&path("adjacency.mat"), |w| ddg.graph().adjacency().write_text(w))?;
    write_file(&path("partition.txt"), |w| ddg.partition().write_text(w))?;
    write_file(&path("R.mat"), |w| pair.r().write_text(w))?;
    write_file(&path("Q.mat"), |w| pair.q().matrix().write_text(w))?;
    let json = serde_json::to_string_pretty(&ddg.record()).expect("records serialize");
    write_file(&path("params.json"), |w| writeln!(w, "{json}"))?;

    // Read everything back and verify it as an independent object.
    let adj = read_matrix(&path("adjacency.mat"))?;
    let graph = Graph::from_adjacency(adj).map_err(verify_failed)?;
    let partition = read_partition(&path("partition.txt"), graph.n())?;
    let reread = ThinDdg::new(graph, partition).map_err(verify_failed)?;
    if reread.record() != ddg.record() {
        return Err(verify_failed(format!("written DDG verifies as {:?}", reread.record())));
    }
    let r = read_matrix(&path("R.mat"))?;
    let q = read_matrix(&path("Q.mat"))?;
    let reread_pair = validate_rq_pair(&r, &q).map_err(verify_failed)?;
    if reread_pair.predicted_parameters() != ddg.params() || decompose_to_rq(&reread).map_err(verify_failed)? != reread_pair {
        return Err(verify_failed("written R and Q do not reproduce the written DDG"));
    }
    println!("{} {} -> {}", ddg.params(), ddg.classification(), args.out.display());
    Ok(())
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let m = read_matrix(&args.input)?;
    let line = match args.kind {
        Kind::Srg => {
            let g = Graph::from_adjacency(m).map_err(verify_failed)?;
            graphs::verify_srg(&g).map_err(verify_failed)?.to_string()
        }
        Kind::Vkl => {
            let g = Graph::from_adjacency(m).map_err(verify_failed)?;
            let (v, k, l) = graphs::verify_vkl(&g).map_err(verify_failed)?;
            format!("({v},{k},{l})")
        }
        Kind::Weighing => {
            let w = designs::verify_weighing(&m).map_err(verify_failed)?;
            format!("W({},{})", w.order(), w.weight())
        }
        Kind::Hadamard => {
            let w = designs::verify_hadamard(&m).map_err(verify_failed)?;
            match designs::verify_regular_hadamard(&m) {
                Ok((_, sum)) => format!("regular Hadamard of order {}, row sum {sum}", w.order()),
                Err(_) => format!("Hadamard of order {}", w.order()),
            }
        }
        Kind::Rshcd => designs::verify_rshcd(&m).map_err(verify_failed)?.to_string(),
        Kind::Conference => {
            let c = designs::verify_conference(&m).map_err(verify_failed)?;
            let sym = if c.is_symmetric() { "symmetric" } else { "antisymmetric" };
            format!("{sym} conference matrix of order {}", c.order())
        }
        Kind::DistanceRegular => {
            let g = Graph::from_adjacency(m).map_err(verify_failed)?;
            graphs::verify_distance_regular(&g).map_err(verify_failed)?.to_string()
        }
        Kind::Ddg => {
            let p = args
                .partition
                .as_deref()
                .ok_or_else(|| usage("--partition is required for --kind ddg"))?;
            let g = Graph::from_adjacency(m).map_err(verify_failed)?;
            let partition = read_partition(p, g.n())?;
            let record: DdgRecord = ddg::verify_ddg(&g, &partition).map_err(verify_failed)?;
            format!("{} {}", record.params, record.classification)
        }
        Kind::Rq => {
            let p = args
                .partner
                .as_deref()
                .ok_or_else(|| usage("--partner is required for --kind rq"))?;
            let q = read_matrix(p)?;
            let pair = validate_rq_pair(&m, &q).map_err(verify_failed)?;
            format!(
                "alpha={} beta={} w={} -> {}",
                pair.alpha(),
                pair.beta(),
                pair.weight(),
                pair.predicted_parameters()
            )
        }
    };
    println!("{line}");
    Ok(())
}

fn run_catalog(args: &CatalogArgs) -> CmdResult {
    let max_q: u64 = args.max_q.parse().map_err(usage)?;
    let report = catalog::run_catalog(max_q, !args.no_timing).map_err(usage)?;
    for r in &report.records {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        println!("{mark} {} {} :: {}", r.name, r.params, r.observed);
    }
    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&report).expect("reports serialize");
        write_file(out, |w| writeln!(w, "{json}"))?;
    }
    let failed = report.records.iter().filter(|r| !r.pass).count();
    println!("{} checks, {failed} failed", report.records.len());
    if report.pass {
        Ok(())
    } else {
        Err(verify_failed(format!("{failed} catalog checks failed")))
    }
}

fn info() {
    println!("ddg-forge {}", env!("CARGO_PKG_VERSION"));
    println!("families: sp4-complement-ddg (q), multipartite (t,u,eps), bipartite (u,eps), pair-of-cliques (u,delta), ps22 (t,variant), lattice4");
    println!("verify kinds: srg, vkl, weighing, hadamard, rshcd, conference, distance-regular, ddg (--partition), rq (--partner)");
    println!("catalog max_q: 3, 5, 7");
    println!("threads: {} ({THREADS_VAR} overrides)", rayon::current_num_threads());
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trailcount::bench::{self, BenchConfig};
use trailcount::corpus::named;
use trailcount::fock::EdgeRegister;
use trailcount::nilpotent::VertexVariant;
use trailcount::report::{codes, content_id, run_count, CountKind, CountQuery, Engine};
use trailcount::verify::{run_sweep, RandomSource, VerifySweepConfig};
use trailcount::{parse_edge_list, worked_example, Caps, Error, Graph};

const EXIT_USAGE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "trailcount", version, about = "Count walks, trails, paths and cycles three independent ways")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count one quantity on one graph with one or more engines.
    Count(CountArgs),
    /// Sweep every invariant over a graph corpus.
    Verify(VerifyArgs),
    /// Recompute the values of the four-cycle worked example.
    WorkedExample(ExampleArgs),
    /// Time engines across a graph family.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Oracle,
    Symbolic,
    Fock,
    All,
}

impl EngineArg {
    fn engines(self) -> Vec<Engine> {
        match self {
            EngineArg::Oracle => vec![Engine::Oracle],
            EngineArg::Symbolic => vec![Engine::Symbolic],
            EngineArg::Fock => vec![Engine::Fock],
            EngineArg::All => Engine::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Walks,
    Trails,
    Paths,
    Euler,
    Cycles,
    Hamiltonian,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Walks => CountKind::Walks,
            KindArg::Trails => CountKind::Trails,
            KindArg::Paths => CountKind::Paths,
            KindArg::Euler => CountKind::Euler,
            KindArg::Cycles => CountKind::Cycles,
            KindArg::Hamiltonian => CountKind::Hamiltonian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Literal,
    Guarded,
}

impl From<VariantArg> for VertexVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Literal => VertexVariant::Literal,
            VariantArg::Guarded => VertexVariant::StartGuarded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgeRegisterArg {
    AllPairs,
    EdgesOnly,
}

#[derive(clap::Args)]
struct CountArgs {
    /// Edge-list file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Walk length; taken from the graph for `euler` and `hamiltonian`.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    from: usize,
    /// Defaults to `--from` for closed kinds.
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    engine: EngineArg,
    /// Vertex observable used for `paths`.
    #[arg(long, value_enum, default_value = "literal")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "all-pairs")]
    edge_register: EdgeRegisterArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, default_value_t = 5)]
    l_max: usize,
    /// Skip the exhaustive connected-graph corpus.
    #[arg(long)]
    no_exhaustive: bool,
    /// Number of G(n, p) samples to add.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 7)]
    random_n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add the bowtie, Petersen graph and 3-cube.
    #[arg(long)]
    named: bool,
    /// Extra edge-list files to include.
    #[arg(long)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    engine: EngineArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct ExampleArgs {
    /// Use this edge list instead of the built-in four-cycle.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// cycle, complete, path, star, petersen, bowtie or cube.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "trails")]
    kind: KindArg,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, default_value_t = 1)]
    from: usize,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    engine: EngineArg,
    #[arg(long, value_enum, default_value = "literal")]
    variant: VariantArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let caps = Caps::from_env();
    let result = match cli.command {
        Command::Count(args) => count(args, &caps),
        Command::Verify(args) => verify(args, &caps),
        Command::WorkedExample(args) => example(args),
        Command::Bench(args) => bench_cmd(args, &caps),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_USAGE })
        }
    }
}

fn load(path: &Path) -> Result<(Graph, String), Error> {
    let bytes = fs::read(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let g = parse_edge_list(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((g, format!("{name}@{}", content_id(&bytes))))
}

fn count(args: CountArgs, caps: &Caps) -> Result<u8, Error> {
    let (g, id) = load(&args.input)?;
    let query = CountQuery {
        kind: args.kind.into(),
        length: args.length,
        from: args.from,
        to: args.to,
        engines: args.engine.engines(),
        variant: args.variant.into(),
        edge_register: match args.edge_register {
            EdgeRegisterArg::AllPairs => EdgeRegister::AllPairs,
            EdgeRegisterArg::EdgesOnly => EdgeRegister::EdgesOnly,
        },
    };
    let report = run_count(&g, &id, &query, caps)?;
    match args.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.capacity_exceeded() {
        EXIT_CAPACITY
    } else if !report.all_agree()
        && !report.has_note(codes::PROP2_LITERAL_OVERCOUNT)
        && !report.has_note(codes::F_AMPLITUDE_FULL_LENGTH_ONLY)
    {
        EXIT_VERIFY
    } else {
        0
    })
}

fn verify(args: VerifyArgs, caps: &Caps) -> Result<u8, Error> {
    let mut extra = Vec::new();
    for path in &args.input {
        let (g, id) = load(path)?;
        extra.push((id, g));
    }
    let config = VerifySweepConfig {
        n_max: args.n_max,
        l_max: args.l_max,
        exhaustive: !args.no_exhaustive,
        random: (args.random > 0).then_some(RandomSource {
            count: args.random,
            n: args.random_n,
            p: args.p,
            seed: args.seed,
        }),
        named: args.named,
        extra,
        engines: args.engine.engines(),
        caps: *caps,
    };
    let summary = run_sweep(&config)?;
    match args.format {
        Format::Json => print!("{}", summary.to_json()),
        _ => print!("{}", summary.to_text()),
    }
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    Ok(if summary.all_pass { 0 } else { EXIT_VERIFY })
}

fn example(args: ExampleArgs) -> Result<u8, Error> {
    let g = match &args.input {
        Some(path) => load(path)?.0,
        None => named::example_c4(),
    };
    let report = worked_example::run(&g)?;
    match args.format {
        Format::Json => print!("{}", report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    Ok(if report.all_ok() { 0 } else { EXIT_VERIFY })
}

fn bench_cmd(args: BenchArgs, caps: &Caps) -> Result<u8, Error> {
    let config = BenchConfig {
        family: args.family,
        n_min: args.n_min,
        n_max: args.n_max,
        kind: args.kind.into(),
        length: args.length,
        from: args.from,
        to: args.to,
        engines: args.engine.engines(),
        variant: args.variant.into(),
        caps: *caps,
    };
    let rows = bench::run_bench(&config)?;
    print!("{}", bench::to_csv(&rows));
    Ok(0)
}

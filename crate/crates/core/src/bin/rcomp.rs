use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rcomp::bench::{environment_description, run_experiment, write_csv, ExperimentConfig, KRule, Preset};
use rcomp::counting::SetPartitionTable;
use rcomp::generation::generate_partitions;
use rcomp::transforms::generate_k_range;
use rcomp::verify::{faulty_generator, SweepBounds, Verifier};
use rcomp::{
    count_fixed_k_binomial, count_partitions_binomial, count_partitions_fixed_k, BigUint, CompositionSpec, CountTable,
    GeneratorKind, KRange, PartDomain, PartitionKind,
};

#[derive(Parser)]
#[command(
    name = "rcomp",
    version,
    about = "Count and generate restricted integer compositions and partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of compositions or partitions
    Count(CountArgs),
    /// Print every composition or partition, one per line
    Gen(GenArgs),
    /// Check all generators and counters against brute force
    Verify(VerifyArgs),
    /// Time the generators and write CSV
    Bench(BenchArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Sum of the parts
    #[arg(long)]
    n: u64,
    /// Number of parts; omit together with --kmin/--kmax to allow any number
    #[arg(long, conflicts_with_all = ["kmin", "kmax"])]
    k: Option<usize>,
    #[arg(long, requires = "kmax")]
    kmin: Option<usize>,
    #[arg(long, requires = "kmin")]
    kmax: Option<usize>,
    /// Smallest allowed part
    #[arg(long, requires = "max", conflicts_with = "set", required_unless_present = "set")]
    min: Option<u64>,
    /// Largest allowed part
    #[arg(long, requires = "min")]
    max: Option<u64>,
    /// Allowed parts as a comma-separated list
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    set: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Objects::Compositions)]
    objects: Objects,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objects {
    Compositions,
    Partitions,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Interval,
    Binomial,
    Set,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Jsonl,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Counting recursion; defaults to interval for --min/--max and set for --set
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// naive, binomial, interval or successor; partitions accept naive and binomial
    #[arg(long)]
    algo: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
    /// Stop after this many outputs
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    nmax: u64,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    #[arg(long, default_value_t = 5)]
    bmax: u64,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// fig1, fig2, fig3 or custom
    #[arg(long)]
    preset: Preset,
    /// Comma-separated sums (custom only)
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    #[arg(long, conflicts_with_all = ["kmin", "kmax"])]
    k: Option<usize>,
    #[arg(long, requires = "kmax")]
    kmin: Option<usize>,
    #[arg(long, requires = "kmin")]
    kmax: Option<usize>,
    #[arg(long, requires = "max")]
    min: Option<u64>,
    #[arg(long, requires = "min")]
    max: Option<u64>,
    /// Comma-separated algorithm names (custom only; default all)
    #[arg(long, value_delimiter = ',')]
    algo: Vec<GeneratorKind>,
    #[arg(long)]
    reps: Option<u32>,
    #[arg(long)]
    warmup: Option<u32>,
    /// Per-cell budget in seconds
    #[arg(long)]
    timeout: Option<u64>,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Verify,
    Io(io::Error),
}

impl From<rcomp::Error> for Failure {
    fn from(e: rcomp::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

impl SpecArgs {
    fn domain(&self) -> Result<PartDomain, Failure> {
        Ok(match (&self.set, self.min, self.max) {
            (Some(set), _, _) => PartDomain::from_values(set.iter().copied())?,
            (None, Some(a), Some(b)) => PartDomain::interval(a, b)?,
            _ => return Err(Failure::Usage("give --min and --max, or --set".into())),
        })
    }

    /// The requested k values. Without any k flag every k that can contribute
    /// is included, which is finite only when 0 is not an allowed part.
    fn ks(&self, domain: &PartDomain) -> Result<KRange, Failure> {
        match (self.k, self.kmin, self.kmax) {
            (Some(k), _, _) => Ok(KRange::single(k)),
            (None, Some(lo), Some(hi)) => Ok(KRange::new(lo, hi)?),
            _ if domain.min() == 0 => Err(rcomp::Error::DivergentCount.into()),
            _ => {
                let most = usize::try_from(self.n / domain.min()).unwrap_or(usize::MAX);
                Ok(KRange::new(0, most)?)
            }
        }
    }
}

fn cmd_count(args: CountArgs) -> Result<(), Failure> {
    let domain = args.spec.domain()?;
    let method = args.method.unwrap_or(if domain.as_interval().is_some() {
        Method::Interval
    } else {
        Method::Set
    });
    let interval = domain.as_interval();
    if method != Method::Set && interval.is_none() {
        return Err(Failure::Usage(
            "--method interval and --method binomial need --min/--max, not --set".into(),
        ));
    }
    let ks = args.spec.ks(&domain)?;
    let n = args.spec.n;
    let mut total = BigUint::from(0u8);
    match (args.spec.objects, method) {
        (Objects::Compositions, Method::Binomial) => {
            let (a, b) = interval.expect("checked above");
            for k in ks.iter() {
                total += count_fixed_k_binomial(n, k, a, b)?;
            }
        }
        (Objects::Compositions, _) => {
            let mut table = CountTable::new(domain);
            total = table.count_k_range(n, ks);
        }
        (Objects::Partitions, Method::Interval) => {
            let (a, b) = interval.expect("checked above");
            for k in ks.iter() {
                total += count_partitions_fixed_k(n, k, a, b)?;
            }
        }
        (Objects::Partitions, Method::Binomial) => {
            let (a, b) = interval.expect("checked above");
            for k in ks.iter() {
                total += count_partitions_binomial(n, k, a, b)?;
            }
        }
        (Objects::Partitions, Method::Set) => {
            let mut table = SetPartitionTable::new(&domain);
            for k in ks.iter() {
                total += table.count(n, k);
            }
        }
    }
    println!("{total}");
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let domain = args.spec.domain()?;
    let ks = args.spec.ks(&domain)?;
    let n = args.spec.n;
    let limit = args.limit.unwrap_or(u64::MAX);
    if limit == 0 {
        return Ok(());
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut written = 0u64;
    let mut io_error = None;
    let mut emit = |parts: &[u64]| {
        if let Err(e) = write_tuple(&mut out, parts, args.format) {
            io_error = Some(e);
            return ControlFlow::Break(());
        }
        written += 1;
        if written >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };

    match args.spec.objects {
        Objects::Compositions => {
            let kind = match &args.algo {
                None => GeneratorKind::Successor,
                Some(name) => name
                    .parse()
                    .map_err(|e: rcomp::generation::UnknownKind| Failure::Usage(e.to_string()))?,
            };
            generate_k_range(n, ks, &domain, kind, |_, parts| emit(parts))?;
        }
        Objects::Partitions => {
            let kind = match args.algo.as_deref() {
                None | Some("naive") => PartitionKind::NaiveSuffix,
                Some("binomial") => PartitionKind::BinomialSplit,
                Some(other) => {
                    return Err(Failure::Usage(format!(
                        "partitions are generated by naive or binomial, not `{other}`"
                    )))
                }
            };
            for k in ks.iter() {
                let spec = CompositionSpec::new(n, k, domain.clone());
                let mut stopped = false;
                generate_partitions(&spec, kind, |parts| {
                    let flow = emit(parts);
                    stopped = flow.is_break();
                    flow
                })?;
                if stopped {
                    break;
                }
            }
        }
    }
    if let Some(e) = io_error {
        return Err(e.into());
    }
    out.flush()?;
    Ok(())
}

fn write_tuple<W: Write>(out: &mut W, parts: &[u64], format: Format) -> io::Result<()> {
    let (open, sep, close) = match format {
        Format::Lines => ("", " ", ""),
        Format::Jsonl => ("[", ",", "]"),
    };
    out.write_all(open.as_bytes())?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.write_all(sep.as_bytes())?;
        }
        write!(out, "{p}")?;
    }
    out.write_all(close.as_bytes())?;
    out.write_all(b"\n")
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let bounds = SweepBounds {
        nmax: args.nmax,
        kmax: args.kmax,
        bmax: args.bmax,
    };
    let mut verifier = Verifier::new(bounds);
    if args.inject_fault {
        verifier = verifier.with_generator(faulty_generator);
    }
    match verifier.run() {
        Ok(report) => {
            println!("{report}");
            Ok(())
        }
        Err(mismatch) => {
            println!("{mismatch}");
            Err(Failure::Verify)
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let mut config = match ExperimentConfig::from_preset(args.preset) {
        Some(config) => config,
        None => {
            if args.n.is_empty() {
                return Err(Failure::Usage("--preset custom needs --n".into()));
            }
            let k_rule = match (args.k, args.kmin, args.kmax) {
                (Some(k), _, _) => KRule::Fixed(k),
                (None, Some(k_min), Some(k_max)) => KRule::Sweep { k_min, k_max },
                _ => KRule::HalfN,
            };
            let (Some(a), Some(b)) = (args.min, args.max) else {
                return Err(Failure::Usage("--preset custom needs --min and --max".into()));
            };
            let algorithms = if args.algo.is_empty() {
                GeneratorKind::ALL.to_vec()
            } else {
                args.algo.clone()
            };
            ExperimentConfig::custom(args.n.clone(), k_rule, a, b, algorithms)
        }
    };
    if let Some(reps) = args.reps {
        if reps == 0 {
            return Err(Failure::Usage("--reps must be positive".into()));
        }
        config.repetitions = reps;
    }
    if let Some(warmup) = args.warmup {
        config.warmup = warmup;
    }
    if let Some(secs) = args.timeout {
        config.timeout = Duration::from_secs(secs);
    }

    let rows = run_experiment(&config)?;
    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(out, "# environment: {}", environment_description())?;
    write_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(())
}

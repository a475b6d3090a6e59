use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mfd_core::analysis::{Analysis, Options};
use mfd_core::catalog::{entries, entry, expand_catalog, parse_params};
use mfd_core::presentation::{parse_presentation, GroupSpec};
use mfd_core::verify::{self, CorpusGroup, Suite};
use mfd_core::{Error, Limits};

/// Orders up to this bound get `mu(G)` even without `--mu`.
const AUTO_MU_ORDER: u64 = 729;

#[derive(Parser)]
#[command(
    name = "mfd",
    version,
    about = "Minimal faithful degrees of finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants, c(G) and optionally mu(G) for one group.
    Compute(ComputeArgs),
    /// Run a verification suite, or all checks for one catalog group.
    Verify(VerifyArgs),
    /// List catalog families.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Wall-clock budget in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Maximum number of live cosets during enumeration.
    #[arg(long, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    enum_limit: u64,
    /// Largest group order accepted by the character-table stage.
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    chartab_limit: u64,
    /// Subgroup nodes visited by the mu(G) search.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    mu_nodes: u64,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            enumeration: self.enum_limit as usize,
            chartab: self.chartab_limit as usize,
            mu_nodes: self.mu_nodes as usize,
            ..Limits::default()
        }
    }

    fn timeout(&self) -> Option<Duration> {
        self.timeout.map(Duration::from_secs)
    }
}

#[derive(Args)]
struct GroupSource {
    /// Catalog family id (see `mfd catalog`).
    #[arg(long, conflicts_with = "file")]
    group: Option<String>,
    /// The prime p (defaults to the family's smallest listed prime).
    #[arg(long)]
    p: Option<u64>,
    /// Family parameter, e.g. `--param k=1`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Presentation file (`gens ...; rels ...;`).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Compute mu(G) with a realized witness action.
    #[arg(long)]
    mu: bool,
    /// Also run the unrestricted c(G) search.
    #[arg(long)]
    exhaustive_c: bool,
    /// Print the character table.
    #[arg(long)]
    dump_table: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// smoke, paper-p5 or stretch.
    #[arg(long, required_unless_present = "group")]
    suite: Option<String>,
    #[command(flatten)]
    source: GroupSource,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Usage(String),
    Budget(String),
    Verify,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_budget() => Failure::Budget(e.to_string()),
            e @ (Error::UnknownFamily(_)
            | Error::ParameterOutOfRange { .. }
            | Error::PrimeConstraint { .. }
            | Error::Syntax { .. }
            | Error::UnknownGenerator { .. }) => Failure::Usage(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

/// Write to stdout, treating a closed pipe as success.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

fn load_spec(src: &GroupSource) -> Result<GroupSpec, Failure> {
    match (&src.group, &src.file) {
        (Some(id), None) => {
            let params = parse_params(src.params.iter().map(String::as_str))?;
            let p = match src.p {
                Some(p) => p,
                None => entry(id)?.default_p,
            };
            Ok(expand_catalog(id, p, &params)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(parse_presentation(&text)?)
        }
        _ => Err(Failure::Usage(
            "give exactly one of --group or --file".into(),
        )),
    }
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    let spec = load_spec(&args.source)?;
    let limits = args.common.limits().with_timeout(args.common.timeout());
    let opts = Options {
        mu: args.mu,
        exhaustive_c: args.exhaustive_c,
    };
    let mut analysis = Analysis::run(&spec, opts, &limits)?;
    if !args.mu && analysis.structure.order <= AUTO_MU_ORDER && analysis.structure.prime.is_some() {
        analysis.run_mu(&limits);
    }
    let report = analysis.report(args.dump_table);
    match args.common.format {
        Format::Text => emit(&report.to_text()),
        Format::Json => emit(&json(&report)),
    }
    if analysis.hit_budget() {
        return Err(Failure::Budget("report is incomplete".into()));
    }
    match analysis.failures.first() {
        Some((stage, e)) => Err(Failure::Other(format!("{stage}: {e}"))),
        None => Ok(()),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let limits = args.common.limits();
    let results = match (&args.suite, &args.source.group) {
        (Some(name), None) => {
            let suite = Suite::parse(name).ok_or_else(|| {
                Failure::Usage(format!("unknown suite `{name}` (smoke, paper-p5, stretch)"))
            })?;
            verify::run_suite(suite, &limits, args.common.timeout())
        }
        (None, Some(id)) => {
            let p = match args.source.p {
                Some(p) => p,
                None => entry(id)?.default_p,
            };
            let cg = CorpusGroup {
                family: id.clone(),
                p,
                params: parse_params(args.source.params.iter().map(String::as_str))?,
            };
            verify::run_group(&cg, &limits.with_timeout(args.common.timeout()))
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --suite or --group".into(),
            ))
        }
    };
    match args.common.format {
        Format::Text => emit(&verify::render_text(&results)),
        Format::Json => emit(&json(&results)),
    }
    if verify::any_failed(&results) {
        Err(Failure::Verify)
    } else {
        Ok(())
    }
}

fn catalog(args: &CatalogArgs) {
    match args.format {
        Format::Json => emit(&json(&entries())),
        Format::Text => {
            let mut out = String::new();
            for e in entries() {
                let mut line = format!("{:<14} {}", e.id, e.constraint);
                if !e.params.is_empty() {
                    line += &format!("; params {}", e.params.join(", "));
                }
                out += &format!("{line}\n    {}\n", e.description);
            }
            emit(&out);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match &cli.command {
        Command::Compute(a) => a.common.threads,
        Command::Verify(a) => a.common.threads,
        Command::Catalog(_) => None,
    };
    if let Some(n) = threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => run_verify(a),
        Command::Catalog(a) => {
            catalog(a);
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

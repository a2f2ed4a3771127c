use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kindred_core::embed::{catalog, find, Embedding};
use kindred_core::format;
use kindred_core::kind::GraphKind;
use kindred_core::lattice::{compare, compose, invert_chain, plan, WitnessChain};
use kindred_core::oracle::{self, reference_kind, UniverseSpec, VerificationReport, STANDARD_BUDGET};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "kindred", version, about = "Convert graphs between kinds and check the embeddings that do it")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a graph file to another kind along the shortest chain.
    Convert {
        input: PathBuf,
        #[arg(long, value_parser = parse_kind)]
        to: GraphKind,
        /// Write the chain used, for a later `invert`.
        #[arg(long)]
        chain_out: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Undo a conversion given the chain file it wrote.
    Invert {
        input: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two kinds and print the witness chains.
    Order {
        #[arg(value_parser = parse_kind)]
        first: GraphKind,
        #[arg(value_parser = parse_kind)]
        second: GraphKind,
    },
    /// Print the steps of the shortest chain between two kinds.
    Plan {
        #[arg(value_parser = parse_kind)]
        from: GraphKind,
        #[arg(value_parser = parse_kind)]
        to: GraphKind,
    },
    /// Check embeddings exhaustively or on random graphs.
    Verify(VerifyArgs),
    /// Parse and validate a graph file.
    Validate { input: PathBuf },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Check only this embedding; all catalog embeddings otherwise.
    #[arg(long)]
    embedding: Option<String>,
    /// Source kind; each embedding's reference kind otherwise.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<GraphKind>,
    #[arg(long, conflicts_with = "fuzz")]
    exhaustive: bool,
    /// Number of random graphs to check.
    #[arg(long)]
    fuzz: Option<u64>,
    #[arg(long, default_value_t = 0, requires = "fuzz")]
    seed: u64,
    /// Largest exhaustive universe; bounds shrink to fit.
    #[arg(long, default_value_t = STANDARD_BUDGET, conflicts_with = "fuzz")]
    budget: u128,
}

#[derive(Debug, Error)]
enum CliError {
    /// Bad arguments that clap cannot catch.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

fn parse_kind(s: &str) -> Result<GraphKind, String> {
    s.parse().map_err(|e: kindred_core::Error| e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(kindred_core::Error) -> CliError + '_ {
    move |e| match e {
        kindred_core::Error::Syntax { .. } => CliError::Failed(format!("{}:{e}", path.display())),
        _ => CliError::Failed(format!("{}: {e}", path.display())),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Failed(format!("{}: {e}", p.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn say(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn describe(chain: &Option<WitnessChain>) -> String {
    match chain {
        Some(c) if c.is_empty() => "identity".into(),
        Some(c) => c.to_string(),
        None => "none".into(),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Convert {
            input,
            to,
            chain_out,
            output,
        } => {
            let g = format::parse(&read(&input)?).map_err(in_file(&input))?;
            let chain = plan(g.kind, to).map_err(|e| CliError::Failed(e.to_string()))?;
            let out = compose(&g, &chain).map_err(|e| CliError::Failed(e.to_string()))?;
            if let Some(p) = chain_out {
                write_out(Some(&p), &format::serialize_chain(&chain))?;
            }
            write_out(output.as_deref(), &format::serialize(&out))?;
            Ok(true)
        }
        Command::Invert { input, chain, output } => {
            let c = format::parse_chain(&read(&chain)?).map_err(in_file(&chain))?;
            let g = format::parse(&read(&input)?).map_err(in_file(&input))?;
            let back = invert_chain(&c)
                .apply(&g)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            write_out(output.as_deref(), &format::serialize(&back))?;
            Ok(true)
        }
        Command::Order { first, second } => {
            let r = compare(first, second);
            say(&format!(
                "{}\nforward: {}\nbackward: {}\n",
                r.relation,
                describe(&r.forward),
                describe(&r.backward)
            ));
            Ok(true)
        }
        Command::Plan { from, to } => {
            let chain = plan(from, to).map_err(|e| CliError::Failed(e.to_string()))?;
            for s in &chain.steps {
                say(&format!(
                    "{} {} {} ({})\n",
                    s.property,
                    s.direction,
                    s.embedding,
                    s.resolve().lemma()
                ));
            }
            Ok(true)
        }
        Command::Verify(args) => verify(args),
        Command::Validate { input } => {
            let g = format::parse(&read(&input)?).map_err(in_file(&input))?;
            let records: usize = g.snapshots.iter().map(|s| s.nodes.len() + s.edges.len()).sum();
            say(&format!("valid {} ({records} records)\n", g.kind));
            Ok(true)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool, CliError> {
    let targets: Vec<&dyn Embedding> = match &args.embedding {
        Some(name) => vec![find(name).map_err(|e| CliError::Usage(e.to_string()))?],
        None => catalog().iter().map(|e| e.as_ref()).collect(),
    };
    let mut all_ok = true;
    for e in targets {
        let kind = args.kind.unwrap_or_else(|| reference_kind(e));
        if !e.accepts(&kind) {
            if args.embedding.is_some() {
                return Err(CliError::Usage(format!("{} does not accept kind {kind}", e.name())));
            }
            continue;
        }
        let report: VerificationReport = match args.fuzz {
            Some(count) => oracle::fuzz(e, args.seed, count, &UniverseSpec::fuzz(kind)),
            None => oracle::verify(e, &UniverseSpec::base(kind).fit(args.budget)),
        }
        .map_err(|err| CliError::Failed(err.to_string()))?;
        all_ok &= report.verified();
        say(&format::serialize_report(&report));
        eprintln!(
            "{} on {}: {} in {:.2?}",
            report.embedding,
            report.source_kind,
            if report.verified() { "verified" } else { "FAILED" },
            report.elapsed
        );
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kindred: {e}");
            ExitCode::from(e.code())
        }
    }
}

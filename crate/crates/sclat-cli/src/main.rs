//! `sclat` — command-line access to the single-crossing dominance toolkit.
//!
//! One static binary, eight subcommands:
//!
//! * `analyze` — substructure report and lattice status of a poset file,
//!   as JSON, text, or an annotated DOT drawing.
//! * `join` / `meet` — canonical minimum upper bound / maximum lower bound
//!   of a preference profile, with `--explain` for the forced-core table
//!   and `--expect` to turn the outcome into an exit-code assertion.
//! * `verify` — the oracle sweeps, one theorem per run.
//! * `mcs` — comparative statics on numeric chains: `argmax`, `consensus`,
//!   and the monotonicity sweeps.
//! * `maxmin` — maxmin representation of certainty-equivalent preferences,
//!   cross-checked against the least-ambiguity-averse-bound route.
//! * `swf` — acceptable-aggregation check for a profile and structural
//!   classification of a poset.
//! * `export-dot` — plain Graphviz rendering of a poset file.
//!
//! Exit codes: 0 on success, 1 when an `--expect` assertion or a sweep
//! fails, 2 on unusable input. All output is deterministic for a fixed
//! (input, seed, version) triple; sweeps parallelize over a worker pool
//! sized by `--jobs` (or the `SCLAT_JOBS` environment variable) with an
//! ordered reduction.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Outcome};

#[derive(Parser)]
#[command(
    name = "sclat",
    version,
    about = "Joins, meets, and verified aggregation theorems for preferences over finite posets"
)]
struct Cli {
    /// Worker threads for sweeps (defaults to SCLAT_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report crowns, diamonds, chalices, weak cycles, forbidden
    /// four-element patterns, fork class, and lattice status of a poset.
    Analyze(AnalyzeArgs),
    /// Compute the canonical minimum upper bound of a profile.
    Join(BoundArgs),
    /// Compute the canonical maximum lower bound of a profile.
    Meet(BoundArgs),
    /// Run an oracle sweep for one theorem and print the instance report.
    Verify(VerifyArgs),
    /// Comparative statics of optima on numeric chains.
    #[command(subcommand)]
    Mcs(McsCommand),
    /// Maxmin representation of certainty-equivalent preferences.
    Maxmin(MaxminArgs),
    /// Acceptable social aggregation: per-profile check and poset verdict.
    #[command(subcommand)]
    Swf(SwfCommand),
    /// Render a poset file as Graphviz DOT (cover edges drawn downward).
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Poset JSON file ({"elements": [...], "covers" | "relation": [...]}).
    #[arg(long)]
    poset: PathBuf,
    /// Output format; `dot` highlights witness elements in red.
    #[arg(long, value_enum, default_value = "json")]
    format: AnalyzeFormat,
}

#[derive(Args)]
struct BoundArgs {
    /// Poset JSON file.
    #[arg(long)]
    poset: PathBuf,
    /// Profile JSON file ({"profile": ["w > x ~ y > z", ...]}).
    #[arg(long)]
    profile: PathBuf,
    /// Prepend the forced-core table (chain queries, forced ranking,
    /// shortest witness chain per comparable pair).
    #[arg(long)]
    explain: bool,
    /// Assert the outcome; a mismatch exits 1.
    #[arg(long, value_enum)]
    expect: Option<BoundExpect>,
    #[arg(long, value_enum, default_value = "text")]
    format: TextJson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundExpect {
    /// The profile has a least upper bound (only for `join`).
    Join,
    /// It has none (only for `join`).
    NoJoin,
    /// The profile has a greatest lower bound (only for `meet`).
    Meet,
    /// It has none (only for `meet`).
    NoMeet,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which verified result to sweep.
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Size parameter: alternatives for poset sweeps, chain length for
    /// `mcs`, non-constant acts for `maxmin`.
    #[arg(long)]
    n: usize,
    /// Profile size for the characterisation sweep.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Force exhaustive profile ranges where the default samples.
    #[arg(long)]
    deep: bool,
    /// Seed for sampled ranges; a fixed default keeps runs reproducible.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: TextJson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// Chain-based minimum-upper-bound detection vs brute force.
    Characterisation,
    /// Pairwise joins exist iff the poset is crown- and diamond-free.
    Existence,
    /// Bounds are unique for every profile iff the order is complete.
    Uniqueness,
    /// Crown/diamond-freeness via reduction weak cycles and chalices.
    CyclesChalices,
    /// Acceptable-aggregation existence vs fork classification.
    Swf,
    /// Monotone comparative statics on chains.
    Mcs,
    /// Maxmin representation iff least ambiguity-averse upper bound.
    Maxmin,
}

#[derive(Subcommand)]
enum McsCommand {
    /// Best alternatives of one ranking on a numeric chain.
    Argmax(ArgmaxArgs),
    /// Consensus optima and possibly-optimal set of a profile.
    Consensus(ConsensusArgs),
    /// Run the three monotonicity sweeps for one chain length.
    Sweep(McsSweepArgs),
}

#[derive(Args)]
struct ArgmaxArgs {
    /// Chain values, comma-separated and strictly increasing (e.g. 1,2,4).
    #[arg(long, value_delimiter = ',', required = true)]
    chain: Vec<f64>,
    /// Ranking over the chain values (e.g. "4 > 1 ~ 2").
    #[arg(long)]
    ranking: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TextJson,
}

#[derive(Args)]
struct ConsensusArgs {
    /// Chain values, comma-separated and strictly increasing.
    #[arg(long, value_delimiter = ',', required = true)]
    chain: Vec<f64>,
    /// Profile JSON file over the chain values.
    #[arg(long)]
    profile: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: TextJson,
}

#[derive(Args)]
struct McsSweepArgs {
    /// Chain length.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: TextJson,
}

#[derive(Args)]
struct MaxminArgs {
    /// Act-space JSON file
    /// ({"states": [...], "prizes": [...], "acts": {...}}).
    #[arg(long)]
    acts: PathBuf,
    /// Certainty-equivalent preference files ({"ce": {"X1": 0.5, ...}}),
    /// one per profile member.
    #[arg(long, required = true, num_args = 1..)]
    prefs: Vec<PathBuf>,
    /// Candidate representation to test instead of the pointwise floor.
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: TextJson,
}

#[derive(Subcommand)]
enum SwfCommand {
    /// Scan every candidate for an acceptable social preference.
    Check(SwfCheckArgs),
    /// Decide whether every profile over the poset aggregates acceptably.
    Classify(SwfClassifyArgs),
}

#[derive(Args)]
struct SwfCheckArgs {
    /// Poset JSON file.
    #[arg(long)]
    poset: PathBuf,
    /// Profile JSON file.
    #[arg(long)]
    profile: PathBuf,
    /// Assert the outcome; a mismatch exits 1.
    #[arg(long, value_enum)]
    expect: Option<SwfExpect>,
    #[arg(long, value_enum, default_value = "json")]
    format: TextJson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SwfExpect {
    /// At least one acceptable social preference exists.
    Acceptable,
    /// No candidate passes both axioms.
    None,
}

#[derive(Args)]
struct SwfClassifyArgs {
    /// Poset JSON file.
    #[arg(long)]
    poset: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: TextJson,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Poset JSON file.
    #[arg(long)]
    poset: PathBuf,
}

/// Output shape shared by most subcommands.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnalyzeFormat {
    Json,
    Text,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    commands::configure_jobs(cli.jobs)?;
    let outcome = dispatch(&cli.command)?;
    commands::write_output(cli.output.as_deref(), &outcome.body)?;
    Ok(if outcome.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Join(args) => commands::bound(args, commands::BoundKind::Join),
        Command::Meet(args) => commands::bound(args, commands::BoundKind::Meet),
        Command::Verify(args) => commands::verify(args),
        Command::Mcs(McsCommand::Argmax(args)) => commands::mcs_argmax(args),
        Command::Mcs(McsCommand::Consensus(args)) => commands::mcs_consensus(args),
        Command::Mcs(McsCommand::Sweep(args)) => commands::mcs_sweep(args),
        Command::Maxmin(args) => commands::maxmin(args),
        Command::Swf(SwfCommand::Check(args)) => commands::swf_check(args),
        Command::Swf(SwfCommand::Classify(args)) => commands::swf_classify(args),
        Command::ExportDot(args) => commands::export_dot(args),
    }
}

//! Command-line front end: scores attribute names, maintains the knowledge
//! base and runs the timing benchmarks.
//!
//! Exit codes for `check`: 0 when the name clears the admission threshold,
//! 1 when it does not, 2 or higher on errors. Every other command exits 0 on
//! success and 2 on error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "namesig",
    version,
    about = "Scores whether attribute names carry linguistic meaning and filters a personal-data knowledge base"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score a single attribute name and print the result as JSON.
    Check {
        /// Attribute name to score.
        name: String,
        #[command(flatten)]
        scoring: ScoringOpts,
    },
    /// Score names in bulk: one JSON result per input line.
    Batch {
        /// Input file: one name per line, or a CSV with a
        /// domaine,table,attribut header.
        #[arg(long)]
        input: PathBuf,
        /// Output file (defaults to standard output).
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        scoring: ScoringOpts,
    },
    /// Dictionary maintenance.
    #[command(subcommand)]
    Dict(DictCommand),
    /// Knowledge-base maintenance.
    #[command(subcommand)]
    Kb(KbCommand),
    /// Timing benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand, Debug)]
enum DictCommand {
    /// Normalize, deduplicate, filter and sort a raw word list.
    Build {
        /// Raw word file: one word per line, '#' comments allowed.
        #[arg(long)]
        raw: PathBuf,
        /// Optional stopword file in the same format.
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// Where to write the cleaned dictionary.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum KbCommand {
    /// Fold analysis batches into the knowledge base, admitting only
    /// attributes whose name passes the significance check.
    Ingest {
        /// Knowledge-base file (JSON Lines); created if missing.
        #[arg(long)]
        kb: PathBuf,
        /// Analysis batches to ingest, one JSON object per line.
        #[arg(long)]
        records: PathBuf,
        #[command(flatten)]
        scoring: ScoringOpts,
    },
    /// Print knowledge-base records matching the given filters.
    Query {
        /// Knowledge-base file (JSON Lines).
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        domaine: Option<String>,
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        attribut: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Time batch scoring per metric and group size; emits CSV.
    Run {
        /// Metrics to time.
        #[arg(long = "metric", value_delimiter = ',', default_values = ["levenshtein", "2gram"])]
        metrics: Vec<String>,
        /// Name-group sizes to time.
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 2000, 5000, 10000])]
        sizes: Vec<usize>,
        /// Corpus seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Repetitions per cell (the median is reported).
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Score name groups on all cores instead of one.
        #[arg(long)]
        parallel: bool,
        /// Output CSV file (defaults to standard output).
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        dict: DictOpts,
    },
}

/// Dictionary location, shared by every scoring command.
#[derive(Args, Debug)]
struct DictOpts {
    /// Dictionary file: one word per line, '#' comments allowed.
    #[arg(long, env = "NAMESIG_DICT")]
    dict: PathBuf,
    /// Stopword file in the same format.
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScoringOpts {
    #[command(flatten)]
    dict: DictOpts,
    /// Distance function: levenshtein, 2gram, 3gram, jaro or jaro-winkler.
    #[arg(long, default_value = "levenshtein")]
    metric: String,
    /// How n-gram similarity is computed: dp or setratio.
    #[arg(long, default_value = "dp")]
    ngram_mode: String,
    /// Minimum score for knowledge-base admission.
    #[arg(long, default_value_t = 0.7)]
    accept: f64,
    /// Minimum score for the probable category.
    #[arg(long, default_value_t = 0.5)]
    probable: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { name, scoring } => commands::check(&name, &scoring),
        Command::Batch {
            input,
            output,
            scoring,
        } => commands::batch(&input, output.as_deref(), &scoring),
        Command::Dict(DictCommand::Build {
            raw,
            stopwords,
            out,
        }) => commands::dict_build(&raw, stopwords.as_deref(), &out),
        Command::Kb(KbCommand::Ingest {
            kb,
            records,
            scoring,
        }) => commands::kb_ingest(&kb, &records, &scoring),
        Command::Kb(KbCommand::Query {
            kb,
            domaine,
            table,
            attribut,
        }) => commands::kb_query(&kb, domaine.as_deref(), table.as_deref(), attribut.as_deref()),
        Command::Bench(BenchCommand::Run {
            metrics,
            sizes,
            seed,
            reps,
            parallel,
            output,
            dict,
        }) => commands::bench_run(&metrics, &sizes, seed, reps, parallel, output.as_deref(), &dict),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

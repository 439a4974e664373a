//! `sumfree`: experiments on sum-free sets in finite Abelian groups.
//!
//! Every randomized subcommand takes an explicit --seed; identical
//! invocations (any --workers value) produce byte-identical output.
//! Exit codes: 0 ok, 2 assertion failure, 3 budget exhausted, 4 input
//! error. Failures print a machine-readable JSON object on stderr.

mod commands;
mod graphs;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use sumfree_core::Error;

#[derive(Parser)]
#[command(name = "sumfree", version, about = "sum-free set laboratory")]
pub struct Cli {
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (0 = library default). Output bytes never depend on
    /// this.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Node budget for exhaustive searches.
    #[arg(long = "budget-nodes", global = true, default_value_t = 200_000_000)]
    pub budget_nodes: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Order, Type-I prime, μ(G), order-q element count, index-2 subgroups.
    GroupInfo { spec: String },

    /// Enumerate SF₀(G) and run the cardinality and intersection checks.
    Sf0 { spec: String },

    /// Exact sum-free counts against the extremal-family prediction.
    Count {
        spec: String,
        /// Inclusive size range, e.g. `2..5`, or a single size.
        #[arg(long = "m")]
        m_range: String,
        #[arg(long, value_enum, default_value_t = CountingSense::Group)]
        mode: CountingSense,
    },

    /// Encode an independent set into a certificate file.
    Encode {
        #[command(subcommand)]
        what: EncodeWhat,
    },

    /// Replay a certificate and print the determined available set.
    Decode {
        certificate: PathBuf,
        /// Re-verify the step-count claims from the replayed trace.
        #[arg(long)]
        verify: bool,
    },

    /// Cayley spectrum of S ∪ (−S) over a group.
    Spectra {
        spec: String,
        /// Comma-separated linear element indices.
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = SpectraMode::Full)]
        mode: SpectraMode,
        /// Cross-check the character computation against the dense solver.
        #[arg(long)]
        dense: bool,
    },

    /// Janson bounds vs the exact no-edge-inside probability.
    Janson {
        /// Graph grammar: C<n>, P<n>, K<n>, K<a>x<b>, circ<n>:g1,g2,…
        #[arg(long)]
        graph: String,
        #[arg(long)]
        m: u64,
    },

    /// Random d-regular blow-up of K_{t+1}.
    Blowup {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        part: usize,
        #[arg(long)]
        d: usize,
        /// Emit the spectrum instead of the edge list (csv format).
        #[arg(long)]
        spectrum: bool,
    },

    /// Stability profile rows (size, schur_count, min_distance).
    Stability {
        spec: String,
        #[arg(long = "min-size-fraction", default_value_t = 0.0)]
        min_size_fraction: f64,
        #[arg(long, value_enum, default_value_t = ScanKind::Exhaustive)]
        mode: ScanKind,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Emit the (γ, max β) witness curve instead of raw rows.
        #[arg(long)]
        sweep: bool,
    },

    /// Count/prediction/ratio table for Z_{2k} over a k range; asserts
    /// ratio ≥ 1 everywhere and ratio ≤ 1.1 at m = k.
    Report {
        #[arg(long = "k-range", default_value = "8..16")]
        k_range: String,
    },
}

#[derive(Subcommand)]
pub enum EncodeWhat {
    /// Basic algorithm on the Cayley graph of the given connection set.
    Basic {
        #[arg(long)]
        group: String,
        /// Cayley connection set (linear indices, 0 excluded).
        #[arg(long)]
        cayley: String,
        /// Independent set to encode.
        #[arg(long)]
        set: String,
        #[arg(long = "stop-size")]
        stop_size: usize,
    },
    /// Main algorithm on the Schur hypergraph with the SF₀ family.
    Main {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        /// Defaults to μ(G).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        beta: f64,
        #[arg(long, default_value_t = 0.01)]
        gamma: f64,
        #[arg(long = "capital-c", default_value_t = 10.0)]
        capital_c: f64,
        /// Override d = round(C·n/m).
        #[arg(long)]
        d: Option<usize>,
        /// Verify the step-count claims after encoding.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountingSense {
    Group,
    Hypergraph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectraMode {
    Full,
    ExcludeS,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Exhaustive,
    Sample,
}

fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_)) | Some(Error::Domain(_)) | Some(Error::NotTypeI { .. })
        | Some(Error::Decode(_)) => 4,
        Some(Error::BudgetExhausted { .. }) => 3,
        Some(Error::Assertion(_)) => 2,
        None => 4,
    }
}

fn error_kind(err: &anyhow::Error) -> &'static str {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => "parse",
        Some(Error::Domain(_)) | Some(Error::NotTypeI { .. }) => "domain",
        Some(Error::Decode(_)) => "decode",
        Some(Error::BudgetExhausted { .. }) => "budget",
        Some(Error::Assertion(_)) => "assertion",
        None => "io",
    }
}

fn main() {
    let cli = Cli::parse();
    sumfree_core::par::configure_workers(cli.workers);
    if let Err(err) = commands::run(&cli) {
        let code = exit_code(&err);
        let obj = serde_json::json!({
            "schema": 1,
            "error": { "code": code, "kind": error_kind(&err), "message": err.to_string() }
        });
        eprintln!("{obj}");
        std::process::exit(code);
    }
}

//! Command-line front end. Every subcommand emits one JSON (or CSV) report
//! and exits with: 0 all checks pass, 1 check failure, 2 usage error,
//! 3 timeout, 4 resource cap.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclopaley::cli::{self, CommonOpts, SeedKind};
use cyclopaley::field::DEFAULT_SIZE_CAP;
use cyclopaley::report::Report;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "cyclopaley",
    about = "Exact verification toolkit for pseudo-Paley graphs from semi-primitive cyclotomic classes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Cap on the number of field elements p^n.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP, global = true)]
    size_cap: u64,

    /// Worker threads for the character-sum loops.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,

    /// Wall-clock budget in seconds for exact clique search.
    #[arg(long, global = true)]
    deadline_s: Option<u64>,

    /// Directory for cached discrete-log tables (opt-in).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Largest induced subgraph materialized for exact search.
    #[arg(long, default_value_t = 4096, global = true)]
    induced_bound: usize,

    /// Candidate-count goal for the neighborhood-intersection reduction.
    #[arg(long, default_value_t = 700, global = true)]
    reduction_target: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeedArg {
    Pair,
    Subfield,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum clique through a seed, with profile and certificate.
    Clique {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        two_d: u64,
        /// Comma-separated members of I, e.g. 0,1,3.
        #[arg(long, value_delimiter = ',')]
        index_set: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SeedArg::Auto)]
        seed: SeedArg,
    },
    /// Gauss periods and all order-2d Gauss-sum assertions.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        two_d: u64,
    },
    /// Gauss periods only.
    Periods {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        two_d: u64,
    },
    /// Reproduce the clique-number table rows.
    Table1 {
        #[arg(long, default_value_t = 1)]
        tier: u8,
    },
    /// Count index sets I with omega(PP(p^4, p+1, I)) = p^2.
    CountIndexSets {
        #[arg(long)]
        p: u64,
    },
    /// Full sweep of the 2-dimensional subspace conjecture at p.
    VerifyConjectures {
        #[arg(long)]
        p: u64,
    },
    /// Self-complement witness for GP*(p^exp, 2d).
    Selfcomp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        two_d: u64,
    },
    /// Naive subfield-style construction and its clique test.
    Naive {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        exp: u32,
        #[arg(long)]
        two_d: u64,
        #[arg(long, value_delimiter = ',')]
        index_set: Vec<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let opts = CommonOpts {
        size_cap: cli.common.size_cap,
        threads: cli.common.threads,
        deadline_s: cli.common.deadline_s,
        cache_dir: cli.common.cache_dir.clone(),
        induced_bound: cli.common.induced_bound,
        reduction_target: cli.common.reduction_target,
    };
    let report = match &cli.command {
        Command::Clique {
            p,
            exp,
            two_d,
            index_set,
            seed,
        } => {
            let seed = match seed {
                SeedArg::Pair => SeedKind::Pair,
                SeedArg::Subfield => SeedKind::Subfield,
                SeedArg::Auto => SeedKind::Auto,
            };
            cli::cmd_clique(*p, *exp, *two_d, index_set, seed, &opts)
        }
        Command::Gauss { p, exp, two_d } => cli::cmd_gauss(*p, *exp, *two_d, &opts),
        Command::Periods { p, exp, two_d } => cli::cmd_periods(*p, *exp, *two_d, &opts),
        Command::Table1 { tier } => cli::cmd_table1(*tier, &opts),
        Command::CountIndexSets { p } => cli::cmd_count_index_sets(*p, &opts),
        Command::VerifyConjectures { p } => cli::cmd_verify_conjectures(*p, &opts),
        Command::Selfcomp { p, exp, two_d } => cli::cmd_selfcomp(*p, *exp, *two_d, &opts),
        Command::Naive {
            p,
            exp,
            two_d,
            index_set,
        } => cli::cmd_naive(*p, *exp, *two_d, index_set, &opts),
    };
    emit(&report, &cli.common);
    std::process::exit(report.exit_code());
}

fn emit(report: &Report, common: &CommonArgs) {
    use std::io::Write;
    let body = match common.format {
        Format::Json => report.to_json_string(),
        Format::Csv => report.to_csv_string(),
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("failed to write report to {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => {
            // Tolerate a closed pipe (e.g. piping into `head`).
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{body}");
        }
    }
}

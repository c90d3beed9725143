mod commands;
mod input;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use input::InputError;
use report::Report;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;
use wfr_core::trees::Variant;
use wfr_core::SearchBudget;

#[global_allocator]
static ALLOC: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser, Debug)]
#[command(name = "wfr", version, about = "Amalgamation and Ramsey checks for monoids, orders and trees")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Largest object size quantified over by bounded searches.
    #[arg(long, global = true, env = "WFR_BUDGET_SIZE")]
    pub budget_size: Option<usize>,
    /// Largest number of candidate objects tried by bounded searches.
    #[arg(long, global = true, env = "WFR_BUDGET_CANDIDATES")]
    pub budget_candidates: Option<usize>,
    /// Number of colors for Ramsey searches.
    #[arg(long, global = true, default_value_t = 2)]
    pub colors: usize,
    /// Tree category.
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Tc)]
    pub variant: VariantArg,
    /// Seed for random suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the full JSON report.
    #[arg(long, global = true, conflicts_with = "trace")]
    pub json: bool,
    /// Print a readable summary followed by the construction steps.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Add wall-clock time to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Opts {
    pub fn budget(&self) -> Result<SearchBudget, InputError> {
        let d = SearchBudget::default();
        let b = SearchBudget {
            max_size: self.budget_size.unwrap_or(d.max_size),
            max_candidates: self.budget_candidates.unwrap_or(d.max_candidates),
            ..d
        };
        b.validate().map_err(InputError::new)?;
        Ok(b)
    }

    pub fn variant(&self) -> Variant {
        match self.variant {
            VariantArg::Tw => Variant::Tw,
            VariantArg::Tc => Variant::Tc,
            VariantArg::Ta => Variant::Ta,
            VariantArg::Leveless => Variant::Leveless,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Tw,
    Tc,
    Ta,
    Leveless,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendArg {
    /// Finite linear orders.
    Lo,
    /// Almost linear orders.
    Alo,
    /// Trees over `--m` in the category chosen by `--variant`.
    Tree,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Finite and word monoids.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Almost linear orders and ternary structures.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Lexicographically ordered trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Ramsey witnesses for orders.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Strong subtree colorings of full trees.
    #[command(subcommand)]
    Milliken(MillikenCmd),
    /// Finite prefixes of weak Fraisse sequences.
    #[command(subcommand)]
    Fraisse(FraisseCmd),
}

#[derive(Subcommand, Debug)]
pub enum MonoidCmd {
    /// Ramsey property, left zeros and per-element verdicts of one monoid.
    Check {
        /// JSON file, or `-` for stdin.
        input: String,
    },
    /// Compare the Ramsey property with left zeros over many monoids.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Extra random monoids of order 4.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrderCmd {
    /// Pass an order or a ternary structure through both functors.
    Roundtrip { input: String },
    /// Factor an arrow and decide its amalgamability.
    Classify { input: String },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Amalgamate `{"f1": arrow, "f2": arrow}` over their common source.
    Amalgamate { input: String },
    /// Split an extension into non-terminal and terminal parts.
    Decompose { input: String },
    /// List the embeddings `{"dom": tree, "cod": tree}`.
    Embeddings { input: String },
    /// Make a leveless extension level preserving by padding.
    Dominate { input: String },
    /// The tree of sequences below `y` with values below `s`.
    Buildv {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        y: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RamseyCmd {
    /// Least `v` such that every coloring of the copies of `a` in `v` has a
    /// monochromatic copy of `b`.
    Search {
        #[arg(long, value_enum, default_value_t = BackendArg::Lo)]
        backend: BackendArg,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Recheck a report written by `ramsey search --json`.
    Verify { input: String },
}

#[derive(Subcommand, Debug)]
pub enum MillikenCmd {
    /// Least height `n` forcing a monochromatic height-`b` strong subtree.
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 200_000_000)]
        max_nodes: u64,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CategoryArgs {
    #[arg(long, value_enum, default_value_t = BackendArg::Lo)]
    pub backend: BackendArg,
    /// Allowed splitting degrees for the tree backend.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub m: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum FraisseCmd {
    /// Build a prefix and record what was checked about it.
    Build {
        #[command(flatten)]
        cat: CategoryArgs,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        w0_bound: usize,
        #[arg(long, default_value_t = 1)]
        headroom: usize,
    },
    /// Recheck cofinality and absorption for a prefix written by `build`.
    Verify {
        input: String,
        #[arg(long, default_value_t = 3)]
        w0_bound: usize,
        #[arg(long, default_value_t = 1)]
        headroom: usize,
    },
    /// Alternate between two prefixes of the same category.
    Zigzag {
        u: String,
        v: String,
        #[arg(long, default_value_t = 2)]
        steps: usize,
    },
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut r) => {
            r.command = args[1..].to_vec();
            if cli.opts.timing {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = if cli.opts.json {
                serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"
            } else {
                r.human(cli.opts.trace)
            };
            // a closed pipe downstream is not our error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(r.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(3)
        }
    }
}

pub type Run = Result<Report, InputError>;

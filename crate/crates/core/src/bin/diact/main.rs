use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "diact", version, about = "Direct, indirect and transfer requirements of input-output systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a system and report x, A, L and the subthroughflow matrix.
    Derive {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit requirements or transactions matrices.
    Requirements(RequirementsArgs),
    /// Distribute a segment of final demand or gross output.
    Impact(ImpactArgs),
    /// List or check the bundled fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Check L against its truncated power series.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exactly one of `--transactions`, `--coefficients`, `--use`/`--make` or
/// `--fixture`.
#[derive(Args, Clone)]
struct InputArgs {
    /// Transactions matrix Z (CSV); needs --final-demand.
    #[arg(long, value_name = "CSV", group = "source")]
    transactions: Option<PathBuf>,
    /// Technical coefficients A (CSV). Without --final-demand, f = 1.
    #[arg(long, value_name = "CSV", group = "source")]
    coefficients: Option<PathBuf>,
    /// Use table U, commodity by industry (CSV); needs --make and --final-demand.
    #[arg(long = "use", value_name = "CSV", group = "source", requires = "make")]
    use_table: Option<PathBuf>,
    /// Make table V, industry by commodity (CSV).
    #[arg(long = "make", value_name = "CSV", requires = "use_table")]
    make: Option<PathBuf>,
    /// Bundled fixture by name (see `fixtures list`).
    #[arg(long, value_name = "NAME", group = "source")]
    fixture: Option<String>,
    /// Final demand by sector (one-column CSV).
    #[arg(long, value_name = "CSV")]
    final_demand: Option<PathBuf>,
    /// Accept negative final-demand entries.
    #[arg(long)]
    allow_negative_demand: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Direct,
    Indirect,
    Transfer,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Simple,
    Composite,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SegmentFrameArg {
    Simple,
    Composite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LegacyArg {
    E1,
    E2,
    E3,
    E4,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixArg {
    Requirements,
    Transactions,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImpactKindArg {
    Direct,
    Indirect,
    Transfer,
    Cumulative,
}

#[derive(Args)]
struct RequirementsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    kind: KindArg,
    #[arg(long, value_enum, default_value_t = FrameArg::All)]
    frame: FrameArg,
    /// Emit a classical indirect-effects matrix instead.
    #[arg(long, value_enum, conflicts_with_all = ["kind", "frame", "matrix"])]
    legacy: Option<LegacyArg>,
    #[arg(long, value_enum, default_value_t = MatrixArg::Requirements)]
    matrix: MatrixArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file for a single CSV matrix or the JSON report.
    #[arg(long, conflicts_with = "out_dir")]
    out: Option<PathBuf>,
    /// Directory for one CSV per matrix plus manifest.json.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// SVG heatmap path; with several matrices, one file per matrix is
    /// written next to it with a `-<kind>-<frame>` suffix.
    #[arg(long, value_name = "SVG")]
    heatmap: Option<PathBuf>,
}

#[derive(Args)]
struct ImpactArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Δf (simple frame) or Δx (composite frame), one-column CSV.
    #[arg(long, value_name = "CSV")]
    segment: PathBuf,
    #[arg(long, value_enum)]
    frame: SegmentFrameArg,
    #[arg(long, value_enum)]
    kind: ImpactKindArg,
    /// Accept negative segment entries.
    #[arg(long)]
    allow_negative: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FixturesAction {
    List,
    Run {
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("diact: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

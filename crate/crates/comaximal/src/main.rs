use clap::{Parser, Subcommand, ValueEnum};
use comaximal::cli::{
    self, cmd_analyze, cmd_distance, cmd_export, cmd_robustness, cmd_sweep, cmd_verify,
    AnalyzeOutcome, CliError,
};
use comaximal::report::{self, ExportFormat, ExportLevel};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "comaximal",
    about = "Invariants of the comaximal-graph core of Z_n for squarefree n, with oracle verification"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quotient,
    Explicit,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form report: layers, sizes, degrees, connectivity, metrics.
    Analyze {
        n: u64,
        /// Emit the report as JSON instead of an aligned table.
        #[arg(long)]
        json: bool,
    },
    /// Check every closed form against the brute-force graph oracles.
    Verify {
        n: u64,
        /// Override the graph/flow caps.
        #[arg(long)]
        cap: Option<u64>,
        /// Also run seeded deletion-robustness trials.
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// CSV table over every squarefree composite modulus up to --max.
    Sweep {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Write the quotient or explicit graph as DOT, CSV, or JSON.
    Export {
        n: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = LevelArg::Quotient)]
        level: LevelArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Distance between two residues: formula case plus BFS confirmation.
    Distance {
        n: u64,
        x: u64,
        y: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Seeded random deletion trials plus the exact-cut control, as CSV.
    Robustness {
        n: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Analyze { n, json } => match cmd_analyze(n)? {
            AnalyzeOutcome::EmptyGraph { n } => {
                println!("n = {n} is prime: G2 is empty, kappa = 0");
                Ok(ExitCode::SUCCESS)
            }
            AnalyzeOutcome::Report(r) => {
                if json {
                    print!("{}", r.to_json());
                } else {
                    print!("{}", r.render_text());
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Verify {
            n,
            cap,
            deep,
            trials,
            seed,
        } => {
            let report = cmd_verify(n, cli::resolve_caps(cap), deep, trials, seed)?;
            print!("{}", report.render_text());
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep { max, cap } => {
            let rows = cmd_sweep(max, cli::resolve_caps(cap));
            print!("{}", report::sweep_csv(&rows));
            Ok(if rows.iter().all(|r| r.matched) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Export {
            n,
            format,
            level,
            output,
            cap,
        } => {
            let format = match format {
                FormatArg::Dot => ExportFormat::Dot,
                FormatArg::Csv => ExportFormat::Csv,
                FormatArg::Json => ExportFormat::Json,
            };
            let level = match level {
                LevelArg::Quotient => ExportLevel::Quotient,
                LevelArg::Explicit => ExportLevel::Explicit,
            };
            let rendered = cmd_export(n, format, level, cli::resolve_caps(cap))?;
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::File::create(&path)
                        .and_then(|mut f| f.write_all(rendered.as_bytes()))
                    {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return Ok(ExitCode::from(2));
                    }
                }
                None => print!("{rendered}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Distance { n, x, y, cap } => {
            let d = cmd_distance(n, x, y, cli::resolve_caps(cap))?;
            print!("{}", d.render_text());
            Ok(match d.matched {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Robustness {
            n,
            trials,
            seed,
            cap,
        } => {
            let results = cmd_robustness(n, trials, seed, cli::resolve_caps(cap))?;
            eprintln!("# seed = {seed}");
            print!("{}", report::robustness_csv(&results));
            Ok(ExitCode::SUCCESS)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kplab_core::det::Engine;
use kplab_core::harness::{self, exit, BenchFamily, OutputFormat, Render, SweepOptions};
use kplab_core::symcheck::{prove_recurrence_seeded, ProofMode, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "kplab", version, about = "Exact verification and proof harness for a binomial determinant family")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: OutputFormat,
    /// Worker threads for sweeps (1 = serial).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Leave wall-clock fields out of the output.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the main identity det = special_rhs(n) for 0 <= n <= n-max.
    VerifyMain {
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        n_max: i64,
    },
    /// Check the two-parameter identity on the validated domain.
    VerifyRabbit {
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        n_max: i64,
        /// Also evaluate both sides at points outside the validated domain.
        #[arg(long)]
        probe_outside: bool,
    },
    /// Check the condensation recurrence numerically for both sides.
    VerifyRecurrence {
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        n_max: i64,
    },
    /// Run the factorial-product rewrite prover.
    Prove {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Numeric m for fixed-m mode.
        #[arg(long, required_if_eq("mode", "fixed-m"))]
        m: Option<i64>,
        /// Seed for the random spot checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Time determinant engines with exact bit-growth statistics.
    Bench {
        /// Comma-separated matrix orders.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8", value_parser = clap::value_parser!(u64).range(1..))]
        orders: Vec<u64>,
        /// Comma-separated engines.
        #[arg(long, value_delimiter = ',', default_value = "condense,bareiss,cofactor", value_parser = parse_engine)]
        engines: Vec<Engine>,
        #[arg(long, default_value = "kp", value_parser = parse_family)]
        family: BenchFamily,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute the exact determinant of a matrix file.
    Det {
        /// Plain-text (rows of integers or p/q) or JSON matrix file.
        input: PathBuf,
        #[arg(long, default_value = "condense", value_parser = parse_engine)]
        engine: Engine,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Base,
    FixedM,
    GenericM,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<BenchFamily, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli);
    ExitCode::from(code as u8)
}

fn run(cli: Cli) -> i32 {
    let Common { format, jobs, no_timing } = cli.common;
    let timing = !no_timing;
    let options = SweepOptions { jobs: jobs as usize, probe_outside: false };
    match cli.command {
        Command::VerifyMain { n_max } => emit(&harness::verify_main(n_max, options), format, timing),
        Command::VerifyRabbit { n_max, probe_outside } => {
            emit(&harness::verify_rabbit(n_max, SweepOptions { probe_outside, ..options }), format, timing)
        }
        Command::VerifyRecurrence { n_max } => emit(&harness::verify_recurrence(n_max, options), format, timing),
        Command::Prove { mode, m, seed } => {
            let mode = match mode {
                ModeArg::Base => ProofMode::Base,
                ModeArg::FixedM => ProofMode::FixedM(m.expect("required by clap")),
                ModeArg::GenericM => ProofMode::GenericM,
            };
            let result = match mode {
                ProofMode::Base => harness::prove(mode),
                _ => prove_recurrence_seeded(mode, seed),
            };
            match result {
                Ok(report) => {
                    print!("{}", report.render(format, timing));
                    harness::proof_exit_code(&report)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit::USAGE
                }
            }
        }
        Command::Bench { orders, engines, family, seed } => {
            let orders: Vec<usize> = orders.into_iter().map(|o| o as usize).collect();
            let report = harness::bench(&orders, &engines, family, seed);
            print!("{}", report.render(format, timing));
            if report.engines_agree() {
                exit::OK
            } else {
                exit::VIOLATION
            }
        }
        Command::Det { input, engine } => {
            let text = match std::fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", input.display());
                    return exit::USAGE;
                }
            };
            match harness::det_text(&text, engine) {
                Ok(result) => {
                    print!("{}", result.render(format, timing));
                    exit::OK
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", input.display());
                    exit::USAGE
                }
            }
        }
    }
}

fn emit(report: &harness::SweepReport, format: OutputFormat, timing: bool) -> i32 {
    print!("{}", report.render(format, timing));
    report.exit_code()
}

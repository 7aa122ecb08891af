//! `fsig`: exact F-signatures, free ranks and Hilbert–Kunz checks for
//! normal affine semigroup rings.

mod commands;
mod document;
mod report;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fsig_core::exact::Integer;

use commands::{AqRequest, CliError, Family, Options, Outcome};

#[derive(Parser)]
#[command(name = "fsig", version, about = "Exact F-signature of normal affine semigroup rings")]
struct Cli {
    /// Emit a JSON document instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Add decimal approximations next to exact rationals.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Gate {
    /// Box bound for the normality check (default: largest generator entry).
    #[arg(long, value_name = "B", value_parser = parse_integer)]
    normal_bound: Option<Integer>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the F-signature.
    Signature {
        file: PathBuf,
        #[command(flatten)]
        gate: Gate,
    },
    /// Show the lattice basis, facet functionals and the full embedding.
    Facets { file: PathBuf },
    /// Tabulate the free ranks a_q.
    Aq {
        file: PathBuf,
        /// Tabulate q = 1..=Q.
        #[arg(long, value_name = "Q", conflicts_with = "q", required_unless_present = "q")]
        q_max: Option<u64>,
        /// Comma-separated list of q values.
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        q: Vec<u64>,
        /// Cross-check each count by closure enumeration.
        #[arg(long)]
        brute_force: bool,
        /// Point cap for --brute-force.
        #[arg(long, value_name = "N", default_value_t = fsig_core::frobenius::DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        #[command(flatten)]
        gate: Gate,
    },
    /// Hilbert–Kunz colengths and the colength-difference identity.
    Hk {
        file: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        gate: Gate,
    },
    /// Build a Segre product or Veronese subring.
    Family {
        #[command(subcommand)]
        kind: FamilyCommand,
    },
    /// Search a box for witnesses of non-normality.
    CheckNormal {
        file: PathBuf,
        #[arg(long, value_name = "B", value_parser = parse_integer)]
        bound: Integer,
    },
    /// Run the built-in example corpus.
    Selftest,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Segre product of K[x_1..x_R] and K[y_1..y_S].
    Segre {
        r: usize,
        s: usize,
        /// Write the presentation as an input document.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Degree-N Veronese subring of K[x_1..x_D].
    Veronese {
        d: usize,
        n: usize,
        /// Write the presentation as an input document.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
}

fn parse_integer(s: &str) -> Result<Integer, String> {
    s.parse().map_err(|_| format!("`{s}` is not an integer"))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let opts = |gate: Gate| Options { approx: cli.approx, normal_bound: gate.normal_bound };
    match cli.command {
        Command::Signature { file, gate } => commands::signature(&file, &opts(gate)),
        Command::Facets { file } => commands::facets(&file),
        Command::Aq { file, q_max, q, brute_force, cap, gate } => {
            let qs = match q_max {
                Some(m) => (1..=m).collect(),
                None => q,
            };
            let req = AqRequest { qs, brute_force_cap: brute_force.then_some(cap) };
            commands::aq(&file, &req, &opts(gate))
        }
        Command::Hk { file, q, t, gate } => commands::hk(&file, q, t, &opts(gate)),
        Command::Family { kind } => {
            let o = opts(Gate { normal_bound: None });
            match kind {
                FamilyCommand::Segre { r, s, emit } => commands::family(&Family::Segre { r, s }, emit.as_deref(), &o),
                FamilyCommand::Veronese { d, n, emit } => {
                    commands::family(&Family::Veronese { d, n }, emit.as_deref(), &o)
                }
            }
        }
        Command::CheckNormal { file, bound } => commands::check_normal_cmd(&file, &bound),
        Command::Selftest => {
            let (report, all) = selftest::run();
            Ok(Outcome { report, status: if all { 0 } else { 1 } })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            let text = if json { outcome.report.to_json() } else { outcome.report.to_text() };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torifan::io::{read_divisor_coeffs, read_fan};
use torifan::report::{self, CheckFlags, Report};
use torifan::{Error, Result};

#[derive(Parser)]
#[command(name = "torifan", version, about = "Exact positivity checks on smooth complete toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce a worked example.
    Example {
        #[command(subcommand)]
        which: Example,
        #[arg(long, global = true)]
        pretty: bool,
    },
    /// Check a fan and divisor read from JSON files.
    Check(CheckArgs),
    /// Randomized cross-validation on the built-in catalog.
    Selftest {
        #[arg(long, env = "TORIFAN_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Subcommand)]
enum Example {
    /// Blown-up threefold over the Hirzebruch surface F3.
    Sato,
    /// Blow-up of a section of P(O + O(1)^(r+1)) over P^s.
    Bundle {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Picard-lattice ledger of the double cover of the blown-up quadric.
    DoubleCover,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    fan: PathBuf,
    #[arg(long)]
    divisor: PathBuf,
    #[arg(long)]
    cartier: bool,
    #[arg(long)]
    bpf: bool,
    #[arg(long)]
    nef: bool,
    #[arg(long)]
    ample: bool,
    #[arg(long)]
    kappa: bool,
    #[arg(long)]
    points: bool,
    #[arg(long)]
    pretty: bool,
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    match cli.command {
        Command::Example { which, pretty } => {
            let rep = match which {
                Example::Sato => report::cmd_example_sato(),
                Example::Bundle { r, s } => report::cmd_example_bundle(r, s)?,
                Example::DoubleCover => report::cmd_example_double_cover(),
            };
            Ok((rep, pretty))
        }
        Command::Check(a) => {
            let fan = read_fan(&a.fan)?;
            let coeffs = read_divisor_coeffs(&a.divisor)?;
            let flags = CheckFlags {
                cartier: a.cartier,
                bpf: a.bpf,
                nef: a.nef,
                ample: a.ample,
                kappa: a.kappa,
                points: a.points,
            };
            Ok((report::cmd_check(&fan, coeffs, flags)?, a.pretty))
        }
        Command::Selftest { seed, pretty } => Ok((report::cmd_selftest(seed)?, pretty)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((rep, pretty)) => {
            if pretty {
                print!("{}", rep.to_table());
            } else {
                println!("{}", rep.to_json());
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e @ (Error::Parse(_) | Error::Usage(_) | Error::InvalidFan(_) | Error::DimensionMismatch { .. })) => {
            eprintln!("torifan: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("torifan: {e}");
            ExitCode::from(1)
        }
    }
}

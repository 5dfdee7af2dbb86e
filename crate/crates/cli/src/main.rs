//! Verification driver: runs the checks and emits `braidcover/1` JSON
//! reports.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 for
//! invalid arguments or environment problems.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "braidcover",
    version,
    about = "Verification sweeps for braid twists on cyclic branched covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify braid relators, twist nontriviality, and equivariance on one cover
    Relations {
        /// Number of branch points (n >= 2)
        #[arg(long)]
        n: usize,
        /// Number of sheets (d >= 1; relator checks are skipped for d = 1)
        #[arg(long)]
        d: usize,
        /// Largest power checked for nontriviality
        #[arg(long, default_value_t = 12)]
        max_power: usize,
    },
    /// Check that cubed twists violate the braid relation (n = 3)
    Cube {
        /// Number of sheets (d >= 1)
        #[arg(long)]
        d: usize,
    },
    /// Build the covering ribbon graph and compare faces with Riemann-Hurwitz
    Ribbon {
        /// Number of branch points (n >= 2)
        #[arg(long)]
        n: usize,
        /// Number of sheets (d >= 2)
        #[arg(long)]
        d: usize,
        /// Include the face cycles in the report
        #[arg(long)]
        emit_faces: bool,
    },
    /// Evaluate the closed-form genus bookkeeping
    Invariants(InvariantsArgs),
    /// Check the framed little 2-disks operad axioms on random elements
    Operad {
        /// Number of random samples
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify simple twists on the polygon model of S_{h,b}
    Polygon {
        /// Genus (h >= 0)
        #[arg(long)]
        h: usize,
        /// Boundary components (b >= 1; (h,b) = (0,1) is degenerate)
        #[arg(long)]
        b: usize,
    },
    /// Run every verification family over a parameter grid
    Sweep {
        /// Largest branch point count
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Largest sheet count
        #[arg(long, default_value_t = 6)]
        d_max: usize,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true)))]
struct InvariantsArgs {
    /// Number of sheets (d >= 2)
    #[arg(long)]
    d: u64,
    /// Configuration weight: n = d*m branch points
    #[arg(long, group = "mode")]
    m: Option<u64>,
    /// Branch point count
    #[arg(long, group = "mode")]
    n: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match run(cli.command) {
        Ok(pair) => pair,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_json();
    let status = if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    if let Some(path) = out {
        if let Err(err) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    } else {
        use std::io::Write;
        let mut stdout = std::io::stdout().lock();
        if let Err(err) = writeln!(stdout, "{text}") {
            // a closed pipe is not a verification failure
            if err.kind() != std::io::ErrorKind::BrokenPipe {
                eprintln!("error: cannot write report: {err}");
                return ExitCode::from(2);
            }
        }
    }
    status
}

fn run(command: Command) -> anyhow::Result<(braidcover::VerificationReport, Option<PathBuf>)> {
    match command {
        Command::Relations { n, d, max_power } => Ok((commands::relations(n, d, max_power)?, None)),
        Command::Cube { d } => Ok((braidcover::covering::verify_cube_failure(d)?, None)),
        Command::Ribbon { n, d, emit_faces } => Ok((commands::ribbon(n, d, emit_faces)?, None)),
        Command::Invariants(args) => Ok((commands::invariants(args.d, args.m, args.n)?, None)),
        Command::Operad { samples, seed } => Ok((commands::operad(samples, seed)?, None)),
        Command::Polygon { h, b } => Ok((commands::polygon(h, b)?, None)),
        Command::Sweep { n_max, d_max, out } => Ok((commands::sweep(n_max, d_max)?, out)),
    }
}

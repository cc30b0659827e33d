use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use troplink::cli::{self, LinkMethod, LinkOptions, VerificationReport};

/// Exact homology checks for links of tropical fans.
#[derive(Parser)]
#[command(name = "troplink", version)]
struct Args {
    /// Print the canonical JSON report.
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Print the Markdown summary (default).
    #[arg(long, global = true)]
    md: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Link of the origin of a fan.
    Link {
        fan: PathBuf,
        /// Run the geometric validation as well.
        #[arg(long)]
        geometric: bool,
        /// auto, order or cellular.
        #[arg(long, default_value = "auto")]
        method: LinkMethod,
    },
    /// Bergman link of a matroid against its Möbius number.
    Bergman { matroid: PathBuf },
    /// Link of the space of trees on n leaves.
    Trees { n: usize },
    /// Link of the codimension-c skeleton of a complete fan.
    Skeleton {
        fan: PathBuf,
        #[arg(long)]
        codim: usize,
    },
    /// Link of a tropical hypersurface.
    Hypersurface { poly: String },
    /// Initial form of a polynomial at a weight.
    Initial {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Weight row of a boundary stratification against its dual complex.
    Weightrow { strata: PathBuf },
    /// Link with top cells duplicated, `--mult "cone:k,..."`.
    Hatlink {
        fan: PathBuf,
        #[arg(long, default_value = "")]
        mult: String,
    },
    /// Write the built-in inputs to a directory.
    Fixtures { outdir: PathBuf },
}

fn run(args: Args) -> anyhow::Result<Option<VerificationReport>> {
    let report = match args.command {
        Command::Link { fan, geometric, method } => cli::cmd_link_homology(&fan, LinkOptions { geometric, method })?,
        Command::Bergman { matroid } => cli::cmd_bergman(&matroid)?,
        Command::Trees { n } => cli::cmd_trees(n)?,
        Command::Skeleton { fan, codim } => cli::cmd_skeleton(&fan, codim)?,
        Command::Hypersurface { poly } => cli::cmd_hypersurface(&poly)?,
        Command::Initial { poly, w } => {
            emit(&format!("{}\n", cli::cmd_initial(&poly, &w)?));
            return Ok(None);
        }
        Command::Weightrow { strata } => cli::cmd_weightrow(&strata)?,
        Command::Hatlink { fan, mult } => cli::cmd_hatlink(&fan, &mult)?,
        Command::Fixtures { outdir } => {
            let written: Vec<String> = cli::fixtures(&outdir)?.iter().map(|p| format!("{}\n", p.display())).collect();
            emit(&written.concat());
            return Ok(None);
        }
    };
    if args.json {
        emit(&(report.to_json() + "\n"));
    } else {
        emit(&report.to_markdown());
    }
    Ok(Some(report))
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TROPLINK_LOG")).init();
    match run(Args::parse()) {
        Ok(Some(r)) if !r.passed() => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

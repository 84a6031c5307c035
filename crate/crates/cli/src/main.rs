mod commands;
mod manifest;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CheckRequest, CliError, KindArg, LiftRequest, Output};

#[derive(Parser)]
#[command(name = "extlift", version, about = "Exact lifts to higher-order extension spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// vertical
    V,
    /// complete
    C,
    /// complete-vertical of order (r, s)
    Cv,
    /// horizontal (needs a connection block)
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a named object from a manifest.
    Lift {
        manifest: String,
        name: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short, long)]
        k: Option<u32>,
        #[arg(short, long)]
        r: Option<u32>,
        #[arg(short, long)]
        s: Option<u32>,
        /// Use the printed closed forms instead of the defining equations.
        #[arg(long)]
        paper_literal: bool,
        /// Append the solver certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Run an identity suite on seeded random corpora.
    Check {
        /// functions, vectors, oneforms, tensors, structures, brackets, frames or all
        suite: String,
        #[arg(short, long, default_value_t = 1)]
        m: u32,
        #[arg(short, long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Draw t-dependent corpora.
        #[arg(long)]
        with_time: bool,
    },
    /// Compare a closed-form proposition with the solver.
    Compare {
        /// P321, P322, P323, P331, P332 or P333
        proposition: String,
        #[arg(short, long, default_value_t = 1)]
        m: u32,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Print the frame adapted to the manifest's connection.
    Frame {
        manifest: String,
        #[arg(short, long)]
        k: u32,
    },
    /// Print the lift tables of coordinate bases and cobases.
    Table {
        #[arg(short, long, default_value_t = 1)]
        m: u32,
        #[arg(short, long)]
        k: u32,
        /// Include t.
        #[arg(long)]
        product: bool,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Lift {
            manifest,
            name,
            kind,
            k,
            r,
            s,
            paper_literal,
            certificate,
        } => {
            let manifest = commands::load_manifest(&manifest)?;
            let kind = match kind {
                Kind::V => KindArg::V,
                Kind::C => KindArg::C,
                Kind::Cv => KindArg::Cv,
                Kind::H => KindArg::H,
            };
            commands::cmd_lift(
                &manifest,
                &LiftRequest {
                    name: &name,
                    kind,
                    k,
                    r,
                    s,
                    paper_literal,
                    certificate,
                },
            )
        }
        Command::Check {
            suite,
            m,
            k,
            seed,
            samples,
            with_time,
        } => commands::cmd_check(&CheckRequest {
            suite,
            m,
            k,
            seed,
            samples,
            with_time,
        }),
        Command::Compare {
            proposition,
            m,
            k,
            seed,
            samples,
        } => commands::cmd_compare(&proposition, m, k, seed, samples),
        Command::Frame { manifest, k } => commands::cmd_frame(&commands::load_manifest(&manifest)?, k),
        Command::Table { m, k, product } => commands::cmd_table(m, k, product),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(w) = out.warning {
                eprintln!("{w}");
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use sasaki_cli::{run, CliError, CohomologyMode, Command};

#[derive(Parser)]
#[command(name = "sasaki", about = "Exact checks on Sasakian nilmanifold models with flat coefficients")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check model axioms, bundle flatness and group presentations.
    Validate {
        model: Option<PathBuf>,
        #[arg(long = "bundle")]
        bundles: Vec<PathBuf>,
        #[arg(long = "group")]
        groups: Vec<PathBuf>,
    },
    #[command(group(ArgGroup::new("mode").args(["basic", "full"])))]
    Cohomology {
        model: PathBuf,
        #[arg(long)]
        basic: bool,
        #[arg(long)]
        full: bool,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    KahlerCheck {
        model: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    DdcCheck {
        model: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    FormalityCheck {
        model: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    /// Decide whether the Maurer–Cartan cone of End E is quadratic.
    Quadraticity {
        model: PathBuf,
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Rank of a trivial bundle, used when no bundle file is given.
        #[arg(long)]
        rank: Option<usize>,
    },
    CupVanishing {
        model: PathBuf,
        #[arg(long)]
        bundle1: Option<PathBuf>,
        #[arg(long)]
        bundle2: Option<PathBuf>,
        /// Two degrees, `s,t`.
        #[arg(long, value_parser = parse_degrees)]
        degrees: (usize, usize),
    },
    /// Tangent space and order-two relator expansion of a representation.
    Repvar {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        compare_model: Option<PathBuf>,
    },
    /// Write the bundled models, bundles and groups under a directory.
    EmitCorpus { dir: PathBuf },
}

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected s,t")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Validate { model, bundles, groups } => Command::Validate { model, bundles, groups },
            Sub::Cohomology { model, full, bundle, .. } => Command::Cohomology {
                model,
                mode: if full { CohomologyMode::Full } else { CohomologyMode::Basic },
                bundle,
            },
            Sub::KahlerCheck { model, bundle } => Command::KahlerCheck { model, bundle },
            Sub::DdcCheck { model, bundle } => Command::DdcCheck { model, bundle },
            Sub::FormalityCheck { model, bundle } => Command::FormalityCheck { model, bundle },
            Sub::Quadraticity { model, bundle, rank } => Command::Quadraticity { model, bundle, rank },
            Sub::CupVanishing { model, bundle1, bundle2, degrees } => {
                Command::CupVanishing { model, bundle1, bundle2, degrees }
            }
            Sub::Repvar { group, compare_model } => Command::Repvar { group, compare_model },
            Sub::EmitCorpus { dir } => Command::EmitCorpus { dir },
        }
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
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", CliError::Input(format!("--threads: {e}")));
            return ExitCode::from(2);
        }
    }
    match run(&cli.command.into()) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.to_json().as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isostrata_cli::{cap_from_env, commands, parse_session, CliError, Format, Report};

#[derive(Parser)]
#[command(name = "isostrata", version, about = "Exact isotropy strata, invariants and normal-form rationality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// Session file (JSON).
    #[arg(long)]
    session: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Molien dimensions, invariant bases and generators of the finite group.
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Isotropy classes, their poset and principal class.
    Strata {
        #[command(flatten)]
        common: Common,
        /// Also list equations of each closed stratum.
        #[arg(long)]
        equations: bool,
    },
    /// Fixed locus of a subgroup.
    FixedLocus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroup: String,
    },
    /// Monodromy group N(H)/H acting on the fixed locus.
    Monodromy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroup: String,
    },
    /// Express a target on the fixed locus through restricted invariants.
    Rationalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        target: String,
        /// Invariant list from the session (default: the only list, or computed generators).
        #[arg(long)]
        invariants: Option<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Orbit tangent space and orthogonal slice at a point.
    Slice {
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates, or a harmonic polynomial in x, y, z.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Check invariance of a polynomial, or of every supplied invariant.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Invariants { common, .. }
            | Command::Strata { common, .. }
            | Command::FixedLocus { common, .. }
            | Command::Monodromy { common, .. }
            | Command::Rationalize { common, .. }
            | Command::Slice { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let common = cli.command.common();
    let text = std::fs::read_to_string(&common.session)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", common.session.display())))?;
    let session = parse_session(&text, cap_from_env()?)?;
    match &cli.command {
        Command::Invariants { max_degree, .. } => commands::invariants(&session, *max_degree),
        Command::Strata { equations, .. } => commands::strata(&session, *equations),
        Command::FixedLocus { subgroup, .. } => commands::fixed_locus(&session, Some(subgroup)),
        Command::Monodromy { subgroup, .. } => commands::monodromy(&session, Some(subgroup)),
        Command::Rationalize {
            subgroup,
            target,
            invariants,
            max_degree,
            ..
        } => commands::rationalize(&session, Some(subgroup), Some(target), invariants.as_deref(), *max_degree),
        Command::Slice { point, .. } => commands::slice(&session, Some(point)),
        Command::Verify { target, .. } => commands::verify(&session, target.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.command.common().format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

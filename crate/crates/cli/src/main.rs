use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod config;
mod output;
mod run;
mod theory_file;

use config::{Algebra, Ambient, Command, Format, GroupFamily, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
    #[error(transparent)]
    Core(#[from] superchar::Error),
    /// The artifact was produced but some check failed.
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(superchar::Error::SizeCap { .. }) => 3,
            CliError::Core(superchar::Error::Invalid(_) | superchar::Error::Parse(_) | superchar::Error::NotPrime(_)) => 2,
            _ => 1,
        }
    }
}

/// Exact supercharacter tables and checks for unitriangular and triangular
/// groups over prime fields.
#[derive(Debug, Parser)]
#[command(name = "superchar", version)]
struct Cli {
    /// JSON run configuration; flags override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// worker threads for independent checks
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// refuse groups with more elements than this
    #[arg(long, global = true)]
    max_order: Option<u64>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Supercharacter table of UT_n(F_p) from the closed formula
    UtTable(TableArgs),
    /// Supercharacter table of T_n(F_p) from the closed formula
    TTable(TableArgs),
    /// Check the theory axioms and the Schur-ring conditions
    VerifyTheory(VerifyArgs),
    /// Orbit decompositions of a group, its algebra or the dual
    Orbits(OrbitArgs),
    /// Products and coproducts in NS and NPS
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Run the acceptance suite
    Acceptance,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    /// compare every cell with the induced character
    #[arg(long)]
    verify_oracle: bool,
    /// compare both Kirillov sums with the table at class representatives
    #[arg(long)]
    verify_kirillov: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// c4, s3 or c4-classical
    #[arg(long)]
    builtin: Option<String>,
    /// a theory file (see the README for the format)
    #[arg(long)]
    theory: Option<PathBuf>,
    #[arg(long, value_enum)]
    group: Option<GroupFamily>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Debug, Args)]
struct OrbitArgs {
    #[arg(long, value_enum)]
    group: Option<GroupFamily>,
    #[arg(long, value_enum)]
    ambient: Option<Ambient>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[arg(long, value_enum)]
    algebra: Option<Algebra>,
    /// number of rigging labels for NPS
    #[arg(long)]
    y: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum HopfCmd {
    /// Product of the basis elements, left to right
    Mult {
        #[arg(long, required = true)]
        basis: Vec<String>,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Coproduct of one basis element
    Coprod {
        #[arg(long, required = true)]
        basis: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Hopf axioms and the polynomial model up to a grade
    Verify {
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Superclass functions on UT_n(F_2) or T_n(F_p) against NS or NPS
    Tower {
        #[arg(long, value_enum)]
        group: Option<GroupFamily>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        nmax: Option<usize>,
    },
}

impl Cli {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let mut flags = RunConfig {
            out: self.out,
            format: self.format,
            jobs: self.jobs,
            max_order: self.max_order,
            ..RunConfig::default()
        };
        match self.command {
            None => {}
            Some(Cmd::UtTable(a)) => table_flags(&mut flags, Command::UtTable, a),
            Some(Cmd::TTable(a)) => table_flags(&mut flags, Command::TTable, a),
            Some(Cmd::VerifyTheory(a)) => {
                flags.command = Some(Command::VerifyTheory);
                flags.builtin = a.builtin;
                flags.theory = a.theory;
                flags.group = a.group;
                flags.n = a.n;
                flags.p = a.p;
            }
            Some(Cmd::Orbits(a)) => {
                flags.command = Some(Command::Orbits);
                flags.group = a.group;
                flags.ambient = a.ambient;
                flags.n = a.n;
                flags.p = a.p;
            }
            Some(Cmd::Hopf(h)) => match h {
                HopfCmd::Mult { basis, algebra } => {
                    flags.command = Some(Command::HopfMult);
                    flags.basis = basis;
                    algebra_flags(&mut flags, algebra);
                }
                HopfCmd::Coprod { basis, algebra } => {
                    flags.command = Some(Command::HopfCoprod);
                    flags.basis = vec![basis];
                    algebra_flags(&mut flags, algebra);
                }
                HopfCmd::Verify { nmax, algebra } => {
                    flags.command = Some(Command::HopfVerify);
                    flags.nmax = nmax;
                    algebra_flags(&mut flags, algebra);
                }
                HopfCmd::Tower { group, p, nmax } => {
                    flags.command = Some(Command::HopfTower);
                    flags.group = group;
                    flags.p = p;
                    flags.nmax = nmax;
                }
            },
            Some(Cmd::Acceptance) => flags.command = Some(Command::Acceptance),
        }
        Ok(base.overridden_by(flags))
    }
}

fn table_flags(flags: &mut RunConfig, command: Command, a: TableArgs) {
    flags.command = Some(command);
    flags.n = a.n;
    flags.p = a.p;
    flags.verify_oracle = a.verify_oracle;
    flags.verify_kirillov = a.verify_kirillov;
}

fn algebra_flags(flags: &mut RunConfig, a: AlgebraArgs) {
    flags.algebra = a.algebra;
    flags.y = a.y;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.into_config().and_then(|cfg| run::run(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("superchar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

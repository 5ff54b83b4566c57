mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fibrewise_core::eulerring::{euler_ring_report, DEFAULT_SEED};
use fibrewise_core::spaces::Space;
use fibrewise_core::verify::{is_known_group, run_suite, Fault, VerifyOptions};
use fibrewise_core::Error;

use config::Config;

#[derive(Parser, Debug)]
#[command(
    name = "fibrewise",
    version,
    about = "Rational models of universal fibrations and their κ-classes"
)]
struct Cli {
    /// TOML file with defaults for format, max-degree, max-index and seed.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the relative Sullivan model of the universal fibration.
    Model {
        #[command(flatten)]
        space: SpaceArgs,
        /// Degree bound for the cohomology table.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also print dimensions of the total-space cohomology.
        #[arg(long)]
        cohomology: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compute κ-classes, Cayley–Hamilton relations and an independence certificate.
    Kappa {
        #[command(flatten)]
        space: SpaceArgs,
        /// Largest κ index to print.
        #[arg(long)]
        max_index: Option<usize>,
        /// Seed for random Jacobian evaluation points.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the consistency suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Full)]
        suite: Suite,
        /// Run one group only, such as `cpn:3` or `odd-product:3,5`.
        #[arg(long)]
        only: Option<String>,
        /// Degree bound for chain-level checks.
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(value_enum)]
    family: Family,
    /// Parameter n for `even-sphere` (S^{2n}) and `cpn` (ℂPⁿ).
    #[arg(long)]
    n: Option<u32>,
    /// Sphere dimensions for `odd-product`, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    EvenSphere,
    Cpn,
    OddProduct,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    #[value(alias = "paper")]
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FaultArg {
    BarPiSign,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;

impl SpaceArgs {
    fn space(&self) -> Result<Space, Error> {
        let n = || {
            self.n
                .ok_or_else(|| Error::InvalidSpace("--n is required for this family".into()))
        };
        match self.family {
            Family::EvenSphere => Space::even_sphere(n()?),
            Family::Cpn => Space::projective(n()?),
            Family::OddProduct if self.dims.is_empty() => Err(Error::InvalidSpace(
                "--dims is required for odd-product".into(),
            )),
            Family::OddProduct => Space::odd_product(&self.dims),
        }
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::InvalidSpace(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match cli.command {
        Command::Model {
            space,
            max_degree,
            cohomology,
            format,
        } => {
            let space = match space.space() {
                Ok(s) => s,
                Err(e) => return fail(EXIT_INVALID, e),
            };
            let bound = max_degree
                .or(cfg.max_degree)
                .unwrap_or(4 * space.fibre_dimension());
            let format = format.or(cfg.format).unwrap_or(Format::Table);
            match render::model(&space, cohomology.then_some(bound), format) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(error_code(&e), e),
            }
        }
        Command::Kappa {
            space,
            max_index,
            seed,
            format,
        } => {
            let space = match space.space() {
                Ok(s) => s,
                Err(e) => return fail(EXIT_INVALID, e),
            };
            let max_index = max_index.or(cfg.max_index).unwrap_or(4);
            let seed = seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
            let format = format.or(cfg.format).unwrap_or(Format::Table);
            let report = match euler_ring_report(&space, max_index, seed) {
                Ok(r) => r,
                Err(e) => return fail(error_code(&e), e),
            };
            print!("{}", render::kappa(&report, seed, format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Command::Verify {
            suite: Suite::Full,
            only,
            max_degree,
            seed,
            format,
            inject_fault,
        } => {
            if let Some(g) = &only {
                let normalized = match g.parse::<Space>() {
                    Ok(s) => s.to_string(),
                    Err(e) => return fail(EXIT_INVALID, e),
                };
                if !is_known_group(&normalized) {
                    return fail(EXIT_INVALID, format!("`{g}` is not a group of the suite"));
                }
            }
            let opts = VerifyOptions {
                max_degree: max_degree.or(cfg.max_degree),
                seed: seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
                fault: match inject_fault {
                    Some(FaultArg::BarPiSign) => Fault::BarPiSign,
                    None => Fault::None,
                },
                only: only.map(|g| g.parse::<Space>().expect("validated above").to_string()),
            };
            let report = run_suite(&opts);
            let format = format.or(cfg.format).unwrap_or(Format::Table);
            print!("{}", render::suite(&report, format));
            match report.first_failure() {
                None => ExitCode::SUCCESS,
                Some(f) => {
                    eprintln!(
                        "verification failed: {}: {}",
                        f.id,
                        f.detail.as_deref().unwrap_or("")
                    );
                    ExitCode::from(EXIT_FAILURE)
                }
            }
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lerch_cli::commands::{self, RunConfig};
use lerch_cli::verify::{self, Suite, VerifyOptions};
use lerch_cli::{
    exit_code, resolve_digits, DEEP_DIGITS, EXIT_OK, EXIT_VERIFY, SCAN_DIGITS, TABLE_LAMBDAS,
};
use lerch_core::db::Format;
use lerch_core::symmetry::DeepSummary;
use lerch_core::{LerchParams, RationalParam, Result};

/// Lerch zeta-function evaluation, zero scans and symmetry statistics.
///
/// The default precision is 30 digits (60 for `deep`); LERCH_DIGITS overrides it.
#[derive(Parser)]
#[command(name = "lerch", version)]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    digits: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print L(λ, α, s) and an error bound.
    Eval {
        #[arg(long)]
        lambda: RationalParam,
        #[arg(long)]
        alpha: RationalParam,
        /// Complex point such as "0.5+9.69i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Find, classify and store every zero in (tmin, tmax].
    Zeros {
        #[arg(long)]
        lambda: RationalParam,
        /// Defaults to λ.
        #[arg(long)]
        alpha: Option<RationalParam>,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 0.0)]
        tmin: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or json; defaults to the extension of --out.
        #[arg(long)]
        format: Option<Format>,
    },
    /// Distribution table rows "λ, N₁, N₂, 100·N₂/N₁" for L(λ, λ, s).
    Table {
        /// Comma-separated b/d list; defaults to the 16 standard rows.
        #[arg(long)]
        lambdas: Option<String>,
        #[arg(long, default_value_t = 300.0)]
        tmax: f64,
    },
    /// Run one verification suite.
    Verify {
        /// funceq, conjugation, special-cases, stirling, counting or theorem1.
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        lambda: RationalParam,
        /// Defaults to λ.
        #[arg(long)]
        alpha: Option<RationalParam>,
        #[arg(long, default_value_t = 300.0)]
        tmax: f64,
    },
    /// β - 1/2 of one zero by Muller refinement and by contour integration.
    Deep {
        #[arg(long)]
        lambda: RationalParam,
        #[arg(long)]
        alpha: Option<RationalParam>,
        /// 1-based, by height.
        #[arg(long)]
        index: usize,
    },
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Eval { lambda, alpha, s } => {
            let digits = resolve_digits(cli.digits, SCAN_DIGITS)?;
            let out = commands::eval(&LerchParams::rational(lambda, alpha), &s, digits)?;
            println!("{}", out.value.to_string_digits(digits as usize));
            println!("error bound: {:e}", out.error_bound);
        }
        Command::Zeros {
            lambda,
            alpha,
            tmax,
            tmin,
            out,
            format,
        } => {
            let format = format
                .unwrap_or_else(|| out.as_deref().map(Format::for_path).unwrap_or(Format::Csv));
            let cfg = RunConfig {
                lambda,
                alpha: alpha.unwrap_or(lambda),
                digits: resolve_digits(cli.digits, SCAN_DIGITS)?,
                t_min: tmin,
                t_max: tmax,
                out,
                format,
            };
            let res = commands::zeros(&cfg)?;
            if cfg.out.is_none() {
                print!("{}", res.database.render(cfg.format)?);
            }
            println!("{}", res.report);
            if res.report.unmatched > 0 {
                eprintln!(
                    "warning: {} off-line zeros without a near-symmetric partner",
                    res.report.unmatched
                );
            }
        }
        Command::Table { lambdas, tmax } => {
            let digits = resolve_digits(cli.digits, SCAN_DIGITS)?;
            let list = match lambdas {
                Some(text) => commands::parse_lambdas(&text)?,
                None => TABLE_LAMBDAS
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()?,
            };
            println!("# lambda, N1, N2, 100*N2/N1");
            for lambda in list {
                println!("{}", commands::table_row(lambda, tmax, digits)?);
            }
        }
        Command::Verify {
            suite,
            samples,
            seed,
            lambda,
            alpha,
            tmax,
        } => {
            let opts = VerifyOptions {
                samples,
                seed,
                digits: resolve_digits(cli.digits, SCAN_DIGITS)?,
                lambda,
                alpha: alpha.unwrap_or(lambda),
                t_max: tmax,
            };
            let report = verify::run(suite, &opts)?;
            println!("{report}");
            if !report.passed {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Deep {
            lambda,
            alpha,
            index,
        } => {
            let digits = resolve_digits(cli.digits, DEEP_DIGITS)?;
            let out = commands::deep(
                &LerchParams::rational(lambda, alpha.unwrap_or(lambda)),
                index,
                digits,
            )?;
            let s = DeepSummary::from(&out.report);
            println!(
                "zero {} at gamma = {} ({} digits)",
                s.index, s.gamma, s.digits
            );
            println!("muller  beta - 1/2 = {}", s.muller_deviation);
            println!("contour beta - 1/2 = {}", s.contour_deviation);
            println!(
                "agreement {:e} (tolerance {:e})",
                s.agreement, out.tolerance
            );
            if !out.methods_agree() {
                eprintln!("error: the two methods disagree");
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

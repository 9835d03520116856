use std::path::{Path, PathBuf};

use lerch_core::db::{DbHeader, Format, ZeroDatabase};
use lerch_core::lerch::lerch;
use lerch_core::symmetry::{
    classify_zeros, counterpart_test, deep_deviation, ClassifyOptions, Counterpart, DeepReport,
    SymmetryReport,
};
use lerch_core::zeros::{scan_window, ScanConfig, ZeroRecord};
use lerch_core::{Error, HpComplex, LerchParams, PrecisionPolicy, RationalParam, Result};

pub struct EvalOutput {
    pub value: HpComplex,
    /// Absolute error bound of `value`.
    pub error_bound: f64,
}

pub fn eval(params: &LerchParams, s: &str, digits: u32) -> Result<EvalOutput> {
    let policy = PrecisionPolicy::digits(digits)?;
    let s = HpComplex::parse(s, digits)?;
    let value = lerch(params, &s, &policy)?;
    let error_bound = policy.target_error() * value.abs_f64().max(1.0);
    Ok(EvalOutput { value, error_bound })
}

/// Settings of a zero scan and where to store it.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub lambda: RationalParam,
    pub alpha: RationalParam,
    pub digits: u32,
    pub t_min: f64,
    pub t_max: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn params(&self) -> LerchParams {
        LerchParams::rational(self.lambda, self.alpha)
    }
}

pub struct ZerosOutput {
    pub zeros: Vec<ZeroRecord>,
    pub report: SymmetryReport,
    pub database: ZeroDatabase,
}

/// `<out>.partial`.
pub fn partial_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".partial");
    PathBuf::from(name)
}

/// Scans, classifies, runs the counterpart test when `λ = α`, and writes the
/// database if `out` is set. An incomplete scan writes what it found to
/// `<out>.partial` and fails with [`Error::Completeness`].
pub fn zeros(cfg: &RunConfig) -> Result<ZerosOutput> {
    let params = cfg.params();
    let policy = PrecisionPolicy::digits(cfg.digits)?;
    let scan = ScanConfig::new(cfg.t_min, cfg.t_max).with_policy(policy);
    let outcome = scan_window(&params, &scan)?;
    let opts = ClassifyOptions::default();
    let (classes, report) = classify_zeros(cfg.lambda, cfg.t_max, &outcome.zeros, opts);
    let counterparts: Vec<Counterpart> = if params.equal_params() {
        outcome
            .zeros
            .iter()
            .map(|z| counterpart_test(cfg.lambda, z, &policy))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let header = DbHeader {
        lambda: cfg.lambda,
        alpha: cfg.alpha,
        digits: cfg.digits,
        t_min: cfg.t_min,
        t_max: cfg.t_max,
        online_tol: opts.online_tol,
        pair_tol: opts.pair_tol,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let database = ZeroDatabase::from_zeros(header, &outcome.zeros, &classes, &counterparts)?;
    if let Some(out) = &cfg.out {
        if outcome.complete {
            database.write(out, cfg.format)?;
        } else {
            database.write(&partial_path(out), cfg.format)?;
        }
    }
    if !outcome.complete {
        return Err(Error::Completeness {
            found: outcome.zeros.len(),
            counted: outcome.window.count,
        });
    }
    Ok(ZerosOutput {
        zeros: outcome.zeros,
        report,
        database,
    })
}

/// One row of the distribution table for `L(λ, λ, s)` on `(0, t_max]`.
pub fn table_row(lambda: RationalParam, t_max: f64, digits: u32) -> Result<SymmetryReport> {
    let params = LerchParams::equal(lambda);
    let scan = ScanConfig::new(0.0, t_max).with_policy(PrecisionPolicy::digits(digits)?);
    let outcome = scan_window(&params, &scan)?;
    if !outcome.complete {
        return Err(Error::Completeness {
            found: outcome.zeros.len(),
            counted: outcome.window.count,
        });
    }
    Ok(classify_zeros(lambda, t_max, &outcome.zeros, ClassifyOptions::default()).1)
}

/// Comma-separated `b/d` list; the empty string is the empty list.
pub fn parse_lambdas(text: &str) -> Result<Vec<RationalParam>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

pub struct DeepOutput {
    pub report: DeepReport,
    /// Largest acceptable `|ρ_muller - ρ_contour|`, `10^(-digits/2)`.
    pub tolerance: f64,
}

impl DeepOutput {
    pub fn methods_agree(&self) -> bool {
        self.report.agreement <= self.tolerance
    }
}

pub fn deep(params: &LerchParams, index: usize, digits: u32) -> Result<DeepOutput> {
    let report = deep_deviation(params, index, digits)?;
    Ok(DeepOutput {
        report,
        tolerance: 10f64.powf(-f64::from(digits) / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_lists() {
        assert!(parse_lambdas("").unwrap().is_empty());
        let l = parse_lambdas("1/2, 4/5").unwrap();
        assert_eq!(l[1], RationalParam::new(4, 5).unwrap());
        assert!(parse_lambdas("1/2,0.3").is_err());
    }

    #[test]
    fn partial_suffix() {
        assert_eq!(
            partial_path(Path::new("out/z.csv")),
            PathBuf::from("out/z.csv.partial")
        );
    }

    #[test]
    fn eval_zeta_two() {
        let out = eval(&LerchParams::parse("1", "1").unwrap(), "2+0i", 30).unwrap();
        assert!(out.value.to_string_digits(12).starts_with("1.64493406685"));
        assert!(out.error_bound < 1e-24);
    }
}

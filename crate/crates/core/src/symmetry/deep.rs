use rug::Float;
use serde::{Deserialize, Serialize};

use super::near_trivial_line;
use crate::error::{Error, Result};
use crate::lerch::LerchParams;
use crate::precision::{HpComplex, PrecisionPolicy};
use crate::zeros::{
    locate_zero_contour, refine_zero_with, scan_zeros, Evaluator, ScanConfig, ZeroRecord,
    DEFAULT_MAX_ITER,
};

/// `β - 1/2` of one zero by Muller refinement and by contour integration.
#[derive(Clone, Debug)]
pub struct DeepReport {
    /// 1-based position among the nontrivial zeros ordered by `γ`.
    pub index: usize,
    pub digits: u32,
    pub muller: ZeroRecord,
    pub contour: ZeroRecord,
    /// `|ρ_muller - ρ_contour|`.
    pub agreement: f64,
}

impl DeepReport {
    pub fn muller_deviation(&self) -> Float {
        self.muller.deviation()
    }

    pub fn contour_deviation(&self) -> Float {
        self.contour.deviation()
    }
}

/// Printable form of a [`DeepReport`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeepSummary {
    pub index: usize,
    pub digits: u32,
    pub gamma: String,
    pub muller_deviation: String,
    pub contour_deviation: String,
    pub agreement: f64,
}

impl From<&DeepReport> for DeepSummary {
    fn from(r: &DeepReport) -> Self {
        let sci = |f: Float| f.to_string_radix(10, Some(6));
        Self {
            index: r.index,
            digits: r.digits,
            gamma: r.muller.gamma.to_string_radix(10, Some(20)),
            muller_deviation: sci(r.muller_deviation()),
            contour_deviation: sci(r.contour_deviation()),
            agreement: r.agreement,
        }
    }
}

/// Locates the `index`-th nontrivial zero (1-based, by height) with a
/// 30-digit scan, then recomputes it at `digits` by both methods.
pub fn deep_deviation(params: &LerchParams, index: usize, digits: u32) -> Result<DeepReport> {
    if index == 0 {
        return Err(Error::Domain("zero index is 1-based".into()));
    }
    let (lambda, _) = params
        .rationals()
        .ok_or_else(|| Error::Domain("rational parameters required".into()))?;
    let scan_policy = PrecisionPolicy::digits(30)?;
    let mut t_max = 4.0 * (index as f64 + 2.0);
    let zeros = loop {
        let cfg = ScanConfig::new(0.0, t_max).with_policy(scan_policy);
        let all = scan_zeros(params, &cfg)?;
        let nontrivial: Vec<ZeroRecord> = all
            .into_iter()
            .filter(|z| !near_trivial_line(lambda, z.beta_f64(), z.gamma_f64()))
            .collect();
        // one zero beyond the target gives its isolation gap
        if nontrivial.len() > index {
            break nontrivial;
        }
        t_max *= 2.0;
    };
    let target = zeros[index - 1].rho().to_c64();
    let gap = zeros
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index - 1)
        .map(|(_, z)| (z.rho().to_c64() - target).norm())
        .fold(f64::INFINITY, f64::min);

    let policy = PrecisionPolicy::digits(digits)?;
    let eval = Evaluator::new(params, policy)?;
    let muller = refine_zero_with(&eval, target, (0.3 * gap).min(0.05), DEFAULT_MAX_ITER)?;
    let radius = (0.4 * gap).min(0.25);
    let contour = locate_zero_contour(
        params,
        &HpComplex::from_c64(policy.bits(), target),
        radius,
        &policy,
    )?;
    let agreement = muller.rho().dist_f64(&contour.rho());
    Ok(DeepReport {
        index,
        digits,
        muller,
        contour,
        agreement,
    })
}

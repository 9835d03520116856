use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::count::count_zeros_disc;
use super::evaluator::Evaluator;
use super::ZeroRecord;
use crate::error::{Error, Result};

/// A ring `r_inner < |s - ρ| ≤ r_outer` free of zeros, with the zero counts
/// of the twin discs of radius `r_mid` around `ρ` and `1 - conj(ρ)`.
#[derive(Clone, Debug)]
pub struct AnnulusResult {
    pub center: ZeroRecord,
    pub ell: usize,
    pub r_inner: f64,
    pub r_outer: f64,
    pub r_mid: f64,
    pub count_right: i64,
    pub count_left: i64,
}

impl AnnulusResult {
    pub fn counts_equal(&self) -> bool {
        self.count_right == self.count_left
    }
}

/// Serializable summary of an [`AnnulusResult`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnnulusSummary {
    pub beta: f64,
    pub gamma: f64,
    pub ell: usize,
    pub r_mid: f64,
    pub count_right: i64,
    pub count_left: i64,
}

impl From<&AnnulusResult> for AnnulusSummary {
    fn from(a: &AnnulusResult) -> Self {
        Self {
            beta: a.center.beta_f64(),
            gamma: a.center.gamma_f64(),
            ell: a.ell,
            r_mid: a.r_mid,
            count_right: a.count_right,
            count_left: a.count_left,
        }
    }
}

/// Pigeonhole over rings of width `r0`: the smallest `1 ≤ ℓ ≤ k_max` with no
/// zero of `zeros` in `ℓ·r0 < |s - ρ| ≤ (ℓ+1)·r0`. The twin-disc counts are
/// computed by the argument principle, not read off the list.
pub fn find_zero_free_annulus(
    eval: &Evaluator,
    center: &ZeroRecord,
    r0: f64,
    k_max: usize,
    zeros: &[ZeroRecord],
) -> Result<AnnulusResult> {
    if !(r0 > 0.0) || k_max == 0 {
        return Err(Error::Domain(format!(
            "ring width {r0} and k_max {k_max} must be positive"
        )));
    }
    let rho = Complex64::new(center.beta_f64(), center.gamma_f64());
    let dists: Vec<f64> = zeros
        .iter()
        .map(|z| (Complex64::new(z.beta_f64(), z.gamma_f64()) - rho).norm())
        .collect();
    let ell = (1..=k_max)
        .find(|&l| {
            let (a, b) = (l as f64 * r0, (l + 1) as f64 * r0);
            !dists.iter().any(|&d| d > a && d <= b)
        })
        .ok_or(Error::NoAnnulusFound { k_max, r0 })?;
    let r_inner = ell as f64 * r0;
    let r_outer = r_inner + r0;
    let r_mid = 0.5 * (r_inner + r_outer);
    let mirror = Complex64::new(1.0 - rho.re, rho.im);
    let count_right = count_zeros_disc(eval, rho, r_mid)?;
    let count_left = if (mirror - rho).norm() < 1e-300 {
        count_right
    } else {
        count_zeros_disc(eval, mirror, r_mid)?
    };
    Ok(AnnulusResult {
        center: center.clone(),
        ell,
        r_inner,
        r_outer,
        r_mid,
        count_right,
        count_left,
    })
}

/// `⌈3 log γ⌉`, the default ring budget.
pub fn default_k_max(gamma: f64) -> usize {
    (3.0 * gamma.max(std::f64::consts::E).ln()).ceil() as usize
}

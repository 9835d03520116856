use super::{ZeroClass, ZeroClassification};
use crate::error::Error;
use crate::zeros::{default_k_max, find_zero_free_annulus, AnnulusResult, Evaluator, ZeroRecord};

/// Twin-disc outcome for one off-line zero.
#[derive(Debug)]
pub struct TwinDisc {
    pub zero_index: usize,
    pub result: Result<AnnulusResult, Error>,
}

impl TwinDisc {
    pub fn counts_equal(&self) -> bool {
        self.result.as_ref().is_ok_and(AnnulusResult::counts_equal)
    }
}

/// Zero-free ring and twin-disc counts around every off-line zero.
/// `k_max = None` uses `⌈3 log γ⌉` per zero; failures are kept per zero.
pub fn twin_disc_report(
    eval: &Evaluator,
    zeros: &[ZeroRecord],
    classification: &[ZeroClassification],
    r0: f64,
    k_max: Option<usize>,
) -> Vec<TwinDisc> {
    classification
        .iter()
        .filter(|c| c.klass == ZeroClass::OffLine)
        .map(|c| {
            let z = &zeros[c.zero_index];
            let k = k_max.unwrap_or_else(|| default_k_max(z.gamma_f64()));
            TwinDisc {
                zero_index: c.zero_index,
                result: find_zero_free_annulus(eval, z, r0, k, zeros),
            }
        })
        .collect()
}

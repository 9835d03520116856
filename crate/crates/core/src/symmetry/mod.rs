//! Classification of zero lists into on-line zeros, near-symmetric off-line
//! pairs and zeros near the trivial line, plus the checks built on that split.

mod checks;
mod deep;
mod twin;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lerch::RationalParam;
use crate::zeros::ZeroRecord;

pub use checks::{
    counterpart_test, counting_check, theorem1_sum, Counterpart, CountingCheck, SumCheck,
    DEFAULT_WINDOW_FACTOR,
};
pub use deep::{deep_deviation, DeepReport, DeepSummary};
pub use twin::{twin_disc_report, TwinDisc};

/// `|β - 1/2|` at or below this is on the line.
pub const DEFAULT_ONLINE_TOL: f64 = 1e-9;

/// Largest `|(β₁+β₂)-1| + |γ₁-γ₂|` accepted for a near-symmetric pair.
pub const DEFAULT_PAIR_TOL: f64 = 1e-4;

/// Half-width `log 4 / π` of the band around the trivial line.
pub fn trivial_band() -> f64 {
    4f64.ln() / PI
}

/// Distance from `β + iγ` to the line `σ = πt / log((1-λ)/λ) + 1`, near which
/// `L(λ, α, s)` has zeros left of the strip. `None` for `λ = 1/2` and `λ = 1`,
/// where the line degenerates.
pub fn trivial_line_distance(lambda: RationalParam, beta: f64, gamma: f64) -> Option<f64> {
    if lambda.is_one() || 2 * lambda.num() == lambda.den() {
        return None;
    }
    let l = lambda.to_f64();
    let k = PI / ((1.0 - l) / l).ln();
    Some((beta - 1.0 - k * gamma).abs() / (1.0 + k * k).sqrt())
}

/// True iff the zero lies in the `log 4 / π` band around the trivial line.
pub fn near_trivial_line(lambda: RationalParam, beta: f64, gamma: f64) -> bool {
    trivial_line_distance(lambda, beta, gamma).is_some_and(|d| d < trivial_band())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroClass {
    OnLine,
    OffLine,
    /// In the band around the trivial line; left out of `N₁` and `N₂`.
    Trivial,
}

impl ZeroClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::OnLine => "on_line",
            Self::OffLine => "off_line",
            Self::Trivial => "trivial",
        }
    }
}

impl fmt::Display for ZeroClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ZeroClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on_line" => Ok(Self::OnLine),
            "off_line" => Ok(Self::OffLine),
            "trivial" => Ok(Self::Trivial),
            _ => Err(Error::Parse(format!("unknown zero class {s:?}"))),
        }
    }
}

/// Class of one zero of a list, with its near-symmetric partner if matched.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroClassification {
    pub zero_index: usize,
    pub klass: ZeroClass,
    pub partner_index: Option<usize>,
    pub pair_residual: Option<f64>,
}

/// One row of the distribution table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub lambda: RationalParam,
    pub t_max: f64,
    pub n1: usize,
    pub n2: usize,
    pub pct: f64,
    /// Off-line zeros without a partner.
    pub unmatched: usize,
    /// Zeros near the trivial line, not in `n1`.
    pub trivial: usize,
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {:.2}",
            self.lambda, self.n1, self.n2, self.pct
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub online_tol: f64,
    pub pair_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            online_tol: DEFAULT_ONLINE_TOL,
            pair_tol: DEFAULT_PAIR_TOL,
        }
    }
}

fn pair_residual(a: &ZeroRecord, b: &ZeroRecord) -> f64 {
    (a.beta_f64() + b.beta_f64() - 1.0).abs() + (a.gamma_f64() - b.gamma_f64()).abs()
}

/// Classifies a complete zero list of `L(λ, ·, ·)` up to `t_max`.
///
/// Off-line zeros are paired greedily, best residual first. An unmatched
/// off-line zero is counted in the report, not treated as an error.
pub fn classify_zeros(
    lambda: RationalParam,
    t_max: f64,
    zeros: &[ZeroRecord],
    opts: ClassifyOptions,
) -> (Vec<ZeroClassification>, SymmetryReport) {
    let mut out: Vec<ZeroClassification> = zeros
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let klass = if near_trivial_line(lambda, z.beta_f64(), z.gamma_f64()) {
                ZeroClass::Trivial
            } else if z.deviation().to_f64().abs() > opts.online_tol {
                ZeroClass::OffLine
            } else {
                ZeroClass::OnLine
            };
            ZeroClassification {
                zero_index: i,
                klass,
                partner_index: None,
                pair_residual: None,
            }
        })
        .collect();

    let off: Vec<usize> = out
        .iter()
        .filter(|c| c.klass == ZeroClass::OffLine)
        .map(|c| c.zero_index)
        .collect();
    let mut candidates = Vec::new();
    for (a, &i) in off.iter().enumerate() {
        for &j in &off[a + 1..] {
            let r = pair_residual(&zeros[i], &zeros[j]);
            if r < opts.pair_tol {
                candidates.push((r, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (r, i, j) in candidates {
        if out[i].partner_index.is_some() || out[j].partner_index.is_some() {
            continue;
        }
        out[i].partner_index = Some(j);
        out[i].pair_residual = Some(r);
        out[j].partner_index = Some(i);
        out[j].pair_residual = Some(r);
    }

    let trivial = out.iter().filter(|c| c.klass == ZeroClass::Trivial).count();
    let n1 = zeros.len() - trivial;
    let n2 = off.len();
    let unmatched = out
        .iter()
        .filter(|c| c.klass == ZeroClass::OffLine && c.partner_index.is_none())
        .count();
    let pct = if n1 == 0 {
        0.0
    } else {
        100.0 * n2 as f64 / n1 as f64
    };
    let report = SymmetryReport {
        lambda,
        t_max,
        n1,
        n2,
        pct,
        unmatched,
        trivial,
    };
    (out, report)
}

//! Inconsistency indices.
//!
//! Every index is a pure function of a [`PairwiseComparisonMatrix`]. Each
//! [`IndexKind`] carries its consistency value `nu`: the value it takes
//! exactly on consistent matrices (1 for [`IndexKind::Icd`], 0 for the rest).
//!
//! Triad-based indices (GCI, CI*, I_CD, K, I_M) work from the log-triads
//! `ln(a_ij a_jk a_ki)`, which keeps them free of overflow for large orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};
use crate::matrix::{triad_count, PairwiseComparisonMatrix};

/// Default scale for the NI index (Saaty's 1..9 bound).
pub const DEFAULT_NI_SIGMA: f64 = 9.0;
/// Default normalization for the NI index.
pub const DEFAULT_NI_GAMMA: f64 = 1.0;

/// RE is reported as undefined when every `|ln a_ij|` is at most this.
pub const INDIFFERENCE_LOG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum IndexKind {
    /// Saaty's consistency index, `(lambda_max - n) / (n - 1)`.
    Ci,
    /// Geometric consistency index (Crawford and Williams).
    Gci,
    /// Mean triad deviation `t + 1/t - 2` (Peláez and Lamata).
    CiStar,
    /// Geometric mean of `max{t, 1/t}` over triads (Cavallo and D'Apuzzo).
    Icd,
    /// Koczkodaj's index.
    K,
    /// Barzilai's relative error.
    Re,
    /// Harmonic consistency index (Stein and Mizzi).
    Hci,
    /// Golden and Wang's index.
    Gw,
    /// Ramík and Korviny's index, scaled by `gamma`.
    Ni { sigma: f64, gamma: f64 },
    /// Minimum plus sum of absolute log-triads.
    Im,
}

impl IndexKind {
    /// The nine indices of the summary table, in table order.
    pub const TABLE: [IndexKind; 9] = [
        IndexKind::Ci,
        IndexKind::Re,
        IndexKind::CiStar,
        IndexKind::Gci,
        IndexKind::Hci,
        IndexKind::Gw,
        IndexKind::Icd,
        IndexKind::K,
        IndexKind::Ni {
            sigma: DEFAULT_NI_SIGMA,
            gamma: DEFAULT_NI_GAMMA,
        },
    ];

    /// Every implemented index (table rows plus I_M).
    pub const ALL: [IndexKind; 10] = [
        IndexKind::Ci,
        IndexKind::Gci,
        IndexKind::CiStar,
        IndexKind::Icd,
        IndexKind::K,
        IndexKind::Re,
        IndexKind::Hci,
        IndexKind::Gw,
        IndexKind::Ni {
            sigma: DEFAULT_NI_SIGMA,
            gamma: DEFAULT_NI_GAMMA,
        },
        IndexKind::Im,
    ];

    pub fn ni() -> Self {
        IndexKind::Ni {
            sigma: DEFAULT_NI_SIGMA,
            gamma: DEFAULT_NI_GAMMA,
        }
    }

    /// Value at consistency.
    pub fn nu(&self) -> f64 {
        match self {
            IndexKind::Icd => 1.0,
            _ => 0.0,
        }
    }

    /// Lower-case identifier accepted by [`FromStr`].
    pub fn id(&self) -> &'static str {
        match self {
            IndexKind::Ci => "ci",
            IndexKind::Gci => "gci",
            IndexKind::CiStar => "cistar",
            IndexKind::Icd => "icd",
            IndexKind::K => "k",
            IndexKind::Re => "re",
            IndexKind::Hci => "hci",
            IndexKind::Gw => "gw",
            IndexKind::Ni { .. } => "ni",
            IndexKind::Im => "im",
        }
    }

    /// Display label (`CI*`, `I_CD`, ...).
    pub fn label(&self) -> &'static str {
        match self {
            IndexKind::Ci => "CI",
            IndexKind::Gci => "GCI",
            IndexKind::CiStar => "CI*",
            IndexKind::Icd => "I_CD",
            IndexKind::K => "K",
            IndexKind::Re => "RE",
            IndexKind::Hci => "HCI",
            IndexKind::Gw => "GW",
            IndexKind::Ni { .. } => "NI",
            IndexKind::Im => "I_M",
        }
    }

    /// Replaces NI parameters; other kinds are returned unchanged.
    pub fn with_ni_params(self, sigma: f64, gamma: f64) -> Result<Self> {
        match self {
            IndexKind::Ni { .. } => {
                if !(gamma.is_finite() && gamma > 0.0) {
                    return Err(PcmError::InvalidParameter(format!(
                        "NI normalization gamma must be positive, got {gamma}"
                    )));
                }
                if !(sigma.is_finite() && sigma > 1.0) {
                    return Err(PcmError::InvalidParameter(format!(
                        "NI scale sigma must exceed 1, got {sigma}"
                    )));
                }
                Ok(IndexKind::Ni { sigma, gamma })
            }
            other => Ok(other),
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IndexKind {
    type Err = PcmError;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim().to_ascii_lowercase().as_str() {
            "ci" => IndexKind::Ci,
            "gci" => IndexKind::Gci,
            "cistar" | "ci*" => IndexKind::CiStar,
            "icd" | "i_cd" => IndexKind::Icd,
            "k" => IndexKind::K,
            "re" => IndexKind::Re,
            "hci" => IndexKind::Hci,
            "gw" => IndexKind::Gw,
            "ni" => IndexKind::ni(),
            "im" | "i_m" => IndexKind::Im,
            other => return Err(PcmError::Parse(format!("unknown index '{other}'"))),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexValue {
    pub kind: IndexKind,
    pub value: f64,
    pub nu: f64,
    /// Dominant eigenvalue, populated for CI.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_max: Option<f64>,
    /// Set when the index is 0/0 on the input and `value` was reported as `nu`.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub undefined_at_indifference: bool,
}

impl IndexValue {
    fn plain(kind: IndexKind, value: f64) -> Self {
        IndexValue {
            kind,
            value,
            nu: kind.nu(),
            lambda_max: None,
            undefined_at_indifference: false,
        }
    }
}

/// Dominant eigenvalue of `a`; at least `n` for every pairwise comparison matrix.
pub fn lambda_max(a: &PairwiseComparisonMatrix) -> Result<f64> {
    crate::eigen::perron_root(a.order(), a.as_slice())
}

pub fn ci(a: &PairwiseComparisonMatrix) -> Result<IndexValue> {
    let n = a.order() as f64;
    let lm = lambda_max(a)?;
    let mut v = IndexValue::plain(IndexKind::Ci, (lm - n) / (n - 1.0));
    v.lambda_max = Some(lm);
    Ok(v)
}

/// `2 / ((n-1)(n-2)) * sum_{i<j} ln^2(a_ij w_j / w_i)` with `w` the row
/// geometric means.
pub fn gci(a: &PairwiseComparisonMatrix) -> IndexValue {
    let n = a.order();
    let lw = a.log_row_means();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let e = a.get(i, j).ln() + lw[j] - lw[i];
            s += e * e;
        }
    }
    let nf = n as f64;
    IndexValue::plain(IndexKind::Gci, 2.0 * s / ((nf - 1.0) * (nf - 2.0)))
}

pub fn ci_star(a: &PairwiseComparisonMatrix) -> IndexValue {
    let mut s = 0.0;
    a.for_each_triad_log(|_, _, _, l| {
        // t + 1/t - 2 = 2 (cosh l - 1) = 4 sinh^2(l / 2), exact near l = 0
        let h = (l / 2.0).sinh();
        s += 4.0 * h * h;
    });
    IndexValue::plain(IndexKind::CiStar, s / triad_count(a.order()) as f64)
}

pub fn i_cd(a: &PairwiseComparisonMatrix) -> IndexValue {
    let mut s = 0.0;
    a.for_each_triad_log(|_, _, _, l| s += l.abs());
    IndexValue::plain(IndexKind::Icd, (s / triad_count(a.order()) as f64).exp())
}

/// `max_{i<j<k} min{|1 - t|, |1 - 1/t|}`, always in `[0, 1)`.
pub fn k_index(a: &PairwiseComparisonMatrix) -> IndexValue {
    let mut worst = 0.0_f64;
    a.for_each_triad_log(|_, _, _, l| {
        // min{|1 - t|, |1 - 1/t|} = 1 - exp(-|ln t|)
        worst = worst.max(-(-l.abs()).exp_m1());
    });
    IndexValue::plain(IndexKind::K, worst)
}

/// Relative error of the log-matrix against its best consistent fit.
///
/// With `B = (ln a_ij)`, `w_i` the row means of `B`, and `E = B - (w_i - w_j)`,
/// `RE = sum e_ij^2 / sum b_ij^2`. The all-ones matrix makes this 0/0; it is
/// reported as `nu` with `undefined_at_indifference` set.
pub fn re(a: &PairwiseComparisonMatrix) -> IndexValue {
    let n = a.order();
    let lw = a.log_row_means();
    let (mut num, mut den, mut max_abs) = (0.0, 0.0, 0.0_f64);
    for i in 0..n {
        for j in 0..n {
            let b = a.get(i, j).ln();
            let e = b - (lw[i] - lw[j]);
            num += e * e;
            den += b * b;
            max_abs = max_abs.max(b.abs());
        }
    }
    if max_abs <= INDIFFERENCE_LOG_TOL {
        let mut v = IndexValue::plain(IndexKind::Re, 0.0);
        v.undefined_at_indifference = true;
        return v;
    }
    IndexValue::plain(IndexKind::Re, num / den)
}

/// `(HM - n)(n + 1) / (n (n - 1))`, `HM` the harmonic mean of the column sums.
pub fn hci(a: &PairwiseComparisonMatrix) -> IndexValue {
    let n = a.order();
    let inv_sum: f64 = (0..n)
        .map(|j| 1.0 / (0..n).map(|i| a.get(i, j)).sum::<f64>())
        .sum();
    let nf = n as f64;
    let hm = nf / inv_sum;
    IndexValue::plain(IndexKind::Hci, (hm - nf) * (nf + 1.0) / (nf * (nf - 1.0)))
}

/// Mean L1 distance between the column-normalized matrix and the normalized
/// geometric-mean vector.
pub fn gw(a: &PairwiseComparisonMatrix) -> IndexValue {
    let n = a.order();
    let w = a.geometric_mean_vector().normalized();
    let w = w.as_slice();
    let mut s = 0.0;
    for j in 0..n {
        let col: f64 = (0..n).map(|i| a.get(i, j)).sum();
        s += (0..n).map(|i| (a.get(i, j) / col - w[i]).abs()).sum::<f64>();
    }
    IndexValue::plain(IndexKind::Gw, s / n as f64)
}

/// `gamma * max_{i,j} |a_ij - w_i / w_j|` with `w` the geometric-mean vector.
///
/// `sigma` is carried for reporting only; it enters the original index through
/// the normalization constant, which is supplied directly as `gamma`.
pub fn ni(a: &PairwiseComparisonMatrix, sigma: f64, gamma: f64) -> IndexValue {
    let n = a.order();
    let lw = a.log_row_means();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max((a.get(i, j) - (lw[i] - lw[j]).exp()).abs());
            }
        }
    }
    IndexValue::plain(IndexKind::Ni { sigma, gamma }, gamma * worst)
}

/// `min_{i<j<k} |ln t| + sum_{i<j<k} |ln t|`.
pub fn i_m(a: &PairwiseComparisonMatrix) -> IndexValue {
    let (mut min, mut sum) = (f64::INFINITY, 0.0);
    a.for_each_triad_log(|_, _, _, l| {
        min = min.min(l.abs());
        sum += l.abs();
    });
    IndexValue::plain(IndexKind::Im, min + sum)
}

pub fn evaluate(kind: IndexKind, a: &PairwiseComparisonMatrix) -> Result<IndexValue> {
    Ok(match kind {
        IndexKind::Ci => return ci(a),
        IndexKind::Gci => gci(a),
        IndexKind::CiStar => ci_star(a),
        IndexKind::Icd => i_cd(a),
        IndexKind::K => k_index(a),
        IndexKind::Re => re(a),
        IndexKind::Hci => hci(a),
        IndexKind::Gw => gw(a),
        IndexKind::Ni { sigma, gamma } => ni(a, sigma, gamma),
        IndexKind::Im => i_m(a),
    })
}

/// Shorthand for `evaluate(kind, a)?.value`.
pub fn value(kind: IndexKind, a: &PairwiseComparisonMatrix) -> Result<f64> {
    evaluate(kind, a).map(|v| v.value)
}

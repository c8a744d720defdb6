//! Weighted geometric mean synthesis of judgment matrices.

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};
use crate::exec::Execution;
use crate::indices::{self, IndexKind};
use crate::matrix::{PairwiseComparisonMatrix, PositiveMatrix};

/// Tolerance on `sum(lambda) = 1` and on small negative components.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Default number of sweep intervals.
pub const DEFAULT_SWEEP_STEPS: usize = 100;

/// Decision-maker weights: nonnegative and summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SimplexWeights(Vec<f64>);

impl SimplexWeights {
    /// Components below `-SIMPLEX_TOL` are rejected, tiny negatives are
    /// clamped to zero, and the vector is renormalized.
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(PcmError::InvalidWeights("no weights".into()));
        }
        let mut w = lambdas;
        for v in w.iter_mut() {
            if !v.is_finite() || *v < -SIMPLEX_TOL {
                return Err(PcmError::InvalidWeights(format!("component {v} is negative")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let s: f64 = w.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOL {
            return Err(PcmError::InvalidWeights(format!("components sum to {s}, not 1")));
        }
        if s != 1.0 {
            w.iter_mut().for_each(|v| *v /= s);
        }
        Ok(Self(w))
    }

    /// `m` equal weights.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(PcmError::InvalidWeights("no weights".into()));
        }
        Ok(Self(vec![1.0 / m as f64; m]))
    }

    /// `(lambda, 1 - lambda)`.
    pub fn pair(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(PcmError::InvalidWeights(format!("lambda {lambda} outside [0, 1]")));
        }
        Ok(Self(vec![lambda, 1.0 - lambda]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for SimplexWeights {
    type Error = PcmError;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SimplexWeights> for Vec<f64> {
    fn from(w: SimplexWeights) -> Self {
        w.0
    }
}

fn check_shapes(orders: impl Iterator<Item = usize>, m: usize, weights: &SimplexWeights) -> Result<usize> {
    if m != weights.len() {
        return Err(PcmError::LengthMismatch {
            expected: m,
            found: weights.len(),
        });
    }
    let mut orders = orders;
    let n = orders
        .next()
        .ok_or_else(|| PcmError::InvalidWeights("no matrices to aggregate".into()))?;
    for found in orders {
        if found != n {
            return Err(PcmError::OrderMismatch { expected: n, found });
        }
    }
    Ok(n)
}

/// If one member carries the full weight, its index.
fn degenerate_member(weights: &SimplexWeights) -> Option<usize> {
    weights.as_slice().iter().position(|&w| w == 1.0)
}

/// `exp(sum_h lambda_h ln x_h)`.
fn weighted_log_mean(weights: &[f64], entry: impl Fn(usize) -> f64) -> f64 {
    weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0.0)
        .map(|(h, &w)| w * entry(h).ln())
        .sum()
}

/// Entrywise weighted geometric mean `a*_ij = prod_h (a_ij^(h))^lambda_h`.
pub fn aggregate(
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<PairwiseComparisonMatrix> {
    let n = check_shapes(matrices.iter().map(|m| m.order()), matrices.len(), weights)?;
    if let Some(h) = degenerate_member(weights) {
        return Ok(matrices[h].clone());
    }
    let w = weights.as_slice();
    Ok(PairwiseComparisonMatrix::from_upper_logs(n, |i, j| {
        weighted_log_mean(w, |h| matrices[h].get(i, j))
    }))
}

/// Same rule for arbitrary positive matrices.
pub fn aggregate_positive(matrices: &[PositiveMatrix], weights: &SimplexWeights) -> Result<PositiveMatrix> {
    let n = check_shapes(matrices.iter().map(|m| m.order()), matrices.len(), weights)?;
    if let Some(h) = degenerate_member(weights) {
        return Ok(matrices[h].clone());
    }
    let w = weights.as_slice();
    let data = (0..n * n)
        .map(|k| weighted_log_mean(w, |h| matrices[h].as_slice()[k]).exp())
        .collect();
    PositiveMatrix::from_row_major(n, data)
}

/// Index values along `A*(lambda) = A^lambda B^(1 - lambda)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve {
    pub kind: IndexKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl SweepCurve {
    /// Value at `lambda = 1`, i.e. of the first matrix.
    pub fn first_value(&self) -> f64 {
        *self.values.last().expect("sweep has endpoints")
    }

    /// Value at `lambda = 0`, i.e. of the second matrix.
    pub fn second_value(&self) -> f64 {
        self.values[0]
    }

    /// Interior grid point with the largest value.
    pub fn interior_max(&self) -> Option<(f64, f64)> {
        let last = self.values.len().checked_sub(1)?;
        (1..last)
            .map(|i| (self.grid[i], self.values[i]))
            .fold(None, |best, cur| match best {
                Some((_, v)) if v >= cur.1 => best,
                _ => Some(cur),
            })
    }

    /// `lambda,value` CSV with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,value\n");
        for (l, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&crate::io::format_f64(*l));
            out.push(',');
            out.push_str(&crate::io::format_f64(*v));
            out.push('\n');
        }
        out
    }
}

/// Evaluates `kind` on `A^lambda B^(1 - lambda)` for `lambda = 0, 1/steps, ..., 1`.
pub fn sweep_pair(
    a: &PairwiseComparisonMatrix,
    b: &PairwiseComparisonMatrix,
    kind: IndexKind,
    steps: usize,
    exec: Execution,
) -> Result<SweepCurve> {
    if steps < 2 {
        return Err(PcmError::InvalidParameter(format!("sweep needs at least 2 steps, got {steps}")));
    }
    if a.order() != b.order() {
        return Err(PcmError::OrderMismatch {
            expected: a.order(),
            found: b.order(),
        });
    }
    let grid: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { 1.0 } else { i as f64 / steps as f64 })
        .collect();
    let pair = [a.clone(), b.clone()];
    let values = exec.try_map(grid.len(), |i| {
        let agg = aggregate(&pair, &SimplexWeights::pair(grid[i])?)?;
        indices::value(kind, &agg)
    })?;
    Ok(SweepCurve { kind, grid, values })
}

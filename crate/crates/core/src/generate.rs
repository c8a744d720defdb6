//! Seeded random generators for matrices and simplex weights.
//!
//! All generators draw from [`ChaCha8Rng`], whose output is stable across
//! platforms and crate versions. Randomized suites derive one stream per
//! trial with [`trial_rng`], so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aggregation::SimplexWeights;
use crate::error::{PcmError, Result};
use crate::matrix::{PairwiseComparisonMatrix, PositiveMatrix, PriorityVector, MIN_ORDER};

/// Saaty's upper bound on judgments.
pub const DEFAULT_SCALE: f64 = 9.0;

/// How upper-triangle judgments are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// `exp(U(-ln s, ln s))`, continuous on `[1/s, s]`.
    #[default]
    LogUniform,
    /// Uniform over `{1/s', ..., 1/2, 1, 2, ..., s'}` with `s' = floor(s)`.
    DiscreteScale,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub scale: f64,
    pub distribution: Distribution,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            scale: DEFAULT_SCALE,
            distribution: Distribution::LogUniform,
        }
    }
}

impl GeneratorConfig {
    pub fn check(&self) -> Result<()> {
        if !(self.scale.is_finite() && self.scale > 1.0) {
            return Err(PcmError::InvalidParameter(format!(
                "generator scale must exceed 1, got {}",
                self.scale
            )));
        }
        if self.distribution == Distribution::DiscreteScale && self.scale < 2.0 {
            return Err(PcmError::InvalidParameter(
                "discrete scale needs sigma >= 2".into(),
            ));
        }
        Ok(())
    }

    /// One judgment `a_ij` for `i < j`.
    pub fn sample_entry<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.distribution {
            Distribution::LogUniform => {
                let ls = self.scale.ln();
                rng.random_range(-ls..=ls).exp()
            }
            Distribution::DiscreteScale => {
                let top = self.scale.floor() as i64;
                // values -top..=top without 0 and -1 (1 appears once)
                let k = rng.random_range(-(top - 1)..=(top - 1));
                match k {
                    0 => 1.0,
                    k if k > 0 => (k + 1) as f64,
                    k => 1.0 / (1 - k) as f64,
                }
            }
        }
    }

    pub fn sample_pcm<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PairwiseComparisonMatrix {
        PairwiseComparisonMatrix::from_upper(n, |_, _| self.sample_entry(rng))
    }
}

/// Generator stream for one trial of a seeded suite.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Random pairwise comparison matrix with log-uniform judgments on
/// `[1/scale, scale]`; deterministic in `seed`.
pub fn random_pcm(n: usize, scale: f64, seed: u64) -> Result<PairwiseComparisonMatrix> {
    let cfg = GeneratorConfig {
        scale,
        distribution: Distribution::LogUniform,
    };
    random_pcm_with(n, &cfg, seed)
}

pub fn random_pcm_with(n: usize, cfg: &GeneratorConfig, seed: u64) -> Result<PairwiseComparisonMatrix> {
    if n < MIN_ORDER {
        return Err(PcmError::OrderTooSmall(n));
    }
    cfg.check()?;
    Ok(cfg.sample_pcm(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Priority vector with log-uniform components on `[1/scale, scale]`.
pub fn random_priority_vector<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> PriorityVector {
    let ls = scale.ln();
    PriorityVector::new((0..n).map(|_| rng.random_range(-ls..=ls).exp()).collect())
        .expect("exp is positive")
}

/// Consistent matrix `w_i / w_j` from a random priority vector.
pub fn random_consistent<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> PairwiseComparisonMatrix {
    let w = random_priority_vector(n, scale, rng);
    PairwiseComparisonMatrix::from_priority_vector(&w).expect("order checked by caller")
}

/// Positive, generally non-reciprocal, matrix with log-uniform entries.
pub fn random_positive<R: Rng + ?Sized>(n: usize, scale: f64, rng: &mut R) -> PositiveMatrix {
    let ls = scale.ln();
    let data = (0..n * n).map(|_| rng.random_range(-ls..=ls).exp()).collect();
    PositiveMatrix::from_row_major(n, data).expect("exp is positive")
}

/// Uniform sample from the simplex with `m` components.
pub fn random_simplex<R: Rng + ?Sized>(m: usize, rng: &mut R) -> SimplexWeights {
    // normalized unit exponentials are Dirichlet(1, ..., 1)
    let raw: Vec<f64> = (0..m)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let s: f64 = raw.iter().sum();
    SimplexWeights::new(raw.iter().map(|v| v / s).collect()).expect("normalized draw")
}

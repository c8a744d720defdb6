//! Boundary properties of indices under geometric-mean aggregation.
//!
//! For matrices `A_1..A_m`, weights `lambda` and the aggregate `A*`, an index
//! `I` is
//!
//! * lower bounded if `I(A*) >= min_h I(A_h)`,
//! * upper bounded if `I(A*) <= max_h I(A_h)`,
//! * strongly upper bounded if `I(A*) <= sum_h lambda_h I(A_h)`,
//!
//! for every choice of matrices and weights. A single counterexample settles
//! that a property fails. Random search that finds none only corroborates a
//! property; it never proves one. Reports carry that distinction in
//! [`BoundaryVerdict::basis`].

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aggregation::{aggregate, aggregate_positive, SimplexWeights};
use crate::error::{PcmError, Result};
use crate::exec::Execution;
use crate::generate::{self, GeneratorConfig};
use crate::indices::{self, IndexKind};
use crate::matrix::{PairwiseComparisonMatrix, PositiveMatrix};
use crate::witnesses;

/// Margins must exceed this to count as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Slack allowed in the spectral-radius inequality.
pub const ELSNER_TOL: f64 = 1e-9;

/// Points of the lambda grid scanned for the best candidate pair.
pub const REFINE_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryProperty {
    LowerBounded,
    UpperBounded,
    StronglyUpperBounded,
}

impl BoundaryProperty {
    pub const ALL: [BoundaryProperty; 3] = [
        BoundaryProperty::LowerBounded,
        BoundaryProperty::UpperBounded,
        BoundaryProperty::StronglyUpperBounded,
    ];

    pub fn short(&self) -> &'static str {
        match self {
            BoundaryProperty::LowerBounded => "LB",
            BoundaryProperty::UpperBounded => "UB",
            BoundaryProperty::StronglyUpperBounded => "SUB",
        }
    }
}

impl fmt::Display for BoundaryProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl FromStr for BoundaryProperty {
    type Err = PcmError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "lb" | "lower" | "lowerbounded" => Ok(BoundaryProperty::LowerBounded),
            "ub" | "upper" | "upperbounded" => Ok(BoundaryProperty::UpperBounded),
            "sub" | "strong" | "stronglyupperbounded" => Ok(BoundaryProperty::StronglyUpperBounded),
            other => Err(PcmError::Parse(format!("unknown property '{other}'"))),
        }
    }
}

/// Outcome of comparing the aggregate's index with the members' bound.
/// `margin > 0` means the property is violated on this input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub violated: bool,
}

fn compare(
    property: BoundaryProperty,
    kind: IndexKind,
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<BoundComparison> {
    let agg = aggregate(matrices, weights)?;
    let lhs = indices::value(kind, &agg)?;
    let members = matrices
        .iter()
        .map(|m| indices::value(kind, m))
        .collect::<Result<Vec<f64>>>()?;
    let (rhs, margin) = match property {
        BoundaryProperty::LowerBounded => {
            let min = members.iter().copied().fold(f64::INFINITY, f64::min);
            (min, min - lhs)
        }
        BoundaryProperty::UpperBounded => {
            let max = members.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (max, lhs - max)
        }
        BoundaryProperty::StronglyUpperBounded => {
            let mean: f64 = members
                .iter()
                .zip(weights.as_slice())
                .map(|(v, w)| v * w)
                .sum();
            (mean, lhs - mean)
        }
    };
    Ok(BoundComparison {
        lhs,
        rhs,
        margin,
        violated: margin > VIOLATION_TOL,
    })
}

pub fn check_lower(
    kind: IndexKind,
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<BoundComparison> {
    compare(BoundaryProperty::LowerBounded, kind, matrices, weights)
}

pub fn check_upper(
    kind: IndexKind,
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<BoundComparison> {
    compare(BoundaryProperty::UpperBounded, kind, matrices, weights)
}

pub fn check_strong_upper(
    kind: IndexKind,
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<BoundComparison> {
    compare(BoundaryProperty::StronglyUpperBounded, kind, matrices, weights)
}

pub fn check(
    property: BoundaryProperty,
    kind: IndexKind,
    matrices: &[PairwiseComparisonMatrix],
    weights: &SimplexWeights,
) -> Result<BoundComparison> {
    compare(property, kind, matrices, weights)
}

/// A concrete input on which a property fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub kind: IndexKind,
    pub property: BoundaryProperty,
    pub matrices: Vec<PairwiseComparisonMatrix>,
    pub weights: SimplexWeights,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl CounterexampleRecord {
    fn from_comparison(
        kind: IndexKind,
        property: BoundaryProperty,
        matrices: Vec<PairwiseComparisonMatrix>,
        weights: SimplexWeights,
        c: BoundComparison,
    ) -> Self {
        CounterexampleRecord {
            kind,
            property,
            matrices,
            weights,
            lhs: c.lhs,
            rhs: c.rhs,
            margin: c.margin,
        }
    }

    /// Recomputes the comparison from the stored inputs.
    pub fn reverify(&self) -> Result<BoundComparison> {
        compare(self.property, self.kind, &self.matrices, &self.weights)
    }
}

/// `{A, A^T}` at equal weights aggregates to a consistent matrix, so the
/// aggregate sits at `nu`, strictly below both members.
pub fn lower_bound_refutation(
    kind: IndexKind,
    a: &PairwiseComparisonMatrix,
) -> Result<CounterexampleRecord> {
    let own = indices::value(kind, a)?;
    if (own - kind.nu()).abs() <= VIOLATION_TOL {
        return Err(PcmError::InputConsistent);
    }
    let matrices = vec![a.clone(), a.transpose()];
    let weights = SimplexWeights::uniform(2)?;
    let c = check_lower(kind, &matrices, &weights)?;
    Ok(CounterexampleRecord::from_comparison(
        kind,
        BoundaryProperty::LowerBounded,
        matrices,
        weights,
        c,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    NoViolationFound,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryVerdict {
    pub kind: IndexKind,
    pub property: BoundaryProperty,
    pub status: VerdictStatus,
    /// Trials evaluated up to and including the deciding one.
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CounterexampleRecord>,
    pub basis: String,
}

impl BoundaryVerdict {
    pub fn is_violated(&self) -> bool {
        self.status == VerdictStatus::Violated
    }

    fn violated(kind: IndexKind, property: BoundaryProperty, trials: usize, rec: CounterexampleRecord) -> Self {
        BoundaryVerdict {
            kind,
            property,
            status: VerdictStatus::Violated,
            trials,
            counterexample: Some(rec),
            basis: "counterexample: re-verifiable witness, refutes the property".into(),
        }
    }

    fn not_found(kind: IndexKind, property: BoundaryProperty, trials: usize) -> Self {
        BoundaryVerdict {
            kind,
            property,
            status: VerdictStatus::NoViolationFound,
            trials,
            counterexample: None,
            basis: "sampled search: absence of a violation corroborates but does not prove the property"
                .into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub trials: usize,
    pub seed: u64,
    /// Orders drawn uniformly for each trial.
    pub orders: Vec<usize>,
    pub generator: GeneratorConfig,
    /// Probability that a trial uses three matrices instead of two.
    pub triple_rate: f64,
    /// Try known counterexamples before random trials.
    pub inject_known: bool,
    pub exec: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            trials: 10_000,
            seed: 0,
            orders: vec![3, 4, 5],
            generator: GeneratorConfig::default(),
            triple_rate: 0.25,
            inject_known: true,
            exec: Execution::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_trials(trials: usize, seed: u64) -> Self {
        SearchConfig {
            trials,
            seed,
            ..Default::default()
        }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(PcmError::InvalidParameter("trials must be positive".into()));
        }
        if self.orders.is_empty() || self.orders.iter().any(|&n| n < 3) {
            return Err(PcmError::InvalidParameter("orders must be >= 3".into()));
        }
        self.generator.check()
    }
}

/// Known witnesses for `(kind, property)`, tried as the first trials.
pub fn known_candidates(
    kind: IndexKind,
    property: BoundaryProperty,
) -> Vec<(Vec<PairwiseComparisonMatrix>, SimplexWeights)> {
    let half = SimplexWeights::uniform(2).expect("two weights");
    let pair = |(a, b): (PairwiseComparisonMatrix, PairwiseComparisonMatrix)| (vec![a, b], half.clone());
    match (kind, property) {
        (IndexKind::Re, BoundaryProperty::UpperBounded | BoundaryProperty::StronglyUpperBounded) => {
            vec![pair(witnesses::example_one_pair())]
        }
        (IndexKind::Im, BoundaryProperty::UpperBounded | BoundaryProperty::StronglyUpperBounded) => {
            vec![pair(witnesses::i_m_pair())]
        }
        (IndexKind::K, BoundaryProperty::StronglyUpperBounded) => vec![pair(witnesses::remark_pair())],
        (_, BoundaryProperty::LowerBounded) => vec![pair(witnesses::two_extreme_pair())],
        _ => Vec::new(),
    }
}

fn random_candidate(cfg: &SearchConfig, trial: usize) -> (Vec<PairwiseComparisonMatrix>, SimplexWeights) {
    let mut rng = generate::trial_rng(cfg.seed, trial as u64);
    let n = cfg.orders[rng.random_range(0..cfg.orders.len())];
    let m = if rng.random::<f64>() < cfg.triple_rate { 3 } else { 2 };
    let matrices = (0..m).map(|_| cfg.generator.sample_pcm(n, &mut rng)).collect();
    let weights = generate::random_simplex(m, &mut rng);
    (matrices, weights)
}

/// Randomized search for a violation of `property` by `kind`.
///
/// Trial `t` draws its inputs from the stream `(seed, t)`; the lowest-index
/// violating trial wins, so the verdict is identical in every execution mode.
/// When no trial violates, the two-matrix trial with the largest margin is
/// rescanned on a [`REFINE_STEPS`]-point lambda grid.
pub fn search_violation(kind: IndexKind, property: BoundaryProperty, cfg: &SearchConfig) -> Result<BoundaryVerdict> {
    cfg.check()?;
    let mut used = 0;
    if cfg.inject_known {
        for (matrices, weights) in known_candidates(kind, property) {
            used += 1;
            let c = check(property, kind, &matrices, &weights)?;
            if c.violated {
                let rec = CounterexampleRecord::from_comparison(kind, property, matrices, weights, c);
                return Ok(BoundaryVerdict::violated(kind, property, used, rec));
            }
        }
    }

    let found = cfg.exec.find_first(cfg.trials, |t| {
        let (matrices, weights) = random_candidate(cfg, t);
        match check(property, kind, &matrices, &weights) {
            Ok(c) if c.violated => Some(Ok((t, matrices, weights, c))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    if let Some(hit) = found {
        let (t, matrices, weights, c) = hit?;
        let rec = CounterexampleRecord::from_comparison(kind, property, matrices, weights, c);
        return Ok(BoundaryVerdict::violated(kind, property, used + t + 1, rec));
    }
    used += cfg.trials;

    // Refinement: best two-matrix candidate, scanned along lambda.
    let margins = cfg.exec.try_map(cfg.trials, |t| {
        let (matrices, weights) = random_candidate(cfg, t);
        if matrices.len() != 2 {
            return Ok(f64::NEG_INFINITY);
        }
        check(property, kind, &matrices, &weights).map(|c| c.margin)
    })?;
    let best = margins
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (t, &m)| match best {
            Some((_, bm)) if bm >= m => best,
            _ if m == f64::NEG_INFINITY => best,
            _ => Some((t, m)),
        });
    if let Some((t, _)) = best {
        let (matrices, _) = random_candidate(cfg, t);
        let hit = cfg.exec.find_first(REFINE_STEPS - 1, |k| {
            let lambda = (k + 1) as f64 / REFINE_STEPS as f64;
            let weights = match SimplexWeights::pair(lambda) {
                Ok(w) => w,
                Err(e) => return Some(Err(e)),
            };
            match check(property, kind, &matrices, &weights) {
                Ok(c) if c.violated => Some(Ok((weights, c))),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        });
        used += 1;
        if let Some(hit) = hit {
            let (weights, c) = hit?;
            let rec = CounterexampleRecord::from_comparison(kind, property, matrices, weights, c);
            return Ok(BoundaryVerdict::violated(kind, property, used, rec));
        }
    }
    Ok(BoundaryVerdict::not_found(kind, property, used))
}

/// Slack `prod_h rho(M_h)^lambda_h - rho(M*)`, nonnegative when the
/// spectral-radius inequality holds.
pub fn elsner_slack(matrices: &[PositiveMatrix], weights: &SimplexWeights) -> Result<f64> {
    let agg = aggregate_positive(matrices, weights)?;
    let lhs = agg.spectral_radius()?;
    let mut log_rhs = 0.0;
    for (m, &w) in matrices.iter().zip(weights.as_slice()) {
        if w != 0.0 {
            log_rhs += w * m.spectral_radius()?.ln();
        }
    }
    Ok(log_rhs.exp() - lhs)
}

/// `rho(M*) <= prod_h rho(M_h)^lambda_h + ELSNER_TOL`.
pub fn elsner_check(matrices: &[PositiveMatrix], weights: &SimplexWeights) -> Result<bool> {
    Ok(elsner_slack(matrices, weights)? >= -ELSNER_TOL)
}

/// Symbol used in the summary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mark {
    /// No violation found.
    Check,
    /// Violated by a witness.
    Cross,
}

impl Mark {
    fn from_verdict(v: &BoundaryVerdict) -> Self {
        if v.is_violated() {
            Mark::Cross
        } else {
            Mark::Check
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Mark::Check => "✓",
            Mark::Cross => "✗",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub kind: IndexKind,
    pub lb: Mark,
    pub ub: Mark,
    pub sub: Mark,
    pub verdicts: Vec<BoundaryVerdict>,
}

/// LB, UB and strong UB verdicts for one index.
///
/// LB is refuted constructively from a seeded random inconsistent matrix; UB
/// and strong UB come from [`search_violation`].
pub fn classify(kind: IndexKind, cfg: &SearchConfig) -> Result<TableRow> {
    cfg.check()?;
    let mut rng = generate::trial_rng(cfg.seed, u64::MAX);
    let seed_matrix = loop {
        let m = cfg.generator.sample_pcm(cfg.orders[0], &mut rng);
        if (indices::value(kind, &m)? - kind.nu()).abs() > VIOLATION_TOL {
            break m;
        }
    };
    let lb_rec = lower_bound_refutation(kind, &seed_matrix)?;
    let lb = if lb_rec.margin > VIOLATION_TOL {
        BoundaryVerdict::violated(kind, BoundaryProperty::LowerBounded, 1, lb_rec)
    } else {
        BoundaryVerdict::not_found(kind, BoundaryProperty::LowerBounded, 1)
    };
    let ub = search_violation(kind, BoundaryProperty::UpperBounded, cfg)?;
    let sub = search_violation(kind, BoundaryProperty::StronglyUpperBounded, cfg)?;
    Ok(TableRow {
        kind,
        lb: Mark::from_verdict(&lb),
        ub: Mark::from_verdict(&ub),
        sub: Mark::from_verdict(&sub),
        verdicts: vec![lb, ub, sub],
    })
}

/// Rows for the nine tabulated indices, in table order.
pub fn summary_table(cfg: &SearchConfig) -> Result<Vec<TableRow>> {
    IndexKind::TABLE.iter().map(|&k| classify(k, cfg)).collect()
}

pub fn render_table_text(rows: &[TableRow]) -> String {
    let mut out = format!("{:<8} {:^4} {:^4} {:^4}\n", "index", "LB", "UB", "S-UB");
    for r in rows {
        out.push_str(&format!(
            "{:<8} {:^4} {:^4} {:^4}\n",
            r.kind.label(),
            r.lb.symbol(),
            r.ub.symbol(),
            r.sub.symbol()
        ));
    }
    out
}

pub fn render_table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("index,LB,UB,SUB\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.kind.label(),
            r.lb.symbol(),
            r.ub.symbol(),
            r.sub.symbol()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_members_do_not_violate() {
        let (a, _) = witnesses::example_one_pair();
        let w = SimplexWeights::new(vec![0.3, 0.7]).unwrap();
        for kind in IndexKind::ALL {
            let c = check_upper(kind, &[a.clone(), a.clone()], &w).unwrap();
            assert!((c.lhs - c.rhs).abs() < 1e-10, "{kind}");
            assert!(!c.violated);
        }
    }

    #[test]
    fn remark_pair_for_k() {
        let (a1, a2) = witnesses::remark_pair();
        let w = SimplexWeights::uniform(2).unwrap();
        let ub = check_upper(IndexKind::K, &[a1.clone(), a2.clone()], &w).unwrap();
        assert!(!ub.violated);
        assert!((ub.lhs - 26.0 / 27.0).abs() < 1e-12);
        assert!((ub.rhs - 728.0 / 729.0).abs() < 1e-12);
        let sub = check_strong_upper(IndexKind::K, &[a1, a2], &w).unwrap();
        assert!(sub.violated);
        assert!((sub.rhs - 364.0 / 729.0).abs() < 1e-12);
    }

    #[test]
    fn example_one_violates_upper_for_re() {
        let (a, b) = witnesses::example_one_pair();
        let c = check_upper(IndexKind::Re, &[a, b], &SimplexWeights::uniform(2).unwrap()).unwrap();
        assert!(c.violated);
    }

    #[test]
    fn lower_refutation_on_two_extreme() {
        let (a1, _) = witnesses::two_extreme_pair();
        let rec = lower_bound_refutation(IndexKind::Ci, &a1).unwrap();
        assert!(rec.lhs.abs() < 1e-10);
        assert!((rec.rhs - (9.0 + 1.0 / 9.0 - 2.0) / 2.0).abs() < 1e-9);
        let rec = lower_bound_refutation(IndexKind::Icd, &a1).unwrap();
        assert!((rec.lhs - 1.0).abs() < 1e-12);
        assert!((rec.rhs - 729.0).abs() < 1e-9);
        let rec = lower_bound_refutation(IndexKind::K, &a1).unwrap();
        assert!(rec.lhs.abs() < 1e-12);
        assert!((rec.rhs - 728.0 / 729.0).abs() < 1e-12);
        let ones = PairwiseComparisonMatrix::all_ones(3).unwrap();
        assert_eq!(
            lower_bound_refutation(IndexKind::Ci, &ones).unwrap_err(),
            PcmError::InputConsistent
        );
    }

    #[test]
    fn injected_witness_is_trial_one() {
        let cfg = SearchConfig::with_trials(10, 1);
        let v = search_violation(IndexKind::Re, BoundaryProperty::UpperBounded, &cfg).unwrap();
        assert!(v.is_violated());
        assert_eq!(v.trials, 1);
        let v = search_violation(IndexKind::Im, BoundaryProperty::UpperBounded, &cfg).unwrap();
        let rec = v.counterexample.unwrap();
        assert!((rec.margin - (5.0 * 2f64.ln() - 2.0 * 4f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn search_without_injection_is_mode_independent() {
        let mut cfg = SearchConfig::with_trials(3000, 5);
        cfg.inject_known = false;
        cfg.exec = Execution::Sequential;
        let seq = search_violation(IndexKind::Gw, BoundaryProperty::UpperBounded, &cfg).unwrap();
        cfg.exec = Execution::Parallel;
        let par = search_violation(IndexKind::Gw, BoundaryProperty::UpperBounded, &cfg).unwrap();
        assert!(seq.is_violated());
        assert_eq!(seq, par);
    }

    #[test]
    fn search_rejects_zero_trials() {
        let cfg = SearchConfig::with_trials(0, 1);
        assert!(search_violation(IndexKind::Ci, BoundaryProperty::UpperBounded, &cfg).is_err());
    }

    #[test]
    fn elsner_identical_is_equality() {
        let mut rng = generate::trial_rng(2, 0);
        let m = generate::random_positive(4, 9.0, &mut rng);
        let slack = elsner_slack(&[m.clone(), m], &SimplexWeights::new(vec![0.4, 0.6]).unwrap()).unwrap();
        assert!(slack.abs() < 1e-9);
    }

    #[test]
    fn property_parse() {
        assert_eq!("ub".parse::<BoundaryProperty>().unwrap(), BoundaryProperty::UpperBounded);
        assert_eq!("S-UB".parse::<BoundaryProperty>().unwrap(), BoundaryProperty::StronglyUpperBounded);
        assert!("xx".parse::<BoundaryProperty>().is_err());
    }
}

//! Pairwise comparison matrices and the transformations used by the axioms.
//!
//! A [`PairwiseComparisonMatrix`] is stored row-major and is always exactly
//! reciprocal: the upper triangle is authoritative and every lower entry is
//! `1.0 / upper`. Inputs that are reciprocal only up to rounding (for example
//! `0.333` against `3`) are accepted with a relative tolerance and then
//! canonicalized.

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};

/// Relative tolerance used when checking reciprocity of raw input.
pub const RECIPROCITY_TOL: f64 = 1e-9;

/// Smallest admissible order.
pub const MIN_ORDER: usize = 3;

/// Positive square matrix without any reciprocity requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMatrix {
    n: usize,
    data: Vec<f64>,
}

impl PositiveMatrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(PcmError::NotSquare {
                row: 0,
                found: data.len(),
                expected: n * n,
            });
        }
        for (idx, &v) in data.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(PcmError::NonPositiveEntry {
                    i: idx / n,
                    j: idx % n,
                    value: v,
                });
            }
        }
        Ok(Self { n, data })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        crate::eigen::perron_root(self.n, &self.data)
    }
}

/// Positive reciprocal matrix of order `n >= 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRecord", into = "MatrixRecord")]
pub struct PairwiseComparisonMatrix {
    n: usize,
    data: Vec<f64>,
}

/// Serialized form: `{"n": 3, "rows": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl TryFrom<MatrixRecord> for PairwiseComparisonMatrix {
    type Error = PcmError;

    fn try_from(rec: MatrixRecord) -> Result<Self> {
        if rec.rows.len() != rec.n {
            return Err(PcmError::NotSquare {
                row: rec.rows.len(),
                found: rec.rows.len(),
                expected: rec.n,
            });
        }
        Self::validate(&rec.rows)
    }
}

impl From<PairwiseComparisonMatrix> for MatrixRecord {
    fn from(m: PairwiseComparisonMatrix) -> Self {
        MatrixRecord {
            n: m.n,
            rows: m.rows(),
        }
    }
}

impl PairwiseComparisonMatrix {
    /// Checks positivity and reciprocity of a raw square array and returns
    /// the canonicalized matrix.
    pub fn validate(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PcmError::NotSquare {
                    row: r,
                    found: row.len(),
                    expected: n,
                });
            }
        }
        if n < MIN_ORDER {
            return Err(PcmError::OrderTooSmall(n));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    return Err(PcmError::NonPositiveEntry { i, j, value: v });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let product = rows[i][j] * rows[j][i];
                if (product - 1.0).abs() > RECIPROCITY_TOL {
                    return Err(PcmError::NotReciprocal { i, j, product });
                }
            }
        }
        Ok(Self::from_upper(n, |i, j| rows[i][j]))
    }

    /// Row-major constructor; same checks as [`validate`](Self::validate).
    pub fn from_row_major(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(PcmError::NotSquare {
                row: 0,
                found: data.len(),
                expected: n * n,
            });
        }
        let rows: Vec<Vec<f64>> = data.chunks(n.max(1)).map(<[f64]>::to_vec).collect();
        Self::validate(&rows)
    }

    /// Builds a matrix from a function giving the strict upper triangle.
    /// Callers guarantee positivity.
    pub(crate) fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![1.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = upper(i, j);
                debug_assert!(v.is_finite() && v > 0.0, "non-positive entry {v}");
                data[i * n + j] = v;
                data[j * n + i] = 1.0 / v;
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from log-entries of the strict upper triangle.
    pub(crate) fn from_upper_logs(n: usize, mut upper: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![1.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let l = upper(i, j);
                data[i * n + j] = l.exp();
                data[j * n + i] = (-l).exp();
            }
        }
        Self { n, data }
    }

    pub fn all_ones(n: usize) -> Result<Self> {
        if n < MIN_ORDER {
            return Err(PcmError::OrderTooSmall(n));
        }
        Ok(Self::from_upper(n, |_, _| 1.0))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn to_positive(&self) -> PositiveMatrix {
        PositiveMatrix {
            n: self.n,
            data: self.data.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_upper(self.n, |i, j| self.get(j, i))
    }

    /// `true` iff `|a_ik - a_ij a_jk| <= tol * a_ik` for all `i, j, k`.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let aik = self.get(i, k);
                    if (aik - self.get(i, j) * self.get(j, k)).abs() > tol * aik {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The consistent matrix `a_ij = w_i / w_j`.
    pub fn from_priority_vector(w: &PriorityVector) -> Result<Self> {
        let n = w.len();
        if n < MIN_ORDER {
            return Err(PcmError::OrderTooSmall(n));
        }
        let w = w.as_slice();
        Ok(Self::from_upper(n, |i, j| w[i] / w[j]))
    }

    /// Row geometric means `w_i = (prod_j a_ij)^(1/n)`, computed in the log domain.
    pub fn geometric_mean_vector(&self) -> PriorityVector {
        PriorityVector(self.log_row_means().iter().map(|l| l.exp()).collect())
    }

    /// `(1/n) sum_j ln a_ij` for every row.
    pub fn log_row_means(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.data
            .chunks(self.n)
            .map(|row| row.iter().map(|a| a.ln()).sum::<f64>() / n)
            .collect()
    }

    /// Entry `(i, j)` of the result is `a_{p(i), p(j)}`, i.e. `P A P^T`.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        if p.len() != self.n {
            return Err(PcmError::LengthMismatch {
                expected: self.n,
                found: p.len(),
            });
        }
        let perm = p.as_slice();
        Ok(Self::from_upper(self.n, |i, j| self.get(perm[i], perm[j])))
    }

    /// Entrywise power `a_ij^b`.
    pub fn intensify(&self, b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(PcmError::InvalidParameter(format!(
                "intensification exponent must be positive, got {b}"
            )));
        }
        Ok(Self::from_upper_logs(self.n, |i, j| b * self.get(i, j).ln()))
    }

    /// Replaces `a_pq` by `a_pq^delta` and `a_qp` by `a_qp^delta`.
    pub fn perturb_entry(&self, p: usize, q: usize, delta: f64) -> Result<Self> {
        for idx in [p, q] {
            if idx >= self.n {
                return Err(PcmError::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        if p == q {
            return Err(PcmError::DiagonalEntry(p));
        }
        if !delta.is_finite() {
            return Err(PcmError::InvalidParameter(format!(
                "perturbation exponent must be finite, got {delta}"
            )));
        }
        let (lo, hi) = (p.min(q), p.max(q));
        Ok(Self::from_upper(self.n, |i, j| {
            if i == lo && j == hi {
                self.get(i, j).powf(delta)
            } else {
                self.get(i, j)
            }
        }))
    }

    /// One record per `i < j < k`, in lexicographic order.
    pub fn triad_products(&self) -> Vec<TriadProduct> {
        let mut out = Vec::with_capacity(triad_count(self.n));
        self.for_each_triad_log(|i, j, k, ln_t| {
            out.push(TriadProduct {
                i,
                j,
                k,
                value: ln_t.exp(),
            })
        });
        out
    }

    /// Calls `f(i, j, k, ln(a_ij a_jk a_ki))` for every `i < j < k`.
    pub fn for_each_triad_log(&self, mut f: impl FnMut(usize, usize, usize, f64)) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let lij = self.get(i, j).ln();
                for k in (j + 1)..n {
                    f(i, j, k, lij + self.get(j, k).ln() - self.get(i, k).ln());
                }
            }
        }
    }

    /// Log-triads `ln(a_ij a_jk a_ki)` in lexicographic `i < j < k` order.
    pub fn triad_logs(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(triad_count(self.n));
        self.for_each_triad_log(|_, _, _, l| out.push(l));
        out
    }
}

/// `C(n, 3)`.
pub fn triad_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Positive weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PriorityVector(Vec<f64>);

impl PriorityVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        for (i, &v) in w.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(PcmError::NonPositiveEntry { i, j: 0, value: v });
            }
        }
        Ok(Self(w))
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

    /// Rescaled copy summing to one.
    pub fn normalized(&self) -> Self {
        let s: f64 = self.0.iter().sum();
        Self(self.0.iter().map(|v| v / s).collect())
    }
}

impl TryFrom<Vec<f64>> for PriorityVector {
    type Error = PcmError;
    fn try_from(w: Vec<f64>) -> Result<Self> {
        Self::new(w)
    }
}

impl From<PriorityVector> for Vec<f64> {
    fn from(w: PriorityVector) -> Self {
        w.0
    }
}

/// Bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(PcmError::InvalidPermutation(n));
            }
        }
        Ok(Self(perm))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(PcmError::IndexOutOfRange { index: a.max(b), n });
        }
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Ok(Self(p))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// `t = a_ij a_jk a_ki` for one `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriadProduct {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_extreme() -> PairwiseComparisonMatrix {
        PairwiseComparisonMatrix::validate(&[
            vec![1.0, 1.0 / 9.0, 9.0],
            vec![9.0, 1.0, 1.0 / 9.0],
            vec![1.0 / 9.0, 9.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn validate_accepts_ones_and_extreme() {
        let ones = PairwiseComparisonMatrix::validate(&vec![vec![1.0; 3]; 3]).unwrap();
        assert!(ones.is_consistent(1e-12));
        assert!(!two_extreme().is_consistent(1e-9));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            PairwiseComparisonMatrix::validate(&[vec![1.0, 2.0], vec![0.5, 1.0]]),
            Err(PcmError::OrderTooSmall(2))
        );
        let bad = vec![vec![1.0, 2.0, 1.0], vec![0.5, 1.0, 1.0], vec![1.0, 1.0]];
        assert!(matches!(
            PairwiseComparisonMatrix::validate(&bad),
            Err(PcmError::NotSquare { row: 2, .. })
        ));
        let neg = vec![vec![1.0, -2.0, 1.0], vec![-0.5, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        assert!(matches!(
            PairwiseComparisonMatrix::validate(&neg),
            Err(PcmError::NonPositiveEntry { i: 0, j: 1, .. })
        ));
        let nonrec = vec![vec![1.0, 2.0, 1.0], vec![0.4, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        assert!(matches!(
            PairwiseComparisonMatrix::validate(&nonrec),
            Err(PcmError::NotReciprocal { i: 0, j: 1, .. })
        ));
        let diag = vec![vec![2.0, 1.0, 1.0], vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        assert!(matches!(
            PairwiseComparisonMatrix::validate(&diag),
            Err(PcmError::NotReciprocal { i: 0, j: 0, .. })
        ));
    }

    #[test]
    fn validate_canonicalizes_near_reciprocal_input() {
        let third = 1.0 / 3.0;
        let noisy = third * (1.0 + 5e-10);
        let m = PairwiseComparisonMatrix::validate(&[
            vec![1.0, 3.0, 1.0],
            vec![noisy, 1.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(m.get(1, 0), 1.0 / 3.0);
    }

    #[test]
    fn priority_vector_roundtrip() {
        let w = PriorityVector::new(vec![1.0, 2.0, 4.0]).unwrap();
        let m = PairwiseComparisonMatrix::from_priority_vector(&w).unwrap();
        assert_eq!(m.get(0, 2), 0.25);
        assert_eq!(m.get(2, 0), 4.0);
        assert!(m.is_consistent(1e-12));
        let g = m.geometric_mean_vector();
        let ratio = g.as_slice()[0] / 1.0;
        for (gi, wi) in g.as_slice().iter().zip(w.as_slice()) {
            assert!((gi / wi - ratio).abs() < 1e-14);
        }
    }

    #[test]
    fn geometric_mean_of_extreme_is_ones() {
        for w in two_extreme().geometric_mean_vector().as_slice() {
            assert!((w - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn permute_identity_and_swap() {
        let a = two_extreme();
        assert_eq!(a.permute(&Permutation::identity(3)).unwrap(), a);
        let s = a.permute(&Permutation::swap(3, 0, 1).unwrap()).unwrap();
        assert_eq!(s.get(0, 1), a.get(1, 0));
        assert_eq!(s.get(0, 2), a.get(1, 2));
        assert!(a.permute(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn intensify_cases() {
        let a = two_extreme();
        let same = a.intensify(1.0).unwrap();
        for (x, y) in same.as_slice().iter().zip(a.as_slice()) {
            assert!((x - y).abs() <= 1e-15 * y);
        }
        let ones = PairwiseComparisonMatrix::all_ones(4).unwrap();
        assert_eq!(ones.intensify(2.5).unwrap(), ones);
        assert!(a.intensify(0.0).is_err());
        let w = PriorityVector::new(vec![1.0, 3.0, 0.5, 2.0]).unwrap();
        let c = PairwiseComparisonMatrix::from_priority_vector(&w).unwrap();
        assert!(c.intensify(2.7).unwrap().is_consistent(1e-12));
    }

    #[test]
    fn perturb_entry_cases() {
        let w = PriorityVector::new(vec![1.0, 2.0, 4.0]).unwrap();
        let c = PairwiseComparisonMatrix::from_priority_vector(&w).unwrap();
        assert_eq!(c.perturb_entry(0, 1, 1.0).unwrap(), c);
        let p = c.perturb_entry(2, 0, 2.0).unwrap();
        assert!(!p.is_consistent(1e-9));
        assert_eq!(p.get(1, 0), c.get(1, 0));
        assert!((p.get(0, 2) - 0.0625).abs() < 1e-15);
        assert_eq!(c.perturb_entry(1, 1, 2.0), Err(PcmError::DiagonalEntry(1)));
    }

    #[test]
    fn triads() {
        let t = two_extreme().triad_products();
        assert_eq!(t.len(), 1);
        assert!((t[0].value - 1.0 / 729.0).abs() < 1e-15);
        let ones = PairwiseComparisonMatrix::all_ones(5).unwrap();
        let t = ones.triad_products();
        assert_eq!(t.len(), 10);
        assert!(t.iter().all(|t| t.value == 1.0));
    }

    #[test]
    fn json_record_roundtrip() {
        let a = two_extreme();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"n\":3,\"rows\":"));
        let back: PairwiseComparisonMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PairwiseComparisonMatrix>(
            r#"{"n":2,"rows":[[1,2],[0.5,1]]}"#
        )
        .is_err());
    }
}

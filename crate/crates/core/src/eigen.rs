//! Dominant eigenvalue of a positive matrix by power iteration.
//!
//! For an entrywise-positive matrix the Perron root is simple, real, and equal
//! to the spectral radius, so power iteration from any positive vector
//! converges. Each step also yields the Collatz–Wielandt bracket
//! `min_i (Mx)_i / x_i <= rho <= max_i (Mx)_i / x_i`, which certifies the
//! estimate.
//!
//! Strongly inconsistent reciprocal matrices have complex eigenvalues whose
//! modulus is close to the Perron root, and plain iteration needs tens of
//! thousands of steps there. The iterate is therefore advanced by `M^(2^k)`,
//! kept by repeated squaring, so step `k` applies `2^k` matrix products at
//! once. The stopping test always uses `M` itself.

use crate::error::{PcmError, Result};

/// Cap on the number of matrix-vector products represented by the iterate.
pub const MAX_ITERATIONS: usize = 100_000;

/// Convergence threshold on successive Rayleigh quotients.
pub const RAYLEIGH_TOL: f64 = 1e-12;

fn mat_vec(n: usize, m: &[f64], x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

/// `p * p`, rescaled so the largest entry is 1.
fn square_scaled(n: usize, p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let a = p[i * n + k];
            for j in 0..n {
                out[i * n + j] += a * p[k * n + j];
            }
        }
    }
    let top = out.iter().cloned().fold(0.0, f64::max);
    out.iter_mut().for_each(|v| *v /= top);
    out
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(PcmError::NoConvergence(0));
    }
    v.iter_mut().for_each(|a| *a /= norm);
    Ok(())
}

/// Spectral radius of the positive `n x n` row-major matrix `m`.
///
/// Starts from the all-ones vector. Stops once successive Rayleigh quotients
/// differ by less than [`RAYLEIGH_TOL`] and the Collatz–Wielandt bracket is no
/// wider than `RAYLEIGH_TOL * rho`.
pub fn perron_root(n: usize, m: &[f64]) -> Result<f64> {
    debug_assert_eq!(m.len(), n * n);
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut prev_rq = f64::NAN;
    let mut power = m.to_vec();
    let mut steps = 1usize;

    loop {
        mat_vec(n, m, &x, &mut y);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        // x has unit norm, so x.Mx is the Rayleigh quotient.
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let est = rq.clamp(lo, hi);
        let bracket_tight = hi - lo <= RAYLEIGH_TOL * hi;
        if bracket_tight && ((rq - prev_rq).abs() < RAYLEIGH_TOL || hi == lo) {
            return Ok(est);
        }
        if steps > MAX_ITERATIONS {
            return Err(PcmError::NoConvergence(MAX_ITERATIONS));
        }
        prev_rq = rq;
        mat_vec(n, &power, &x, &mut y);
        normalize(&mut y)?;
        std::mem::swap(&mut x, &mut y);
        power = square_scaled(n, &power);
        steps *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_matrix() {
        // w w^T^{-1} with w = (1, 2, 4): eigenvalue n
        let w = [1.0, 2.0, 4.0];
        let m: Vec<f64> = (0..9).map(|k| w[k / 3] / w[k % 3]).collect();
        assert!((perron_root(3, &m).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b], [c, d]]: rho = (a + d + sqrt((a - d)^2 + 4bc)) / 2
        let (a, b, c, d) = (2.0_f64, 7.0, 0.5, 3.0);
        let exact = (a + d + ((a - d) * (a - d) + 4.0 * b * c).sqrt()) / 2.0;
        let got = perron_root(2, &[a, b, c, d]).unwrap();
        assert!((got - exact).abs() < 1e-12, "{got} vs {exact}");
    }

    #[test]
    fn nonreciprocal_positive_matrix() {
        // Each row sums to 6, so rho = 6.
        let m = [1.0, 2.0, 3.0, 3.0, 2.0, 1.0, 2.0, 2.0, 2.0];
        assert!((perron_root(3, &m).unwrap() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn strongly_inconsistent_three_by_three() {
        // eigenvalues 1 + c w + 1/(c w) over cube roots of unity w
        for t in [729.0_f64, 9f64.powi(9), 1e-12] {
            let m = [1.0, t, 1.0 / t, 1.0 / t, 1.0, t, t, 1.0 / t, 1.0];
            let c = (t * t * t).cbrt();
            let exact = 1.0 + c + 1.0 / c;
            let got = perron_root(3, &m).unwrap();
            assert!((got - exact).abs() <= 1e-12 * exact, "{got} vs {exact}");
        }
    }
}

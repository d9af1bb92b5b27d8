use rand::Rng;

use crate::error::{invalid_param, Result};

/// `k ~ Binomial(n, p)` by inverse CDF from a single uniform draw.
///
/// The pmf is walked in log space so large `n` cannot underflow the first
/// term. One `f64` is consumed from `rng` regardless of `n`.
pub fn binomial_inverse_cdf<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let log_odds = (p / (1.0 - p)).ln();
    let mut log_pmf = n as f64 * (1.0 - p).ln();
    let mut cdf = 0.0;
    for k in 0..n {
        cdf += log_pmf.exp();
        if u < cdf {
            return k;
        }
        log_pmf += ((n - k) as f64 / (k + 1) as f64).ln() + log_odds;
    }
    n
}

/// Rejects sampling probabilities outside the open unit interval.
pub fn check_open_unit(name: &'static str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(invalid_param(name, format!("{p} is not in (0, 1)")))
    }
}

/// ⌈log₂ n⌉ for n ≥ 1.
pub fn ceil_log2(n: usize) -> u32 {
    assert!(n >= 1, "ceil_log2 of 0");
    usize::BITS - (n - 1).leading_zeros()
}

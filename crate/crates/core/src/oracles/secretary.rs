use crate::error::{invalid_param, Error, Result};

/// Largest `n` for which all `n!` orders are enumerated.
pub const SECRETARY_ENUMERATION_BUDGET: usize = 10;

/// Runs the cutoff rule on one order of ranks (higher rank = better) and
/// reports whether it picked the best element.
fn cutoff_rule_succeeds(ranks: &[usize], cutoff: usize) -> bool {
    let best_seen = ranks[..cutoff].iter().copied().max();
    let n = ranks.len();
    ranks[cutoff..]
        .iter()
        .find(|&&r| best_seen.is_none_or(|b| r > b))
        .is_some_and(|&r| r == n - 1)
}

/// `(successes, n!)` for the rule "observe the first `cutoff` elements, then
/// take the first one beating all of them", over every arrival order.
pub fn secretary_success_count(n: usize, cutoff: usize) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(invalid_param("n", "must be at least 1"));
    }
    if n > SECRETARY_ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            size: n,
            budget: SECRETARY_ENUMERATION_BUDGET,
        });
    }
    if cutoff >= n {
        return Err(invalid_param("cutoff_r", format!("{cutoff} >= n = {n}")));
    }
    // Heap's algorithm, iterative.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut successes = u64::from(cutoff_rule_succeeds(&perm, cutoff));
    let mut total = 1u64;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            successes += u64::from(cutoff_rule_succeeds(&perm, cutoff));
            total += 1;
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok((successes, total))
}

/// Exact probability that the cutoff rule selects the overall maximum.
pub fn secretary_success_prob_exact(n: usize, cutoff: usize) -> Result<f64> {
    let (s, t) = secretary_success_count(n, cutoff)?;
    Ok(s as f64 / t as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(secretary_success_count(2, 1).unwrap(), (1, 2));
        assert_eq!(secretary_success_count(3, 1).unwrap(), (3, 6));
        assert_eq!(secretary_success_prob_exact(1, 0).unwrap(), 1.0);
    }

    #[test]
    fn zero_cutoff_takes_first() {
        // the first element is the max in (n-1)! of n! orders
        assert_eq!(secretary_success_count(4, 0).unwrap(), (6, 24));
    }

    #[test]
    fn enumerates_all_orders() {
        assert_eq!(secretary_success_count(6, 2).unwrap().1, 720);
    }

    #[test]
    fn rejects_out_of_budget() {
        assert!(secretary_success_prob_exact(11, 3).is_err());
        assert!(secretary_success_prob_exact(0, 0).is_err());
        assert!(secretary_success_prob_exact(3, 3).is_err());
    }
}

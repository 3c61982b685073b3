//! Nodelist-size estimator for the trie baseline.
//!
//! The average nodelist holds min(u, sum over m <= M of C(g, m) times
//! (sigma - 1)^m) unique g-mers: the combinatorial neighborhood grows
//! exponentially in M until it exceeds the number of unique g-mers
//! actually present.

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodelistEstimate {
    /// u: unique g-mers observed in the corpus.
    pub unique_gmers: u64,
    /// Sum over m <= M of C(g, m): position-deletion patterns.
    pub pattern_count: u64,
    /// Sum over m <= M of C(g, m) (sigma - 1)^m, saturating.
    pub reach: u128,
    /// Estimated average nodelist size: min(u, reach).
    pub nodelist_size: u64,
    /// Whether the min clamped at u.
    pub clamped: bool,
}

/// Evaluate the estimate with exact integer arithmetic. Overflow in the
/// exponential term saturates, which is sound because the result is
/// clamped at u anyway.
pub fn estimate_complexity(
    unique_gmers: u64,
    g: usize,
    k: usize,
    sigma: usize,
    max_mismatch: usize,
) -> Result<NodelistEstimate> {
    if unique_gmers == 0 || g == 0 || k == 0 || sigma == 0 {
        return Err(Error::InvalidParams(
            "estimator inputs must all be at least 1".into(),
        ));
    }
    if k > g || max_mismatch > g - k {
        return Err(Error::InvalidParams(format!(
            "need k <= g and M <= g - k, got g={g} k={k} M={max_mismatch}"
        )));
    }

    let mut pattern_count = 0u64;
    let mut reach: u128 = 0;
    for m in 0..=max_mismatch {
        let ways = binomial(g as u64, m as u64)
            .ok_or(Error::Overflow("counting position-deletion patterns"))?;
        pattern_count = pattern_count
            .checked_add(ways)
            .ok_or(Error::Overflow("counting position-deletion patterns"))?;

        let mut term = ways as u128;
        for _ in 0..m {
            term = term.saturating_mul((sigma - 1) as u128);
        }
        reach = reach.saturating_add(term);
    }

    let nodelist_size = reach.min(unique_gmers as u128) as u64;
    Ok(NodelistEstimate {
        unique_gmers,
        pattern_count,
        reach,
        nodelist_size,
        clamped: reach >= unique_gmers as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_evaluation() {
        let est = estimate_complexity(1_000_000, 10, 9, 5, 1).unwrap();
        assert_eq!(est.reach, 41); // 1 + 10 * 4
        assert_eq!(est.nodelist_size, 41);
        assert!(!est.clamped);
        assert_eq!(est.pattern_count, 11);
    }

    #[test]
    fn clamps_at_unique_count() {
        let est = estimate_complexity(30, 10, 6, 20, 4).unwrap();
        assert!(est.reach > 30);
        assert_eq!(est.nodelist_size, 30);
        assert!(est.clamped);
    }

    #[test]
    fn pattern_count_at_full_mismatch_budget() {
        let est = estimate_complexity(1_000_000, 10, 6, 20, 4).unwrap();
        assert_eq!(est.pattern_count, 386); // 1 + 10 + 45 + 120 + 210
    }

    #[test]
    fn monotone_in_mismatches_and_sigma() {
        let u = 1_000_000_000;
        for sigma in [2usize, 4, 20, 36] {
            let mut previous = 0;
            for m in 0..=6 {
                let est = estimate_complexity(u, 10, 4, sigma, m).unwrap();
                assert!(est.nodelist_size >= previous);
                assert!(est.nodelist_size <= u);
                previous = est.nodelist_size;
            }
        }
        for m in 0..=6 {
            let mut previous = 0;
            for sigma in [2usize, 4, 20, 36] {
                let est = estimate_complexity(u, 10, 4, sigma, m).unwrap();
                assert!(est.nodelist_size >= previous);
                previous = est.nodelist_size;
            }
        }
    }

    #[test]
    fn saturation_is_clamped() {
        // sigma and M large enough that the exponential term overflows u128
        let est = estimate_complexity(50, 30, 1, 250, 29).unwrap();
        assert_eq!(est.nodelist_size, 50);
        assert!(est.clamped);
    }

    #[test]
    fn input_validation() {
        assert!(estimate_complexity(0, 10, 6, 20, 4).is_err());
        assert!(estimate_complexity(10, 10, 11, 20, 0).is_err());
        assert!(estimate_complexity(10, 10, 6, 20, 5).is_err());
    }
}

//! Brute-force correctness oracles.
//!
//! Deliberately dumb and independent of the counting engine: the pair
//! oracle walks every ordered g-mer pair and the feature-map oracle builds
//! explicit gapped k-mer count vectors. Test-scale only.

use std::collections::HashMap;

use crate::corpus::SequenceCorpus;
use crate::error::{Error, Result};
use crate::gmer::GMerTable;
use crate::matrix::SymMatrix;

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// N_0..N_M by direct enumeration: for every ordered pair of g-mer
/// records at Hamming distance d <= M, bump N_d[seq_a][seq_b]. Quadratic
/// in the record count.
pub fn brute_force_profiles(table: &GMerTable, max_mismatch: usize) -> Vec<SymMatrix<u64>> {
    let n = table.n_sequences();
    let mut dense = vec![vec![0u64; n * n]; max_mismatch + 1];
    for a in 0..table.len() {
        let (key_a, seq_a) = (table.key(a), table.seq(a) as usize);
        for b in 0..table.len() {
            let d = hamming(key_a, table.key(b));
            if d <= max_mismatch {
                dense[d][seq_a * n + table.seq(b) as usize] += 1;
            }
        }
    }
    dense.into_iter().map(|d| dense_to_sym(&d, n)).collect()
}

pub(crate) fn dense_to_sym(dense: &[u64], n: usize) -> SymMatrix<u64> {
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            assert_eq!(
                dense[i * n + j],
                dense[j * n + i],
                "oracle accumulation must be symmetric"
            );
            out.set(i, j, dense[i * n + j]);
        }
    }
    out
}

/// Default cap on (g-mer count) x (position masks) before the feature-map
/// oracle refuses to run.
pub const DEFAULT_FEATURE_LIMIT: u64 = 50_000_000;

/// The raw kernel as an explicit inner product of gapped k-mer count
/// vectors. A feature is a (kept-position mask, extracted symbols) pair,
/// so patterns from different masks never collide; only features observed
/// in the corpus are materialized.
pub fn feature_map_kernel(
    corpus: &SequenceCorpus,
    g: usize,
    k: usize,
    feature_limit: u64,
) -> Result<SymMatrix<u64>> {
    if k == 0 || k > g {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= g, got g={g} k={k}"
        )));
    }
    let masks = k_subsets(g, k);
    let total_gmers: u64 = corpus
        .records
        .iter()
        .map(|r| r.len().saturating_sub(g - 1) as u64)
        .sum();
    let instances = total_gmers.saturating_mul(masks.len() as u64);
    if instances > feature_limit {
        return Err(Error::FeatureLimit {
            instances,
            limit: feature_limit,
        });
    }

    type FeatureCounts = HashMap<(u32, Vec<u8>), u64>;
    let mut vectors: Vec<FeatureCounts> = Vec::with_capacity(corpus.n_sequences());
    for record in &corpus.records {
        let mut counts = FeatureCounts::new();
        for window in record.codes.windows(g) {
            for (mask_id, mask) in masks.iter().enumerate() {
                let symbols: Vec<u8> = mask.iter().map(|&p| window[p]).collect();
                *counts.entry((mask_id as u32, symbols)).or_insert(0) += 1;
            }
        }
        vectors.push(counts);
    }

    let n = corpus.n_sequences();
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let (small, large) = if vectors[i].len() <= vectors[j].len() {
                (&vectors[i], &vectors[j])
            } else {
                (&vectors[j], &vectors[i])
            };
            let mut dot = 0u64;
            for (feature, &ci) in small {
                if let Some(&cj) = large.get(feature) {
                    dot += ci * cj;
                }
            }
            out.set(i, j, dot);
        }
    }
    Ok(out)
}

/// All k-element subsets of 0..g (the kept-position masks), lexicographic.
fn k_subsets(g: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(g: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for p in start..=g - remaining {
            current.push(p);
            rec(g, k, p + 1, current, out);
            current.pop();
        }
    }
    rec(g, k, 0, &mut current, &mut out);
    out
}

//! Seeded synthetic corpora for benchmarks and self-tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, ALPHANUMERIC};
use crate::corpus::{SequenceCorpus, SequenceRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n_sequences: usize,
    pub length: usize,
    pub sigma: usize,
    pub seed: u64,
    /// 0 draws symbols i.i.d. uniform; above 0, symbol ranks follow a
    /// Zipf distribution with this exponent (skewed text-like data).
    pub skew: f64,
}

/// Generate a corpus deterministically from the spec. The same spec always
/// yields byte-identical encodings.
pub fn generate_corpus(spec: &SynthSpec) -> Result<SequenceCorpus> {
    if spec.sigma == 0 || spec.sigma > ALPHANUMERIC.len() {
        return Err(Error::InvalidParams(format!(
            "generator sigma must be in 1..={}, got {}",
            ALPHANUMERIC.len(),
            spec.sigma
        )));
    }
    if spec.skew < 0.0 {
        return Err(Error::InvalidParams("generator skew must be >= 0".into()));
    }
    let alphabet = Alphabet::from_symbols(&ALPHANUMERIC[..spec.sigma])?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    // cumulative distribution over symbol codes
    let cdf: Option<Vec<f64>> = if spec.skew > 0.0 {
        let weights: Vec<f64> = (0..spec.sigma)
            .map(|rank| 1.0 / ((rank + 1) as f64).powf(spec.skew))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        Some(
            weights
                .iter()
                .map(|w| {
                    acc += w / total;
                    acc
                })
                .collect(),
        )
    } else {
        None
    };

    let records = (0..spec.n_sequences)
        .map(|i| {
            let codes: Vec<u8> = (0..spec.length)
                .map(|_| match &cdf {
                    None => rng.random_range(0..spec.sigma) as u8,
                    Some(cdf) => {
                        let r: f64 = rng.random();
                        cdf.partition_point(|&edge| edge < r).min(spec.sigma - 1) as u8
                    }
                })
                .collect();
            SequenceRecord {
                id: format!("seq{i}"),
                label: None,
                codes,
            }
        })
        .collect();

    Ok(SequenceCorpus { alphabet, records })
}

//! Kernel pipeline: cumulative mismatch profiles over position subsets,
//! exact mismatch recovery, coefficient weighting, assembly, and cosine
//! normalization.
//!
//! For each mismatch count m the cumulative profile C_m sums, over all
//! C(g, m) ways of deleting m positions, the matching statistics of the
//! projected (g-m)-mers. C_m over-counts closer pairs by binomial factors;
//! subtracting them back recovers the exact profile N_m, and the kernel is
//! the h_m-weighted sum of the N_m. Every count is an exact u64 with
//! checked arithmetic, so results are identical for any worker count.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial_checked;
use crate::corpus::SequenceCorpus;
use crate::error::{Error, Result};
use crate::gmer::{self, extract_gmers, GMerTable};
use crate::matrix::{tri_len, SymMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelParams {
    /// Window length g.
    pub g: usize,
    /// Informative positions k inside each window.
    pub k: usize,
    /// Mismatch cap; at most g - k, which is also the default.
    pub max_mismatch: usize,
    /// Fill the cosine-normalized matrix as well as the raw counts.
    pub normalize: bool,
    /// Worker count for the per-m parallel stage.
    pub threads: usize,
    /// Also parallelize over position subsets inside each m. Faster, but
    /// every in-flight subset holds a private matrix, so peak memory grows.
    pub two_level_parallel: bool,
}

impl KernelParams {
    pub fn new(g: usize, k: usize) -> Self {
        KernelParams {
            g,
            k,
            max_mismatch: g.saturating_sub(k),
            normalize: false,
            threads: 1,
            two_level_parallel: false,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_normalize(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }

    pub fn with_max_mismatch(mut self, max_mismatch: usize) -> Self {
        self.max_mismatch = max_mismatch;
        self
    }

    pub fn with_two_level(mut self, two_level: bool) -> Self {
        self.two_level_parallel = two_level;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.g {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= g, got g={} k={}",
                self.g, self.k
            )));
        }
        if self.max_mismatch > self.g - self.k {
            return Err(Error::InvalidParams(format!(
                "max_mismatch {} exceeds g - k = {}",
                self.max_mismatch,
                self.g - self.k
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParams("threads must be at least 1".into()));
        }
        // every binomial the pipeline multiplies with must stay below 2^63
        for m in 0..=self.max_mismatch {
            for j in 0..=m {
                if binomial_checked((self.g - j) as u64, (m - j) as u64).is_none() {
                    return Err(Error::InvalidParams(format!(
                        "C({}, {}) exceeds the 2^63 coefficient bound",
                        self.g - j,
                        m - j
                    )));
                }
            }
            if binomial_checked((self.g - m) as u64, self.k as u64).is_none() {
                return Err(Error::InvalidParams(format!(
                    "C({}, {}) exceeds the 2^63 coefficient bound",
                    self.g - m,
                    self.k
                )));
            }
        }
        Ok(())
    }
}

/// The weights h_m = C(g - m, k): the number of gapped k-mers two g-mers
/// at Hamming distance m share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    g: usize,
    k: usize,
    h: Vec<u64>,
}

impl CoefficientTable {
    pub fn new(g: usize, k: usize) -> Result<Self> {
        if k == 0 || k > g {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= g, got g={g} k={k}"
            )));
        }
        let h = (0..=g - k)
            .map(|m| {
                binomial_checked((g - m) as u64, k as u64)
                    .ok_or(Error::Overflow("computing a kernel coefficient"))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(CoefficientTable { g, k, h })
    }

    /// h_m; zero once m exceeds g - k.
    pub fn h(&self, m: usize) -> u64 {
        self.h.get(m).copied().unwrap_or(0)
    }

    /// Largest m with a nonzero coefficient, g - k.
    pub fn max_mismatch(&self) -> usize {
        self.g - self.k
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.h
    }
}

/// Convenience constructor mirroring [`CoefficientTable::new`].
pub fn coefficients(g: usize, k: usize) -> Result<CoefficientTable> {
    CoefficientTable::new(g, k)
}

/// One cumulative profile C_m plus the grouping statistics gathered while
/// computing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulativeProfile {
    pub matrix: SymMatrix<u64>,
    /// Runs with two or more occurrences, summed over position subsets.
    pub groups: u64,
    /// Distinct projected keys, summed over position subsets. For m = 0
    /// this is u, the number of unique g-mers in the corpus.
    pub distinct_keys: u64,
}

/// Compute C_m: the sum over all C(g, m) position subsets of the
/// match-group statistics of the projected table. Order independent by
/// construction, so the result is identical for any worker count.
pub fn cumulative_profile(table: &GMerTable, m: usize, two_level: bool) -> Result<CumulativeProfile> {
    if m >= table.g().max(1) {
        return Err(Error::InvalidParams(format!(
            "m = {m} must be below g = {}",
            table.g()
        )));
    }
    let n = table.n_sequences();
    let sets = gmer::enumerate_position_sets(table.g(), m)?;

    let apply_set = |matrix: &mut SymMatrix<u64>, groups: &mut u64, set: &gmer::PositionSet| {
        let kept = set.kept(table.g());
        gmer::for_each_run(table, &kept, |run| {
            if run.len() == 1 && run[0].1 == 1 {
                matrix.add_entry(run[0].0 as usize, run[0].0 as usize, 1)
            } else {
                *groups += 1;
                gmer::add_run(run, matrix)
            }
        })
    };

    if two_level {
        let (matrix, groups, distinct_keys) = sets
            .par_iter()
            .try_fold(
                || (SymMatrix::zeros(n), 0u64, 0u64),
                |(mut matrix, mut groups, mut distinct), set| {
                    distinct += apply_set(&mut matrix, &mut groups, set)?;
                    Ok((matrix, groups, distinct))
                },
            )
            .try_reduce(
                || (SymMatrix::zeros(n), 0u64, 0u64),
                |(mut a, ga, da), (b, gb, db)| {
                    a.add_matrix(&b)?;
                    Ok((a, ga + gb, da + db))
                },
            )?;
        Ok(CumulativeProfile {
            matrix,
            groups,
            distinct_keys,
        })
    } else {
        let mut matrix = SymMatrix::zeros(n);
        let mut groups = 0u64;
        let mut distinct_keys = 0u64;
        for set in &sets {
            distinct_keys += apply_set(&mut matrix, &mut groups, set)?;
        }
        Ok(CumulativeProfile {
            matrix,
            groups,
            distinct_keys,
        })
    }
}

/// Recover the exact mismatch profiles N_0..N_M from the cumulative ones:
/// N_0 = C_0 and N_m = C_m - sum_{j<m} C(g-j, m-j) N_j. A negative entry
/// cannot occur on correct inputs and is reported as an internal error.
pub fn mismatch_from_cumulative(
    cumulative: &[SymMatrix<u64>],
    g: usize,
) -> Result<Vec<SymMatrix<u64>>> {
    let mut exact: Vec<SymMatrix<u64>> = Vec::with_capacity(cumulative.len());
    for (m, c_m) in cumulative.iter().enumerate() {
        let mut n_m = c_m.clone();
        for (j, n_j) in exact.iter().enumerate() {
            let factor = binomial_checked((g - j) as u64, (m - j) as u64)
                .ok_or(Error::Overflow("computing an over-count factor"))?;
            n_m.sub_scaled(n_j, factor)?;
        }
        exact.push(n_m);
    }
    Ok(exact)
}

/// Rebuild cumulative profiles from exact ones (the inverse identity);
/// used to audit the recovery.
pub fn cumulative_from_mismatch(
    exact: &[SymMatrix<u64>],
    g: usize,
) -> Result<Vec<SymMatrix<u64>>> {
    let mut cumulative = Vec::with_capacity(exact.len());
    for m in 0..exact.len() {
        let mut c_m = exact[m].clone();
        for (j, n_j) in exact.iter().enumerate().take(m) {
            let factor = binomial_checked((g - j) as u64, (m - j) as u64)
                .ok_or(Error::Overflow("computing an over-count factor"))?;
            c_m.add_scaled(n_j, factor)?;
        }
        cumulative.push(c_m);
    }
    Ok(cumulative)
}

/// Weighted assembly: raw[i][j] = sum over m <= cap of h_m * N_m[i][j].
pub fn assemble_kernel(
    exact: &[SymMatrix<u64>],
    coeffs: &CoefficientTable,
    max_mismatch: usize,
) -> Result<SymMatrix<u64>> {
    let first = exact
        .first()
        .ok_or_else(|| Error::InvalidParams("no mismatch profiles to assemble".into()))?;
    let bound = max_mismatch.min(coeffs.max_mismatch());
    if exact.len() <= bound {
        return Err(Error::InvalidParams(format!(
            "need profiles up to m = {bound}, have {}",
            exact.len()
        )));
    }
    let mut raw = SymMatrix::zeros(first.n());
    for (m, n_m) in exact.iter().enumerate().take(bound + 1) {
        raw.add_scaled(n_m, coeffs.h(m))?;
    }
    Ok(raw)
}

/// Cosine normalization: raw[i][j] / sqrt(raw[i][i] * raw[j][j]), zero
/// whenever either self-kernel is zero, and exactly 1 on the defined
/// diagonal.
pub fn normalize_matrix(raw: &SymMatrix<u64>) -> SymMatrix<f64> {
    let n = raw.n();
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        let di = raw.get(i, i);
        if di == 0 {
            continue;
        }
        out.set(i, i, 1.0);
        for j in i + 1..n {
            let dj = raw.get(j, j);
            if dj == 0 {
                continue;
            }
            let denom = (di as f64 * dj as f64).sqrt();
            out.set(i, j, raw.get(i, j) as f64 / denom);
        }
    }
    out
}

/// The full mismatch-profile stack with corpus counting statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileStack {
    pub cumulative: Vec<SymMatrix<u64>>,
    pub exact: Vec<SymMatrix<u64>>,
    pub stats: CountStats,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CountStats {
    /// u: unique g-mers in the corpus.
    pub unique_gmers: u64,
    /// z: unique g-mers occurring more than once.
    pub repeated_gmers: u64,
    /// Match groups per m, summed over that m's position subsets.
    pub groups_per_m: Vec<u64>,
    /// Total extracted g-mer records.
    pub gmer_total: u64,
}

/// Final kernel: raw integer counts plus the optional normalized view.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    pub raw: SymMatrix<u64>,
    pub normalized: Option<SymMatrix<f64>>,
    pub params: KernelParams,
    pub sequence_ids: Vec<String>,
    pub labels: Vec<Option<i64>>,
}

impl KernelMatrix {
    pub fn n(&self) -> usize {
        self.raw.n()
    }

    /// Fill the normalized view (idempotent).
    pub fn normalize(&mut self) {
        if self.normalized.is_none() {
            self.normalized = Some(normalize_matrix(&self.raw));
        }
    }
}

/// Wall-clock stage times and counting statistics for one kernel job.
#[derive(Debug, Clone)]
pub struct TimingReport {
    /// Stage names: extract, cumulative[m], recover, assemble, normalize.
    pub stages: Vec<(String, Duration)>,
    pub stats: CountStats,
    /// Rough upper bound on matrix memory held at once, in bytes.
    pub peak_matrix_bytes: u64,
    /// Index of the first test sequence when train/test files were
    /// concatenated.
    pub train_boundary: Option<usize>,
}

impl TimingReport {
    /// Key/value text, one line each, seconds at millisecond resolution.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, dur) in &self.stages {
            out.push_str(&format!(
                "stage.{}.seconds\t{:.3}\n",
                name,
                dur.as_secs_f64()
            ));
        }
        out.push_str(&format!("stat.gmer_total\t{}\n", self.stats.gmer_total));
        out.push_str(&format!("stat.unique_gmers\t{}\n", self.stats.unique_gmers));
        out.push_str(&format!(
            "stat.repeated_gmers\t{}\n",
            self.stats.repeated_gmers
        ));
        for (m, groups) in self.stats.groups_per_m.iter().enumerate() {
            out.push_str(&format!("stat.groups[{m}]\t{groups}\n"));
        }
        out.push_str(&format!(
            "stat.peak_matrix_bytes\t{}\n",
            self.peak_matrix_bytes
        ));
        if let Some(boundary) = self.train_boundary {
            out.push_str(&format!("stat.train_boundary\t{boundary}\n"));
        }
        out
    }
}

pub struct KernelOutput {
    pub kernel: KernelMatrix,
    pub profiles: ProfileStack,
    pub timing: TimingReport,
}

/// Run the whole pipeline: extract, per-m cumulative profiles (parallel),
/// exact recovery, weighted assembly, optional normalization.
pub fn compute_kernel(corpus: &SequenceCorpus, params: &KernelParams) -> Result<KernelOutput> {
    params.validate()?;
    if corpus.records.is_empty() {
        return Err(Error::InvalidParams("corpus has no sequences".into()));
    }

    let t = Instant::now();
    let table = extract_gmers(corpus, params.g)?;
    let extract_time = t.elapsed();

    let coeffs = CoefficientTable::new(params.g, params.k)?;
    let cap = params.max_mismatch;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot build thread pool: {e}")))?;
    let two_level = params.two_level_parallel;
    let per_m: Vec<Result<(CumulativeProfile, Duration)>> = pool.install(|| {
        (0..=cap)
            .into_par_iter()
            .map(|m| {
                let t = Instant::now();
                cumulative_profile(&table, m, two_level).map(|p| (p, t.elapsed()))
            })
            .collect()
    });

    let mut cumulative = Vec::with_capacity(cap + 1);
    let mut cumulative_times = Vec::with_capacity(cap + 1);
    let mut stats = CountStats {
        gmer_total: table.len() as u64,
        ..CountStats::default()
    };
    for (m, outcome) in per_m.into_iter().enumerate() {
        let (profile, duration) = outcome?;
        if m == 0 {
            stats.unique_gmers = profile.distinct_keys;
            stats.repeated_gmers = profile.groups;
        }
        stats.groups_per_m.push(profile.groups);
        cumulative.push(profile.matrix);
        cumulative_times.push(duration);
    }

    let t = Instant::now();
    let exact = mismatch_from_cumulative(&cumulative, params.g)?;
    let recover_time = t.elapsed();

    let t = Instant::now();
    let raw = assemble_kernel(&exact, &coeffs, cap)?;
    let assemble_time = t.elapsed();

    let (normalized, normalize_time) = if params.normalize {
        let t = Instant::now();
        let normalized = normalize_matrix(&raw);
        (Some(normalized), t.elapsed())
    } else {
        (None, Duration::ZERO)
    };

    let n = corpus.n_sequences();
    let tri_bytes = (tri_len(n) * 8) as u64;
    let mut held = 2 * (cap as u64 + 1) + 1 + u64::from(params.normalize);
    if params.two_level_parallel {
        held += params.threads.saturating_sub(1) as u64;
    }
    let peak_matrix_bytes = held * tri_bytes;

    let mut stages = vec![("extract".to_string(), extract_time)];
    for (m, duration) in cumulative_times.into_iter().enumerate() {
        stages.push((format!("cumulative[{m}]"), duration));
    }
    stages.push(("recover".to_string(), recover_time));
    stages.push(("assemble".to_string(), assemble_time));
    stages.push(("normalize".to_string(), normalize_time));

    Ok(KernelOutput {
        kernel: KernelMatrix {
            raw,
            normalized,
            params: params.clone(),
            sequence_ids: corpus.ids(),
            labels: corpus.labels(),
        },
        profiles: ProfileStack {
            cumulative,
            exact,
            stats: stats.clone(),
        },
        timing: TimingReport {
            stages,
            stats,
            peak_matrix_bytes,
            train_boundary: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{encode_records, RawRecord};

    fn corpus_of(texts: &[&str]) -> SequenceCorpus {
        let raw = texts
            .iter()
            .enumerate()
            .map(|(i, t)| RawRecord {
                id: format!("s{i}"),
                label: None,
                text: t.as_bytes().to_vec(),
            })
            .collect();
        encode_records(raw, Some(b"ACGT")).unwrap()
    }

    fn worked_example() -> SequenceCorpus {
        corpus_of(&["ACACA", "AAACA"])
    }

    #[test]
    fn coefficient_tables() {
        let c = coefficients(3, 2).unwrap();
        assert_eq!(c.as_slice(), &[3, 1]);
        assert_eq!(c.h(0), 3);
        assert_eq!(c.h(5), 0);

        let c = coefficients(10, 3).unwrap();
        assert_eq!(c.h(8), 0); // g - m = 2 < k

        let c = coefficients(10, 6).unwrap();
        assert_eq!(c.as_slice(), &[210, 84, 28, 7, 1]);
        // strictly decreasing while positive
        assert!(c.as_slice().windows(2).all(|w| w[0] > w[1]));

        assert!(coefficients(3, 4).is_err());
        assert!(coefficients(3, 0).is_err());
    }

    #[test]
    fn worked_example_cumulative_m1() {
        let table = extract_gmers(&worked_example(), 3).unwrap();
        let c1 = cumulative_profile(&table, 1, false).unwrap();
        assert_eq!(c1.matrix.get(0, 1), 9);
        assert_eq!(c1.matrix.get(0, 0), 15);
        assert_eq!(c1.matrix.get(1, 1), 13);
    }

    #[test]
    fn cumulative_m0_matches_direct_grouping() {
        let table = extract_gmers(&worked_example(), 3).unwrap();
        let c0 = cumulative_profile(&table, 0, false).unwrap();
        let counts = gmer::sort_and_count(&table);
        let mut expect = SymMatrix::zeros(2);
        gmer::accumulate_groups(&counts.groups, &mut expect).unwrap();
        gmer::accumulate_singletons(&counts.singletons, &mut expect).unwrap();
        assert_eq!(c0.matrix, expect);
        assert_eq!(c0.distinct_keys, 4);
        assert_eq!(c0.groups, 1);
        assert_eq!(c0.matrix.get(0, 1), 2);
    }

    #[test]
    fn worked_example_recovery() {
        let table = extract_gmers(&worked_example(), 3).unwrap();
        let cumulative: Vec<_> = (0..=1)
            .map(|m| cumulative_profile(&table, m, false).unwrap().matrix)
            .collect();
        let exact = mismatch_from_cumulative(&cumulative, 3).unwrap();
        assert_eq!(exact[0], cumulative[0]);
        assert_eq!(exact[1].get(0, 1), 3); // 9 - 3 * 2
        assert_eq!(exact[1].get(0, 0), 0); // 15 - 3 * 5
        assert_eq!(exact[1].get(1, 1), 4); // 13 - 3 * 3
    }

    #[test]
    fn recovery_flags_inconsistent_input() {
        let mut c0 = SymMatrix::zeros(1);
        c0.set(0, 0, 5);
        let c1 = SymMatrix::zeros(1); // impossible: C_1 >= 3 * N_0
        assert!(matches!(
            mismatch_from_cumulative(&[c0, c1], 3),
            Err(Error::Inconsistency(_))
        ));
    }

    #[test]
    fn worked_example_assembly_and_kernel() {
        let params = KernelParams::new(3, 2);
        let out = compute_kernel(&worked_example(), &params).unwrap();
        assert_eq!(out.kernel.raw.to_dense(), vec![vec![15, 9], vec![9, 13]]);
        assert_eq!(out.profiles.stats.unique_gmers, 4);
        assert_eq!(out.profiles.stats.repeated_gmers, 1);
        assert_eq!(out.profiles.stats.gmer_total, 6);

        // k = g keeps only the exact-match profile with weight 1
        let params = KernelParams::new(3, 3);
        let out = compute_kernel(&worked_example(), &params).unwrap();
        assert_eq!(out.kernel.raw.get(0, 1), 2);
    }

    #[test]
    fn single_sequence_corpus() {
        let params = KernelParams::new(3, 2);
        let out = compute_kernel(&corpus_of(&["ACACA"]), &params).unwrap();
        assert_eq!(out.kernel.raw.to_dense(), vec![vec![15]]);
    }

    #[test]
    fn normalization_contract() {
        let params = KernelParams::new(3, 2).with_normalize(true);
        let out = compute_kernel(&worked_example(), &params).unwrap();
        let norm = out.kernel.normalized.as_ref().unwrap();
        assert_eq!(norm.get(0, 0), 1.0);
        assert_eq!(norm.get(1, 1), 1.0);
        let expect = 9.0 / (15.0f64 * 13.0).sqrt();
        assert_eq!(norm.get(0, 1), expect);
        assert_eq!(format!("{:.6}", norm.get(0, 1)), "0.644503");

        // identical sequences: off-diagonal exactly 1
        let out = compute_kernel(&corpus_of(&["ACACA", "ACACA"]), &params).unwrap();
        assert_eq!(out.kernel.normalized.as_ref().unwrap().get(0, 1), 1.0);

        // a sequence shorter than g has a zero row and zero diagonal
        let out = compute_kernel(&corpus_of(&["ACACA", "AC"]), &params).unwrap();
        assert_eq!(out.kernel.raw.get(1, 1), 0);
        assert_eq!(out.kernel.raw.get(0, 1), 0);
        let norm = out.kernel.normalized.as_ref().unwrap();
        assert_eq!(norm.get(1, 1), 0.0);
        assert_eq!(norm.get(0, 1), 0.0);
    }

    #[test]
    fn corpus_with_no_gmers_yields_zero_matrices() {
        let params = KernelParams::new(3, 2).with_normalize(true);
        let out = compute_kernel(&corpus_of(&["AC", "A"]), &params).unwrap();
        assert_eq!(out.kernel.raw.to_dense(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(out.profiles.stats.unique_gmers, 0);
        assert_eq!(out.profiles.stats.gmer_total, 0);
        assert_eq!(out.kernel.normalized.as_ref().unwrap().get(0, 0), 0.0);
    }

    #[test]
    fn mismatch_cap_truncates_the_sum() {
        let corpus = corpus_of(&["ACACAGT", "AAACAGG"]);
        let full = compute_kernel(&corpus, &KernelParams::new(5, 2)).unwrap();
        let mut previous = None;
        for cap in 0..=3 {
            let params = KernelParams::new(5, 2).with_max_mismatch(cap);
            let out = compute_kernel(&corpus, &params).unwrap();
            if let Some(prev) = previous.take() {
                let prev: SymMatrix<u64> = prev;
                for i in 0..2 {
                    for j in 0..2 {
                        assert!(out.kernel.raw.get(i, j) >= prev.get(i, j));
                    }
                }
            }
            previous = Some(out.kernel.raw.clone());
        }
        assert_eq!(previous.unwrap(), full.kernel.raw);
    }

    #[test]
    fn param_validation() {
        assert!(KernelParams::new(3, 2).validate().is_ok());
        assert!(KernelParams::new(3, 4).validate().is_err());
        assert!(KernelParams::new(3, 0).validate().is_err());
        let mut p = KernelParams::new(3, 2);
        p.max_mismatch = 2;
        assert!(p.validate().is_err());
        let mut p = KernelParams::new(3, 2);
        p.threads = 0;
        assert!(p.validate().is_err());
        // C(80, 40) overflows the 2^63 bound
        assert!(KernelParams::new(80, 40).validate().is_err());
    }

    #[test]
    fn eq8_identity_round_trips() {
        let corpus = corpus_of(&["ACACAGTAC", "AAACAGGTT", "GTGTGT"]);
        let out = compute_kernel(&corpus, &KernelParams::new(4, 1)).unwrap();
        let rebuilt = cumulative_from_mismatch(&out.profiles.exact, 4).unwrap();
        assert_eq!(rebuilt, out.profiles.cumulative);
    }

    #[test]
    fn timing_report_text_shape() {
        let out = compute_kernel(&worked_example(), &KernelParams::new(3, 2)).unwrap();
        let text = out.timing.to_text();
        assert!(text.contains("stage.extract.seconds\t"));
        assert!(text.contains("stage.cumulative[0].seconds\t"));
        assert!(text.contains("stage.cumulative[1].seconds\t"));
        assert!(text.contains("stage.recover.seconds\t"));
        assert!(text.contains("stat.unique_gmers\t4"));
        assert!(text.contains("stat.gmer_total\t6"));
    }
}

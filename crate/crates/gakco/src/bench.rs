//! Engine comparison harness over seeded synthetic corpora, plus the
//! built-in self test.
//!
//! Every benchmark point runs the counting engine single threaded, the
//! counting engine multi threaded, and the trie baseline on the same
//! corpus, and refuses to emit a row unless all three raw matrices are
//! identical. Wall clocks wrap kernel computation only.

use std::io::Write;
use std::time::Instant;

use crate::corpus::SequenceCorpus;
use crate::error::{Error, Result};
use crate::estimate::estimate_complexity;
use crate::gmer::extract_gmers;
use crate::kernel::{assemble_kernel, coefficients, compute_kernel, KernelParams};
use crate::matrix::SymMatrix;
use crate::oracle::{brute_force_profiles, feature_map_kernel, DEFAULT_FEATURE_LIMIT};
use crate::synth::{generate_corpus, SynthSpec};
use crate::trie::trie_profiles;

#[derive(Debug, Clone)]
pub struct BenchPoint {
    pub n_sequences: usize,
    pub length: usize,
    pub sigma: usize,
    pub g: usize,
    pub k: usize,
    pub max_mismatch: usize,
    pub skew: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    pub point: BenchPoint,
    pub gakco_single_secs: f64,
    pub gakco_multi_secs: f64,
    pub trie_secs: f64,
    pub unique_gmers: u64,
    pub repeated_gmers: u64,
    pub nodelist_size: u64,
    /// Always true in emitted rows; disagreement aborts the run instead.
    pub agreement: bool,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub g: usize,
    pub ks: Vec<usize>,
    pub ns: Vec<usize>,
    pub length: usize,
    pub sigma: usize,
    pub skew: f64,
    pub seed: u64,
    pub threads: usize,
    pub max_mismatch: Option<usize>,
}

/// Time the trie baseline end to end: extraction, profile traversal, and
/// weighted assembly.
pub fn time_trie_kernel(
    corpus: &SequenceCorpus,
    g: usize,
    k: usize,
    max_mismatch: usize,
) -> Result<(SymMatrix<u64>, f64)> {
    let started = Instant::now();
    let table = extract_gmers(corpus, g)?;
    let profiles = trie_profiles(&table, max_mismatch);
    let coeffs = coefficients(g, k)?;
    let raw = assemble_kernel(&profiles, &coeffs, max_mismatch)?;
    Ok((raw, started.elapsed().as_secs_f64()))
}

/// Run all engines on one corpus and verify exact agreement.
pub fn bench_corpus(
    corpus: &SequenceCorpus,
    point: BenchPoint,
    threads: usize,
) -> Result<BenchResult> {
    let single_params = KernelParams::new(point.g, point.k)
        .with_max_mismatch(point.max_mismatch)
        .with_threads(1);
    let started = Instant::now();
    let single = compute_kernel(corpus, &single_params)?;
    let gakco_single_secs = started.elapsed().as_secs_f64();

    let multi_params = single_params.clone().with_threads(threads);
    let started = Instant::now();
    let multi = compute_kernel(corpus, &multi_params)?;
    let gakco_multi_secs = started.elapsed().as_secs_f64();

    let (trie_raw, trie_secs) = time_trie_kernel(corpus, point.g, point.k, point.max_mismatch)?;

    for (name, other) in [("multi-thread", &multi.kernel.raw), ("trie", &trie_raw)] {
        if other != &single.kernel.raw {
            return Err(Error::Inconsistency(diff_summary(
                name,
                &single.kernel.raw,
                other,
            )));
        }
    }

    let stats = &single.profiles.stats;
    let nodelist_size = if stats.unique_gmers == 0 {
        0
    } else {
        estimate_complexity(
            stats.unique_gmers,
            point.g,
            point.k,
            corpus.alphabet.size(),
            point.max_mismatch,
        )?
        .nodelist_size
    };

    Ok(BenchResult {
        point,
        gakco_single_secs,
        gakco_multi_secs,
        trie_secs,
        unique_gmers: stats.unique_gmers,
        repeated_gmers: stats.repeated_gmers,
        nodelist_size,
        agreement: true,
    })
}

fn diff_summary(engine: &str, expected: &SymMatrix<u64>, actual: &SymMatrix<u64>) -> String {
    let n = expected.n();
    for i in 0..n {
        for j in i..n {
            if expected.get(i, j) != actual.get(i, j) {
                return format!(
                    "{engine} engine disagrees at ({i}, {j}): expected {}, got {}",
                    expected.get(i, j),
                    actual.get(i, j)
                );
            }
        }
    }
    format!("{engine} engine disagrees (matrix size mismatch)")
}

/// Sweep the configured N and k grids; one corpus per point, all engines
/// per corpus.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchResult>> {
    if cfg.ks.is_empty() || cfg.ns.is_empty() {
        return Err(Error::InvalidParams(
            "bench needs at least one k and one N".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut point_index = 0u64;
    for &n in &cfg.ns {
        for &k in &cfg.ks {
            let max_mismatch = cfg
                .max_mismatch
                .unwrap_or_else(|| cfg.g.saturating_sub(k))
                .min(cfg.g.saturating_sub(k));
            let seed = cfg.seed.wrapping_add(point_index);
            point_index += 1;
            let corpus = generate_corpus(&SynthSpec {
                n_sequences: n,
                length: cfg.length,
                sigma: cfg.sigma,
                seed,
                skew: cfg.skew,
            })?;
            let point = BenchPoint {
                n_sequences: n,
                length: cfg.length,
                sigma: cfg.sigma,
                g: cfg.g,
                k,
                max_mismatch,
                skew: cfg.skew,
                seed,
            };
            rows.push(bench_corpus(&corpus, point, cfg.threads)?);
        }
    }
    Ok(rows)
}

/// TSV rows, one line per (engine, parameter point).
pub fn write_bench_rows(rows: &[BenchResult], out: &mut impl Write) -> Result<()> {
    let io_err = |e: std::io::Error| Error::io("<writer>", e);
    writeln!(
        out,
        "engine\tn\tl\tsigma\tg\tk\tmax_mismatch\tskew\tseed\tseconds\tunique_gmers\trepeated_gmers\tnodelist_size\tagreement"
    )
    .map_err(io_err)?;
    for row in rows {
        let p = &row.point;
        for (engine, secs) in [
            ("gakco_single", row.gakco_single_secs),
            ("gakco_multi", row.gakco_multi_secs),
            ("trie", row.trie_secs),
        ] {
            writeln!(
                out,
                "{engine}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{}\t{}\t{}\t{}",
                p.n_sequences,
                p.length,
                p.sigma,
                p.g,
                p.k,
                p.max_mismatch,
                p.skew,
                p.seed,
                secs,
                row.unique_gmers,
                row.repeated_gmers,
                row.nodelist_size,
                row.agreement
            )
            .map_err(io_err)?;
        }
    }
    Ok(())
}

pub struct SelftestOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: String) -> SelftestOutcome {
    SelftestOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Built-in correctness checks: the worked two-sequence example, a seeded
/// cross-engine sweep, and the estimator. Fast enough to run anywhere.
pub fn run_selftest() -> Vec<SelftestOutcome> {
    let mut results = Vec::new();

    // worked example: S=ACACA, T=AAACA, g=3, k=2
    results.push(match worked_example_check() {
        Ok(()) => outcome("golden-two-sequence", true, "raw [[15,9],[9,13]]".into()),
        Err(e) => outcome("golden-two-sequence", false, e),
    });

    results.push(match cross_engine_sweep() {
        Ok(instances) => outcome(
            "cross-engine-agreement",
            true,
            format!("{instances} seeded instances"),
        ),
        Err(e) => outcome("cross-engine-agreement", false, e),
    });

    results.push(match estimator_check() {
        Ok(()) => outcome("nodelist-estimator", true, "hand values match".into()),
        Err(e) => outcome("nodelist-estimator", false, e),
    });

    results
}

fn worked_example_check() -> std::result::Result<(), String> {
    use crate::corpus::{encode_records, RawRecord};
    let raw = vec![
        RawRecord {
            id: "S".into(),
            label: None,
            text: b"ACACA".to_vec(),
        },
        RawRecord {
            id: "T".into(),
            label: None,
            text: b"AAACA".to_vec(),
        },
    ];
    let corpus = encode_records(raw, Some(b"ACGT")).map_err(|e| e.to_string())?;
    let out = compute_kernel(&corpus, &KernelParams::new(3, 2).with_normalize(true))
        .map_err(|e| e.to_string())?;
    let expect = vec![vec![15u64, 9], vec![9, 13]];
    if out.kernel.raw.to_dense() != expect {
        return Err(format!("raw kernel was {:?}", out.kernel.raw.to_dense()));
    }
    if out.profiles.exact[0].get(0, 1) != 2 || out.profiles.exact[1].get(0, 1) != 3 {
        return Err("mismatch profiles off".into());
    }
    if out.profiles.cumulative[1].get(0, 1) != 9 {
        return Err("cumulative profile off".into());
    }
    let rendered = format!(
        "{:.6}",
        out.kernel.normalized.as_ref().unwrap().get(0, 1)
    );
    if rendered != "0.644503" {
        return Err(format!("normalized entry rendered as {rendered}"));
    }
    Ok(())
}

fn cross_engine_sweep() -> std::result::Result<u32, String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0DE);
    let mut instances = 0;
    for _ in 0..20 {
        let sigma = [4usize, 20, 36][rng.random_range(0..3)];
        let g = rng.random_range(2..6);
        let corpus = generate_corpus(&SynthSpec {
            n_sequences: rng.random_range(1..6),
            length: rng.random_range(1..25),
            sigma,
            seed: rng.random(),
            skew: 0.0,
        })
        .map_err(|e| e.to_string())?;
        for k in 1..=g {
            let params = KernelParams::new(g, k);
            let engine = compute_kernel(&corpus, &params).map_err(|e| e.to_string())?;
            let table = extract_gmers(&corpus, g).map_err(|e| e.to_string())?;
            let brute = brute_force_profiles(&table, g - k);
            if engine.profiles.exact != brute {
                return Err(format!("engine != brute force at g={g} k={k}"));
            }
            let coeffs = coefficients(g, k).map_err(|e| e.to_string())?;
            let trie_raw = assemble_kernel(&trie_profiles(&table, g - k), &coeffs, g - k)
                .map_err(|e| e.to_string())?;
            if trie_raw != engine.kernel.raw {
                return Err(format!("trie != engine at g={g} k={k}"));
            }
            let feature = feature_map_kernel(&corpus, g, k, DEFAULT_FEATURE_LIMIT)
                .map_err(|e| e.to_string())?;
            if feature != engine.kernel.raw {
                return Err(format!("feature map != engine at g={g} k={k}"));
            }
            instances += 1;
        }
    }
    Ok(instances)
}

fn estimator_check() -> std::result::Result<(), String> {
    let est = estimate_complexity(1_000_000, 10, 9, 5, 1).map_err(|e| e.to_string())?;
    if est.nodelist_size != 41 {
        return Err(format!("expected 41, got {}", est.nodelist_size));
    }
    let est = estimate_complexity(30, 10, 6, 20, 4).map_err(|e| e.to_string())?;
    if est.nodelist_size != 30 || !est.clamped {
        return Err("clamp at u failed".into());
    }
    Ok(())
}

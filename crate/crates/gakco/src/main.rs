use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};

use gakco::alphabet::ALPHANUMERIC;
use gakco::bench::{run_bench, run_selftest, write_bench_rows, BenchConfig};
use gakco::corpus::encode_records;
use gakco::estimate::estimate_complexity;
use gakco::gmer::{extract_gmers, sort_and_count};
use gakco::io::{read_records_auto, InputFormat};
use gakco::kernel::compute_kernel;
use gakco::output::{write_matrix, write_report, write_timing_file, OutputFormat};
use gakco::synth::{generate_corpus, SynthSpec};
use gakco::KernelParams;

/// Environment variable consulted for the default worker count.
const THREADS_ENV: &str = "GAKCO_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cmd {
    /// Compute a kernel matrix for an input corpus.
    Kernel,
    /// Compare engines on seeded synthetic corpora.
    Bench,
    /// Evaluate the trie nodelist-size estimate for a corpus.
    Estimate,
    /// Run the built-in correctness checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dense,
    Svm,
    Report,
}

#[derive(Parser, Debug)]
#[command(
    name = "gakco",
    version,
    about = "Gapped k-mer string kernel matrices via cumulative sort-and-count"
)]
struct Args {
    /// Job to run.
    #[arg(long = "cmd", value_enum)]
    cmd: Cmd,

    /// Window length g.
    #[arg(short = 'g', value_name = "G")]
    g: Option<usize>,

    /// Informative positions k; bench accepts a comma-separated sweep.
    #[arg(short = 'k', value_name = "K", value_delimiter = ',')]
    k: Vec<usize>,

    /// Mismatch cap (default g - k).
    #[arg(long = "max-mismatch", value_name = "M")]
    max_mismatch: Option<usize>,

    /// Worker threads (default: $GAKCO_THREADS, then the host parallelism).
    #[arg(long = "threads", value_name = "T")]
    threads: Option<usize>,

    /// Also parallelize over position subsets inside each mismatch count.
    #[arg(long = "two-level")]
    two_level: bool,

    /// Cosine-normalize the output matrix (default for kernel jobs).
    #[arg(long = "normalize", overrides_with = "no_normalize")]
    normalize: bool,

    /// Emit raw integer counts instead of normalized values.
    #[arg(long = "no-normalize", overrides_with = "normalize")]
    no_normalize: bool,

    /// Output format for kernel jobs.
    #[arg(long = "format", value_enum, default_value = "dense")]
    format: Format,

    /// Training sequences (FASTA or "<label><TAB><text>" lines).
    #[arg(long = "train", value_name = "PATH")]
    train: Option<PathBuf>,

    /// Test sequences, concatenated after the training ones.
    #[arg(long = "test", value_name = "PATH")]
    test: Option<PathBuf>,

    /// Output path (default: stdout, timing sidecar to stderr).
    #[arg(long = "out", value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for synthetic corpora.
    #[arg(long = "seed", default_value_t = 42)]
    seed: u64,

    /// Synthetic corpus sizes; comma-separated sweep for bench.
    #[arg(long = "gen-n", value_name = "N", value_delimiter = ',')]
    gen_n: Vec<usize>,

    /// Synthetic sequence length.
    #[arg(long = "gen-l", value_name = "L", default_value_t = 100)]
    gen_l: usize,

    /// Synthetic dictionary size (1..=36).
    #[arg(long = "gen-sigma", value_name = "SIGMA", default_value_t = 20)]
    gen_sigma: usize,

    /// Zipf exponent for skewed symbol draws (0 = uniform).
    #[arg(long = "gen-skew", value_name = "S", default_value_t = 0.0)]
    gen_skew: f64,
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: Args) -> Result<ExitCode> {
    match args.cmd {
        Cmd::Kernel => cmd_kernel(&args),
        Cmd::Bench => cmd_bench(&args),
        Cmd::Estimate => cmd_estimate(&args),
        Cmd::Selftest => cmd_selftest(),
    }
}

fn resolve_threads(args: &Args) -> Result<usize> {
    if let Some(threads) = args.threads {
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        return Ok(threads);
    }
    if let Ok(value) = std::env::var(THREADS_ENV) {
        return value
            .parse()
            .with_context(|| format!("{THREADS_ENV}={value} is not a thread count"));
    }
    Ok(std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn single_k(args: &Args) -> Result<usize> {
    match args.k.as_slice() {
        [k] => Ok(*k),
        [] => bail!("-k is required"),
        _ => bail!("this command takes exactly one -k value"),
    }
}

fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        bail!("input file {} does not exist", path.display());
    }
    Ok(())
}

fn params_from(args: &Args, k: usize) -> Result<KernelParams> {
    let g = args.g.context("-g is required")?;
    let mut params = KernelParams::new(g, k)
        .with_threads(resolve_threads(args)?)
        .with_two_level(args.two_level)
        .with_normalize(!args.no_normalize);
    if let Some(cap) = args.max_mismatch {
        params = params.with_max_mismatch(cap);
    }
    params.validate()?;
    Ok(params)
}

fn cmd_kernel(args: &Args) -> Result<ExitCode> {
    let train = args.train.as_deref().context("--train is required")?;
    require_file(train)?;
    if let Some(test) = args.test.as_deref() {
        require_file(test)?;
    }
    let params = params_from(args, single_k(args)?)?;

    let (mut records, train_format) = read_records_auto(train)?;
    let boundary = records.len();
    let mut any_labeled = train_format == InputFormat::LabeledText;
    if let Some(test) = args.test.as_deref() {
        let (test_records, test_format) = read_records_auto(test)?;
        any_labeled |= test_format == InputFormat::LabeledText;
        records.extend(test_records);
    }
    // labeled text is defined over the fixed alphanumeric dictionary;
    // FASTA-only corpora infer their alphabet
    let alphabet_spec = any_labeled.then_some(&ALPHANUMERIC[..]);
    let corpus = encode_records(records, alphabet_spec)?;

    let mut output = compute_kernel(&corpus, &params)?;
    output.timing.train_boundary = Some(boundary);

    let format = match args.format {
        Format::Dense => OutputFormat::DenseTsv,
        Format::Svm => OutputFormat::PrecomputedSvm,
        Format::Report => OutputFormat::Report,
    };

    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut out = std::io::BufWriter::new(file);
            emit_kernel(&output, format, &mut out)?;
            out.flush()?;
            let sidecar = sidecar_path(path);
            write_timing_file(&output.timing, &sidecar)?;
        }
        None => {
            let stdout = std::io::stdout();
            emit_kernel(&output, format, &mut stdout.lock())?;
            eprint!("{}", output.timing.to_text());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_kernel(
    output: &gakco::KernelOutput,
    format: OutputFormat,
    out: &mut impl Write,
) -> Result<()> {
    match format {
        OutputFormat::Report => write_report(
            &output.kernel,
            &output.timing.stats,
            output.timing.train_boundary,
            out,
        )?,
        other => write_matrix(&output.kernel, other, out)?,
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".timing");
    PathBuf::from(name)
}

fn cmd_bench(args: &Args) -> Result<ExitCode> {
    let cfg = BenchConfig {
        g: args.g.context("-g is required")?,
        ks: if args.k.is_empty() {
            bail!("-k is required (comma-separated values sweep k)")
        } else {
            args.k.clone()
        },
        ns: if args.gen_n.is_empty() {
            vec![100]
        } else {
            args.gen_n.clone()
        },
        length: args.gen_l,
        sigma: args.gen_sigma,
        skew: args.gen_skew,
        seed: args.seed,
        threads: resolve_threads(args)?,
        max_mismatch: args.max_mismatch,
    };
    let rows = run_bench(&cfg)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut out = std::io::BufWriter::new(file);
            write_bench_rows(&rows, &mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            write_bench_rows(&rows, &mut stdout.lock())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_estimate(args: &Args) -> Result<ExitCode> {
    let g = args.g.context("-g is required")?;
    let k = single_k(args)?;
    let max_mismatch = args.max_mismatch.unwrap_or_else(|| g.saturating_sub(k));

    let corpus = match &args.train {
        Some(train) => {
            require_file(train)?;
            let (records, format) = read_records_auto(train)?;
            let alphabet_spec =
                (format == InputFormat::LabeledText).then_some(&ALPHANUMERIC[..]);
            encode_records(records, alphabet_spec)?
        }
        None => generate_corpus(&SynthSpec {
            n_sequences: *args.gen_n.first().unwrap_or(&100),
            length: args.gen_l,
            sigma: args.gen_sigma,
            seed: args.seed,
            skew: args.gen_skew,
        })?,
    };

    let table = extract_gmers(&corpus, g)?;
    let unique = sort_and_count(&table).distinct_keys;
    if unique == 0 {
        bail!("corpus contains no g-mers at g={g}");
    }
    let est = estimate_complexity(unique, g, k, corpus.alphabet.size(), max_mismatch)?;

    let mut text = String::new();
    text.push_str(&format!("g\t{g}\nk\t{k}\nmax_mismatch\t{max_mismatch}\n"));
    text.push_str(&format!("sigma\t{}\n", corpus.alphabet.size()));
    text.push_str(&format!("unique_gmers\t{}\n", est.unique_gmers));
    text.push_str(&format!("pattern_count\t{}\n", est.pattern_count));
    text.push_str(&format!("reach\t{}\n", est.reach));
    text.push_str(&format!("nodelist_size\t{}\n", est.nodelist_size));
    text.push_str(&format!("clamped\t{}\n", est.clamped));

    match &args.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest() -> Result<ExitCode> {
    let outcomes = run_selftest();
    let mut all_ok = true;
    for o in &outcomes {
        let status = if o.passed { "ok" } else { "FAILED" };
        println!("selftest {:<24} {status} ({})", o.name, o.detail);
        all_ok &= o.passed;
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

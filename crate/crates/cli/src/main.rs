use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use pstream::instance::{generate, Regime};
use pstream::oracle::naive_all_matches;
use pstream::{FilteredMatcher, LadderMode, MatcherConfig, StreamMatcher, StreamStats, Violation};

mod input;

use input::Symbols;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Structural(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Structural(_) => 3,
        }
    }
}

impl From<pstream::Error> for CliError {
    fn from(e: pstream::Error) -> Self {
        match e {
            pstream::Error::Config(_) | pstream::Error::Usage(_) => CliError::Usage(e.to_string()),
            pstream::Error::Alphabet { .. } => CliError::Input(e.to_string()),
            pstream::Error::Structural(_) => CliError::Structural(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pstream",
    version,
    about = "Streaming parameterized pattern matching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the start of every text window that p-matches the pattern.
    Match(MatchArgs),
    /// Check the matcher against brute force on generated instances.
    Verify(VerifyArgs),
    /// Run one generated instance and report cost metrics.
    Bench(BenchArgs),
    /// Write a generated instance as token files.
    Gen(GenArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Auto,
    Det,
    Rand,
}

impl Mode {
    fn ladder(self) -> Option<LadderMode> {
        match self {
            Mode::Auto => None,
            Mode::Det => Some(LadderMode::Deterministic),
            Mode::Rand => Some(LadderMode::Randomized),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Seed for the fingerprint base.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Width of the fingerprint prime.
    #[arg(long, default_value_t = pstream::field::DEFAULT_PRIME_BITS)]
    prime_bits: u32,
}

impl EngineArgs {
    fn config(&self) -> MatcherConfig {
        MatcherConfig {
            prime_bits: self.prime_bits,
            seed: self.seed,
            mode: self.mode.ladder(),
            strict: true,
            trace: false,
        }
    }
}

#[derive(Args, Debug)]
struct MatchArgs {
    #[arg(long)]
    pattern: PathBuf,
    /// Text file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    text: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
    /// Symbols are integers below N; no filtering.
    #[arg(long, value_name = "N", conflicts_with = "general_alphabet")]
    alphabet_size: Option<usize>,
    /// Route the text through the recency filter (default for token input).
    #[arg(long)]
    general_alphabet: bool,
    /// Every byte is a symbol.
    #[arg(long)]
    raw: bool,
    /// Append key=value metrics to standard error.
    #[arg(long)]
    stats: bool,
    /// Flush each reported position immediately.
    #[arg(long)]
    unbuffered: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    min_m: usize,
    #[arg(long, default_value_t = 2048)]
    max_m: usize,
    /// Comma-separated alphabet sizes to cycle through.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
    alphabets: Vec<usize>,
    /// Text length as a multiple of the pattern length.
    #[arg(long, default_value_t = 4)]
    text_factor: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = pstream::field::DEFAULT_PRIME_BITS)]
    prime_bits: u32,
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    /// One of random, planted, periodic, high-period, unary, all-distinct, long-gap.
    #[arg(long, default_value = "planted")]
    regime: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InstanceArgs {
    fn generate(&self) -> Result<pstream::instance::Instance, CliError> {
        let regime = Regime::parse(&self.regime)
            .ok_or_else(|| CliError::Usage(format!("unknown regime {:?}", self.regime)))?;
        if self.m == 0 || self.alphabet == 0 {
            return Err(CliError::Usage("m and alphabet must be positive".into()));
        }
        Ok(generate(regime, self.m, self.n, self.alphabet, self.seed))
    }
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Also seeds the fingerprint base.
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, default_value_t = pstream::field::DEFAULT_PRIME_BITS)]
    prime_bits: u32,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    pattern_out: Option<PathBuf>,
    #[arg(long)]
    text_out: Option<PathBuf>,
}

enum Runner {
    Dense(StreamMatcher<u64>),
    General(FilteredMatcher<u64>),
}

impl Runner {
    fn step(&mut self, index: u64, symbol: u64) -> Result<bool, CliError> {
        Ok(match self {
            Runner::Dense(sm) => {
                let s = u32::try_from(symbol).map_err(|_| pstream::Error::Alphabet {
                    index,
                    symbol,
                    alphabet: sm.alphabet(),
                })?;
                sm.step(s)?
            }
            Runner::General(fm) => fm.step(symbol)?,
        })
    }

    fn matcher(&self) -> &StreamMatcher<u64> {
        match self {
            Runner::Dense(sm) => sm,
            Runner::General(fm) => fm.matcher(),
        }
    }

    fn extra_words(&self) -> usize {
        match self {
            Runner::Dense(_) => 0,
            Runner::General(fm) => fm.filter().live_words(),
        }
    }
}

fn mode_name(mode: LadderMode) -> &'static str {
    match mode {
        LadderMode::Deterministic => "det",
        LadderMode::Randomized => "rand",
    }
}

fn stats_lines(
    st: &StreamStats,
    sm: &StreamMatcher<u64>,
    extra_words: usize,
    secs: f64,
) -> Vec<String> {
    let mean = if st.arrivals == 0 {
        0.0
    } else {
        st.total_ops as f64 / st.arrivals as f64
    };
    let mut out = vec![
        format!("mode={}", mode_name(sm.mode())),
        format!("m={}", sm.pattern_len()),
        format!("alphabet={}", sm.alphabet()),
        format!("levels={}", sm.ladder_lengths().len()),
        format!("arrivals={}", st.arrivals),
        format!("matches={}", st.matches),
        format!("max_ops={}", st.max_ops),
        format!("mean_ops={mean:.3}"),
        format!("peak_words={}", st.peak_words + extra_words),
        format!("max_pending={}", st.max_pending),
        format!("max_zero_queue={}", st.max_zero_queue),
        format!("max_segments={}", st.max_segments),
        format!("max_shifts={}", st.max_shifts),
    ];
    for v in Violation::ALL {
        out.push(format!("violations.{}={}", v.key(), st.violations.get(v)));
    }
    out.push(format!("elapsed_ms={:.3}", secs * 1e3));
    let rate = if secs > 0.0 {
        st.arrivals as f64 / secs
    } else {
        0.0
    };
    out.push(format!("symbols_per_sec={rate:.0}"));
    out
}

fn cmd_match(args: &MatchArgs) -> Result<(), CliError> {
    let pattern = Symbols::new(input::open(&args.pattern)?, args.raw).collect_all()?;
    if pattern.is_empty() {
        return Err(CliError::Input(format!(
            "{}: pattern is empty",
            args.pattern.display()
        )));
    }
    let config = args.engine.config();
    let dense_alphabet = match (args.alphabet_size, args.raw) {
        _ if args.general_alphabet => None,
        (Some(n), _) => Some(n),
        (None, true) => Some(256),
        (None, false) => None,
    };
    let mut runner = match dense_alphabet {
        Some(alphabet) => {
            let mut dense = Vec::with_capacity(pattern.len());
            for (index, &c) in pattern.iter().enumerate() {
                match u32::try_from(c) {
                    Ok(c) if (c as usize) < alphabet => dense.push(c),
                    _ => {
                        return Err(CliError::Input(format!(
                            "pattern symbol {c} at index {index} is outside the alphabet of size {alphabet}"
                        )))
                    }
                }
            }
            Runner::Dense(StreamMatcher::new(&dense, alphabet, &config)?)
        }
        None => Runner::General(FilteredMatcher::new(&pattern, &config)?),
    };
    let m = pattern.len() as u64;
    let text = Symbols::new(input::open(&args.text)?, args.raw);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let started = Instant::now();
    let mut outcome = Ok(());
    for (index, symbol) in text.enumerate() {
        let index = index as u64;
        let step = symbol.and_then(|s| runner.step(index, s));
        match step {
            Ok(true) => {
                writeln!(out, "{}", index + 1 - m)?;
                if args.unbuffered {
                    out.flush()?;
                }
            }
            Ok(false) => {}
            Err(e) => {
                outcome = Err(e);
                break;
            }
        }
    }
    out.flush()?;
    if args.stats {
        let sm = runner.matcher();
        let lines = stats_lines(
            &sm.stats(),
            sm,
            runner.extra_words(),
            started.elapsed().as_secs_f64(),
        );
        let mut err = io::stderr().lock();
        for l in lines {
            writeln!(err, "{l}")?;
        }
    }
    outcome
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.min_m == 0 || args.min_m > args.max_m || args.alphabets.contains(&0) {
        return Err(CliError::Usage(
            "need 1 <= min-m <= max-m and positive alphabets".into(),
        ));
    }
    let (mut discrepancies, mut violations, mut randomized, mut matches) = (0u64, 0u64, 0u64, 0u64);
    let ratio = args.max_m as f64 / args.min_m as f64;
    for t in 0..args.trials {
        let frac = if args.trials > 1 {
            t as f64 / (args.trials - 1) as f64
        } else {
            0.0
        };
        let m =
            ((args.min_m as f64 * ratio.powf(frac)).round() as usize).clamp(args.min_m, args.max_m);
        let regime = Regime::ALL[t % Regime::ALL.len()];
        let alphabet = args.alphabets[t % args.alphabets.len()];
        let seed = args.seed.wrapping_add(t as u64);
        let inst = generate(regime, m, m * args.text_factor.max(1), alphabet, seed);
        let config = MatcherConfig {
            prime_bits: args.prime_bits,
            seed,
            strict: false,
            ..MatcherConfig::default()
        };
        let mut sm = StreamMatcher::<u64>::new(&inst.pattern, alphabet, &config)?;
        let got = sm.run(&inst.text)?;
        let want: Vec<u64> = naive_all_matches(&inst.pattern, &inst.text)
            .into_iter()
            .map(|i| i as u64)
            .collect();
        matches += want.len() as u64;
        randomized += (sm.mode() == LadderMode::Randomized) as u64;
        violations += sm.stats().violations.total();
        if got != want {
            discrepancies += 1;
            eprintln!(
                "discrepancy: regime={} m={m} alphabet={alphabet} seed={seed}",
                regime.name()
            );
        }
    }
    println!("trials={}", args.trials);
    println!("randomized={randomized}");
    println!("matches={matches}");
    println!("discrepancies={discrepancies}");
    println!("violations={violations}");
    if discrepancies + violations > 0 {
        return Err(CliError::Structural("verification failed".into()));
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let inst = args.instance.generate()?;
    let config = MatcherConfig {
        prime_bits: args.prime_bits,
        seed: args.instance.seed,
        mode: args.mode.ladder(),
        strict: false,
        trace: false,
    };
    let mut sm = StreamMatcher::<u64>::new(&inst.pattern, inst.alphabet, &config)?;
    let started = Instant::now();
    for &c in &inst.text {
        sm.step(c)?;
    }
    let secs = started.elapsed().as_secs_f64();
    let st = sm.stats();
    for l in stats_lines(&st, &sm, 0, secs) {
        println!("{l}");
    }
    if st.violations.total() > 0 {
        return Err(CliError::Structural(
            "structural violations recorded".into(),
        ));
    }
    Ok(())
}

fn join(s: &[u32]) -> String {
    let mut out = s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    let inst = args.instance.generate()?;
    let (p, t) = (join(&inst.pattern), join(&inst.text));
    match (&args.pattern_out, &args.text_out) {
        (Some(pf), Some(tf)) => {
            fs::write(pf, p)?;
            fs::write(tf, t)?;
        }
        (None, None) => {
            let mut out = io::stdout().lock();
            out.write_all(p.as_bytes())?;
            out.write_all(t.as_bytes())?;
        }
        _ => {
            return Err(CliError::Usage(
                "give both --pattern-out and --text-out, or neither".into(),
            ))
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Match(a) => cmd_match(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pstream: {e}");
            ExitCode::from(e.code())
        }
    }
}

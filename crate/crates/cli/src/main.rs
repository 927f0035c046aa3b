//! `markov-order`: estimate Markov chain orders of symbol sequences.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 input error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use markov_order::simulate::{fit_transition_model, generate, random_transition_model, Estimator, DEFAULT_BURN_IN};
use markov_order::toolkit::{
    self, parse_fasta_str, recode, OnOther, RecodingScheme, ScanOptions,
};
use markov_order::{Alphabet, Error, StreamSeed, SymbolSequence, TestMethod};

#[derive(Parser)]
#[command(name = "markov-order", version, about = "Markov chain order estimation for symbol sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recode a FASTA file into a symbol file.
    Ingest(IngestArgs),
    /// Scan orders of a symbol file (or FASTA) with tests and criteria.
    #[command(alias = "estimate")]
    Scan(ScanArgs),
    /// Run the Monte Carlo harness from a TOML config.
    Eval(EvalArgs),
    /// Emit a sequence from a random or fitted Markov chain.
    Simulate(SimulateArgs),
    /// Dump the observed CMI, null parameters and surrogate values of one order.
    Diagnose(DiagnoseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Nucl4,
    Rr2,
}

impl From<Scheme> for RecodingScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Nucl4 => RecodingScheme::Nucl4,
            Scheme::Rr2 => RecodingScheme::Rr2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Other {
    Skip,
    Error,
}

impl From<Other> for OnOther {
    fn from(o: Other) -> Self {
        match o {
            Other::Skip => OnOther::Skip,
            Other::Error => OnOther::Error,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Symbol file, or FASTA when the file starts with '>'.
    input: PathBuf,
    /// Alphabet characters, overriding the symbol file header.
    #[arg(long)]
    alphabet: Option<String>,
    /// Recoding applied to FASTA input.
    #[arg(long, value_enum, default_value = "nucl4")]
    scheme: Scheme,
    /// Handling of non-ACGT residues in FASTA input.
    #[arg(long, value_enum, default_value = "skip")]
    on_other: Other,
}

#[derive(Args)]
struct IngestArgs {
    fasta: PathBuf,
    #[arg(long, value_enum, default_value = "nucl4")]
    scheme: Scheme,
    #[arg(long, value_enum, default_value = "skip")]
    on_other: Other,
    /// Keep only the record with this header instead of joining all records.
    #[arg(long)]
    record: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,
    /// ND, GD1, GD2, RD, AIC, BIC, PS or PS-knee; repeatable.
    #[arg(long = "method")]
    methods: Vec<String>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    mmax: Option<usize>,
    #[arg(long, default_value_t = 1)]
    lookahead: usize,
    #[arg(long, default_value_t = 1000)]
    surrogates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Longest word for the Peres–Shields fluctuations.
    #[arg(long)]
    ps_max_word: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    config: PathBuf,
    /// Per-realization CSV (or the full JSON report with `--format json`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary of success rates.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    /// Alphabet size of a random model.
    #[arg(long, short = 'k', default_value_t = 2)]
    alphabet_size: usize,
    #[arg(long, short = 'L')]
    order: usize,
    #[arg(long, short = 'n')]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    burn_in: usize,
    /// Fit the model to this symbol file instead of drawing it at random.
    #[arg(long)]
    fit: Option<PathBuf>,
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiagnoseArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Order `m` to examine.
    #[arg(long, short = 'm')]
    order: usize,
    #[arg(long, default_value_t = 1000)]
    surrogates: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn alphabet_override(chars: Option<&str>) -> Result<Option<Arc<Alphabet>>> {
    Ok(chars.map(Alphabet::from_chars).transpose()?.map(Arc::new))
}

/// Reads a symbol file or a FASTA file; returns the sequence and the scheme
/// used for FASTA input.
fn load_input(args: &InputArgs) -> Result<(SymbolSequence, Option<RecodingScheme>)> {
    let text = fs::read_to_string(&args.input).map_err(Error::from)?;
    if text.trim_start().starts_with('>') {
        let scheme = RecodingScheme::from(args.scheme);
        let recoded = recode(&parse_fasta_str(&text)?, scheme, true, args.on_other.into())?;
        if recoded.skipped > 0 {
            eprintln!("skipped {} residues outside ACGT", recoded.skipped);
        }
        let seq = recoded.sequences.into_iter().next().ok_or_else(|| Error::MalformedFasta {
            line: 1,
            reason: "no records".into(),
        })?;
        Ok((seq, Some(scheme)))
    } else {
        Ok((toolkit::parse_symbols(&text, alphabet_override(args.alphabet.as_deref())?)?, None))
    }
}

fn ingest(args: IngestArgs) -> Result<()> {
    let mut records = toolkit::parse_fasta(&args.fasta)?;
    if let Some(name) = &args.record {
        records.retain(|r| &r.header == name);
        if records.is_empty() {
            return Err(Error::InvalidConfig(format!("no record with header {name:?}")).into());
        }
    }
    if records.is_empty() {
        return Err(Error::MalformedFasta {
            line: 1,
            reason: "no records".into(),
        }
        .into());
    }
    let recoded = recode(&records, args.scheme.into(), true, args.on_other.into())?;
    if recoded.skipped > 0 {
        eprintln!("skipped {} residues outside ACGT", recoded.skipped);
    }
    let mut out = output(args.out.as_deref())?;
    out.write_all(toolkit::format_symbols(&recoded.sequences[0]).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn scan(args: ScanArgs) -> Result<()> {
    let methods = if args.methods.is_empty() {
        TestMethod::ALL.into_iter().map(Estimator::Test).collect()
    } else {
        args.methods.iter().map(|m| m.parse()).collect::<Result<Vec<Estimator>, _>>()?
    };
    let (seq, scheme) = load_input(&args.input)?;
    let options = ScanOptions {
        methods,
        alpha: args.alpha,
        max_order: args.mmax,
        lookahead: args.lookahead,
        surrogates: args.surrogates,
        seed: args.seed,
        ps_max_word: args.ps_max_word,
        input: args.input.input.display().to_string(),
        scheme,
    };
    let report = toolkit::scan(&seq, &options)?;
    for m in &report.methods {
        let flag = if m.censored { " (censored)" } else { "" };
        eprintln!("{}: order {}{flag}", m.method, m.estimate);
    }
    let mut out = output(args.out.as_deref())?;
    match args.format {
        Format::Csv => toolkit::write_scan_csv(&mut out, &report)?,
        Format::Json => toolkit::write_json(&mut out, &report)?,
    }
    out.flush()?;
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let config = toolkit::load_eval_config(&args.config)?;
    let report = markov_order::simulate::evaluate(&config)?;
    for s in &report.summary {
        eprintln!(
            "{} N={}: {}/{} correct ({} errors)",
            s.method, s.length, s.successes, s.realizations, s.errors
        );
    }
    let mut out = output(args.out.as_deref())?;
    match args.format {
        Format::Csv => toolkit::write_eval_csv(&mut out, &report)?,
        Format::Json => toolkit::write_json(&mut out, &report)?,
    }
    out.flush()?;
    if let Some(path) = &args.summary {
        let mut file = output(Some(path))?;
        toolkit::write_eval_summary_json(&mut file, &report)?;
        file.flush()?;
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    if args.length == 0 {
        return Err(Error::InvalidConfig("length must be at least 1".into()).into());
    }
    let root = StreamSeed::new(args.seed);
    let model = match &args.fit {
        Some(path) => {
            let seq = toolkit::read_symbol_file(path, alphabet_override(args.alphabet.as_deref())?)?;
            fit_transition_model(&seq, args.order)?
        }
        None => random_transition_model(
            args.alphabet_size,
            args.order,
            &mut root.derive(markov_order::streams::tags::MODEL, 0).rng(),
        )?,
    };
    let seq = generate(
        &model,
        args.length,
        args.burn_in,
        &mut root.derive(markov_order::streams::tags::SEQUENCE, 0).rng(),
    );
    let mut out = output(args.out.as_deref())?;
    out.write_all(toolkit::format_symbols(&seq).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn diagnose(args: DiagnoseArgs) -> Result<()> {
    let (seq, _) = load_input(&args.input)?;
    let d = toolkit::diagnose(&seq, args.order, args.surrogates, args.seed)?;
    let mut out = output(args.out.as_deref())?;
    match args.format {
        Format::Csv => toolkit::write_diagnosis_csv(&mut out, &d)?,
        Format::Json => toolkit::write_json(&mut out, &d)?,
    }
    out.flush()?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(e) if e.is_config_error() => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => ingest(a),
        Command::Scan(a) => scan(a),
        Command::Eval(a) => eval(a),
        Command::Simulate(a) => simulate(a),
        Command::Diagnose(a) => diagnose(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

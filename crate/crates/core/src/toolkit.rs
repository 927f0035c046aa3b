//! DNA ingestion, symbol files, order-scan and diagnostic reports, and the
//! report writers behind the command-line tool.
//!
//! CSV reports start with `# key=value` provenance lines followed by a
//! regular header row; read them with `#` as the comment character.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::criteria::select_order;
use crate::error::{Error, Result};
use crate::infotheory::{cmi, cmi_from_bundle};
use crate::seqcore::{count_words, Alphabet, SymbolSequence};
use crate::sigtests::{
    gd1_parameters, gd2_parameters, nd_pvalue, parametric_outcome, randomization_pvalue, randomization_rank,
    scan_orders, surrogate_values, ScanConfig, ScanMode, TestMethod, TestOutcome,
};
use crate::simulate::{fit_transition_model, EvalConfig, EvalReport, Estimator, ModelSource, SuccessSummary};
use crate::streams::{tags, StreamSeed, RNG_ALGORITHM};

pub const SCAN_SCHEMA_VERSION: u32 = 1;
pub const DIAGNOSE_SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------- FASTA

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastaRecord {
    pub header: String,
    /// Residues of all sequence lines, upper-cased.
    pub residues: String,
}

pub fn parse_fasta_str(text: &str) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            records.push(FastaRecord {
                header: header.trim().to_string(),
                residues: String::new(),
            });
            continue;
        }
        let residues = line.trim();
        if residues.is_empty() || residues.starts_with(';') {
            continue;
        }
        match records.last_mut() {
            Some(record) => record.residues.extend(residues.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_ascii_uppercase())),
            None => {
                return Err(Error::MalformedFasta {
                    line: i + 1,
                    reason: "residues before the first '>' header".into(),
                })
            }
        }
    }
    Ok(records)
}

pub fn parse_fasta<P: AsRef<Path>>(path: P) -> Result<Vec<FastaRecord>> {
    parse_fasta_str(&fs::read_to_string(path)?)
}

// ------------------------------------------------------------- recoding

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RecodingScheme {
    /// `A, C, G, T → 0, 1, 2, 3`.
    #[serde(rename = "nucl4")]
    Nucl4,
    /// Purines `A, G → 0`, pyrimidines `C, T → 1`.
    #[serde(rename = "rr2")]
    Rr2,
}

impl RecodingScheme {
    pub fn name(self) -> &'static str {
        match self {
            RecodingScheme::Nucl4 => "nucl4",
            RecodingScheme::Rr2 => "rr2",
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            RecodingScheme::Nucl4 => Alphabet::nucleotides(),
            RecodingScheme::Rr2 => Alphabet::from_chars("RY").expect("static alphabet"),
        }
    }

    /// Symbol index of an upper-case residue.
    pub fn code(self, residue: char) -> Option<u8> {
        match (self, residue) {
            (RecodingScheme::Nucl4, 'A') => Some(0),
            (RecodingScheme::Nucl4, 'C') => Some(1),
            (RecodingScheme::Nucl4, 'G') => Some(2),
            (RecodingScheme::Nucl4, 'T') => Some(3),
            (RecodingScheme::Rr2, 'A' | 'G') => Some(0),
            (RecodingScheme::Rr2, 'C' | 'T') => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for RecodingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RecodingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nucl4" => Ok(RecodingScheme::Nucl4),
            "rr2" => Ok(RecodingScheme::Rr2),
            _ => Err(Error::InvalidConfig(format!("unknown recoding scheme {s:?}"))),
        }
    }
}

/// What to do with residues outside `ACGT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OnOther {
    #[default]
    Skip,
    Error,
}

impl FromStr for OnOther {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "skip" => Ok(OnOther::Skip),
            "error" => Ok(OnOther::Error),
            _ => Err(Error::InvalidConfig(format!("unknown --on-other value {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recoded {
    /// One sequence, or one per record when not concatenating.
    pub sequences: Vec<SymbolSequence>,
    pub skipped: usize,
}

/// Maps residues to symbols. Positions in errors count residues across all
/// records.
pub fn recode(records: &[FastaRecord], scheme: RecodingScheme, concat: bool, on_other: OnOther) -> Result<Recoded> {
    let alphabet = Arc::new(scheme.alphabet());
    let mut parts: Vec<Vec<u8>> = Vec::new();
    let mut skipped = 0;
    let mut position = 0;
    for record in records {
        if !concat || parts.is_empty() {
            parts.push(Vec::with_capacity(record.residues.len()));
        }
        let out = parts.last_mut().expect("pushed above");
        for c in record.residues.chars() {
            match scheme.code(c.to_ascii_uppercase()) {
                Some(s) => out.push(s),
                None if on_other == OnOther::Skip => skipped += 1,
                None => {
                    return Err(Error::UnknownSymbol {
                        label: c.to_string(),
                        position,
                    })
                }
            }
            position += 1;
        }
    }
    let sequences = parts
        .into_iter()
        .map(|data| SymbolSequence::new(Arc::clone(&alphabet), data))
        .collect::<Result<_>>()?;
    Ok(Recoded { sequences, skipped })
}

// --------------------------------------------------------- symbol files

/// Serializes a sequence as a symbol file: `#alphabet=<chars>` and one line
/// of symbols for single-character alphabets, otherwise `#labels=a,b,…`
/// and one label per line.
pub fn format_symbols(seq: &SymbolSequence) -> String {
    let alphabet = seq.alphabet();
    let mut out = String::with_capacity(seq.len() + 64);
    if alphabet.is_single_char() && !alphabet.labels().iter().any(|l| l.trim().is_empty() || l == "#") {
        out.push_str("#alphabet=");
        alphabet.labels().iter().for_each(|l| out.push_str(l));
        out.push('\n');
        seq.labels().for_each(|l| out.push_str(l));
        out.push('\n');
    } else {
        out.push_str("#labels=");
        out.push_str(&alphabet.labels().join(","));
        out.push('\n');
        for l in seq.labels() {
            out.push_str(l);
            out.push('\n');
        }
    }
    out
}

pub fn write_symbol_file<P: AsRef<Path>>(path: P, seq: &SymbolSequence) -> Result<()> {
    fs::write(path, format_symbols(seq))?;
    Ok(())
}

/// Parses a symbol file. `alphabet` overrides the header; without either,
/// the alphabet is the sorted set of characters present.
pub fn parse_symbols(text: &str, alphabet: Option<Arc<Alphabet>>) -> Result<SymbolSequence> {
    let mut header: Option<Alphabet> = None;
    let mut multi_char = false;
    let mut body: Vec<&str> = Vec::new();
    for line in text.lines() {
        let line = line.trim_end_matches('\r');
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(chars) = rest.strip_prefix("alphabet=") {
                header = Some(Alphabet::from_chars(chars)?);
            } else if let Some(labels) = rest.strip_prefix("labels=") {
                header = Some(Alphabet::new(labels.split(','))?);
                multi_char = true;
            }
            continue;
        }
        body.push(line);
    }
    let labels: Vec<String> = if multi_char {
        body.iter().map(|l| l.trim()).filter(|l| !l.is_empty()).map(String::from).collect()
    } else {
        body.iter().flat_map(|l| l.chars()).filter(|c| !c.is_whitespace()).map(String::from).collect()
    };
    let alphabet = match (alphabet, header) {
        (Some(a), _) => a,
        (None, Some(h)) => Arc::new(h),
        (None, None) => {
            let mut distinct: Vec<&str> = labels.iter().map(String::as_str).collect();
            distinct.sort_unstable();
            distinct.dedup();
            Arc::new(Alphabet::new(distinct).map_err(|e| Error::Parse {
                what: "symbol file".into(),
                reason: format!("cannot infer an alphabet: {e}"),
            })?)
        }
    };
    crate::seqcore::encode_sequence(&labels, alphabet)
}

pub fn read_symbol_file<P: AsRef<Path>>(path: P, alphabet: Option<Arc<Alphabet>>) -> Result<SymbolSequence> {
    parse_symbols(&fs::read_to_string(path)?, alphabet)
}

// ----------------------------------------------------------------- scan

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub methods: Vec<Estimator>,
    pub alpha: f64,
    pub max_order: Option<usize>,
    pub lookahead: usize,
    pub surrogates: usize,
    /// Only RD draws random numbers.
    pub seed: u64,
    pub ps_max_word: Option<usize>,
    /// Free-form description of the input, echoed into the report.
    pub input: String,
    pub scheme: Option<RecodingScheme>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            methods: TestMethod::ALL.into_iter().map(Estimator::Test).collect(),
            alpha: 0.05,
            max_order: None,
            lookahead: 1,
            surrogates: 1000,
            seed: 0,
            ps_max_word: None,
            input: String::new(),
            scheme: None,
        }
    }
}

impl ScanOptions {
    fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            alpha: self.alpha,
            max_order: self.max_order,
            lookahead: self.lookahead,
            surrogates: self.surrogates,
            seed: StreamSeed::new(self.seed),
            mode: ScanMode::Full,
        }
    }
}

/// Per-order diagnostics of a significance test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub order: usize,
    pub cmi: f64,
    pub null_mean: f64,
    pub variance: f64,
    pub p_value: f64,
    pub reject: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodScan {
    pub method: Estimator,
    pub estimate: usize,
    pub censored: bool,
    pub runtime_ms: f64,
    /// Test rows for `m = 1..=max_order`; empty for criteria.
    pub rows: Vec<ScanRow>,
    /// Criterion scores for `k = 0..=max_order`; empty for tests.
    pub scores: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanProvenance {
    pub input: String,
    pub scheme: Option<RecodingScheme>,
    pub alphabet: Vec<String>,
    pub length: usize,
    pub alpha: f64,
    pub max_order: usize,
    pub lookahead: usize,
    pub surrogates: usize,
    pub seed: u64,
    pub ps_max_word: Option<usize>,
    pub rng: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub provenance: ScanProvenance,
    pub methods: Vec<MethodScan>,
}

impl ScanReport {
    pub fn method(&self, method: Estimator) -> Option<&MethodScan> {
        self.methods.iter().find(|m| m.method == method)
    }
}

fn scan_test(seq: &SymbolSequence, method: TestMethod, config: &ScanConfig, max_order: usize) -> Result<(usize, bool, Vec<ScanRow>)> {
    let mut rows = Vec::with_capacity(max_order);
    let estimate = scan_orders(method, max_order, config.lookahead, ScanMode::Full, |m| {
        let est = cmi(seq, m)?;
        let outcome: TestOutcome = match method {
            TestMethod::Rd => crate::sigtests::run_test(seq, method, m, config.alpha, config.surrogates, config.seed)?,
            parametric => parametric_outcome(&est, parametric, config.alpha)?,
        };
        rows.push(ScanRow {
            order: m,
            cmi: est.value,
            null_mean: est.null_mean,
            variance: est.variance,
            p_value: outcome.p_value,
            reject: outcome.reject,
        });
        Ok(outcome)
    })?;
    Ok((estimate.order, estimate.censored, rows))
}

/// Runs every method over `m = 1..=max_order` and records all per-order
/// diagnostics. The configuration is validated before any counting.
pub fn scan(seq: &SymbolSequence, options: &ScanOptions) -> Result<ScanReport> {
    if options.methods.is_empty() {
        return Err(Error::InvalidConfig("no methods selected".into()));
    }
    let config = options.scan_config();
    let max_order = config.resolve_max_order(seq.alphabet_size(), seq.len())?;
    if options.methods.contains(&Estimator::Test(TestMethod::Rd)) && options.surrogates == 0 {
        return Err(Error::InvalidConfig("RD needs at least one surrogate".into()));
    }
    let mut methods = Vec::with_capacity(options.methods.len());
    for &method in &options.methods {
        let start = Instant::now();
        let (estimate, censored, rows, scores) = match method {
            Estimator::Test(test) => {
                let (order, censored, rows) = scan_test(seq, test, &config, max_order)?;
                (order, censored, rows, Vec::new())
            }
            Estimator::Criterion(criterion) => {
                let result = select_order(seq, criterion, max_order, options.ps_max_word)?;
                (result.selected, false, Vec::new(), result.scores)
            }
        };
        methods.push(MethodScan {
            method,
            estimate,
            censored,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            rows,
            scores,
        });
    }
    Ok(ScanReport {
        schema_version: SCAN_SCHEMA_VERSION,
        provenance: ScanProvenance {
            input: options.input.clone(),
            scheme: options.scheme,
            alphabet: seq.alphabet().labels().to_vec(),
            length: seq.len(),
            alpha: options.alpha,
            max_order,
            lookahead: options.lookahead,
            surrogates: options.surrogates,
            seed: options.seed,
            ps_max_word: options.ps_max_word,
            rng: RNG_ALGORITHM.into(),
        },
        methods,
    })
}

// ------------------------------------------------------------- diagnose

/// Everything needed to redraw the null distributions of one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub schema_version: u32,
    pub order: usize,
    pub length: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    pub observed: f64,
    pub null_mean: f64,
    pub variance: f64,
    pub gd1: (f64, f64),
    /// `None` when the variance vanishes.
    pub gd2: Option<(f64, f64)>,
    /// Zero null variance: ND and GD2 reduce to point masses.
    pub degenerate: bool,
    pub p_nd: f64,
    pub p_gd1: f64,
    pub p_gd2: f64,
    pub p_rd: f64,
    pub surrogates: Vec<f64>,
}

/// Observed CMI, the parametric null parameters and `surrogates` shuffled
/// CMI values at order `m`. Surrogates match those of an RD scan with the
/// same seed.
pub fn diagnose(seq: &SymbolSequence, m: usize, surrogates: usize, seed: u64) -> Result<Diagnosis> {
    if surrogates == 0 {
        return Err(Error::InvalidConfig("at least one surrogate is required".into()));
    }
    let est = cmi_from_bundle(&count_words(seq, m)?);
    let gd1 = gd1_parameters(&est)?;
    let gd2 = gd2_parameters(&est);
    let stream = StreamSeed::new(seed).derive(tags::RANDOMIZATION, m as u64);
    let values = surrogate_values(seq, m, surrogates, stream)?;
    let rank = randomization_rank(est.value, &values, &mut stream.derive(tags::TIE_BREAK, 0).rng());
    let alpha = 0.05;
    Ok(Diagnosis {
        schema_version: DIAGNOSE_SCHEMA_VERSION,
        order: m,
        length: seq.len(),
        alphabet_size: seq.alphabet_size(),
        seed,
        observed: est.value,
        null_mean: est.null_mean,
        variance: est.variance,
        gd1,
        gd2,
        degenerate: gd2.is_none(),
        p_nd: nd_pvalue(&est, alpha).p_value,
        p_gd1: parametric_outcome(&est, TestMethod::Gd1, alpha)?.p_value,
        p_gd2: parametric_outcome(&est, TestMethod::Gd2, alpha)?.p_value,
        p_rd: randomization_pvalue(rank, surrogates),
        surrogates: values,
    })
}

// -------------------------------------------------------------- writers

fn provenance_lines<W: Write>(out: &mut W, pairs: &[(&str, String)]) -> Result<()> {
    for (key, value) in pairs {
        writeln!(out, "# {key}={value}")?;
    }
    Ok(())
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn write_json<W: Write, T: Serialize>(out: W, value: &T) -> Result<()> {
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Long format: one row per method and order. Test rows fill the CMI
/// columns, criterion rows fill `score`.
pub fn write_scan_csv<W: Write>(mut out: W, report: &ScanReport) -> Result<()> {
    let p = &report.provenance;
    provenance_lines(
        &mut out,
        &[
            ("schema_version", report.schema_version.to_string()),
            ("input", p.input.clone()),
            ("scheme", opt(p.scheme)),
            ("alphabet", p.alphabet.join(",")),
            ("length", p.length.to_string()),
            ("alpha", p.alpha.to_string()),
            ("max_order", p.max_order.to_string()),
            ("lookahead", p.lookahead.to_string()),
            ("surrogates", p.surrogates.to_string()),
            ("seed", p.seed.to_string()),
            ("ps_max_word", opt(p.ps_max_word)),
            ("rng", p.rng.clone()),
        ],
    )?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record([
        "method", "order", "cmi", "null_mean", "variance", "p_value", "reject", "score", "estimate", "censored",
        "runtime_ms",
    ])?;
    for scan in &report.methods {
        let tail = [scan.estimate.to_string(), scan.censored.to_string(), scan.runtime_ms.to_string()];
        for row in &scan.rows {
            let head = [
                scan.method.to_string(),
                row.order.to_string(),
                row.cmi.to_string(),
                row.null_mean.to_string(),
                row.variance.to_string(),
                row.p_value.to_string(),
                row.reject.to_string(),
                String::new(),
            ];
            csv.write_record(head.iter().chain(&tail))?;
        }
        for (k, score) in &scan.scores {
            let head = [
                scan.method.to_string(),
                k.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                score.to_string(),
            ];
            csv.write_record(head.iter().chain(&tail))?;
        }
    }
    csv.flush()?;
    Ok(())
}

/// `quantity,index,value` rows; surrogate values carry their index.
pub fn write_diagnosis_csv<W: Write>(mut out: W, d: &Diagnosis) -> Result<()> {
    provenance_lines(
        &mut out,
        &[
            ("schema_version", d.schema_version.to_string()),
            ("order", d.order.to_string()),
            ("length", d.length.to_string()),
            ("alphabet_size", d.alphabet_size.to_string()),
            ("surrogates", d.surrogates.len().to_string()),
            ("seed", d.seed.to_string()),
            ("rng", RNG_ALGORITHM.into()),
        ],
    )?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["quantity", "index", "value"])?;
    let (gd2_shape, gd2_scale) = match d.gd2 {
        Some((shape, scale)) => (shape.to_string(), scale.to_string()),
        None => (String::new(), String::new()),
    };
    let scalars = [
        ("observed", d.observed.to_string()),
        ("nd_mean", d.null_mean.to_string()),
        ("nd_variance", d.variance.to_string()),
        ("gd1_shape", d.gd1.0.to_string()),
        ("gd1_scale", d.gd1.1.to_string()),
        ("gd2_shape", gd2_shape),
        ("gd2_scale", gd2_scale),
        ("degenerate", d.degenerate.to_string()),
        ("p_nd", d.p_nd.to_string()),
        ("p_gd1", d.p_gd1.to_string()),
        ("p_gd2", d.p_gd2.to_string()),
        ("p_rd", d.p_rd.to_string()),
    ];
    for (name, value) in scalars {
        csv.write_record([name, "", value.as_str()])?;
    }
    for (i, v) in d.surrogates.iter().enumerate() {
        csv.write_record(["surrogate", i.to_string().as_str(), v.to_string().as_str()])?;
    }
    csv.flush()?;
    Ok(())
}

/// One row per method, length and realization. `runtime_ms` is empty unless
/// timings were requested.
pub fn write_eval_csv<W: Write>(mut out: W, report: &EvalReport) -> Result<()> {
    let p = &report.provenance;
    provenance_lines(
        &mut out,
        &[
            ("schema_version", report.schema_version.to_string()),
            ("methods", join(&p.methods)),
            ("lengths", join(&p.lengths)),
            ("realizations", p.realizations.to_string()),
            ("seed", p.seed.to_string()),
            ("source", p.source.clone()),
            ("alpha", p.alpha.to_string()),
            ("surrogates", p.surrogates.to_string()),
            ("max_order", p.max_order.to_string()),
            ("lookahead", p.lookahead.to_string()),
            ("burn_in", p.burn_in.to_string()),
            ("ps_max_word", opt(p.ps_max_word)),
            ("rng", p.rng.clone()),
            ("initialization", p.initialization.clone()),
            ("unseen_contexts", p.unseen_contexts.to_string()),
        ],
    )?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["method", "K", "L_true", "N", "realization", "L_hat", "censored", "runtime_ms", "error"])?;
    for row in &report.rows {
        csv.write_record([
            row.method.to_string(),
            row.alphabet_size.to_string(),
            row.true_order.to_string(),
            row.length.to_string(),
            row.realization.to_string(),
            opt(row.estimate),
            row.censored.to_string(),
            opt(row.runtime_ms),
            row.error.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub schema_version: u32,
    pub provenance: crate::simulate::EvalProvenance,
    pub summary: Vec<SuccessSummary>,
}

/// Success rates per method and length, with the provenance block.
pub fn write_eval_summary_json<W: Write>(out: W, report: &EvalReport) -> Result<()> {
    write_json(
        out,
        &EvalSummary {
            schema_version: report.schema_version,
            provenance: report.provenance.clone(),
            summary: report.summary.clone(),
        },
    )
}

// ------------------------------------------------------- eval config file

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceSpec {
    Random,
    /// Fits an order-`L` model to a symbol file; relative paths are resolved
    /// against the config file's directory.
    Fitted {
        path: PathBuf,
        #[serde(default)]
        alphabet: Option<String>,
    },
}

/// TOML evaluation config. Only `methods`, `order`, `lengths`,
/// `realizations` and `seed` are required; `alphabet_size` is required
/// for the random source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfigFile {
    pub methods: Vec<String>,
    #[serde(default)]
    pub alphabet_size: Option<usize>,
    pub order: usize,
    pub lengths: Vec<usize>,
    pub realizations: usize,
    pub seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_surrogates")]
    pub surrogates: usize,
    #[serde(default)]
    pub max_order: Option<usize>,
    #[serde(default = "default_lookahead")]
    pub lookahead: usize,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
    #[serde(default)]
    pub ps_max_word: Option<usize>,
    #[serde(default)]
    pub record_timings: bool,
    #[serde(default = "default_source")]
    pub source: SourceSpec,
}

fn default_alpha() -> f64 {
    0.05
}
fn default_surrogates() -> usize {
    1000
}
fn default_lookahead() -> usize {
    1
}
fn default_burn_in() -> usize {
    crate::simulate::DEFAULT_BURN_IN
}
fn default_source() -> SourceSpec {
    SourceSpec::Random
}

impl EvalConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Builds the harness config; `base` resolves relative model paths.
    pub fn into_config(self, base: &Path) -> Result<EvalConfig> {
        let methods = self.methods.iter().map(|m| m.parse()).collect::<Result<Vec<Estimator>>>()?;
        let (source, alphabet_size) = match self.source {
            SourceSpec::Random => {
                let k = self
                    .alphabet_size
                    .ok_or_else(|| Error::InvalidConfig("alphabet_size is required for the random source".into()))?;
                (ModelSource::Random, k)
            }
            SourceSpec::Fitted { path, alphabet } => {
                let path = base.join(path);
                let alphabet = alphabet.map(|a| Alphabet::from_chars(&a).map(Arc::new)).transpose()?;
                let seq = read_symbol_file(&path, alphabet)?;
                let model = fit_transition_model(&seq, self.order)?;
                if let Some(k) = self.alphabet_size {
                    if k != model.alphabet_size() {
                        return Err(Error::InvalidConfig(format!(
                            "alphabet_size {k} does not match the {} symbols of {}",
                            model.alphabet_size(),
                            path.display()
                        )));
                    }
                }
                let k = model.alphabet_size();
                (
                    ModelSource::Fitted {
                        model,
                        descriptor: path.display().to_string(),
                    },
                    k,
                )
            }
        };
        let mut config = EvalConfig::new(methods, alphabet_size, self.order, self.lengths, self.realizations, self.seed);
        config.source = source;
        config.alpha = self.alpha;
        config.surrogates = self.surrogates;
        config.max_order = self.max_order;
        config.lookahead = self.lookahead;
        config.burn_in = self.burn_in;
        config.ps_max_word = self.ps_max_word;
        config.record_timings = self.record_timings;
        Ok(config)
    }
}

/// Reads a TOML evaluation config from disk.
pub fn load_eval_config<P: AsRef<Path>>(path: P) -> Result<EvalConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    EvalConfigFile::parse(&text)?.into_config(base)
}

//! Markov chain models, sequence generation and the Monte Carlo harness.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{select_order, Criterion};
use crate::error::{Error, Result};
use crate::seqcore::{count_windows, word_space, Alphabet, SymbolSequence};
use crate::sigtests::{estimate_order, ScanConfig, ScanMode, TestMethod};
use crate::streams::{tags, StreamSeed, RNG_ALGORITHM};

pub const DEFAULT_BURN_IN: usize = 1000;

pub const EVAL_SCHEMA_VERSION: u32 = 1;

/// Order-`L` transition table: `K^L` rows (one per context) of `K`
/// probabilities. A context `(x_{t-1}, …, x_{t-L})` is coded with `x_{t-1}`
/// as the most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionModel {
    alphabet: Arc<Alphabet>,
    order: usize,
    probs: Vec<f64>,
    /// Contexts filled with the uniform row because they were never observed.
    unseen_contexts: usize,
}

impl TransitionModel {
    /// Builds a model from row-major probabilities; rows must be
    /// non-negative and sum to one within `1e-12`.
    pub fn new(alphabet: Arc<Alphabet>, order: usize, probs: Vec<f64>) -> Result<Self> {
        let k = alphabet.size();
        if k < 2 || order == 0 {
            return Err(Error::InvalidParameter("a transition model needs K ≥ 2 and L ≥ 1".into()));
        }
        let rows = row_count(k, order)?;
        if probs.len() != rows * k {
            return Err(Error::InvalidParameter(format!(
                "expected {} probabilities, got {}",
                rows * k,
                probs.len()
            )));
        }
        for (r, row) in probs.chunks(k).enumerate() {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|&p| p.is_nan() || p < 0.0) || (sum - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!("row {r} is not a probability vector")));
            }
        }
        Ok(TransitionModel {
            alphabet,
            order,
            probs,
            unseen_contexts: 0,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.probs.len() / self.alphabet_size()
    }

    pub fn row(&self, context: usize) -> &[f64] {
        let k = self.alphabet_size();
        &self.probs[context * k..(context + 1) * k]
    }

    pub fn unseen_contexts(&self) -> usize {
        self.unseen_contexts
    }
}

fn row_count(alphabet_size: usize, order: usize) -> Result<usize> {
    let rows = word_space(alphabet_size, order)?;
    // Refuse tables that could not be allocated anyway.
    if rows > (1 << 28) {
        return Err(Error::OrderTooLarge {
            alphabet_size,
            word_len: order,
        });
    }
    Ok(rows as usize)
}

/// Each row is `K` independent `U[0, 1]` draws divided by their sum.
pub fn random_transition_model<R: Rng + ?Sized>(alphabet_size: usize, order: usize, rng: &mut R) -> Result<TransitionModel> {
    let alphabet = Arc::new(Alphabet::numeric(alphabet_size)?);
    if alphabet_size < 2 || order == 0 {
        return Err(Error::InvalidParameter("a transition model needs K ≥ 2 and L ≥ 1".into()));
    }
    let rows = row_count(alphabet_size, order)?;
    let mut probs = Vec::with_capacity(rows * alphabet_size);
    for _ in 0..rows {
        let draws: Vec<f64> = (0..alphabet_size).map(|_| rng.random::<f64>()).collect();
        let sum: f64 = draws.iter().sum();
        if sum > 0.0 {
            probs.extend(draws.iter().map(|u| u / sum));
        } else {
            probs.extend(std::iter::repeat_n(1.0 / alphabet_size as f64, alphabet_size));
        }
    }
    Ok(TransitionModel {
        alphabet,
        order,
        probs,
        unseen_contexts: 0,
    })
}

/// Relative transition frequencies of `seq`; unseen contexts get the
/// uniform row.
pub fn fit_transition_model(seq: &SymbolSequence, order: usize) -> Result<TransitionModel> {
    let k = seq.alphabet_size();
    if k < 2 || order == 0 {
        return Err(Error::InvalidParameter("a transition model needs K ≥ 2 and L ≥ 1".into()));
    }
    if seq.len() <= order {
        return Err(Error::SequenceTooShort { len: seq.len(), order });
    }
    let rows = row_count(k, order)?;
    let mut counts = vec![0u64; rows * k];
    // code = x_t · K^L + context
    for (code, n) in count_windows(seq.data(), k, order + 1)?.iter() {
        let next = (code / rows as u64) as usize;
        let context = (code % rows as u64) as usize;
        counts[context * k + next] = n;
    }
    let mut probs = Vec::with_capacity(rows * k);
    let mut unseen = 0;
    for row in counts.chunks(k) {
        let total: u64 = row.iter().sum();
        if total == 0 {
            unseen += 1;
            probs.extend(std::iter::repeat_n(1.0 / k as f64, k));
        } else {
            probs.extend(row.iter().map(|&n| n as f64 / total as f64));
        }
    }
    Ok(TransitionModel {
        alphabet: Arc::clone(seq.alphabet()),
        order,
        probs,
        unseen_contexts: unseen,
    })
}

fn sample_row<R: Rng + ?Sized>(row: &[f64], rng: &mut R) -> u8 {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in row.iter().enumerate() {
        acc += p;
        if u < acc {
            return i as u8;
        }
    }
    // Round-off in the cumulative sum: last symbol with positive mass.
    row.iter().rposition(|&p| p > 0.0).unwrap_or(row.len() - 1) as u8
}

/// Emits `len` symbols after a uniform random initial context and
/// `burn_in` discarded steps.
pub fn generate<R: Rng + ?Sized>(model: &TransitionModel, len: usize, burn_in: usize, rng: &mut R) -> SymbolSequence {
    let k = model.alphabet_size();
    let rows = model.rows();
    let mut context = 0usize;
    for _ in 0..model.order {
        context = context * k + rng.random_range(0..k);
    }
    let top = rows / k;
    let mut step = |context: &mut usize| {
        let next = sample_row(model.row(*context), rng);
        *context = next as usize * top + *context / k;
        next
    };
    for _ in 0..burn_in {
        step(&mut context);
    }
    let data: Vec<u8> = (0..len).map(|_| step(&mut context)).collect();
    SymbolSequence::new(Arc::clone(&model.alphabet), data).expect("sampled symbols are in range")
}

/// Any order estimator the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Estimator {
    Test(TestMethod),
    Criterion(Criterion),
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Test(t) => t.name(),
            Estimator::Criterion(c) => c.name(),
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<TestMethod>()
            .map(Estimator::Test)
            .or_else(|_| s.parse::<Criterion>().map(Estimator::Criterion))
            .map_err(|_| Error::InvalidConfig(format!("unknown method {s:?}")))
    }
}

impl TryFrom<String> for Estimator {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Estimator> for String {
    fn from(e: Estimator) -> String {
        e.name().to_string()
    }
}

/// Estimates the order of `seq` with any estimator, scanning orders up to
/// `max_order`. Returns `(order, censored)`.
pub fn run_estimator(
    seq: &SymbolSequence,
    estimator: Estimator,
    config: &ScanConfig,
    max_word: Option<usize>,
) -> Result<(usize, bool)> {
    match estimator {
        Estimator::Test(method) => estimate_order(seq, method, config).map(|e| (e.order, e.censored)),
        Estimator::Criterion(criterion) => {
            let k_max = config.resolve_max_order(seq.alphabet_size(), seq.len())?;
            select_order(seq, criterion, k_max, max_word).map(|r| (r.selected, false))
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelSource {
    /// A fresh random model per realization.
    Random,
    /// One fixed model; realizations differ in their streams.
    Fitted { model: TransitionModel, descriptor: String },
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub methods: Vec<Estimator>,
    pub alphabet_size: usize,
    pub order: usize,
    pub lengths: Vec<usize>,
    pub realizations: usize,
    pub seed: u64,
    pub source: ModelSource,
    pub alpha: f64,
    pub surrogates: usize,
    /// Highest order scanned; defaults to `order + 1`.
    pub max_order: Option<usize>,
    pub lookahead: usize,
    pub burn_in: usize,
    /// Longest Peres–Shields word; defaults per sequence.
    pub ps_max_word: Option<usize>,
    /// Record per-method wall-clock times. Off by default so reports are
    /// byte-reproducible.
    pub record_timings: bool,
}

impl EvalConfig {
    pub fn new(methods: Vec<Estimator>, alphabet_size: usize, order: usize, lengths: Vec<usize>, realizations: usize, seed: u64) -> Self {
        EvalConfig {
            methods,
            alphabet_size,
            order,
            lengths,
            realizations,
            seed,
            source: ModelSource::Random,
            alpha: 0.05,
            surrogates: 1000,
            max_order: None,
            lookahead: 1,
            burn_in: DEFAULT_BURN_IN,
            ps_max_word: None,
            record_timings: false,
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order.unwrap_or(self.order + 1)
    }

    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods configured".into()));
        }
        if self.alphabet_size < 2 || self.order == 0 {
            return Err(Error::InvalidConfig("evaluation needs K ≥ 2 and L ≥ 1".into()));
        }
        row_count(self.alphabet_size, self.order).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if let ModelSource::Fitted { model, .. } = &self.source {
            if model.alphabet_size() != self.alphabet_size || model.order() != self.order {
                return Err(Error::InvalidConfig(format!(
                    "fitted model has K = {}, L = {} but the configuration asks for K = {}, L = {}",
                    model.alphabet_size(),
                    model.order(),
                    self.alphabet_size,
                    self.order
                )));
            }
        }
        let m_max = self.max_order();
        for &n in &self.lengths {
            self.scan_config(StreamSeed::new(0)).resolve_max_order(self.alphabet_size, n).map_err(|e| {
                Error::InvalidConfig(format!("sequence length {n} with maximum order {m_max}: {e}"))
            })?;
        }
        if self.methods.contains(&Estimator::Test(TestMethod::Rd)) && self.surrogates == 0 {
            return Err(Error::InvalidConfig("RD needs at least one surrogate".into()));
        }
        Ok(())
    }

    fn scan_config(&self, seed: StreamSeed) -> ScanConfig {
        ScanConfig {
            alpha: self.alpha,
            max_order: Some(self.max_order()),
            lookahead: self.lookahead,
            surrogates: self.surrogates,
            seed,
            mode: ScanMode::StopAtDecision,
        }
    }

    fn source_name(&self) -> String {
        match &self.source {
            ModelSource::Random => "random".into(),
            ModelSource::Fitted { descriptor, .. } => format!("fitted:{descriptor}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub method: Estimator,
    pub alphabet_size: usize,
    pub true_order: usize,
    pub length: usize,
    pub realization: usize,
    pub estimate: Option<usize>,
    pub censored: bool,
    pub runtime_ms: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessSummary {
    pub method: Estimator,
    pub length: usize,
    pub successes: usize,
    pub realizations: usize,
    pub errors: usize,
    pub success_rate: f64,
}

/// Parameters echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalProvenance {
    pub methods: Vec<Estimator>,
    pub alphabet_size: usize,
    pub true_order: usize,
    pub lengths: Vec<usize>,
    pub realizations: usize,
    pub seed: u64,
    pub source: String,
    pub alpha: f64,
    pub surrogates: usize,
    pub max_order: usize,
    pub lookahead: usize,
    pub burn_in: usize,
    pub ps_max_word: Option<usize>,
    pub ps_variants: Vec<String>,
    pub rng: String,
    pub initialization: String,
    pub unseen_contexts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub provenance: EvalProvenance,
    pub rows: Vec<EvalRow>,
    pub summary: Vec<SuccessSummary>,
}

impl EvalReport {
    pub fn success(&self, method: Estimator, length: usize) -> Option<&SuccessSummary> {
        self.summary.iter().find(|s| s.method == method && s.length == length)
    }

    pub fn rows_for(&self, method: Estimator, length: usize) -> impl Iterator<Item = &EvalRow> + '_ {
        self.rows.iter().filter(move |r| r.method == method && r.length == length)
    }
}

fn realization_rows(config: &EvalConfig, length: usize, realization: usize) -> Vec<EvalRow> {
    let root = StreamSeed::new(config.seed);
    let r = realization as u64;
    let row = |method: Estimator, result: Result<(usize, bool)>, runtime_ms: Option<f64>| {
        let (estimate, censored, error) = match result {
            Ok((order, censored)) => (Some(order), censored, None),
            Err(e) => (None, false, Some(e.to_string())),
        };
        EvalRow {
            method,
            alphabet_size: config.alphabet_size,
            true_order: config.order,
            length,
            realization,
            estimate,
            censored,
            runtime_ms,
            error,
        }
    };

    let model = match &config.source {
        ModelSource::Random => random_transition_model(config.alphabet_size, config.order, &mut root.derive(tags::MODEL, r).rng()),
        ModelSource::Fitted { model, .. } => Ok(model.clone()),
    };
    let model = match model {
        Ok(model) => model,
        Err(e) => {
            let msg = e.to_string();
            return config
                .methods
                .iter()
                .map(|&m| row(m, Err(Error::InvalidParameter(msg.clone())), None))
                .collect();
        }
    };
    let per_length = root.derive(tags::LENGTH, length as u64);
    let seq = generate(
        &model,
        length,
        config.burn_in,
        &mut per_length.derive(tags::SEQUENCE, r).rng(),
    );
    let scan = config.scan_config(per_length.derive(tags::REALIZATION, r));

    config
        .methods
        .iter()
        .map(|&method| {
            let start = Instant::now();
            let result = run_estimator(&seq, method, &scan, config.ps_max_word);
            let runtime = config.record_timings.then(|| start.elapsed().as_secs_f64() * 1e3);
            row(method, result, runtime)
        })
        .collect()
}

/// Runs every configured estimator on `realizations` simulated sequences
/// for each length. Realizations run in parallel; the report does not
/// depend on the thread count.
pub fn evaluate(config: &EvalConfig) -> Result<EvalReport> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = config
        .lengths
        .iter()
        .flat_map(|&n| (0..config.realizations).map(move |r| (n, r)))
        .collect();
    let rows: Vec<EvalRow> = jobs
        .par_iter()
        .flat_map_iter(|&(n, r)| realization_rows(config, n, r))
        .collect();

    let mut summary = Vec::new();
    for &length in &config.lengths {
        for &method in &config.methods {
            let mut successes = 0;
            let mut errors = 0;
            for row in rows.iter().filter(|r| r.method == method && r.length == length) {
                match row.estimate {
                    Some(order) if order == config.order => successes += 1,
                    None => errors += 1,
                    _ => {}
                }
            }
            summary.push(SuccessSummary {
                method,
                length,
                successes,
                realizations: config.realizations,
                errors,
                success_rate: if config.realizations > 0 {
                    successes as f64 / config.realizations as f64
                } else {
                    0.0
                },
            });
        }
    }

    let unseen_contexts = match &config.source {
        ModelSource::Fitted { model, .. } => model.unseen_contexts(),
        ModelSource::Random => 0,
    };
    let ps_variants = config
        .methods
        .iter()
        .filter_map(|m| match m {
            Estimator::Criterion(c @ (Criterion::Ps | Criterion::PsKnee)) => Some(c.name().to_string()),
            _ => None,
        })
        .collect();
    Ok(EvalReport {
        schema_version: EVAL_SCHEMA_VERSION,
        provenance: EvalProvenance {
            methods: config.methods.clone(),
            alphabet_size: config.alphabet_size,
            true_order: config.order,
            lengths: config.lengths.clone(),
            realizations: config.realizations,
            seed: config.seed,
            source: config.source_name(),
            alpha: config.alpha,
            surrogates: config.surrogates,
            max_order: config.max_order(),
            lookahead: config.lookahead,
            burn_in: config.burn_in,
            ps_max_word: config.ps_max_word,
            ps_variants,
            rng: RNG_ALGORITHM.into(),
            initialization: format!(
                "uniform random initial context, {} burn-in steps discarded",
                config.burn_in
            ),
            unseen_contexts,
        },
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn period_two() -> TransitionModel {
        TransitionModel::new(Arc::new(Alphabet::numeric(2).unwrap()), 1, vec![0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn random_model_rows_are_distributions() {
        let m = random_transition_model(2, 3, &mut StreamSeed::new(1).rng()).unwrap();
        assert_eq!(m.rows(), 8);
        for r in 0..8 {
            let row = m.row(r);
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(row.iter().all(|&p| p >= 0.0));
        }
        let again = random_transition_model(2, 3, &mut StreamSeed::new(1).rng()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn random_model_entry_mean() {
        // Normalized uniforms are exchangeable, so each entry has mean 1/K.
        // 3^9 = 19683 rows.
        let m = random_transition_model(3, 9, &mut StreamSeed::new(2).rng()).unwrap();
        let first: Vec<f64> = (0..m.rows()).map(|r| m.row(r)[0]).collect();
        let n = first.len() as f64;
        let mean = first.iter().sum::<f64>() / n;
        let sd = (first.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        assert!((mean - 1.0 / 3.0).abs() < 3.0 * sd / n.sqrt(), "{mean}");
    }

    #[test]
    fn fit_examples() {
        let abc = Arc::new(Alphabet::numeric(2).unwrap());
        let alt = SymbolSequence::new(abc.clone(), (0..50).map(|i| (i % 2) as u8).collect()).unwrap();
        let m = fit_transition_model(&alt, 1).unwrap();
        assert_eq!(m.row(0), &[0.0, 1.0]);
        assert_eq!(m.row(1), &[1.0, 0.0]);

        let zeros = SymbolSequence::new(abc, vec![0; 30]).unwrap();
        let z = fit_transition_model(&zeros, 1).unwrap();
        assert_eq!(z.row(0), &[1.0, 0.0]);
        assert_eq!(z.row(1), &[0.5, 0.5]);
        assert_eq!(z.unseen_contexts(), 1);
    }

    #[test]
    fn period_two_generates_alternation() {
        let s = generate(&period_two(), 101, 3, &mut StreamSeed::new(4).rng());
        assert_eq!(s.len(), 101);
        assert!(s.data().windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn generated_frequencies_match_model() {
        let model = random_transition_model(2, 3, &mut StreamSeed::new(11).rng()).unwrap();
        let s = generate(&model, 100_000, DEFAULT_BURN_IN, &mut StreamSeed::new(12).rng());
        let refit = fit_transition_model(&s, 3).unwrap();
        for r in 0..model.rows() {
            for (p, q) in model.row(r).iter().zip(refit.row(r)) {
                assert!((p - q).abs() < 0.02, "row {r}: {p} vs {q}");
            }
        }
    }

    #[test]
    fn refit_roundtrip() {
        let abc = Arc::new(Alphabet::numeric(4).unwrap());
        let mut rng = StreamSeed::new(21).rng();
        let source = SymbolSequence::new(abc, (0..5000).map(|_| rng.random_range(0..4u8)).collect()).unwrap();
        let fitted = fit_transition_model(&source, 2).unwrap();
        let s = generate(&fitted, 100_000, DEFAULT_BURN_IN, &mut StreamSeed::new(22).rng());
        let refit = fit_transition_model(&s, 2).unwrap();
        for r in 0..fitted.rows() {
            for (p, q) in fitted.row(r).iter().zip(refit.row(r)) {
                assert!((p - q).abs() < 0.02);
            }
        }
    }

    #[test]
    fn invalid_models() {
        let abc = Arc::new(Alphabet::numeric(2).unwrap());
        assert!(TransitionModel::new(abc.clone(), 1, vec![0.5, 0.6, 1.0, 0.0]).is_err());
        assert!(TransitionModel::new(abc, 1, vec![1.0, 0.0]).is_err());
        assert!(random_transition_model(2, 40, &mut StreamSeed::new(0).rng()).is_err());
    }

    #[test]
    fn empty_evaluation() {
        let config = EvalConfig::new(vec![Estimator::Test(TestMethod::Gd1)], 2, 2, vec![400], 0, 1);
        let report = evaluate(&config).unwrap();
        assert!(report.rows.is_empty());
        assert_eq!(report.summary.len(), 1);
        assert_eq!(report.summary[0].successes, 0);
        assert_eq!(report.schema_version, EVAL_SCHEMA_VERSION);
    }

    #[test]
    fn evaluation_is_reproducible_across_thread_counts() {
        let mut config = EvalConfig::new(
            vec![
                Estimator::Test(TestMethod::Gd1),
                Estimator::Test(TestMethod::Rd),
                Estimator::Criterion(Criterion::Bic),
                Estimator::Criterion(Criterion::Ps),
            ],
            2,
            2,
            vec![200, 400],
            6,
            99,
        );
        config.surrogates = 49;
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| evaluate(&config).unwrap());
        let parallel = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| evaluate(&config).unwrap());
        assert_eq!(serial, parallel);
        assert_eq!(serial.rows.len(), 2 * 6 * 4);
        assert!(serial.summary.iter().all(|s| s.successes <= s.realizations));
    }

    #[test]
    fn invalid_eval_configs() {
        let config = EvalConfig::new(vec![], 2, 2, vec![400], 3, 1);
        assert!(matches!(evaluate(&config), Err(Error::InvalidConfig(_))));
        let short = EvalConfig::new(vec![Estimator::Test(TestMethod::Gd1)], 2, 4, vec![5], 3, 1);
        assert!(matches!(evaluate(&short), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn estimator_names_round_trip() {
        for name in ["ND", "GD1", "GD2", "RD", "AIC", "BIC", "PS", "PS-knee"] {
            assert_eq!(name.parse::<Estimator>().unwrap().name(), name);
        }
        assert!("XYZ".parse::<Estimator>().is_err());
    }

    proptest! {
        #[test]
        fn generated_sequences_respect_contracts(k in 2usize..5, order in 1usize..4, len in 1usize..300, seed in any::<u64>()) {
            let model = random_transition_model(k, order, &mut StreamSeed::new(seed).rng()).unwrap();
            let s = generate(&model, len, 10, &mut StreamSeed::new(seed ^ 1).rng());
            prop_assert_eq!(s.len(), len);
            prop_assert!(s.data().iter().all(|&x| (x as usize) < k));
        }
    }
}

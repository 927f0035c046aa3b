//! Baseline order selection: AIC, BIC and the Peres–Shields fluctuation
//! estimator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{count_windows, word_space, SymbolSequence, WordCounts};
use crate::sigtests::default_max_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "AIC")]
    Aic,
    #[serde(rename = "BIC")]
    Bic,
    /// Peres–Shields with the `N^(3/4)` threshold.
    #[serde(rename = "PS")]
    Ps,
    /// Peres–Shields with the ratio ("knee") rule.
    #[serde(rename = "PS-knee")]
    PsKnee,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::Aic, Criterion::Bic, Criterion::Ps, Criterion::PsKnee];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Aic => "AIC",
            Criterion::Bic => "BIC",
            Criterion::Ps => "PS",
            Criterion::PsKnee => "PS-knee",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown criterion {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub criterion: Criterion,
    /// `(k, score)` for every evaluated order.
    pub scores: Vec<(usize, f64)>,
    pub selected: usize,
    /// Longest word length used for the Peres–Shields fluctuations.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_word: Option<usize>,
}

/// Tables of `(context, next symbol)` words of length `k + 1` and of their
/// contexts, both over the `N - k` windows.
fn transition_tables(seq: &SymbolSequence, k: usize) -> Result<(WordCounts, WordCounts)> {
    let kk = seq.alphabet_size() as u64;
    let joint = count_windows(seq.data(), seq.alphabet_size(), k + 1)?;
    let contexts = joint.marginalize(|c| c % kk.pow(k as u32), kk.pow(k as u32));
    Ok((joint, contexts))
}

fn xlogx_sum(table: &WordCounts) -> f64 {
    table
        .counts()
        .map(|n| {
            let n = n as f64;
            n * n.ln()
        })
        .sum()
}

/// Maximized log-likelihood of an order-`k` chain, in nats.
pub fn log_likelihood(seq: &SymbolSequence, k: usize) -> Result<f64> {
    if seq.len() <= k {
        return Err(Error::SequenceTooShort { len: seq.len(), order: k });
    }
    let (joint, contexts) = transition_tables(seq, k)?;
    Ok(xlogx_sum(&joint) - xlogx_sum(&contexts))
}

/// Free parameters of an order-`k` chain, `K^k (K - 1)`.
fn parameter_count(alphabet_size: usize, k: usize) -> Result<f64> {
    Ok(word_space(alphabet_size, k)? as f64 * (alphabet_size - 1) as f64)
}

fn argmin(scores: &[(usize, f64)]) -> usize {
    let mut best = scores[0];
    for &(k, s) in &scores[1..] {
        if s < best.1 {
            best = (k, s);
        }
    }
    best.0
}

fn penalized_order(seq: &SymbolSequence, k_max: usize, criterion: Criterion) -> Result<CriterionResult> {
    if seq.len() <= k_max {
        return Err(Error::SequenceTooShort { len: seq.len(), order: k_max });
    }
    let kk = seq.alphabet_size();
    let scores = (0..=k_max)
        .map(|k| {
            let ll = log_likelihood(seq, k)?;
            let params = parameter_count(kk, k)?;
            let penalty = match criterion {
                Criterion::Aic => 2.0 * params,
                _ => params * ((seq.len() - k) as f64).ln(),
            };
            Ok((k, -2.0 * ll + penalty))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionResult {
        criterion,
        selected: argmin(&scores),
        scores,
        max_word: None,
    })
}

/// `AIC(k) = -2 log L(k) + 2 K^k (K - 1)`, minimized over `k ≤ k_max`.
pub fn aic_order(seq: &SymbolSequence, k_max: usize) -> Result<CriterionResult> {
    penalized_order(seq, k_max, Criterion::Aic)
}

/// `BIC(k) = -2 log L(k) + K^k (K - 1) ln(N - k)`, minimized over `k ≤ k_max`.
pub fn bic_order(seq: &SymbolSequence, k_max: usize) -> Result<CriterionResult> {
    penalized_order(seq, k_max, Criterion::Bic)
}

/// Fluctuation `Δ^k`: the largest gap `|N(vb) - N(v·) N(sb) / N(s·)|` over
/// observed words `v` with `k < |v| ≤ max_word`, symbols `b` and `s` the
/// `k` most recent symbols of `v`. `N(v·)` counts occurrences of `v` that are
/// followed by a symbol.
pub fn ps_fluctuation(seq: &SymbolSequence, k: usize, max_word: usize) -> Result<f64> {
    if max_word <= k {
        return Err(Error::InvalidConfig(format!(
            "longest word {max_word} must exceed the order {k}"
        )));
    }
    if seq.len() <= max_word {
        return Err(Error::SequenceTooShort { len: seq.len(), order: max_word });
    }
    let kk = seq.alphabet_size() as u64;
    // Suffix statistics: counts of (s, b) and of s followed by a symbol.
    let (suffix_joint, suffix_ctx) = transition_tables(seq, k)?;
    let suffix_space = kk.pow(k as u32);

    let mut worst = 0.0f64;
    for len in k + 1..=max_word {
        let (joint, contexts) = transition_tables(seq, len)?;
        let ctx_space = kk.pow(len as u32);
        let drop = kk.pow((len - k) as u32);
        for (code, n_vb) in joint.iter() {
            let b = code / ctx_space;
            let v = code % ctx_space;
            let s = v / drop;
            let n_v = contexts.get(v) as f64;
            let n_sb = suffix_joint.get(b * suffix_space + s) as f64;
            let n_s = suffix_ctx.get(s) as f64;
            worst = worst.max((n_vb as f64 - n_v * n_sb / n_s).abs());
        }
        // Words vb with N(vb) = 0 but N(v·) > 0 also contribute.
        for (v, n_v) in contexts.iter() {
            let s = v / drop;
            let n_s = suffix_ctx.get(s) as f64;
            for b in 0..kk {
                if joint.get(b * ctx_space + v) == 0 {
                    let n_sb = suffix_joint.get(b * suffix_space + s) as f64;
                    worst = worst.max(n_v as f64 * n_sb / n_s);
                }
            }
        }
    }
    Ok(worst)
}

/// Default longest word for the fluctuations: the count-table bound used
/// for the order scan, and at least `k_max + 1`.
pub fn default_max_word(alphabet_size: usize, len: usize, k_max: usize) -> usize {
    default_max_order(alphabet_size, len).max(k_max + 1)
}

/// Peres–Shields order: the smallest `k` with `Δ^k < N^(3/4)` for the
/// threshold rule, or the `k ≥ 1` maximizing `Δ^(k-1) / max(Δ^k, 1)` for the
/// knee rule.
pub fn ps_order(
    seq: &SymbolSequence,
    k_max: usize,
    max_word: Option<usize>,
    criterion: Criterion,
) -> Result<CriterionResult> {
    if !matches!(criterion, Criterion::Ps | Criterion::PsKnee) {
        return Err(Error::InvalidParameter(format!("{criterion} is not a Peres–Shields rule")));
    }
    let max_word = max_word.unwrap_or_else(|| default_max_word(seq.alphabet_size(), seq.len(), k_max));
    if max_word <= k_max {
        return Err(Error::InvalidConfig(format!(
            "longest word {max_word} must exceed the maximum order {k_max}"
        )));
    }
    let scores = (0..=k_max)
        .map(|k| Ok((k, ps_fluctuation(seq, k, max_word)?)))
        .collect::<Result<Vec<_>>>()?;
    let selected = match criterion {
        Criterion::Ps => {
            let threshold = (seq.len() as f64).powf(0.75);
            scores.iter().find(|&&(_, d)| d < threshold).map_or(k_max, |&(k, _)| k)
        }
        _ => {
            let mut best = (0, f64::NEG_INFINITY);
            for w in scores.windows(2) {
                let ratio = w[0].1 / w[1].1.max(1.0);
                if ratio > best.1 {
                    best = (w[1].0, ratio);
                }
            }
            best.0
        }
    };
    Ok(CriterionResult {
        criterion,
        scores,
        selected,
        max_word: Some(max_word),
    })
}

/// Runs one criterion over orders `0..=k_max`.
pub fn select_order(
    seq: &SymbolSequence,
    criterion: Criterion,
    k_max: usize,
    max_word: Option<usize>,
) -> Result<CriterionResult> {
    match criterion {
        Criterion::Aic => aic_order(seq, k_max),
        Criterion::Bic => bic_order(seq, k_max),
        ps => ps_order(seq, k_max, max_word, ps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::Alphabet;
    use crate::streams::StreamSeed;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use std::collections::HashMap;
    use std::sync::Arc;

    fn seq(k: usize, data: Vec<u8>) -> SymbolSequence {
        SymbolSequence::new(Arc::new(Alphabet::numeric(k).unwrap()), data).unwrap()
    }

    fn alternating(n: usize) -> SymbolSequence {
        seq(2, (0..n).map(|i| (i % 2) as u8).collect())
    }

    fn random(k: usize, n: usize, seed: u64) -> SymbolSequence {
        let mut rng = StreamSeed::new(seed).rng();
        seq(k, (0..n).map(|_| rng.random_range(0..k as u8)).collect())
    }

    /// Direct Peres–Shields fluctuation over explicit word vectors.
    fn naive_fluctuation(data: &[u8], kk: u8, k: usize, max_word: usize) -> f64 {
        // occurrences of v followed by b, written oldest first
        let mut followed: HashMap<Vec<u8>, u64> = HashMap::new();
        for len in 0..=max_word {
            for end in len..data.len() {
                *followed.entry(data[end - len..=end].to_vec()).or_insert(0) += 1;
            }
        }
        let ctx = |w: &[u8]| -> u64 { (0..kk).map(|b| followed.get(&[w, &[b]].concat()).copied().unwrap_or(0)).sum() };
        let mut worst = 0.0f64;
        for len in k + 1..=max_word {
            for end in len..data.len() {
                let v = &data[end - len..end];
                let s = &v[len - k..];
                for b in 0..kk {
                    let n_vb = followed.get(&[v, &[b]].concat()).copied().unwrap_or(0) as f64;
                    let n_sb = followed.get(&[s, &[b]].concat()).copied().unwrap_or(0) as f64;
                    let gap = (n_vb - ctx(v) as f64 * n_sb / ctx(s) as f64).abs();
                    worst = worst.max(gap);
                }
            }
        }
        worst
    }

    #[test]
    fn log_likelihood_examples() {
        assert_eq!(log_likelihood(&seq(2, vec![0; 30]), 0).unwrap(), 0.0);
        assert_abs_diff_eq!(log_likelihood(&alternating(40), 1).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(log_likelihood(&alternating(8), 0).unwrap(), -8.0 * std::f64::consts::LN_2, epsilon = 1e-12);
        assert_abs_diff_eq!(log_likelihood(&alternating(8), 0).unwrap(), -5.5452, epsilon = 1e-4);
        assert!(log_likelihood(&alternating(3), 3).is_err());
    }

    #[test]
    fn log_likelihood_non_decreasing() {
        for seed in 0..30 {
            let s = random(2 + (seed as usize % 3), 60, seed);
            let lls: Vec<f64> = (0..5).map(|k| log_likelihood(&s, k).unwrap()).collect();
            for w in lls.windows(2) {
                assert!(w[1] >= w[0] - 1e-9, "{lls:?}");
            }
        }
    }

    #[test]
    fn aic_bic_examples() {
        let constant = seq(2, vec![0; 200]);
        assert_eq!(aic_order(&constant, 4).unwrap().selected, 0);
        assert_eq!(bic_order(&constant, 4).unwrap().selected, 0);
        let alt = alternating(1600);
        assert_eq!(aic_order(&alt, 5).unwrap().selected, 1);
        assert_eq!(bic_order(&alt, 5).unwrap().selected, 1);
    }

    #[test]
    fn bic_never_exceeds_aic() {
        for seed in 0..40 {
            let s = random(2, 300, 100 + seed);
            let a = aic_order(&s, 4).unwrap().selected;
            let b = bic_order(&s, 4).unwrap().selected;
            assert!(b <= a);
        }
    }

    #[test]
    fn bic_selects_zero_on_iid() {
        let hits = (0..100).filter(|&seed| bic_order(&random(2, 1600, 1000 + seed), 4).unwrap().selected == 0).count();
        assert!(hits >= 90, "{hits}");
    }

    #[test]
    fn fluctuation_matches_naive_enumeration() {
        for seed in 0..10 {
            let s = random(3, 80, seed);
            for k in 0..3 {
                let fast = ps_fluctuation(&s, k, 4).unwrap();
                let slow = naive_fluctuation(s.data(), 3, k, 4);
                assert_abs_diff_eq!(fast, slow, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn ps_examples() {
        let constant = seq(2, vec![0; 100]);
        assert_eq!(ps_fluctuation(&constant, 0, 3).unwrap(), 0.0);
        assert_eq!(ps_order(&constant, 3, None, Criterion::Ps).unwrap().selected, 0);

        let alt = alternating(1600);
        assert_eq!(ps_fluctuation(&alt, 1, 5).unwrap(), 0.0);
        let d0 = ps_fluctuation(&alt, 0, 5).unwrap();
        assert_abs_diff_eq!(d0, 400.0, epsilon = 1.0);
        assert_eq!(ps_order(&alt, 4, None, Criterion::Ps).unwrap().selected, 1);
        assert_eq!(ps_order(&alt, 4, None, Criterion::PsKnee).unwrap().selected, 1);
        assert!(matches!(ps_order(&alt, 4, Some(4), Criterion::Ps), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn deterministic_chain_has_zero_fluctuation_above_its_order() {
        // order-3 deterministic rule x_t = x_{t-1} xor x_{t-3}
        let mut data = vec![1u8, 0, 0];
        while data.len() < 500 {
            let n = data.len();
            data.push(data[n - 1] ^ data[n - 3]);
        }
        let s = seq(2, data);
        for k in 3..6 {
            assert_eq!(ps_fluctuation(&s, k, 7).unwrap(), 0.0);
        }
        assert!(ps_fluctuation(&s, 2, 7).unwrap() > 0.0);
    }
}

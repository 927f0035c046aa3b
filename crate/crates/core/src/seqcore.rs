//! Alphabets, integer-coded symbol sequences and sliding-window word counts.
//!
//! A word `w_1 … w_l` over `K` symbols is packed into a `u64` code
//! `Σ w_i · K^(l-i)`. Words are always read backwards in time, so for the
//! window ending at position `t` the newest symbol `x_t` is the most
//! significant digit and `x_{t-l+1}` the least significant one.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported alphabet; symbol indices are stored as `u8`.
pub const MAX_ALPHABET: usize = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, u8>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet has no symbols".into()));
        }
        if labels.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols exceed the supported maximum of {MAX_ALPHABET}",
                labels.len()
            )));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol label".into()));
            }
            if index.insert(label.clone(), i as u8).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate label {label:?}")));
            }
        }
        Ok(Alphabet { labels, index })
    }

    /// One label per character, e.g. `"ACGT"`.
    pub fn from_chars(symbols: &str) -> Result<Self> {
        Alphabet::new(symbols.chars().map(String::from))
    }

    pub fn nucleotides() -> Self {
        Alphabet::from_chars("ACGT").expect("static alphabet")
    }

    /// Labels `0`, `1`, … (then `a`, `b`, … past ten symbols).
    pub fn numeric(size: usize) -> Result<Self> {
        const DIGITS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";
        if size <= DIGITS.len() {
            Alphabet::from_chars(&DIGITS[..size])
        } else {
            Alphabet::new((0..size).map(|i| format!("s{i}")))
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: u8) -> &str {
        &self.labels[index as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u8> {
        self.index.get(label).copied()
    }

    /// True when every label is a single character.
    pub fn is_single_char(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Alphabet").field(&self.labels).finish()
    }
}

/// An integer-coded sequence; every element is `< alphabet.size()`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    alphabet: Arc<Alphabet>,
    data: Vec<u8>,
}

impl SymbolSequence {
    pub fn new(alphabet: Arc<Alphabet>, data: Vec<u8>) -> Result<Self> {
        let k = alphabet.size();
        if let Some(position) = data.iter().position(|&s| s as usize >= k) {
            return Err(Error::UnknownSymbol {
                label: format!("#{}", data[position]),
                position,
            });
        }
        Ok(SymbolSequence { alphabet, data })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Occurrences of every symbol index.
    pub fn histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.alphabet_size()];
        for &s in &self.data {
            hist[s as usize] += 1;
        }
        hist
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.data.iter().map(|&s| self.alphabet.label(s))
    }

    fn with_data(&self, data: Vec<u8>) -> Self {
        SymbolSequence {
            alphabet: Arc::clone(&self.alphabet),
            data,
        }
    }
}

impl fmt::Debug for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolSequence")
            .field("alphabet", &self.alphabet.labels)
            .field("len", &self.data.len())
            .finish()
    }
}

pub fn encode_sequence<S: AsRef<str>>(raw: &[S], alphabet: Arc<Alphabet>) -> Result<SymbolSequence> {
    let data = raw
        .iter()
        .enumerate()
        .map(|(position, label)| {
            let label = label.as_ref();
            alphabet.index_of(label).ok_or_else(|| Error::UnknownSymbol {
                label: label.to_string(),
                position,
            })
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(SymbolSequence { alphabet, data })
}

/// Uniform random permutation of the sequence (Fisher–Yates).
pub fn permute<R: Rng + ?Sized>(seq: &SymbolSequence, rng: &mut R) -> SymbolSequence {
    let mut data = seq.data.clone();
    data.shuffle(rng);
    seq.with_data(data)
}

/// `K^len`, the number of distinct words of length `len`.
pub fn word_space(alphabet_size: usize, word_len: usize) -> Result<u64> {
    u32::try_from(word_len)
        .ok()
        .and_then(|len| (alphabet_size as u64).checked_pow(len))
        .ok_or(Error::OrderTooLarge {
            alphabet_size,
            word_len,
        })
}

/// Sparse word-code → count table, sorted by code.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCounts {
    entries: Vec<(u64, u64)>,
}

impl WordCounts {
    /// Builds a table from `(code, count)` pairs; duplicate codes are summed
    /// and zero counts dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut pairs: Vec<(u64, u64)> = pairs.into_iter().filter(|&(_, c)| c > 0).collect();
        pairs.sort_unstable_by_key(|&(code, _)| code);
        merge_sorted(pairs)
    }

    pub fn get(&self, code: u64) -> u64 {
        match self.entries.binary_search_by_key(&code, |&(c, _)| c) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (u64, u64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn counts(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.entries.iter().map(|&(_, c)| c)
    }

    /// Number of distinct observed words.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    /// Sums counts over words mapped to the same key by `project`.
    pub fn marginalize<F: Fn(u64) -> u64>(&self, project: F, key_space: u64) -> WordCounts {
        if use_dense(key_space, self.entries.len()) {
            let mut dense = vec![0u64; key_space as usize];
            for &(code, count) in &self.entries {
                dense[project(code) as usize] += count;
            }
            from_dense(&dense)
        } else {
            let mut pairs: Vec<(u64, u64)> =
                self.entries.iter().map(|&(code, c)| (project(code), c)).collect();
            pairs.sort_unstable_by_key(|&(code, _)| code);
            merge_sorted(pairs)
        }
    }
}

fn use_dense(key_space: u64, items: usize) -> bool {
    key_space <= (1 << 16) || key_space <= 8 * items as u64
}

fn from_dense(dense: &[u64]) -> WordCounts {
    WordCounts {
        entries: dense
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(code, &c)| (code as u64, c))
            .collect(),
    }
}

fn merge_sorted(pairs: Vec<(u64, u64)>) -> WordCounts {
    let mut entries: Vec<(u64, u64)> = Vec::with_capacity(pairs.len());
    for (code, count) in pairs {
        match entries.last_mut() {
            Some(last) if last.0 == code => last.1 += count,
            _ => entries.push((code, count)),
        }
    }
    WordCounts { entries }
}

/// Counts every window of `word_len` consecutive symbols in `data`.
///
/// Returns an empty table when `data` is shorter than `word_len`.
pub fn count_windows(data: &[u8], alphabet_size: usize, word_len: usize) -> Result<WordCounts> {
    assert!(word_len >= 1, "words must have at least one symbol");
    let space = word_space(alphabet_size, word_len)?;
    if data.len() < word_len {
        return Ok(WordCounts::default());
    }
    let k = alphabet_size as u64;
    let top = space / k;
    let windows = data.len() + 1 - word_len;

    // Code of the first window, newest symbol most significant.
    let mut code = 0u64;
    for i in (0..word_len).rev() {
        code = code * k + data[i] as u64;
    }
    let codes = std::iter::once(code).chain(data[word_len..].iter().map(move |&s| {
        code = s as u64 * top + code / k;
        code
    }));

    if use_dense(space, windows) {
        let mut dense = vec![0u64; space as usize];
        for c in codes {
            dense[c as usize] += 1;
        }
        Ok(from_dense(&dense))
    } else {
        let mut all: Vec<u64> = codes.collect();
        all.sort_unstable();
        let mut entries: Vec<(u64, u64)> = Vec::new();
        for c in all {
            match entries.last_mut() {
                Some(last) if last.0 == c => last.1 += 1,
                _ => entries.push((c, 1)),
            }
        }
        Ok(WordCounts { entries })
    }
}

/// Numbers of distinct observed words in the four CMI tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctCounts {
    pub xyz: usize,
    pub xz: usize,
    pub yz: usize,
    pub z: usize,
}

impl DistinctCounts {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.xyz, self.xz, self.yz, self.z)
    }
}

/// Joint and marginal word counts for one order `m`, all over the same
/// `N - m` windows `(x_t, …, x_{t-m})`.
///
/// With `X = x_t`, `Y = x_{t-m}` and `Z = (x_{t-1}, …, x_{t-m+1})`:
/// `full` holds `XZY`, `left` holds `XZ`, `right` holds `ZY` and `mid`
/// holds `Z`. The marginals are summed out of `full`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCountBundle {
    order: usize,
    alphabet_size: usize,
    windows: u64,
    full: WordCounts,
    left: WordCounts,
    right: WordCounts,
    mid: WordCounts,
}

impl WordCountBundle {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `N_m = N - m`.
    pub fn windows(&self) -> u64 {
        self.windows
    }

    pub fn full(&self) -> &WordCounts {
        &self.full
    }

    pub fn left(&self) -> &WordCounts {
        &self.left
    }

    pub fn right(&self) -> &WordCounts {
        &self.right
    }

    pub fn mid(&self) -> &WordCounts {
        &self.mid
    }

    pub fn distinct_counts(&self) -> DistinctCounts {
        DistinctCounts {
            xyz: self.full.distinct(),
            xz: self.left.distinct(),
            yz: self.right.distinct(),
            z: self.mid.distinct(),
        }
    }

    /// Splits a `full` code into its `(left, right, mid)` codes.
    pub fn project(&self, full_code: u64) -> (u64, u64, u64) {
        let k = self.alphabet_size as u64;
        // Both powers are below the full word space checked at construction.
        let km = k.pow(self.order as u32);
        let km1 = km / k;
        let left = full_code / k;
        (left, full_code % km, left % km1)
    }
}

pub fn distinct_counts(bundle: &WordCountBundle) -> DistinctCounts {
    bundle.distinct_counts()
}

/// Counts the order-`m` window tables of `seq`.
pub fn count_words(seq: &SymbolSequence, m: usize) -> Result<WordCountBundle> {
    count_words_raw(seq.data(), seq.alphabet_size(), m)
}

pub(crate) fn count_words_raw(data: &[u8], alphabet_size: usize, m: usize) -> Result<WordCountBundle> {
    if m == 0 {
        return Err(Error::InvalidParameter("order m must be at least 1".into()));
    }
    word_space(alphabet_size, m + 1)?;
    if data.len() <= m {
        return Err(Error::SequenceTooShort { len: data.len(), order: m });
    }
    let full = count_windows(data, alphabet_size, m + 1)?;
    let k = alphabet_size as u64;
    let km = k.pow(m as u32);
    let km1 = km / k;
    let left = full.marginalize(|c| c / k, km);
    let right = full.marginalize(|c| c % km, km);
    let mid = full.marginalize(|c| (c / k) % km1, km1);
    Ok(WordCountBundle {
        order: m,
        alphabet_size,
        windows: (data.len() - m) as u64,
        full,
        left,
        right,
        mid,
    })
}

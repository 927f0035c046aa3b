//! Plug-in entropy, mutual information and conditional mutual information,
//! with the analytic null mean and variance of the CMI estimate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{count_words_raw, DistinctCounts, SymbolSequence, WordCountBundle, WordCounts};

/// Plug-in CMI of one order together with its null mean and variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmiEstimate {
    pub order: usize,
    pub alphabet_size: usize,
    /// `N_m = N - m`.
    pub windows: u64,
    /// Estimated CMI in nats, never negative.
    pub value: f64,
    /// Expected value of the estimate when the true CMI is zero.
    pub null_mean: f64,
    pub variance: f64,
    pub counts: DistinctCounts,
}

/// Shannon entropy in nats of the empirical distribution `counts / total`.
pub fn entropy<I: IntoIterator<Item = u64>>(counts: I, total: u64) -> Result<f64> {
    if total == 0 {
        return Err(Error::EmptyTable);
    }
    let total = total as f64;
    let h = counts
        .into_iter()
        .filter(|&n| n > 0)
        .map(|n| {
            let p = n as f64 / total;
            -p * p.ln()
        })
        .sum::<f64>();
    Ok(h)
}

fn table_entropy(table: &WordCounts, total: u64) -> f64 {
    entropy(table.counts(), total).expect("tables cover at least one window")
}

/// `-H(XZY) + H(ZY) + H(XZ) - H(Z)`, clamped at zero.
fn combine(h_full: f64, h_right: f64, h_left: f64, h_mid: f64) -> f64 {
    let value = -h_full + h_right + h_left - h_mid;
    value.max(0.0)
}

/// Plug-in MI between `x_t` and `x_{t-m}` over the `N - m` windows.
pub fn mutual_information(seq: &SymbolSequence, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("lag m must be at least 1".into()));
    }
    let data = seq.data();
    if data.len() <= m {
        return Err(Error::SequenceTooShort { len: data.len(), order: m });
    }
    let k = seq.alphabet_size() as u64;
    let n_m = (data.len() - m) as u64;
    let joint = WordCounts::from_pairs((m..data.len()).map(|t| (data[t] as u64 * k + data[t - m] as u64, 1)));
    let x = joint.marginalize(|c| c / k, k);
    let y = joint.marginalize(|c| c % k, k);
    Ok(combine(
        table_entropy(&joint, n_m),
        table_entropy(&y, n_m),
        table_entropy(&x, n_m),
        0.0,
    ))
}

/// CMI value from the four-entropy decomposition.
pub fn cmi_value(bundle: &WordCountBundle) -> f64 {
    let n = bundle.windows();
    combine(
        table_entropy(bundle.full(), n),
        table_entropy(bundle.right(), n),
        table_entropy(bundle.left(), n),
        table_entropy(bundle.mid(), n),
    )
}

/// Mean of the CMI estimate under zero true CMI, from the Miller bias of
/// each entropy term.
pub fn cmi_bias(counts: DistinctCounts, windows: u64) -> f64 {
    let numerator = counts.xyz as f64 - counts.xz as f64 - counts.yz as f64 + counts.z as f64;
    numerator / (2.0 * windows as f64)
}

/// Error-propagation variance of the CMI estimate with binomial word counts.
///
/// Each observed `XZY` word contributes
/// `(ln(q_XZ q_ZY / (q_XZY q_Z)) + value)^2 q_XZY (1 - q_XZY) / N_m`.
pub fn cmi_variance(bundle: &WordCountBundle, value: f64) -> f64 {
    let n = bundle.windows() as f64;
    let mut sum = 0.0;
    for (code, count) in bundle.full().iter() {
        let (left, right, mid) = bundle.project(code);
        let q = count as f64 / n;
        let log_ratio = (bundle.left().get(left) as f64).ln() + (bundle.right().get(right) as f64).ln()
            - (count as f64).ln()
            - (bundle.mid().get(mid) as f64).ln();
        let d = log_ratio + value;
        sum += d * d * q * (1.0 - q);
    }
    sum / n
}

pub fn cmi_from_bundle(bundle: &WordCountBundle) -> CmiEstimate {
    let value = cmi_value(bundle);
    let counts = bundle.distinct_counts();
    CmiEstimate {
        order: bundle.order(),
        alphabet_size: bundle.alphabet_size(),
        windows: bundle.windows(),
        value,
        null_mean: cmi_bias(counts, bundle.windows()),
        variance: cmi_variance(bundle, value),
        counts,
    }
}

pub fn cmi(seq: &SymbolSequence, m: usize) -> Result<CmiEstimate> {
    let bundle = count_words_raw(seq.data(), seq.alphabet_size(), m)?;
    Ok(cmi_from_bundle(&bundle))
}

/// CMI value only, for surrogate loops.
pub(crate) fn cmi_value_raw(data: &[u8], alphabet_size: usize, m: usize) -> Result<f64> {
    count_words_raw(data, alphabet_size, m).map(|b| cmi_value(&b))
}

//! One-sided significance tests of `H0: I_c(m) = 0` and the order scan.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infotheory::{cmi_from_bundle, cmi_value_raw, CmiEstimate};
use crate::seqcore::{count_words_raw, word_space, SymbolSequence};
use crate::streams::{tags, StreamSeed};

/// Floor applied to the null mean before it parameterizes the GD2 gamma.
pub const GD2_MEAN_FLOOR: f64 = 1e-12;

/// Two randomization statistics closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestMethod {
    #[serde(rename = "ND")]
    Nd,
    #[serde(rename = "GD1")]
    Gd1,
    #[serde(rename = "GD2")]
    Gd2,
    #[serde(rename = "RD")]
    Rd,
}

impl TestMethod {
    pub const ALL: [TestMethod; 4] = [TestMethod::Nd, TestMethod::Gd1, TestMethod::Gd2, TestMethod::Rd];

    pub fn name(self) -> &'static str {
        match self {
            TestMethod::Nd => "ND",
            TestMethod::Gd1 => "GD1",
            TestMethod::Gd2 => "GD2",
            TestMethod::Rd => "RD",
        }
    }

    pub fn is_parametric(self) -> bool {
        self != TestMethod::Rd
    }
}

impl fmt::Display for TestMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TestMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown test method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub method: TestMethod,
    pub order: usize,
    /// Observed CMI in nats.
    pub statistic: f64,
    pub p_value: f64,
    pub reject: bool,
    pub alpha: f64,
}

impl TestOutcome {
    fn new(method: TestMethod, order: usize, statistic: f64, p_value: f64, alpha: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestOutcome {
            method,
            order,
            statistic,
            p_value,
            reject: p_value < alpha,
            alpha,
        }
    }
}

/// Upper tail of the standard normal distribution.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(z / std::f64::consts::SQRT_2)
}

/// Upper tail `Q(shape, x / scale)` of the gamma distribution.
pub fn gamma_sf(shape: f64, scale: f64, x: f64) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) || !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gamma parameters must be positive and finite (shape {shape}, scale {scale})"
        )));
    }
    if x.is_nan() {
        return Err(Error::InvalidParameter("gamma tail at NaN".into()));
    }
    let y = x / scale;
    if y <= 0.0 {
        return Ok(1.0);
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    Ok(statrs::function::gamma::gamma_ur(shape, y))
}

/// Point-mass rule used when the null variance vanishes.
fn degenerate_p(value: f64, mean: f64) -> f64 {
    if value <= mean {
        1.0
    } else {
        0.0
    }
}

/// Normal null `N(b, V)` with the analytic bias and variance.
pub fn nd_pvalue(est: &CmiEstimate, alpha: f64) -> TestOutcome {
    let p = if est.variance > 0.0 {
        normal_sf((est.value - est.null_mean) / est.variance.sqrt())
    } else {
        degenerate_p(est.value, est.null_mean)
    };
    TestOutcome::new(TestMethod::Nd, est.order, est.value, p, alpha)
}

/// Shape and scale of the chi-square based gamma null, for CMI in nats.
pub fn gd1_parameters(est: &CmiEstimate) -> Result<(f64, f64)> {
    if est.alphabet_size < 2 {
        return Err(Error::InvalidParameter("GD1 needs at least two symbols".into()));
    }
    if est.counts.z == 0 {
        return Err(Error::InvalidParameter("GD1 needs at least one observed context".into()));
    }
    let k1 = (est.alphabet_size - 1) as f64;
    Ok((est.counts.z as f64 * k1 * k1 / 2.0, 1.0 / est.windows as f64))
}

/// Gamma null `Γ(K_Z (K-1)² / 2, 1 / N_m)`.
pub fn gd1_pvalue(est: &CmiEstimate, alpha: f64) -> Result<TestOutcome> {
    let (shape, scale) = gd1_parameters(est)?;
    let p = gamma_sf(shape, scale, est.value)?;
    Ok(TestOutcome::new(TestMethod::Gd1, est.order, est.value, p, alpha))
}

/// Shape and scale of the moment-matched gamma null, or `None` when the
/// variance vanishes.
pub fn gd2_parameters(est: &CmiEstimate) -> Option<(f64, f64)> {
    if est.variance > 0.0 {
        let mean = est.null_mean.max(GD2_MEAN_FLOOR);
        Some((mean * mean / est.variance, est.variance / mean))
    } else {
        None
    }
}

/// Gamma null with mean `max(b, ε)` and variance `V`.
pub fn gd2_pvalue(est: &CmiEstimate, alpha: f64) -> TestOutcome {
    let p = match gd2_parameters(est) {
        // Parameters are positive and finite by construction unless V is
        // subnormal; fall back to the point mass then.
        Some((shape, scale)) => gamma_sf(shape, scale, est.value)
            .unwrap_or_else(|_| degenerate_p(est.value, est.null_mean.max(GD2_MEAN_FLOOR))),
        None => degenerate_p(est.value, est.null_mean.max(GD2_MEAN_FLOOR)),
    };
    TestOutcome::new(TestMethod::Gd2, est.order, est.value, p, alpha)
}

/// Rank-corrected randomization p-value `1 - (r - 0.326) / (M + 1 + 0.348)`.
pub fn randomization_pvalue(rank: usize, surrogates: usize) -> f64 {
    1.0 - (rank as f64 - 0.326) / (surrogates as f64 + 1.0 + 0.348)
}

/// Ascending rank (1-based) of `observed` among itself and `surrogates`,
/// with ties placed uniformly at random.
pub fn randomization_rank<R: Rng + ?Sized>(observed: f64, surrogates: &[f64], rng: &mut R) -> usize {
    let mut below = 0;
    let mut tied = 0;
    for &s in surrogates {
        if (s - observed).abs() <= TIE_TOLERANCE {
            tied += 1;
        } else if s < observed {
            below += 1;
        }
    }
    below + 1 + rng.random_range(0..=tied)
}

/// CMI values of `count` shuffled copies of `seq`; surrogate `i` uses the
/// stream `stream.derive(SURROGATE, i)` so the result does not depend on
/// thread scheduling.
pub fn surrogate_values(seq: &SymbolSequence, m: usize, count: usize, stream: StreamSeed) -> Result<Vec<f64>> {
    let k = seq.alphabet_size();
    (0..count)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| {
            let mut rng = stream.derive(tags::SURROGATE, i as u64).rng();
            buf.clear();
            buf.extend_from_slice(seq.data());
            buf.shuffle(&mut rng);
            cmi_value_raw(buf, k, m)
        })
        .collect()
}

/// Randomization test with `surrogates` shuffled sequences.
pub fn rd_pvalue(
    seq: &SymbolSequence,
    m: usize,
    surrogates: usize,
    stream: StreamSeed,
    alpha: f64,
) -> Result<TestOutcome> {
    if surrogates == 0 {
        return Err(Error::InvalidConfig("randomization test needs at least one surrogate".into()));
    }
    let observed = cmi_value_raw(seq.data(), seq.alphabet_size(), m)?;
    let values = surrogate_values(seq, m, surrogates, stream)?;
    let rank = randomization_rank(observed, &values, &mut stream.derive(tags::TIE_BREAK, 0).rng());
    Ok(TestOutcome::new(
        TestMethod::Rd,
        m,
        observed,
        randomization_pvalue(rank, surrogates),
        alpha,
    ))
}

/// Runs one test on `seq` at order `m`.
pub fn run_test(
    seq: &SymbolSequence,
    method: TestMethod,
    m: usize,
    alpha: f64,
    surrogates: usize,
    stream: StreamSeed,
) -> Result<TestOutcome> {
    match method {
        TestMethod::Rd => rd_pvalue(seq, m, surrogates, stream.derive(tags::RANDOMIZATION, m as u64), alpha),
        parametric => {
            let bundle = count_words_raw(seq.data(), seq.alphabet_size(), m)?;
            parametric_outcome(&cmi_from_bundle(&bundle), parametric, alpha)
        }
    }
}

/// Applies a parametric test to an existing estimate.
pub fn parametric_outcome(est: &CmiEstimate, method: TestMethod, alpha: f64) -> Result<TestOutcome> {
    match method {
        TestMethod::Nd => Ok(nd_pvalue(est, alpha)),
        TestMethod::Gd1 => gd1_pvalue(est, alpha),
        TestMethod::Gd2 => Ok(gd2_pvalue(est, alpha)),
        TestMethod::Rd => Err(Error::InvalidParameter("RD needs the sequence, not an estimate".into())),
    }
}

/// Largest `m` with `K^(m+1) ≤ (N - m) / 5`, at least 1.
pub fn default_max_order(alphabet_size: usize, len: usize) -> usize {
    let mut best = 1;
    let mut m = 1;
    while m < len {
        match word_space(alphabet_size, m + 1) {
            Ok(space) if space.saturating_mul(5) <= (len - m) as u64 => best = m,
            _ => break,
        }
        m += 1;
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Stop testing as soon as the order is decided.
    StopAtDecision,
    /// Test every order up to the maximum.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub alpha: f64,
    /// `None` selects [`default_max_order`].
    pub max_order: Option<usize>,
    /// Number of non-rejections required after the selected order.
    pub lookahead: usize,
    pub surrogates: usize,
    pub seed: StreamSeed,
    pub mode: ScanMode,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            alpha: 0.05,
            max_order: None,
            lookahead: 1,
            surrogates: 1000,
            seed: StreamSeed::new(0),
            mode: ScanMode::StopAtDecision,
        }
    }
}

impl ScanConfig {
    /// Checks the configuration against a sequence and returns the maximum
    /// order to scan.
    pub fn resolve_max_order(&self, alphabet_size: usize, len: usize) -> Result<usize> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.lookahead == 0 {
            return Err(Error::InvalidConfig("lookahead must be at least 1".into()));
        }
        if alphabet_size < 2 {
            return Err(Error::InvalidConfig("order estimation needs at least two symbols".into()));
        }
        let m_max = self.max_order.unwrap_or_else(|| default_max_order(alphabet_size, len));
        if m_max == 0 {
            return Err(Error::InvalidConfig("maximum order must be at least 1".into()));
        }
        if word_space(alphabet_size, m_max + 1).is_err() {
            return Err(Error::InvalidConfig(format!(
                "maximum order {m_max} overflows the word code for {alphabet_size} symbols"
            )));
        }
        if len <= m_max {
            return Err(Error::SequenceTooShort { len, order: m_max });
        }
        Ok(m_max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderEstimate {
    pub method: TestMethod,
    pub order: usize,
    /// Rejection persisted through `max_order`.
    pub censored: bool,
    pub max_order: usize,
    pub lookahead: usize,
    pub outcomes: Vec<TestOutcome>,
}

/// The scan rule: the estimate is the first rejected order followed by
/// `lookahead` non-rejections. Non-rejections before the first rejection
/// do not end the scan; the estimate is zero only if no order rejects.
///
/// `test` is called for `m = 1, 2, …`. In [`ScanMode::Full`] every order up
/// to `max_order` is tested even after the decision.
pub fn scan_orders<F>(method: TestMethod, max_order: usize, lookahead: usize, mode: ScanMode, mut test: F) -> Result<OrderEstimate>
where
    F: FnMut(usize) -> Result<TestOutcome>,
{
    let mut outcomes = Vec::with_capacity(max_order);
    let mut decision: Option<usize> = None;
    // Last rejected order, 0 before any rejection.
    let mut candidate = 0;
    let mut quiet = 0;
    for m in 1..=max_order {
        let outcome = test(m)?;
        let reject = outcome.reject;
        outcomes.push(outcome);
        if decision.is_none() {
            if reject {
                candidate = m;
                quiet = 0;
            } else if candidate > 0 {
                quiet += 1;
                if quiet == lookahead {
                    decision = Some(candidate);
                }
            }
        }
        if decision.is_some() && mode == ScanMode::StopAtDecision {
            break;
        }
    }
    let (order, censored) = match decision {
        Some(order) => (order, false),
        None if candidate == 0 => (0, false),
        // Rejection at the last tested order.
        None if quiet == 0 => (max_order, true),
        // Lookahead truncated by the maximum order.
        None => (candidate, false),
    };
    Ok(OrderEstimate {
        method,
        order,
        censored,
        max_order,
        lookahead,
        outcomes,
    })
}

/// Estimates the Markov chain order of `seq` with one test.
pub fn estimate_order(seq: &SymbolSequence, method: TestMethod, config: &ScanConfig) -> Result<OrderEstimate> {
    let max_order = config.resolve_max_order(seq.alphabet_size(), seq.len())?;
    if method == TestMethod::Rd && config.surrogates == 0 {
        return Err(Error::InvalidConfig("randomization test needs at least one surrogate".into()));
    }
    scan_orders(method, max_order, config.lookahead, config.mode, |m| {
        run_test(seq, method, m, config.alpha, config.surrogates, config.seed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infotheory::cmi;
    use crate::seqcore::{Alphabet, DistinctCounts};
    use approx::assert_abs_diff_eq;
    use std::sync::Arc;

    fn seq(k: usize, data: Vec<u8>) -> SymbolSequence {
        SymbolSequence::new(Arc::new(Alphabet::numeric(k).unwrap()), data).unwrap()
    }

    fn estimate(value: f64, null_mean: f64, variance: f64) -> CmiEstimate {
        CmiEstimate {
            order: 1,
            alphabet_size: 2,
            windows: 1000,
            value,
            null_mean,
            variance,
            counts: DistinctCounts { xyz: 4, xz: 2, yz: 2, z: 1 },
        }
    }

    /// Simpson quadrature of the gamma density on [x, x + 60·scale·shape].
    fn gamma_tail_quadrature(shape: f64, scale: f64, x: f64) -> f64 {
        let ln_norm = statrs::function::gamma::ln_gamma(shape) + shape * scale.ln();
        let pdf = |t: f64| ((shape - 1.0) * t.ln() - t / scale - ln_norm).exp();
        let upper = x + 60.0 * scale * shape.max(1.0);
        let n = 200_000;
        let h = (upper - x) / n as f64;
        let mut sum = pdf(x) + pdf(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * pdf(x + i as f64 * h);
        }
        sum * h / 3.0
    }

    #[test]
    fn normal_tail_values() {
        assert_eq!(normal_sf(0.0), 0.5);
        assert_abs_diff_eq!(normal_sf(1.6449), 0.05, epsilon = 1e-4);
        assert_abs_diff_eq!(normal_sf(1.959_963_984_540_054), 0.025, epsilon = 1e-10);
        assert_abs_diff_eq!(normal_sf(-40.0), 1.0, epsilon = 1e-15);
        assert!(normal_sf(40.0) < 1e-300);
    }

    #[test]
    fn gamma_tail_values() {
        assert_abs_diff_eq!(gamma_sf(1.0, 1.0, 1.0).unwrap(), (-1.0f64).exp(), epsilon = 1e-14);
        assert_eq!(gamma_sf(3.0, 2.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(gamma_sf(0.5, 2.0, 3.8415).unwrap(), 0.05, epsilon = 1e-4);
        assert_abs_diff_eq!(gamma_sf(4.5, 2.0, 16.919).unwrap(), 0.05, epsilon = 1e-4);
        assert!(gamma_sf(0.0, 1.0, 1.0).is_err());
        assert!(gamma_sf(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn gamma_tail_matches_quadrature() {
        for &(shape, scale, x) in &[(1.5, 0.01, 0.02), (2.5, 1.0, 1.0), (18.0, 0.001, 0.02), (3.0, 2.0, 10.0)] {
            let expected = gamma_tail_quadrature(shape, scale, x);
            assert_abs_diff_eq!(gamma_sf(shape, scale, x).unwrap(), expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn nd_examples() {
        let v = 4e-6;
        assert_eq!(nd_pvalue(&estimate(0.001, 0.001, v), 0.05).p_value, 0.5);
        let at_quantile = nd_pvalue(&estimate(0.001 + 1.6449 * v.sqrt(), 0.001, v), 0.05);
        assert_abs_diff_eq!(at_quantile.p_value, 0.05, epsilon = 1e-4);
        let constant = cmi(&seq(2, vec![0; 50]), 1).unwrap();
        let out = nd_pvalue(&constant, 0.05);
        assert_eq!(out.p_value, 1.0);
        assert!(!out.reject);
    }

    #[test]
    fn gd1_examples() {
        assert_eq!(gd1_pvalue(&estimate(0.0, 0.0, 0.0), 0.05).unwrap().p_value, 1.0);
        let chi_quantile = estimate(3.8415 / 2000.0, 0.0, 0.0);
        assert_abs_diff_eq!(gd1_pvalue(&chi_quantile, 0.05).unwrap().p_value, 0.05, epsilon = 1e-4);

        let mut k4 = estimate(0.01, 0.0, 0.0);
        k4.alphabet_size = 4;
        k4.counts.z = 4;
        assert_eq!(gd1_parameters(&k4).unwrap().0, 18.0);

        let mut empty = estimate(0.01, 0.0, 0.0);
        empty.counts.z = 0;
        assert!(gd1_pvalue(&empty, 0.05).is_err());
    }

    #[test]
    fn gd2_examples() {
        assert_eq!(gd2_pvalue(&estimate(0.0, 0.001, 1e-6), 0.05).p_value, 1.0);
        // b = V: shape b, scale 1, mean b.
        let (shape, scale) = gd2_parameters(&estimate(0.0, 0.3, 0.3)).unwrap();
        assert_abs_diff_eq!(shape * scale, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(scale, 1.0, epsilon = 1e-15);

        // Non-positive null mean is floored; any clearly positive value rejects.
        let sparse = estimate(0.01, 0.0, 1e-6);
        let (shape, scale) = gd2_parameters(&sparse).unwrap();
        assert_eq!(shape, GD2_MEAN_FLOOR * GD2_MEAN_FLOOR / 1e-6);
        let out = gd2_pvalue(&sparse, 0.05);
        assert!(out.p_value < 1e-10 && out.reject);
        // Independent check: Q(a, y) ≤ a·E1(y) ≤ a·e^{-y}/y for small shape a.
        let y = 0.01 / scale;
        assert!(out.p_value <= shape * (-y).exp() / y + 1e-300);
    }

    #[test]
    fn randomization_pvalue_arithmetic() {
        assert_abs_diff_eq!(randomization_pvalue(1001, 1000), 1.0 - 1000.674 / 1001.348, epsilon = 1e-15);
        assert_abs_diff_eq!(randomization_pvalue(1001, 1000), 6.7309e-4, epsilon = 1e-7);
        // 500.674 / 1001.348 is exactly one half.
        assert_abs_diff_eq!(randomization_pvalue(501, 1000), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(randomization_pvalue(501, 1000), 0.4999, epsilon = 2e-4);
    }

    #[test]
    fn ties_are_ranked_uniformly() {
        let surrogates = vec![0.0; 9];
        let mut counts = [0usize; 10];
        let mut rng = StreamSeed::new(5).rng();
        for _ in 0..20_000 {
            counts[randomization_rank(0.0, &surrogates, &mut rng) - 1] += 1;
        }
        for c in counts {
            assert!((1700..2300).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn rd_is_deterministic_and_ranks_strong_dependence_last() {
        let alt = seq(2, (0..400).map(|i| (i % 2) as u8).collect());
        let a = rd_pvalue(&alt, 1, 99, StreamSeed::new(1), 0.05).unwrap();
        let b = rd_pvalue(&alt, 1, 99, StreamSeed::new(1), 0.05).unwrap();
        assert_eq!(a, b);
        assert_abs_diff_eq!(a.p_value, randomization_pvalue(100, 99), epsilon = 1e-15);
        assert!(a.reject);
        assert!(rd_pvalue(&alt, 1, 0, StreamSeed::new(1), 0.05).is_err());
    }

    #[test]
    fn tests_are_one_sided() {
        let base = estimate(0.0, 0.0005, 1e-7);
        let mut last = [1.0f64; 3];
        for i in 0..200 {
            let est = CmiEstimate { value: i as f64 * 2e-5, ..base.clone() };
            let ps = [
                nd_pvalue(&est, 0.05).p_value,
                gd1_pvalue(&est, 0.05).unwrap().p_value,
                gd2_pvalue(&est, 0.05).p_value,
            ];
            for (p, prev) in ps.iter().zip(last.iter_mut()) {
                assert!((0.0..=1.0).contains(p));
                assert!(*p <= *prev + 1e-15);
                *prev = *p;
            }
        }
    }

    #[test]
    fn default_max_order_bound() {
        // 2^(m+1) ≤ (1600 - m)/5 → m = 7 (256 ≤ 318.6), m = 8 fails (512).
        assert_eq!(default_max_order(2, 1600), 7);
        assert_eq!(default_max_order(4, 1600), 3);
        assert_eq!(default_max_order(2, 5), 1);
    }

    fn scripted(rejects: &'static [bool]) -> impl FnMut(usize) -> Result<TestOutcome> {
        move |m| {
            let p = if rejects[m - 1] { 0.0 } else { 1.0 };
            Ok(TestOutcome::new(TestMethod::Gd1, m, 0.0, p, 0.05))
        }
    }

    #[test]
    fn scan_rule() {
        let est = scan_orders(TestMethod::Gd1, 5, 1, ScanMode::StopAtDecision, scripted(&[true, true, false, true, true])).unwrap();
        assert_eq!((est.order, est.censored, est.outcomes.len()), (2, false, 3));

        let full = scan_orders(TestMethod::Gd1, 5, 1, ScanMode::Full, scripted(&[true, true, false, true, true])).unwrap();
        assert_eq!((full.order, full.censored, full.outcomes.len()), (2, false, 5));

        let zero = scan_orders(TestMethod::Gd1, 4, 1, ScanMode::StopAtDecision, scripted(&[false, false, false, false])).unwrap();
        assert_eq!((zero.order, zero.censored, zero.outcomes.len()), (0, false, 4));

        // Early non-rejections do not end the scan.
        let late = scan_orders(TestMethod::Gd1, 5, 1, ScanMode::StopAtDecision, scripted(&[false, false, true, false, true])).unwrap();
        assert_eq!((late.order, late.censored, late.outcomes.len()), (3, false, 4));

        let late_censored = scan_orders(TestMethod::Gd1, 5, 1, ScanMode::StopAtDecision, scripted(&[false, true, true, true, true])).unwrap();
        assert_eq!((late_censored.order, late_censored.censored), (5, true));

        let censored = scan_orders(TestMethod::Gd1, 3, 1, ScanMode::StopAtDecision, scripted(&[true, true, true])).unwrap();
        assert_eq!((censored.order, censored.censored), (3, true));

        // Lookahead 2 skips a single gap.
        let g2 = scan_orders(TestMethod::Gd1, 6, 2, ScanMode::StopAtDecision, scripted(&[true, false, true, false, false, true])).unwrap();
        assert_eq!((g2.order, g2.censored), (3, false));

        // Lookahead truncated by the maximum order.
        let trunc = scan_orders(TestMethod::Gd1, 3, 2, ScanMode::StopAtDecision, scripted(&[true, true, false])).unwrap();
        assert_eq!((trunc.order, trunc.censored), (2, false));
    }

    #[test]
    fn estimate_order_on_simple_sequences() {
        let config = ScanConfig::default();
        let constant = seq(2, vec![1; 500]);
        let alt = seq(2, (0..1600).map(|i| (i % 2) as u8).collect());
        for method in TestMethod::ALL {
            let cfg = ScanConfig { surrogates: 99, ..config.clone() };
            assert_eq!(estimate_order(&constant, method, &cfg).unwrap().order, 0, "{method}");
            assert_eq!(estimate_order(&alt, method, &cfg).unwrap().order, 1, "{method}");
        }
    }

    #[test]
    fn invalid_scan_configs() {
        let s = seq(2, vec![0, 1, 1, 0, 1, 0, 0, 1]);
        let too_deep = ScanConfig { max_order: Some(64), ..Default::default() };
        assert!(matches!(estimate_order(&s, TestMethod::Gd1, &too_deep), Err(Error::InvalidConfig(_))));
        let bad_alpha = ScanConfig { alpha: 1.5, ..Default::default() };
        assert!(matches!(estimate_order(&s, TestMethod::Gd1, &bad_alpha), Err(Error::InvalidConfig(_))));
        let short = ScanConfig { max_order: Some(8), ..Default::default() };
        assert!(matches!(estimate_order(&s, TestMethod::Gd1, &short), Err(Error::SequenceTooShort { .. })));
        let unary = SymbolSequence::new(Arc::new(Alphabet::numeric(1).unwrap()), vec![0; 10]).unwrap();
        assert!(estimate_order(&unary, TestMethod::Nd, &ScanConfig::default()).is_err());
    }
}

//! Markov chain order estimation from symbol sequences.
//!
//! The estimators test the conditional mutual information (CMI) between
//! symbols `m` steps apart, given the `m - 1` intermediate symbols, for
//! increasing `m`. Four significance tests are provided:
//!
//! * `ND`: normal null with analytic bias and variance of the plug-in CMI,
//! * `GD1`: gamma null derived from the chi-square relation,
//! * `GD2`: gamma null moment-matched to the `ND` mean and variance,
//! * `RD`: randomization test over shuffled surrogates.
//!
//! AIC, BIC and the Peres–Shields fluctuation estimator are included as
//! baselines, together with a Monte Carlo harness ([`simulate`]) and DNA
//! ingestion plus report writers ([`toolkit`]).
//!
//! All information quantities are in nats.

pub mod criteria;
pub mod error;
pub mod infotheory;
pub mod seqcore;
pub mod sigtests;
pub mod simulate;
pub mod streams;
pub mod toolkit;

pub use error::{Error, Result};
pub use infotheory::{cmi, CmiEstimate};
pub use seqcore::{count_words, Alphabet, SymbolSequence, WordCountBundle};
pub use sigtests::{estimate_order, OrderEstimate, ScanConfig, TestMethod, TestOutcome};
pub use streams::StreamSeed;

//! Statistical properties of the tests on simulated chains.

use markov_order::infotheory::cmi;
use markov_order::sigtests::{gd1_pvalue, nd_pvalue, run_test, TestMethod};
use markov_order::simulate::{generate, random_transition_model, DEFAULT_BURN_IN};
use markov_order::streams::tags;
use markov_order::StreamSeed;

#[test]
fn gd1_is_more_conservative_than_nd_past_a_high_order() {
    let (mut gd1, mut nd) = (0, 0);
    for r in 0..200u64 {
        let model = random_transition_model(2, 6, &mut StreamSeed::new(600).derive(tags::MODEL, r).rng()).unwrap();
        let s = generate(&model, 1600, DEFAULT_BURN_IN, &mut StreamSeed::new(601).derive(tags::SEQUENCE, r).rng());
        let est = cmi(&s, 7).unwrap();
        gd1 += gd1_pvalue(&est, 0.05).unwrap().reject as usize;
        nd += nd_pvalue(&est, 0.05).reject as usize;
    }
    assert!(gd1 <= nd, "GD1 {gd1} vs ND {nd} rejections out of 200");
}

#[test]
fn p_values_are_monotone_in_the_statistic_for_rd() {
    // Stronger dependence gives a smaller RD p-value on the same shuffles.
    let model = random_transition_model(2, 1, &mut StreamSeed::new(3).rng()).unwrap();
    let s = generate(&model, 2000, DEFAULT_BURN_IN, &mut StreamSeed::new(4).rng());
    let dependent = run_test(&s, TestMethod::Rd, 1, 0.05, 199, StreamSeed::new(5)).unwrap();
    let later = run_test(&s, TestMethod::Rd, 3, 0.05, 199, StreamSeed::new(5)).unwrap();
    assert!(dependent.statistic >= later.statistic || dependent.p_value <= later.p_value);
    assert!((0.0..=1.0).contains(&dependent.p_value));
}

#![allow(dead_code)]

use std::sync::Arc;

use fuzzyq_core::{
    q_about_abs, q_all, q_at_least_pct, q_prop_binary, q_prop_ternary, q_prop_unary, q_rate,
    q_similarity, BaseSet, CrispSet, FuzzyNumber, FuzzySet, SemiFuzzyQuantifier,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every built-in constructor, with representative parameters.
pub fn builtins() -> Vec<SemiFuzzyQuantifier> {
    let s79 = FuzzyNumber::s_shape(0.7, 0.9).unwrap();
    vec![
        q_all(),
        q_at_least_pct(0.6).unwrap(),
        q_about_abs(FuzzyNumber::trapezoid(1.0, 2.0, 2.0, 4.0).unwrap()),
        q_prop_unary(FuzzyNumber::trapezoid(0.2, 0.4, 0.6, 0.8).unwrap()),
        q_prop_binary(s79),
        q_prop_binary(FuzzyNumber::left_s_shape(0.1, 0.5).unwrap()),
        q_prop_ternary(s79),
        q_similarity(FuzzyNumber::s_shape(0.3, 0.8).unwrap()),
        q_rate(0.25, 0.5).unwrap(),
        q_rate(0.0, 1.0).unwrap(),
    ]
}

/// Built-ins that are nondecreasing in their last argument.
pub fn monotone_in_last() -> Vec<SemiFuzzyQuantifier> {
    vec![
        q_all(),
        q_at_least_pct(0.5).unwrap(),
        q_prop_unary(FuzzyNumber::s_shape(0.2, 0.7).unwrap()),
        q_prop_binary(FuzzyNumber::s_shape(0.7, 0.9).unwrap()),
        q_prop_ternary(FuzzyNumber::s_shape(0.4, 0.9).unwrap()),
        q_about_abs(FuzzyNumber::s_shape(1.0, 4.0).unwrap()),
    ]
}

pub fn random_degrees(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| match rng.random_range(0..6) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random::<f64>(),
        })
        .collect()
}

pub fn random_sets(rng: &mut StdRng, base: &Arc<BaseSet>, arity: usize) -> Vec<FuzzySet> {
    (0..arity)
        .map(|_| FuzzySet::new(base.clone(), random_degrees(rng, base.len())).unwrap())
        .collect()
}

/// Brute-force expectation of `q` over independent Bernoulli
/// representatives, written directly from the definition.
pub fn brute_force_a(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> f64 {
    let base = args[0].base().clone();
    let n = base.len();
    let arity = args.len();
    let total_bits = n * arity;
    assert!(total_bits <= 24, "oracle too large");
    let mut sum = 0.0;
    for mask in 0u64..(1u64 << total_bits) {
        let mut prob = 1.0;
        let mut sets = Vec::with_capacity(arity);
        for (i, x) in args.iter().enumerate() {
            let sub = (mask >> (i * n)) & ((1u64 << n) - 1);
            for e in 0..n {
                let mu = x.degree(e);
                prob *= if sub >> e & 1 == 1 { mu } else { 1.0 - mu };
            }
            sets.push(CrispSet::from_mask(base.clone(), sub));
        }
        if prob == 0.0 {
            continue;
        }
        let refs: Vec<&CrispSet> = sets.iter().collect();
        sum += prob * q.evaluate(&refs).unwrap();
    }
    sum
}

/// Calls `f` with every tuple of `arity` crisp subsets of an `n`-element base.
pub fn for_each_crisp_tuple(n: usize, arity: usize, mut f: impl FnMut(&[CrispSet])) {
    let base = BaseSet::indexed(n);
    let total = 1u64 << (n * arity);
    for mask in 0..total {
        let sets: Vec<CrispSet> = (0..arity)
            .map(|i| CrispSet::from_mask(base.clone(), (mask >> (i * n)) & ((1u64 << n) - 1)))
            .collect();
        f(&sets);
    }
}

use fuzzyq_core::{Label, LinguisticVariable, ProportionalPartition};

fn trap(a: f64, b: f64, c: f64, d: f64) -> FuzzyNumber {
    FuzzyNumber::trapezoid(a, b, c, d).unwrap()
}

/// Ruspini temperature variable over [-10, 40].
pub fn temperature() -> LinguisticVariable {
    LinguisticVariable::new(
        "temperature",
        (-10.0, 40.0),
        vec![
            Label::new("very low", trap(-10.0, -10.0, 0.0, 5.0)),
            Label::new("low", trap(0.0, 5.0, 10.0, 15.0)),
            Label::new("warm", trap(10.0, 15.0, 20.0, 25.0)),
            Label::new("hot", trap(20.0, 25.0, 30.0, 35.0)),
            Label::new("very hot", trap(30.0, 35.0, 40.0, 40.0)),
        ],
    )
    .unwrap()
}

/// Ruspini partition of [0, 1] with five proportional quantifiers.
pub fn five_quantifiers() -> ProportionalPartition {
    ProportionalPartition::new(
        "q5",
        vec![
            Label::new("nearly none", trap(0.0, 0.0, 0.05, 0.15)),
            Label::new("a few", trap(0.05, 0.15, 0.21, 0.46)),
            Label::new("several", trap(0.21, 0.46, 0.54, 0.79)),
            Label::new("many", trap(0.54, 0.79, 0.85, 0.95)),
            Label::new("nearly all", trap(0.85, 0.95, 1.0, 1.0)),
        ],
    )
    .unwrap()
}

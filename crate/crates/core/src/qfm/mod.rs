//! Quantifier fuzzification mechanisms.
//!
//! A QFM lifts a [`SemiFuzzyQuantifier`] (crisp arguments) to a fuzzy
//! quantifier (fuzzy arguments). Three mechanisms are provided:
//!
//! * `MD`: integral over a shared alpha-cut level,
//! * `I`: integral over independent alpha-cut levels per argument,
//! * `A`: expectation of the quantifier over independent Bernoulli
//!   representatives of each fuzzy argument, computed exactly, by a
//!   cardinality dynamic program, or by Monte Carlo.

mod alpha;
mod montecarlo;
mod probabilistic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{same_base, CrispSet, FuzzySet};
use crate::quantifier::SemiFuzzyQuantifier;

pub use probabilistic::DpOptions;

/// Largest `n * |E|` the exhaustive probabilistic evaluation accepts.
pub const EXACT_BIT_CAP: usize = 22;
/// Largest arity accepted by the independent-levels mechanism.
pub const I_ARITY_CAP: usize = 3;

/// How the probabilistic mechanism computes its expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AStrategy {
    /// Enumerate every tuple of representatives.
    Exact,
    /// Propagate the distribution of the quantifier's signature statistics.
    CardinalityDp,
    /// Average over seeded independent draws.
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FuzzificationMethod {
    Md,
    I,
    A(AStrategy),
}

impl FuzzificationMethod {
    pub fn monte_carlo(samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParameter(
                "Monte Carlo needs at least one sample".into(),
            ));
        }
        Ok(Self::A(AStrategy::MonteCarlo { samples, seed }))
    }

    /// True for every strategy whose output does not depend on a seed.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, Self::A(AStrategy::MonteCarlo { .. }))
    }
}

impl fmt::Display for FuzzificationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Md => f.write_str("md"),
            Self::I => f.write_str("i"),
            Self::A(AStrategy::Exact) => f.write_str("a/exact"),
            Self::A(AStrategy::CardinalityDp) => f.write_str("a/dp"),
            Self::A(AStrategy::MonteCarlo { samples, seed }) => {
                write!(f, "a/mc:{samples}:{seed}")
            }
        }
    }
}

/// Default sample count for `a/mc` descriptors that omit it.
pub const DEFAULT_MC_SAMPLES: u64 = 100_000;

impl FromStr for FuzzificationMethod {
    type Err = Error;

    /// Accepts `md`, `i`, `a/exact`, `a/dp`, `a/mc[:samples[:seed]]`, or a
    /// JSON descriptor such as `{"qfm":"a","strategy":"dp"}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s)
                .map_err(|e| Error::InvalidParameter(format!("method descriptor: {e}")));
        }
        let bad = || Error::InvalidParameter(format!("unknown method descriptor `{s}`"));
        match s {
            "md" => Ok(Self::Md),
            "i" => Ok(Self::I),
            "a" | "a/dp" => Ok(Self::A(AStrategy::CardinalityDp)),
            "a/exact" => Ok(Self::A(AStrategy::Exact)),
            _ => {
                let rest = s.strip_prefix("a/mc").ok_or_else(bad)?;
                let mut parts = rest.split(':');
                if parts.next() != Some("") {
                    return Err(bad());
                }
                let samples = parts
                    .next()
                    .map(|p| p.parse().map_err(|_| bad()))
                    .transpose()?
                    .unwrap_or(DEFAULT_MC_SAMPLES);
                let seed = parts
                    .next()
                    .map(|p| p.parse().map_err(|_| bad()))
                    .transpose()?
                    .unwrap_or(0);
                if parts.next().is_some() {
                    return Err(bad());
                }
                Self::monte_carlo(samples, seed)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodDescriptor {
    qfm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl Serialize for FuzzificationMethod {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (qfm, strategy, samples, seed) = match *self {
            Self::Md => ("md", None, None, None),
            Self::I => ("i", None, None, None),
            Self::A(AStrategy::Exact) => ("a", Some("exact"), None, None),
            Self::A(AStrategy::CardinalityDp) => ("a", Some("dp"), None, None),
            Self::A(AStrategy::MonteCarlo { samples, seed }) => {
                ("a", Some("mc"), Some(samples), Some(seed))
            }
        };
        MethodDescriptor {
            qfm: qfm.into(),
            strategy: strategy.map(Into::into),
            samples,
            seed,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FuzzificationMethod {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let d = MethodDescriptor::deserialize(deserializer)?;
        let no_mc_fields = d.samples.is_none() && d.seed.is_none();
        match (d.qfm.as_str(), d.strategy.as_deref()) {
            ("md", None) if no_mc_fields => Ok(Self::Md),
            ("i", None) if no_mc_fields => Ok(Self::I),
            ("a", None | Some("dp")) if no_mc_fields => Ok(Self::A(AStrategy::CardinalityDp)),
            ("a", Some("exact")) if no_mc_fields => Ok(Self::A(AStrategy::Exact)),
            ("a", Some("mc")) => Self::monte_carlo(
                d.samples.unwrap_or(DEFAULT_MC_SAMPLES),
                d.seed.unwrap_or(0),
            )
            .map_err(D::Error::custom),
            (qfm, strategy) => Err(D::Error::custom(format!(
                "unsupported method descriptor qfm={qfm:?} strategy={strategy:?}"
            ))),
        }
    }
}

/// A semi-fuzzy quantifier bound to a fuzzification method.
#[derive(Debug, Clone)]
pub struct FuzzifiedQuantifier {
    source: SemiFuzzyQuantifier,
    method: FuzzificationMethod,
}

/// Binds `q` to `method`.
///
/// With `A(CardinalityDp)` and a quantifier lacking a signature, evaluation
/// falls back to exhaustive enumeration while `n * |E|` stays within
/// [`EXACT_BIT_CAP`], and fails beyond it.
pub fn fuzzify(q: SemiFuzzyQuantifier, method: FuzzificationMethod) -> FuzzifiedQuantifier {
    FuzzifiedQuantifier { source: q, method }
}

impl FuzzifiedQuantifier {
    pub fn source(&self) -> &SemiFuzzyQuantifier {
        &self.source
    }

    pub fn method(&self) -> FuzzificationMethod {
        self.method
    }

    pub fn arity(&self) -> usize {
        self.source.arity()
    }

    pub fn evaluate(&self, args: &[&FuzzySet]) -> Result<f64> {
        check_fuzzy_args(&self.source, args)?;
        let slices: Vec<&[f64]> = args.iter().map(|a| a.degrees()).collect();
        self.dispatch(&slices)
    }

    /// Evaluates on raw membership vectors that implicitly share a base set.
    pub fn evaluate_degrees(&self, args: &[&[f64]]) -> Result<f64> {
        check_degree_args(&self.source, args)?;
        self.dispatch(args)
    }

    fn dispatch(&self, args: &[&[f64]]) -> Result<f64> {
        let q = &self.source;
        match self.method {
            FuzzificationMethod::Md => Ok(alpha::md(q, args)),
            FuzzificationMethod::I => alpha::independent(q, args),
            FuzzificationMethod::A(AStrategy::Exact) => probabilistic::exact(q, args),
            FuzzificationMethod::A(AStrategy::CardinalityDp) => match q.signature() {
                Some(sig) => Ok(probabilistic::dp(sig, args, DpOptions::default())),
                None => probabilistic::exact(q, args),
            },
            FuzzificationMethod::A(AStrategy::MonteCarlo { samples, seed }) => {
                montecarlo::estimate(q, args, samples, seed)
            }
        }
    }
}

fn check_fuzzy_args(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<()> {
    q.check_arity(args.len())?;
    if let Some(first) = args.first() {
        if args.iter().any(|a| !same_base(a.base(), first.base())) {
            return Err(Error::BaseSetMismatch);
        }
    }
    Ok(())
}

fn check_degree_args(q: &SemiFuzzyQuantifier, args: &[&[f64]]) -> Result<()> {
    q.check_arity(args.len())?;
    if let Some(first) = args.first() {
        if args.iter().any(|a| a.len() != first.len()) {
            return Err(Error::BaseSetMismatch);
        }
    }
    if args.iter().flat_map(|a| a.iter()).any(|m| !(0.0..=1.0).contains(m)) {
        return Err(Error::InvalidArgument("membership degree outside [0, 1]".into()));
    }
    Ok(())
}

fn slices<'a>(args: &[&'a FuzzySet]) -> Vec<&'a [f64]> {
    args.iter().map(|a| a.degrees()).collect()
}

/// `F^MD(Q)(X1..Xn) = ∫_0^1 Q((X1)_{≥α}, …, (Xn)_{≥α}) dα`, computed exactly
/// over the combined level breakpoints.
pub fn apply_md(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<f64> {
    check_fuzzy_args(q, args)?;
    Ok(alpha::md(q, &slices(args)))
}

/// `F^I(Q)(X1..Xn)`: the n-fold integral over independent cut levels,
/// computed exactly. Arity is capped at [`I_ARITY_CAP`].
pub fn apply_i(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<f64> {
    check_fuzzy_args(q, args)?;
    alpha::independent(q, &slices(args))
}

/// Probability that independent Bernoulli draws with success
/// probabilities `mu_X` produce exactly `Y`.
pub fn representative_prob(x: &FuzzySet, y: &CrispSet) -> Result<f64> {
    if !same_base(x.base(), y.base()) {
        return Err(Error::BaseSetMismatch);
    }
    Ok(x
        .degrees()
        .iter()
        .zip(y.members())
        .map(|(&m, &inside)| if inside { m } else { 1.0 - m })
        .product())
}

/// `F^A(Q)` by enumerating all `2^(n|E|)` representative tuples.
pub fn apply_a_exact(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<f64> {
    check_fuzzy_args(q, args)?;
    probabilistic::exact(q, &slices(args))
}

/// `F^A(Q)` through the joint distribution of the quantifier's signature
/// statistics.
pub fn apply_a_dp(q: &SemiFuzzyQuantifier, args: &[&FuzzySet]) -> Result<f64> {
    apply_a_dp_with(q, args, DpOptions::default())
}

pub fn apply_a_dp_with(
    q: &SemiFuzzyQuantifier,
    args: &[&FuzzySet],
    options: DpOptions,
) -> Result<f64> {
    check_fuzzy_args(q, args)?;
    let sig = q.signature().ok_or_else(|| {
        Error::Unsupported(format!(
            "quantifier `{}` has no cardinality signature; use the exact or Monte Carlo strategy",
            q.name()
        ))
    })?;
    Ok(probabilistic::dp(sig, &slices(args), options))
}

/// Monte Carlo estimate of `F^A(Q)`; deterministic for a given seed.
pub fn apply_a_mc(
    q: &SemiFuzzyQuantifier,
    args: &[&FuzzySet],
    samples: u64,
    seed: u64,
) -> Result<f64> {
    check_fuzzy_args(q, args)?;
    montecarlo::estimate(q, &slices(args), samples, seed)
}

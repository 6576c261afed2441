//! Semi-fuzzy quantifiers: maps from tuples of crisp sets to `[0, 1]`.
//!
//! Built-in constructors cover the absolute, proportional, similarity and
//! rate families. Quantifiers whose value depends only on a couple of
//! cardinalities carry a [`CardinalitySignature`], which lets the
//! probabilistic QFM run as a polynomial dynamic program instead of a
//! `2^(n|E|)` enumeration.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{same_base, CrispSet, FuzzyNumber};

/// Slack applied to closed ratio boundaries, so that grid-generated limits
/// such as `0.5 + 0.2` still contain the ratio `7/10`.
pub const RATIO_EPS: f64 = 1e-12;

type EvalFn = dyn Fn(&[&[bool]]) -> f64 + Send + Sync;
type ReducedFn = dyn Fn(Counts, usize) -> f64 + Send + Sync;

/// The statistics a signed quantifier depends on.
///
/// For [`SignatureKind::AbsoluteIntersection`] only `joint` is used and
/// `restriction` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Counts {
    pub joint: usize,
    pub restriction: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureKind {
    /// `|Y1 ∩ … ∩ Yn|`.
    AbsoluteIntersection,
    /// `(|Y1 ∩ Y2|, |Y1|)`.
    ProportionalPair,
    /// `(|T ∩ Y1 ∩ Y2|, |T ∩ Y1|)`.
    RestrictedProportionalPair,
    /// `(|T ∩ Y1 ∩ Y2|, |T ∩ (Y1 ∪ Y2)|)`.
    SimilarityPair,
}

impl SignatureKind {
    /// Arity the statistics are defined for; `None` means any arity.
    pub fn arity(self) -> Option<usize> {
        match self {
            SignatureKind::AbsoluteIntersection => None,
            SignatureKind::ProportionalPair => Some(2),
            SignatureKind::RestrictedProportionalPair | SignatureKind::SimilarityPair => Some(3),
        }
    }

    /// Computes the declared statistics of a crisp argument tuple.
    pub fn counts(self, args: &[&[bool]]) -> Counts {
        let len = args.first().map_or(0, |a| a.len());
        let mut joint = 0;
        let mut restriction = 0;
        for e in 0..len {
            let (j, r) = match self {
                SignatureKind::AbsoluteIntersection => (args.iter().all(|a| a[e]), false),
                SignatureKind::ProportionalPair => (args[0][e] && args[1][e], args[0][e]),
                SignatureKind::RestrictedProportionalPair => {
                    let t1 = args[0][e] && args[1][e];
                    (t1 && args[2][e], t1)
                }
                SignatureKind::SimilarityPair => (
                    args[0][e] && args[1][e] && args[2][e],
                    args[0][e] && (args[1][e] || args[2][e]),
                ),
            };
            joint += j as usize;
            restriction += r as usize;
        }
        Counts { joint, restriction }
    }
}

/// Declares that a quantifier factors through [`SignatureKind::counts`].
#[derive(Clone)]
pub struct CardinalitySignature {
    kind: SignatureKind,
    reduced: Arc<ReducedFn>,
}

impl CardinalitySignature {
    /// `reduced(counts, |E|)` must agree with the quantifier on every input.
    pub fn new(
        kind: SignatureKind,
        reduced: impl Fn(Counts, usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind,
            reduced: Arc::new(reduced),
        }
    }

    pub fn kind(&self) -> SignatureKind {
        self.kind
    }

    pub fn reduce(&self, counts: Counts, base_len: usize) -> f64 {
        (self.reduced)(counts, base_len)
    }
}

impl fmt::Debug for CardinalitySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CardinalitySignature")
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

/// An n-ary map from crisp subsets of a shared base set to `[0, 1]`.
#[derive(Clone)]
pub struct SemiFuzzyQuantifier {
    name: String,
    arity: usize,
    eval: Arc<EvalFn>,
    signature: Option<CardinalitySignature>,
}

impl fmt::Debug for SemiFuzzyQuantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiFuzzyQuantifier")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("signature", &self.signature)
            .finish_non_exhaustive()
    }
}

impl SemiFuzzyQuantifier {
    /// Wraps an arbitrary evaluation function.
    ///
    /// `eval` receives one membership slice per argument, all of length
    /// `|E|`, and must return a value in `[0, 1]` for every input.
    pub fn custom(
        name: impl Into<String>,
        arity: usize,
        eval: impl Fn(&[&[bool]]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidParameter("quantifier arity must be >= 1".into()));
        }
        Ok(Self {
            name: name.into(),
            arity,
            eval: Arc::new(eval),
            signature: None,
        })
    }

    /// Quantifier defined entirely by its reduced map over a signature.
    pub fn from_signature(
        name: impl Into<String>,
        arity: usize,
        signature: CardinalitySignature,
    ) -> Result<Self> {
        check_signature_arity(signature.kind, arity)?;
        let sig = signature.clone();
        let mut q = Self::custom(name, arity, move |args: &[&[bool]]| {
            let len = args.first().map_or(0, |a| a.len());
            sig.reduce(sig.kind.counts(args), len)
        })?;
        q.signature = Some(signature);
        Ok(q)
    }

    /// Attaches a signature to an existing quantifier. The caller vouches
    /// that the reduced map agrees with `eval`.
    pub fn with_signature(mut self, signature: CardinalitySignature) -> Result<Self> {
        check_signature_arity(signature.kind, self.arity)?;
        self.signature = Some(signature);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn signature(&self) -> Option<&CardinalitySignature> {
        self.signature.as_ref()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Evaluates on crisp arguments over a shared base set.
    pub fn evaluate(&self, args: &[&CrispSet]) -> Result<f64> {
        self.check_arity(args.len())?;
        if let Some(first) = args.first() {
            if args.iter().any(|a| !same_base(a.base(), first.base())) {
                return Err(Error::BaseSetMismatch);
            }
        }
        let slices: Vec<&[bool]> = args.iter().map(|a| a.members()).collect();
        let value = self.evaluate_slices(&slices);
        debug_assert!(
            self.signature.as_ref().is_none_or(|s| {
                let len = slices.first().map_or(0, |a| a.len());
                (s.reduce(s.kind.counts(&slices), len) - value).abs() <= 1e-12
            }),
            "signature of `{}` disagrees with its evaluation",
            self.name
        );
        Ok(value)
    }

    /// Evaluates on raw membership flags. All slices must share one length
    /// and their count must equal the arity.
    pub fn evaluate_slices(&self, args: &[&[bool]]) -> f64 {
        (self.eval)(args)
    }

    pub(crate) fn check_arity(&self, got: usize) -> Result<()> {
        if got == self.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                name: self.name.clone(),
                expected: self.arity,
                got,
            })
        }
    }

    /// Pointwise `lambda * a + (1 - lambda) * b`. The signature is kept when
    /// both operands share its kind.
    pub fn convex_combination(a: &Self, b: &Self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        if a.arity != b.arity {
            return Err(Error::ArityMismatch {
                name: b.name.clone(),
                expected: a.arity,
                got: b.arity,
            });
        }
        let (ea, eb) = (a.eval.clone(), b.eval.clone());
        let mut mixed = Self::custom(
            format!("{lambda}*{}+{}*{}", a.name, 1.0 - lambda, b.name),
            a.arity,
            move |args: &[&[bool]]| lambda * ea(args) + (1.0 - lambda) * eb(args),
        )?;
        if let (Some(sa), Some(sb)) = (&a.signature, &b.signature) {
            if sa.kind == sb.kind {
                let (ra, rb) = (sa.reduced.clone(), sb.reduced.clone());
                mixed.signature = Some(CardinalitySignature {
                    kind: sa.kind,
                    reduced: Arc::new(move |c, n| lambda * ra(c, n) + (1.0 - lambda) * rb(c, n)),
                });
            }
        }
        Ok(mixed)
    }
}

fn check_signature_arity(kind: SignatureKind, arity: usize) -> Result<()> {
    match kind.arity() {
        Some(n) if n != arity => Err(Error::InvalidParameter(format!(
            "signature {kind:?} requires arity {n}, quantifier has {arity}"
        ))),
        _ => Ok(()),
    }
}

fn count(flags: impl Iterator<Item = bool>) -> usize {
    flags.filter(|&f| f).count()
}

fn ratio_in(num: usize, den: usize, lo: f64, hi: f64) -> bool {
    let r = num as f64 / den as f64;
    r >= lo - RATIO_EPS && r <= hi + RATIO_EPS
}

/// `all(Y1, Y2) = Y1 ⊆ Y2`.
pub fn q_all() -> SemiFuzzyQuantifier {
    let q = SemiFuzzyQuantifier::custom("all", 2, |a: &[&[bool]]| {
        let included = a[0].iter().zip(a[1]).all(|(&y1, &y2)| !y1 || y2);
        if included {
            1.0
        } else {
            0.0
        }
    })
    .expect("arity 2");
    q.with_signature(CardinalitySignature::new(
        SignatureKind::ProportionalPair,
        |c, _| if c.joint == c.restriction { 1.0 } else { 0.0 },
    ))
    .expect("pair signature")
}

/// Crisp "at least `p` of the Y1 are Y2"; true on an empty Y1.
pub fn q_at_least_pct(p: f64) -> Result<SemiFuzzyQuantifier> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "at_least proportion {p} outside (0, 1]"
        )));
    }
    let holds = move |joint: usize, restriction: usize| {
        restriction == 0 || ratio_in(joint, restriction, p, f64::INFINITY)
    };
    SemiFuzzyQuantifier::custom(format!("at_least{}%", p * 100.0), 2, move |a: &[&[bool]]| {
        let y1 = count(a[0].iter().copied());
        let both = count(a[0].iter().zip(a[1]).map(|(&x, &y)| x && y));
        if holds(both, y1) {
            1.0
        } else {
            0.0
        }
    })?
    .with_signature(CardinalitySignature::new(
        SignatureKind::ProportionalPair,
        move |c, _| if holds(c.joint, c.restriction) { 1.0 } else { 0.0 },
    ))
}

/// Absolute quantifier `fn(|Y1 ∩ Y2|)`, e.g. `about_5 = T_{2,4,6,8}`.
pub fn q_about_abs(function: FuzzyNumber) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::custom("about", 2, move |a: &[&[bool]]| {
        function.eval(count(a[0].iter().zip(a[1]).map(|(&x, &y)| x && y)) as f64)
    })
    .and_then(|q| {
        q.with_signature(CardinalitySignature::new(
            SignatureKind::AbsoluteIntersection,
            move |c, _| function.eval(c.joint as f64),
        ))
    })
    .expect("valid absolute quantifier")
}

/// Unary proportional quantifier `fn(|Y| / |E|)`.
///
/// On an empty base set the ratio is undefined and the value is 1, the same
/// convention the binary family uses for an empty restriction.
pub fn q_prop_unary(function: FuzzyNumber) -> SemiFuzzyQuantifier {
    unary_ratio("prop_unary", move |r| function.eval(r))
}

/// Unary proportional quantifier for the disjunction of several partition
/// members: `min(1, Σ fn_i(|Y| / |E|))`.
pub fn q_prop_unary_sum(functions: Vec<FuzzyNumber>) -> SemiFuzzyQuantifier {
    unary_ratio("prop_unary_sum", move |r| {
        functions.iter().map(|f| f.eval(r)).sum::<f64>().min(1.0)
    })
}

fn unary_ratio(
    name: &str,
    f: impl Fn(f64) -> f64 + Send + Sync + Clone + 'static,
) -> SemiFuzzyQuantifier {
    let g = f.clone();
    SemiFuzzyQuantifier::custom(name, 1, move |a: &[&[bool]]| {
        let n = a[0].len();
        if n == 0 {
            1.0
        } else {
            f(count(a[0].iter().copied()) as f64 / n as f64)
        }
    })
    .and_then(|q| {
        q.with_signature(CardinalitySignature::new(
            SignatureKind::AbsoluteIntersection,
            move |c, n| if n == 0 { 1.0 } else { g(c.joint as f64 / n as f64) },
        ))
    })
    .expect("valid unary quantifier")
}

/// Binary proportional quantifier `fn(|T ∩ Y| / |T|)`, 1 on an empty `T`.
pub fn q_prop_binary(function: FuzzyNumber) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::custom("prop_binary", 2, move |a: &[&[bool]]| {
        let t = count(a[0].iter().copied());
        if t == 0 {
            return 1.0;
        }
        let ty = count(a[0].iter().zip(a[1]).map(|(&x, &y)| x && y));
        function.eval(ty as f64 / t as f64)
    })
    .and_then(|q| {
        q.with_signature(CardinalitySignature::new(
            SignatureKind::ProportionalPair,
            move |c, _| proportional(function, c),
        ))
    })
    .expect("valid binary quantifier")
}

/// Ternary proportional quantifier `fn(|T ∩ Y1 ∩ Y2| / |T ∩ Y1|)`, 1 when
/// `T ∩ Y1` is empty.
pub fn q_prop_ternary(function: FuzzyNumber) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::custom("prop_ternary", 3, move |a: &[&[bool]]| {
        let mut restricted = 0;
        let mut joint = 0;
        for ((&t, &y1), &y2) in a[0].iter().zip(a[1]).zip(a[2]) {
            if t && y1 {
                restricted += 1;
                joint += y2 as usize;
            }
        }
        if restricted == 0 {
            1.0
        } else {
            function.eval(joint as f64 / restricted as f64)
        }
    })
    .and_then(|q| {
        q.with_signature(CardinalitySignature::new(
            SignatureKind::RestrictedProportionalPair,
            move |c, _| proportional(function, c),
        ))
    })
    .expect("valid ternary quantifier")
}

/// "In T, Y1 and Y2 are Q similar": `fn(|T ∩ Y1 ∩ Y2| / |T ∩ (Y1 ∪ Y2)|)`,
/// 1 when the union is empty inside `T`.
pub fn q_similarity(function: FuzzyNumber) -> SemiFuzzyQuantifier {
    SemiFuzzyQuantifier::custom("similarity", 3, move |a: &[&[bool]]| {
        let mut union = 0;
        let mut joint = 0;
        for ((&t, &y1), &y2) in a[0].iter().zip(a[1]).zip(a[2]) {
            if t {
                union += (y1 || y2) as usize;
                joint += (y1 && y2) as usize;
            }
        }
        if union == 0 {
            1.0
        } else {
            function.eval(joint as f64 / union as f64)
        }
    })
    .and_then(|q| {
        q.with_signature(CardinalitySignature::new(
            SignatureKind::SimilarityPair,
            move |c, _| proportional(function, c),
        ))
    })
    .expect("valid similarity quantifier")
}

fn proportional(function: FuzzyNumber, c: Counts) -> f64 {
    if c.restriction == 0 {
        1.0
    } else {
        function.eval(c.joint as f64 / c.restriction as f64)
    }
}

/// Crisp `rate_[r1,r2]`: 1 iff `Y1` is nonempty and `|Y1 ∩ Y2| / |Y1|`
/// lies in the closed interval `[r1, r2]`.
pub fn q_rate(r1: f64, r2: f64) -> Result<SemiFuzzyQuantifier> {
    if !(0.0 <= r1 && r1 <= r2 && r2 <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rate interval requires 0 <= r1 <= r2 <= 1, got [{r1}, {r2}]"
        )));
    }
    let holds = move |joint: usize, restriction: usize| {
        restriction > 0 && ratio_in(joint, restriction, r1, r2)
    };
    SemiFuzzyQuantifier::custom(format!("rate[{r1},{r2}]"), 2, move |a: &[&[bool]]| {
        let y1 = count(a[0].iter().copied());
        let both = count(a[0].iter().zip(a[1]).map(|(&x, &y)| x && y));
        if holds(both, y1) {
            1.0
        } else {
            0.0
        }
    })?
    .with_signature(CardinalitySignature::new(
        SignatureKind::ProportionalPair,
        move |c, _| if holds(c.joint, c.restriction) { 1.0 } else { 0.0 },
    ))
}

/// JSON descriptor of a built-in quantifier, e.g.
/// `{"kind":"prop_binary","fn":{"kind":"s","alpha":0.7,"gamma":0.9}}` or
/// `{"kind":"rate","r1":0.6,"r2":1.0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuantifierSpec {
    All,
    AtLeastPct {
        p: f64,
    },
    AboutAbs {
        #[serde(rename = "fn")]
        function: FuzzyNumber,
    },
    PropUnary {
        #[serde(rename = "fn")]
        function: FuzzyNumber,
    },
    PropBinary {
        #[serde(rename = "fn")]
        function: FuzzyNumber,
    },
    PropTernary {
        #[serde(rename = "fn")]
        function: FuzzyNumber,
    },
    Similarity {
        #[serde(rename = "fn")]
        function: FuzzyNumber,
    },
    Rate {
        r1: f64,
        r2: f64,
    },
}

impl QuantifierSpec {
    pub fn build(&self, name: &str) -> Result<SemiFuzzyQuantifier> {
        let q = match *self {
            QuantifierSpec::All => q_all(),
            QuantifierSpec::AtLeastPct { p } => q_at_least_pct(p)?,
            QuantifierSpec::AboutAbs { function } => q_about_abs(function),
            QuantifierSpec::PropUnary { function } => q_prop_unary(function),
            QuantifierSpec::PropBinary { function } => q_prop_binary(function),
            QuantifierSpec::PropTernary { function } => q_prop_ternary(function),
            QuantifierSpec::Similarity { function } => q_similarity(function),
            QuantifierSpec::Rate { r1, r2 } => q_rate(r1, r2)?,
        };
        Ok(q.renamed(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::BaseSet;

    fn sets(n: usize, members: &[&[usize]]) -> Vec<CrispSet> {
        let base = BaseSet::indexed(n);
        members
            .iter()
            .map(|m| CrispSet::from_indices(base.clone(), m).unwrap())
            .collect()
    }

    fn eval(q: &SemiFuzzyQuantifier, n: usize, members: &[&[usize]]) -> f64 {
        let s = sets(n, members);
        let refs: Vec<&CrispSet> = s.iter().collect();
        q.evaluate(&refs).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn all_is_inclusion() {
        let q = q_all();
        assert_eq!(eval(&q, 2, &[&[0], &[0, 1]]), 1.0);
        assert_eq!(eval(&q, 2, &[&[0, 1], &[0]]), 0.0);
        assert_eq!(eval(&q, 2, &[&[], &[1]]), 1.0);
        assert_eq!(eval(&q, 1, &[&[0], &[0]]), 1.0);
    }

    #[test]
    fn at_least_pct() {
        let q = q_at_least_pct(0.6).unwrap();
        assert_eq!(eval(&q, 5, &[&[0, 1, 2, 3, 4], &[0, 1, 2]]), 1.0);
        assert_eq!(eval(&q, 5, &[&[0, 1, 2, 3, 4], &[0, 1]]), 0.0);
        assert_eq!(eval(&q, 5, &[&[], &[0, 1]]), 1.0);
        assert!(q_at_least_pct(0.0).is_err());
        assert!(q_at_least_pct(1.5).is_err());
    }

    #[test]
    fn about_abs() {
        let q = q_about_abs(FuzzyNumber::trapezoid(2.0, 4.0, 6.0, 8.0).unwrap());
        let all: Vec<usize> = (0..9).collect();
        assert_eq!(eval(&q, 9, &[&all, &all[..5]]), 1.0);
        assert!(close(eval(&q, 9, &[&all, &all[..3]]), 0.5));
        assert_eq!(eval(&q, 9, &[&all, &all]), 0.0);
        assert!(close(eval(&q, 9, &[&all, &all[..7]]), 0.5));
    }

    #[test]
    fn prop_unary() {
        let f = FuzzyNumber::s_shape(0.0, 1.0).unwrap();
        let q = q_prop_unary(f);
        assert_eq!(eval(&q, 4, &[&[0, 1, 2, 3]]), f.eval(1.0));
        assert_eq!(eval(&q, 4, &[&[]]), f.eval(0.0));
        assert_eq!(eval(&q, 4, &[&[1, 3]]), f.eval(0.5));
    }

    #[test]
    fn prop_binary() {
        let most = q_prop_binary(FuzzyNumber::s_shape(0.7, 0.9).unwrap());
        let t: Vec<usize> = (0..10).collect();
        assert!(close(eval(&most, 10, &[&t, &t[..8]]), 0.5));
        assert_eq!(eval(&most, 10, &[&[], &t]), 1.0);
        let q = q_prop_binary(FuzzyNumber::s_shape(0.5, 0.8).unwrap());
        assert_eq!(eval(&q, 10, &[&t, &t[..9]]), 1.0);
    }

    #[test]
    fn prop_ternary() {
        let q = q_prop_ternary(FuzzyNumber::s_shape(0.7, 0.9).unwrap());
        assert_eq!(eval(&q, 6, &[&[0, 1, 2, 3, 4], &[0, 1, 2, 3], &[0, 1, 2, 3, 5]]), 1.0);
        assert_eq!(eval(&q, 6, &[&[0, 1], &[2, 3], &[0, 1, 2]]), 1.0);
        let t: Vec<usize> = (0..10).collect();
        assert!(close(eval(&q, 12, &[&t, &t, &t[..8]]), 0.5));
    }

    #[test]
    fn similarity() {
        let q = q_similarity(FuzzyNumber::s_shape(0.0, 1.0).unwrap());
        assert_eq!(eval(&q, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 1]]), 1.0);
        assert_eq!(eval(&q, 4, &[&[0, 1], &[2], &[3]]), 1.0);
        assert!(close(eval(&q, 4, &[&[0, 1, 2], &[0, 1], &[0]]), 0.5));
    }

    #[test]
    fn rate() {
        let q = q_rate(0.6, 1.0).unwrap();
        assert_eq!(eval(&q, 5, &[&[0, 1, 2, 3, 4], &[0, 1, 2]]), 1.0);
        assert_eq!(eval(&q, 5, &[&[], &[0, 1, 2]]), 0.0);
        let q = q_rate(0.625, 0.75).unwrap();
        let ten: Vec<usize> = (0..10).collect();
        assert_eq!(eval(&q, 10, &[&ten, &ten[..7]]), 1.0);
        let q = q_rate(0.5, 0.7).unwrap();
        assert_eq!(eval(&q, 10, &[&ten, &ten[..4]]), 0.0);
        assert!(q_rate(0.7, 0.5).is_err());
        assert!(q_rate(-0.1, 0.5).is_err());
    }

    #[test]
    fn grid_generated_bounds_contain_exact_ratios() {
        let q = q_rate(20.0 * 0.025, 20.0 * 0.025 + 0.2).unwrap();
        let ten: Vec<usize> = (0..10).collect();
        assert_eq!(eval(&q, 10, &[&ten, &ten[..7]]), 1.0);
    }

    #[test]
    fn arity_and_base_errors() {
        let q = q_all();
        let s = sets(3, &[&[0]]);
        assert!(matches!(
            q.evaluate(&[&s[0]]),
            Err(Error::ArityMismatch { expected: 2, got: 1, .. })
        ));
        let other = CrispSet::empty(BaseSet::named(["x", "y", "z"]).unwrap());
        assert_eq!(q.evaluate(&[&s[0], &other]), Err(Error::BaseSetMismatch));
    }

    #[test]
    fn signature_arity_checked() {
        let sig = CardinalitySignature::new(SignatureKind::SimilarityPair, |_, _| 1.0);
        assert!(SemiFuzzyQuantifier::from_signature("x", 2, sig).is_err());
    }

    #[test]
    fn descriptor_builds_named_quantifier() {
        let spec: QuantifierSpec = serde_json::from_str(
            r#"{"kind":"prop_binary","fn":{"kind":"s","alpha":0.7,"gamma":0.9}}"#,
        )
        .unwrap();
        let q = spec.build("most").unwrap();
        assert_eq!(q.name(), "most");
        assert_eq!(q.arity(), 2);
        let rate: QuantifierSpec = serde_json::from_str(r#"{"kind":"rate","r1":0.6,"r2":1}"#).unwrap();
        assert!(rate.build("r").unwrap().signature().is_some());
        let bad: QuantifierSpec = serde_json::from_str(r#"{"kind":"rate","r1":0.9,"r2":0.1}"#).unwrap();
        assert!(bad.build("r").is_err());
    }
}

//! Finite fuzzy sets, parametric fuzzy numbers and linguistic variables.
//!
//! Every set is defined over a shared [`BaseSet`]. Sets hold the base set
//! behind an `Arc`, so deriving alpha-cuts or restrictions never copies the
//! element identifiers.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of one element of a base set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementId {
    Index(i64),
    Name(String),
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Index(i) => write!(f, "{i}"),
            ElementId::Name(s) => f.write_str(s),
        }
    }
}

/// An ordered finite universe of distinct elements.
///
/// The empty universe is allowed so that empty data and empty temporal
/// windows can flow through the same code paths; quantifiers define their
/// value on it through their empty-argument conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSet {
    elements: Vec<ElementId>,
}

impl BaseSet {
    pub fn new(elements: Vec<ElementId>) -> Result<Arc<Self>> {
        let mut sorted: Vec<&ElementId> = elements.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "base set identifiers must be unique".into(),
            ));
        }
        Ok(Arc::new(Self { elements }))
    }

    /// Base set `{0, 1, …, n-1}`.
    pub fn indexed(n: usize) -> Arc<Self> {
        Arc::new(Self {
            elements: (0..n as i64).map(ElementId::Index).collect(),
        })
    }

    /// Base set of consecutive integer instants.
    pub fn instants(instants: impl IntoIterator<Item = i64>) -> Result<Arc<Self>> {
        Self::new(instants.into_iter().map(ElementId::Index).collect())
    }

    pub fn named<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::new(names.into_iter().map(|s| ElementId::Name(s.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn position(&self, id: &ElementId) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }
}

pub(crate) fn same_base(a: &Arc<BaseSet>, b: &Arc<BaseSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An ordinary subset of a base set.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispSet {
    base: Arc<BaseSet>,
    members: Vec<bool>,
}

impl CrispSet {
    pub fn new(base: Arc<BaseSet>, members: Vec<bool>) -> Result<Self> {
        if members.len() != base.len() {
            return Err(Error::InvalidArgument(format!(
                "crisp set has {} flags for a base set of {} elements",
                members.len(),
                base.len()
            )));
        }
        Ok(Self { base, members })
    }

    pub fn empty(base: Arc<BaseSet>) -> Self {
        let n = base.len();
        Self {
            base,
            members: vec![false; n],
        }
    }

    pub fn full(base: Arc<BaseSet>) -> Self {
        let n = base.len();
        Self {
            base,
            members: vec![true; n],
        }
    }

    /// Builds a subset from element positions.
    pub fn from_indices(base: Arc<BaseSet>, indices: &[usize]) -> Result<Self> {
        let mut members = vec![false; base.len()];
        for &i in indices {
            *members.get_mut(i).ok_or_else(|| {
                Error::InvalidArgument(format!("element index {i} outside the base set"))
            })? = true;
        }
        Ok(Self { base, members })
    }

    /// Subset whose membership is given by the low `|E|` bits of `mask`.
    pub fn from_mask(base: Arc<BaseSet>, mask: u64) -> Self {
        let members = (0..base.len()).map(|i| mask >> i & 1 == 1).collect();
        Self { base, members }
    }

    pub fn base(&self) -> &Arc<BaseSet> {
        &self.base
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.get(index).copied().unwrap_or(false)
    }

    pub fn cardinality(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_subset_of(&self, other: &CrispSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn to_fuzzy(&self) -> FuzzySet {
        FuzzySet {
            base: self.base.clone(),
            mu: self
                .members
                .iter()
                .map(|&m| if m { 1.0 } else { 0.0 })
                .collect(),
        }
    }
}

/// A membership assignment `E -> [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySet {
    base: Arc<BaseSet>,
    mu: Vec<f64>,
}

impl FuzzySet {
    pub fn new(base: Arc<BaseSet>, mu: Vec<f64>) -> Result<Self> {
        if mu.len() != base.len() {
            return Err(Error::InvalidArgument(format!(
                "fuzzy set has {} degrees for a base set of {} elements",
                mu.len(),
                base.len()
            )));
        }
        if let Some(bad) = mu.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(Error::InvalidArgument(format!(
                "membership degree {bad} outside [0, 1]"
            )));
        }
        Ok(Self { base, mu })
    }

    /// Fuzzy set over a fresh `{0, …, n-1}` base set.
    pub fn from_degrees(mu: Vec<f64>) -> Result<Self> {
        Self::new(BaseSet::indexed(mu.len()), mu)
    }

    pub fn base(&self) -> &Arc<BaseSet> {
        &self.base
    }

    pub fn degrees(&self) -> &[f64] {
        &self.mu
    }

    pub fn degree(&self, index: usize) -> f64 {
        self.mu[index]
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn is_crisp(&self) -> bool {
        self.mu.iter().all(|&m| m == 0.0 || m == 1.0)
    }

    /// Crisp set `{e : mu(e) >= alpha}`.
    ///
    /// # Panics
    ///
    /// If `alpha` lies outside `(0, 1]`.
    pub fn alpha_cut(&self, alpha: f64) -> CrispSet {
        assert!(
            alpha > 0.0 && alpha <= 1.0,
            "alpha-cut level {alpha} outside (0, 1]"
        );
        CrispSet {
            base: self.base.clone(),
            members: self.mu.iter().map(|&m| m >= alpha).collect(),
        }
    }
}

/// Sorted distinct membership values in `(0, 1]` over all arguments, with
/// `1.0` appended when absent.
///
/// Alpha-cuts of every argument are constant on each interval
/// `(v_k, v_{k+1}]` and equal to the cut taken at `v_{k+1}`.
pub fn level_breakpoints(sets: &[&FuzzySet]) -> Vec<f64> {
    breakpoints_of(sets.iter().map(|s| s.degrees()))
}

pub(crate) fn breakpoints_of<'a>(slices: impl IntoIterator<Item = &'a [f64]>) -> Vec<f64> {
    let mut levels: Vec<f64> = slices
        .into_iter()
        .flat_map(|s| s.iter().copied())
        .filter(|&m| m > 0.0)
        .collect();
    levels.push(1.0);
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawFuzzyNumber {
    Trapezoid { a: f64, b: f64, c: f64, d: f64 },
    S { alpha: f64, gamma: f64 },
    SLeft { alpha: f64, gamma: f64 },
}

/// The shape of a [`FuzzyNumber`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `T_{a,b,c,d}`: ramps on `[a,b]` and `[c,d]`, plateau on `[b,c]`.
    Trapezoid { a: f64, b: f64, c: f64, d: f64 },
    /// Zadeh's S-function rising from `alpha` to `gamma`.
    S { alpha: f64, gamma: f64 },
    /// Mirror of the S-function, `1 - S(x)`.
    LeftS { alpha: f64, gamma: f64 },
}

/// A validated parametric membership function over the real line.
///
/// Serialized as `{"kind":"trapezoid","a":..,"b":..,"c":..,"d":..}`,
/// `{"kind":"s","alpha":..,"gamma":..}` or `{"kind":"s_left",..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFuzzyNumber", into = "RawFuzzyNumber")]
pub struct FuzzyNumber(Shape);

impl FuzzyNumber {
    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) || !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidParameter(format!(
                "trapezoid requires a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
            )));
        }
        Ok(Self(Shape::Trapezoid { a, b, c, d }))
    }

    pub fn s_shape(alpha: f64, gamma: f64) -> Result<Self> {
        check_s(alpha, gamma)?;
        Ok(Self(Shape::S { alpha, gamma }))
    }

    pub fn left_s_shape(alpha: f64, gamma: f64) -> Result<Self> {
        check_s(alpha, gamma)?;
        Ok(Self(Shape::LeftS { alpha, gamma }))
    }

    pub fn shape(&self) -> Shape {
        self.0
    }

    /// Membership degree of `x`, always in `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        match self.0 {
            Shape::Trapezoid { a, b, c, d } => {
                if x < a || x > d {
                    0.0
                } else if x >= b && x <= c {
                    1.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (d - x) / (d - c)
                }
            }
            Shape::S { alpha, gamma } => s_function(alpha, gamma, x),
            Shape::LeftS { alpha, gamma } => 1.0 - s_function(alpha, gamma, x),
        }
    }

    /// Closed interval outside of which the membership is zero, if bounded.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self.0 {
            Shape::Trapezoid { a, d, .. } => Some((a, d)),
            _ => None,
        }
    }
}

fn check_s(alpha: f64, gamma: f64) -> Result<()> {
    if alpha.is_finite() && gamma.is_finite() && alpha < gamma {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "S-function requires alpha < gamma, got ({alpha}, {gamma})"
        )))
    }
}

fn s_function(alpha: f64, gamma: f64, x: f64) -> f64 {
    let width = gamma - alpha;
    if x <= alpha {
        0.0
    } else if x <= (alpha + gamma) / 2.0 {
        let t = (x - alpha) / width;
        2.0 * t * t
    } else if x <= gamma {
        let t = (x - gamma) / width;
        1.0 - 2.0 * t * t
    } else {
        1.0
    }
}

impl TryFrom<RawFuzzyNumber> for FuzzyNumber {
    type Error = Error;

    fn try_from(raw: RawFuzzyNumber) -> Result<Self> {
        match raw {
            RawFuzzyNumber::Trapezoid { a, b, c, d } => Self::trapezoid(a, b, c, d),
            RawFuzzyNumber::S { alpha, gamma } => Self::s_shape(alpha, gamma),
            RawFuzzyNumber::SLeft { alpha, gamma } => Self::left_s_shape(alpha, gamma),
        }
    }
}

impl From<FuzzyNumber> for RawFuzzyNumber {
    fn from(f: FuzzyNumber) -> Self {
        match f.0 {
            Shape::Trapezoid { a, b, c, d } => RawFuzzyNumber::Trapezoid { a, b, c, d },
            Shape::S { alpha, gamma } => RawFuzzyNumber::S { alpha, gamma },
            Shape::LeftS { alpha, gamma } => RawFuzzyNumber::SLeft { alpha, gamma },
        }
    }
}

/// Applies a fuzzy number pointwise to numeric data, over the base set
/// `{0, …, values.len()-1}`.
pub fn fuzzify_values(values: &[f64], fuzzy_number: &FuzzyNumber) -> FuzzySet {
    FuzzySet {
        base: BaseSet::indexed(values.len()),
        mu: values.iter().map(|&v| fuzzy_number.eval(v)).collect(),
    }
}

/// A named membership function, as used by linguistic variables and
/// quantified partitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub name: String,
    #[serde(rename = "fn")]
    pub function: FuzzyNumber,
}

impl Label {
    pub fn new(name: impl Into<String>, function: FuzzyNumber) -> Self {
        Self {
            name: name.into(),
            function,
        }
    }
}

#[derive(Deserialize)]
struct RawVariable {
    name: String,
    domain: (f64, f64),
    labels: Vec<Label>,
}

/// A numeric attribute over `[lo, hi]` described by fuzzy labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVariable")]
pub struct LinguisticVariable {
    name: String,
    domain: (f64, f64),
    labels: Vec<Label>,
}

impl LinguisticVariable {
    pub fn new(name: impl Into<String>, domain: (f64, f64), labels: Vec<Label>) -> Result<Self> {
        let name = name.into();
        if labels.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "linguistic variable `{name}` has no labels"
            )));
        }
        if !(domain.0 < domain.1) {
            return Err(Error::InvalidParameter(format!(
                "linguistic variable `{name}` needs lo < hi, got {domain:?}"
            )));
        }
        check_unique(labels.iter().map(|l| l.name.as_str()), &name)?;
        Ok(Self {
            name,
            domain,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<&Label> {
        self.labels.iter().find(|l| l.name == name)
    }

    pub fn ruspini_check(&self, grid_points: usize, tol: f64) -> RuspiniReport {
        ruspini_check(&self.labels, self.domain, grid_points, tol)
    }
}

impl TryFrom<RawVariable> for LinguisticVariable {
    type Error = Error;

    fn try_from(raw: RawVariable) -> Result<Self> {
        Self::new(raw.name, raw.domain, raw.labels)
    }
}

#[derive(Deserialize)]
struct RawPartition {
    name: String,
    quantifiers: Vec<Label>,
}

/// An ordered family of proportional quantifiers over `[0, 1]`, from the
/// bottom ("nearly none") to the top ("nearly all").
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct ProportionalPartition {
    name: String,
    quantifiers: Vec<Label>,
}

impl ProportionalPartition {
    pub fn new(name: impl Into<String>, quantifiers: Vec<Label>) -> Result<Self> {
        let name = name.into();
        if quantifiers.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "partition `{name}` has no quantifiers"
            )));
        }
        check_unique(quantifiers.iter().map(|l| l.name.as_str()), &name)?;
        Ok(Self { name, quantifiers })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quantifiers(&self) -> &[Label] {
        &self.quantifiers
    }

    pub fn len(&self) -> usize {
        self.quantifiers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quantifiers.is_empty()
    }

    pub fn ruspini_check(&self, grid_points: usize, tol: f64) -> RuspiniReport {
        ruspini_check(&self.quantifiers, (0.0, 1.0), grid_points, tol)
    }
}

impl TryFrom<RawPartition> for ProportionalPartition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        Self::new(raw.name, raw.quantifiers)
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a str>, owner: &str) -> Result<()> {
    let mut seen: Vec<&str> = names.collect();
    seen.sort_unstable();
    match seen.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::InvalidParameter(format!(
            "duplicate label `{}` in `{owner}`",
            w[0]
        ))),
        None => Ok(()),
    }
}

pub const DEFAULT_RUSPINI_GRID: usize = 1001;
pub const DEFAULT_RUSPINI_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuspiniReport {
    pub is_ruspini: bool,
    /// Largest `|sum - 1|` seen on the grid.
    pub worst_deviation: f64,
    pub worst_at: f64,
}

/// Samples `grid_points` equally spaced points of `domain` and checks that
/// the memberships of `labels` add to one at each of them.
///
/// # Panics
///
/// If `grid_points < 2`.
pub fn ruspini_check(
    labels: &[Label],
    domain: (f64, f64),
    grid_points: usize,
    tol: f64,
) -> RuspiniReport {
    assert!(grid_points >= 2, "a Ruspini grid needs at least two points");
    let (lo, hi) = domain;
    let mut worst = RuspiniReport {
        is_ruspini: true,
        worst_deviation: 0.0,
        worst_at: lo,
    };
    for k in 0..grid_points {
        let x = if k + 1 == grid_points {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (grid_points - 1) as f64
        };
        let sum: f64 = labels.iter().map(|l| l.function.eval(x)).sum();
        let dev = (sum - 1.0).abs();
        if dev > worst.worst_deviation {
            worst.worst_deviation = dev;
            worst.worst_at = x;
        }
    }
    worst.is_ruspini = worst.worst_deviation <= tol;
    worst
}

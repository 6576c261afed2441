//! Fuzzy signals over an integer time axis and sliding quantified patterns.
//!
//! A pattern such as "in most of the last five years, increments were
//! small" is a fuzzy quantifier whose first argument is a relative
//! [`TemporalWindow`] displaced to each evaluation instant, and whose
//! remaining arguments are [`FuzzySignal`]s restricted to the instants the
//! window touches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{BaseSet, FuzzyNumber, FuzzySet};
use crate::qfm::FuzzifiedQuantifier;

/// Consecutive integer instants `start, …, start + len - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimeAxis {
    start: i64,
    len: usize,
    unit: String,
}

impl TimeAxis {
    pub fn new(start: i64, len: usize, unit: impl Into<String>) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameter("a time axis needs at least one instant".into()));
        }
        Ok(Self {
            start,
            len,
            unit: unit.into(),
        })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last instant (inclusive).
    pub fn end(&self) -> i64 {
        self.start + self.len as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn instants(&self) -> impl Iterator<Item = i64> + '_ {
        self.start..=self.end()
    }

    pub fn index_of(&self, t: i64) -> Option<usize> {
        (t >= self.start && t <= self.end()).then(|| (t - self.start) as usize)
    }
}

/// Real values per instant; `None` marks a missing value.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSeries {
    axis: TimeAxis,
    values: Vec<Option<f64>>,
}

impl RawSeries {
    pub fn new(axis: TimeAxis, values: Vec<Option<f64>>) -> Result<Self> {
        if values.len() != axis.len() {
            return Err(Error::InvalidArgument(format!(
                "series has {} values for an axis of {} instants",
                values.len(),
                axis.len()
            )));
        }
        Ok(Self { axis, values })
    }

    pub fn from_values(axis: TimeAxis, values: &[f64]) -> Result<Self> {
        Self::new(axis, values.iter().copied().map(Some).collect())
    }

    pub fn axis(&self) -> &TimeAxis {
        &self.axis
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn value_at(&self, t: i64) -> Option<f64> {
        self.axis.index_of(t).and_then(|i| self.values[i])
    }
}

/// Membership degree per instant, with a flag for instants whose
/// underlying value is missing (their degree is 0).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySignal {
    axis: TimeAxis,
    mu: Vec<f64>,
    missing: Vec<bool>,
}

impl FuzzySignal {
    pub fn new(axis: TimeAxis, mu: Vec<f64>) -> Result<Self> {
        let missing = vec![false; mu.len()];
        Self::with_missing(axis, mu, missing)
    }

    pub fn with_missing(axis: TimeAxis, mu: Vec<f64>, missing: Vec<bool>) -> Result<Self> {
        if mu.len() != axis.len() || missing.len() != axis.len() {
            return Err(Error::InvalidArgument(format!(
                "signal length does not match an axis of {} instants",
                axis.len()
            )));
        }
        if let Some(bad) = mu.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(Error::InvalidArgument(format!(
                "signal degree {bad} outside [0, 1]"
            )));
        }
        let mu = mu
            .into_iter()
            .zip(&missing)
            .map(|(m, &gone)| if gone { 0.0 } else { m })
            .collect();
        Ok(Self { axis, mu, missing })
    }

    pub fn axis(&self) -> &TimeAxis {
        &self.axis
    }

    pub fn degrees(&self) -> &[f64] {
        &self.mu
    }

    pub fn missing(&self) -> &[bool] {
        &self.missing
    }

    /// `(degree, missing)` at `t`, or `None` outside the axis.
    pub fn at(&self, t: i64) -> Option<(f64, bool)> {
        self.axis.index_of(t).map(|i| (self.mu[i], self.missing[i]))
    }
}

/// A relative fuzzy number over integer time offsets, with bounded support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FuzzyNumber", into = "FuzzyNumber")]
pub struct TemporalWindow {
    shape: FuzzyNumber,
    lo: i64,
    hi: i64,
}

impl TemporalWindow {
    /// Only shapes with bounded support (trapezoids) are accepted.
    pub fn new(shape: FuzzyNumber) -> Result<Self> {
        let (a, d) = shape.support().ok_or_else(|| {
            Error::InvalidParameter("a temporal window needs a bounded (trapezoidal) shape".into())
        })?;
        // Offsets of zero membership at either end are dropped.
        let (mut lo, mut hi) = (a.ceil() as i64, d.floor() as i64);
        while lo <= hi && shape.eval(lo as f64) == 0.0 {
            lo += 1;
        }
        while hi >= lo && shape.eval(hi as f64) == 0.0 {
            hi -= 1;
        }
        Ok(Self { shape, lo, hi })
    }

    pub fn shape(&self) -> &FuzzyNumber {
        &self.shape
    }

    /// Smallest integer range `[lo, hi]` holding every offset of positive
    /// membership; `lo > hi` when there is none.
    pub fn offset_range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn membership(&self, offset: i64) -> f64 {
        self.shape.eval(offset as f64)
    }
}

impl TryFrom<FuzzyNumber> for TemporalWindow {
    type Error = Error;

    fn try_from(shape: FuzzyNumber) -> Result<Self> {
        Self::new(shape)
    }
}

impl From<TemporalWindow> for FuzzyNumber {
    fn from(w: TemporalWindow) -> Self {
        w.shape
    }
}

/// `out[t] = 100 * (raw[t] - raw[t-1]) / raw[t-1]`; the first instant, and
/// any instant next to a missing value, is missing.
pub fn pct_change(raw: &RawSeries) -> Result<RawSeries> {
    let mut out = Vec::with_capacity(raw.values.len());
    out.push(None);
    for (i, w) in raw.values.windows(2).enumerate() {
        out.push(match (w[0], w[1]) {
            (Some(prev), Some(cur)) => {
                if prev == 0.0 {
                    return Err(Error::NumericDomain {
                        instant: raw.axis.start + i as i64 + 1,
                        reason: format!(
                            "previous value at instant {} is zero",
                            raw.axis.start + i as i64
                        ),
                    });
                }
                Some(100.0 * (cur - prev) / prev)
            }
            _ => None,
        });
    }
    RawSeries::new(raw.axis.clone(), out)
}

/// Applies a fuzzy number to every present value; missing values become
/// degree 0 with the missing flag set.
pub fn fuzzify_series(raw: &RawSeries, function: &FuzzyNumber) -> FuzzySignal {
    let mu = raw
        .values
        .iter()
        .map(|v| v.map_or(0.0, |x| function.eval(x)))
        .collect();
    let missing = raw.values.iter().map(Option::is_none).collect();
    FuzzySignal {
        axis: raw.axis.clone(),
        mu,
        missing,
    }
}

/// The window displaced to an instant, restricted to axis instants with
/// positive membership.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacedWindow {
    pub instants: Vec<i64>,
    pub set: FuzzySet,
    /// True when part of the window's support falls outside the axis.
    pub clipped: bool,
}

impl DisplacedWindow {
    pub fn is_empty(&self) -> bool {
        self.instants.is_empty()
    }
}

/// `FT^{t0}(t) = FT(t - t0)` over the instants of `axis`.
pub fn displace_window(window: &TemporalWindow, t0: i64, axis: &TimeAxis) -> DisplacedWindow {
    let (instants, mu): (Vec<i64>, Vec<f64>) = window_instants(window, t0, axis)
        .filter(|&(_, m)| m > 0.0)
        .unzip();
    let base = BaseSet::instants(instants.iter().copied()).expect("instants are distinct");
    DisplacedWindow {
        set: FuzzySet::new(base, mu).expect("window degrees lie in [0, 1]"),
        instants,
        clipped: !window_fits(window, t0, axis),
    }
}

fn window_instants<'a>(
    window: &'a TemporalWindow,
    t0: i64,
    axis: &'a TimeAxis,
) -> impl Iterator<Item = (i64, f64)> + 'a {
    let (lo, hi) = window.offset_range();
    let first = (t0 + lo).max(axis.start());
    let last = (t0 + hi).min(axis.end());
    (first..=last).map(move |t| (t, window.membership(t - t0)))
}

fn window_fits(window: &TemporalWindow, t0: i64, axis: &TimeAxis) -> bool {
    let (lo, hi) = window.offset_range();
    lo > hi || (t0 + lo >= axis.start() && t0 + hi <= axis.end())
}

/// `out(t) = s(t - d)` on the same axis; instants whose source lies outside
/// the axis are missing.
pub fn displace_signal(signal: &FuzzySignal, d: i64) -> FuzzySignal {
    let (mu, missing) = signal
        .axis
        .instants()
        .map(|t| signal.at(t - d).unwrap_or((0.0, true)))
        .unzip();
    FuzzySignal {
        axis: signal.axis.clone(),
        mu,
        missing,
    }
}

/// One evaluated instant of a sliding pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlidePoint {
    pub t: i64,
    pub degree: f64,
    /// The window did not fit inside the axis, or touched missing data.
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SlideOptions {
    /// Use every axis instant as the base set, including those with zero
    /// window membership. Results are the same for quantifiers that only
    /// look inside their first argument; this exists to check that claim.
    pub full_axis_base: bool,
}

/// Evaluates `fq(FT^{t}, S_1^{d_1}, …, S_n^{d_n})` at every requested
/// instant. The window is the first quantifier argument.
pub fn sliding_evaluate(
    fq: &FuzzifiedQuantifier,
    window: &TemporalWindow,
    signals: &[(&FuzzySignal, i64)],
    instants: &[i64],
) -> Result<Vec<SlidePoint>> {
    sliding_evaluate_with(fq, window, signals, instants, SlideOptions::default())
}

pub fn sliding_evaluate_with(
    fq: &FuzzifiedQuantifier,
    window: &TemporalWindow,
    signals: &[(&FuzzySignal, i64)],
    instants: &[i64],
    options: SlideOptions,
) -> Result<Vec<SlidePoint>> {
    if fq.arity() != signals.len() + 1 {
        return Err(Error::ArityMismatch {
            name: fq.source().name().to_string(),
            expected: fq.arity(),
            got: signals.len() + 1,
        });
    }
    let axis = match signals.first() {
        Some((s, _)) => s.axis().clone(),
        None => {
            return Err(Error::InvalidArgument(
                "a sliding pattern needs at least one signal".into(),
            ))
        }
    };
    if signals.iter().any(|(s, _)| s.axis() != &axis) {
        return Err(Error::InvalidArgument(
            "all signals of a sliding pattern must share one time axis".into(),
        ));
    }
    let shifted: Vec<FuzzySignal> = signals
        .iter()
        .map(|&(s, d)| if d == 0 { s.clone() } else { displace_signal(s, d) })
        .collect();

    instants
        .par_iter()
        .map(|&t| {
            let members: Vec<(i64, f64)> = if options.full_axis_base {
                axis.instants().map(|u| (u, window.membership(u - t))).collect()
            } else {
                window_instants(window, t, &axis).filter(|&(_, m)| m > 0.0).collect()
            };
            let window_mu: Vec<f64> = members.iter().map(|&(_, m)| m).collect();
            let mut boundary = members.is_empty() || !window_fits(window, t, &axis);
            let mut columns = vec![window_mu];
            for s in &shifted {
                let mut col = Vec::with_capacity(members.len());
                for &(u, m) in &members {
                    let (degree, missing) = s.at(u).expect("member instants lie on the axis");
                    boundary |= missing && m > 0.0;
                    col.push(degree);
                }
                columns.push(col);
            }
            let views: Vec<&[f64]> = columns.iter().map(Vec::as_slice).collect();
            Ok(SlidePoint {
                t,
                degree: fq.evaluate_degrees(&views)?,
                boundary,
            })
        })
        .collect()
}

/// Binary observable: `flag[t] = degree[t] > theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinaryObservableSeries {
    pub instants: Vec<i64>,
    pub flags: Vec<bool>,
    pub theta: f64,
}

pub fn threshold_observable(points: &[SlidePoint], theta: f64) -> Result<BinaryObservableSeries> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "threshold {theta} outside [0, 1]"
        )));
    }
    Ok(BinaryObservableSeries {
        instants: points.iter().map(|p| p.t).collect(),
        flags: points.iter().map(|p| p.degree > theta).collect(),
        theta,
    })
}

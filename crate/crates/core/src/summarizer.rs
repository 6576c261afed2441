//! Linguistic summaries of numeric data by quantified sentences.
//!
//! [`build_matrix`] evaluates every (label, partition quantifier) pair,
//! e.g. "many temperatures were warm". [`best_single`] and
//! [`greedy_extract`] turn the matrix into sentences, and [`rate_search`]
//! scans `rate_[h, h + delta]` quantifiers for the best-fitting crisp
//! proportion interval.

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fuzzy::{fuzzify_values, same_base, FuzzySet, Label, LinguisticVariable, ProportionalPartition};
use crate::qfm::{fuzzify, FuzzificationMethod};
use crate::quantifier::{q_prop_unary, q_prop_unary_sum, q_rate};

pub const DEFAULT_TAU: f64 = 0.5;
pub const DEFAULT_MARGIN: f64 = 0.1;
pub const DEFAULT_TAU_MERGE: f64 = 0.2;
pub const DEFAULT_RATE_STEP: f64 = 0.025;
/// Resolution at which statement degrees are compared when ordering.
pub const DEGREE_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    pub data: String,
}

/// Degrees of every (label, quantifier) pair: one row per label, one
/// column per partition quantifier in partition order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct EvaluationMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<f64>>,
    #[serde(default)]
    provenance: Provenance,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<f64>>,
    #[serde(default)]
    provenance: Provenance,
}

impl TryFrom<RawMatrix> for EvaluationMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let mut m = Self::new(raw.rows, raw.cols, raw.cells)?;
        m.provenance = raw.provenance;
        Ok(m)
    }
}

impl EvaluationMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>, cells: Vec<Vec<f64>>) -> Result<Self> {
        if cells.len() != rows.len() || cells.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::InvalidArgument(format!(
                "matrix cells do not match {} rows x {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if cells.iter().flatten().any(|d| !(0.0..=1.0).contains(d)) {
            return Err(Error::InvalidArgument("matrix degree outside [0, 1]".into()));
        }
        Ok(Self {
            rows,
            cols,
            cells,
            provenance: Provenance::default(),
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn cells(&self) -> &[Vec<f64>] {
        &self.cells
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn row(&self, label: &str) -> Option<&[f64]> {
        self.rows
            .iter()
            .position(|r| r == label)
            .map(|i| self.cells[i].as_slice())
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.cells.iter().map(|r| r.iter().sum()).collect()
    }

    /// Sub-matrix with the named rows, in the given order.
    pub fn select_rows(&self, labels: &[&str]) -> Result<Self> {
        let mut rows = Vec::new();
        let mut cells = Vec::new();
        for &label in labels {
            let row = self
                .row(label)
                .ok_or_else(|| Error::InvalidArgument(format!("no row labelled `{label}`")))?;
            rows.push(label.to_string());
            cells.push(row.to_vec());
        }
        Ok(Self {
            rows,
            cols: self.cols.clone(),
            cells,
            provenance: self.provenance.clone(),
        })
    }
}

/// `cell[j][i] = F(Q_i)(l_j(values))` with `Q_i` the unary proportional
/// quantifier of the i-th partition member.
pub fn build_matrix(
    values: &[f64],
    variable: &LinguisticVariable,
    partition: &ProportionalPartition,
    method: FuzzificationMethod,
) -> Result<EvaluationMatrix> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot summarize an empty dataset".into()));
    }
    let label_sets: Vec<FuzzySet> = variable
        .labels()
        .iter()
        .map(|l| fuzzify_values(values, &l.function))
        .collect();
    let quantifiers: Vec<_> = partition
        .quantifiers()
        .iter()
        .map(|q| fuzzify(q_prop_unary(q.function).renamed(q.name.clone()), method))
        .collect();
    let cols = quantifiers.len();
    let flat: Vec<f64> = (0..label_sets.len() * cols)
        .into_par_iter()
        .map(|k| quantifiers[k % cols].evaluate(&[&label_sets[k / cols]]))
        .collect::<Result<_>>()?;
    let cells = flat.chunks(cols).map(<[f64]>::to_vec).collect();
    let m = EvaluationMatrix::new(
        variable.labels().iter().map(|l| l.name.clone()).collect(),
        partition.quantifiers().iter().map(|q| q.name.clone()).collect(),
        cells,
    )?;
    Ok(m.with_provenance(Provenance {
        method: method.to_string(),
        data: format!("{} values of {}", values.len(), variable.name()),
    }))
}

/// Degree of the disjunction of partition members `start..=end` applied to
/// `label`, evaluated directly with the summed quantifier.
pub fn evaluate_merged(
    values: &[f64],
    label: &Label,
    partition: &ProportionalPartition,
    start: usize,
    end: usize,
    method: FuzzificationMethod,
) -> Result<f64> {
    let members = partition
        .quantifiers()
        .get(start..=end)
        .ok_or_else(|| Error::InvalidArgument(format!("no partition members {start}..={end}")))?;
    let q = q_prop_unary_sum(members.iter().map(|m| m.function).collect());
    fuzzify(q, method).evaluate(&[&fuzzify_values(values, &label.function)])
}

/// A quantified sentence "Q of the data are L".
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStatement {
    /// Partition quantifiers covered, one unless merged.
    pub quantifiers: Vec<String>,
    pub label: String,
    pub degree: f64,
    pub merged: bool,
    /// Partition positions `(first, last)` of `quantifiers`.
    pub span: (usize, usize),
}

impl SummaryStatement {
    /// Display name; merged statements join the first and last member.
    pub fn quantifier(&self) -> String {
        match self.quantifiers.as_slice() {
            [single] => single.clone(),
            [first, .., last] => format!("{first}..{last}"),
            [] => String::new(),
        }
    }
}

impl Serialize for SummaryStatement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            quantifier: String,
            label: &'a str,
            degree: f64,
            merged: bool,
        }
        Out {
            quantifier: self.quantifier(),
            label: &self.label,
            degree: self.degree,
            merged: self.merged,
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRef {
    pub label: String,
    pub quantifier: String,
    pub degree: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BestSingle {
    Statement(SummaryStatement),
    /// No cell is both high enough and clearly ahead of the others.
    NoneAdequate {
        top: CellRef,
        runner_up: Option<CellRef>,
    },
}

/// Picks the highest cell if it reaches `tau` and beats every other cell by
/// at least `margin`.
pub fn best_single(m: &EvaluationMatrix, tau: f64, margin: f64) -> Result<BestSingle> {
    if !(0.0..=1.0).contains(&tau) || !(margin >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "best_single needs tau in [0, 1] and margin >= 0, got tau={tau} margin={margin}"
        )));
    }
    let mut cells: Vec<(usize, usize, f64)> = m
        .cells
        .iter()
        .enumerate()
        .flat_map(|(j, row)| row.iter().enumerate().map(move |(i, &d)| (j, i, d)))
        .collect();
    if cells.is_empty() {
        return Err(Error::InvalidArgument("empty evaluation matrix".into()));
    }
    // Stable sort keeps row-major order among equal degrees.
    cells.sort_by(|a, b| b.2.total_cmp(&a.2));
    let cell_ref = |&(j, i, d): &(usize, usize, f64)| CellRef {
        label: m.rows[j].clone(),
        quantifier: m.cols[i].clone(),
        degree: d,
    };
    let top = cells[0];
    let runner_up = cells.get(1);
    let clear = runner_up.is_none_or(|r| top.2 - r.2 >= margin);
    if top.2 >= tau && clear {
        Ok(BestSingle::Statement(SummaryStatement {
            quantifiers: vec![m.cols[top.1].clone()],
            label: m.rows[top.0].clone(),
            degree: top.2,
            merged: false,
            span: (top.1, top.1),
        }))
    } else {
        Ok(BestSingle::NoneAdequate {
            top: cell_ref(&top),
            runner_up: runner_up.map(cell_ref),
        })
    }
}

/// A run of partition positions `start..=end` with its degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergedCell {
    pub start: usize,
    pub end: usize,
    pub degree: f64,
}

impl MergedCell {
    pub fn is_merged(&self) -> bool {
        self.end > self.start
    }
}

/// Replaces every maximal run of at least two consecutive cells with
/// degree `>= tau_merge` by one cell holding their sum, clamped to 1.
pub fn merge_adjacent(row: &[f64], tau_merge: f64) -> Vec<MergedCell> {
    let mut out = Vec::with_capacity(row.len());
    let mut i = 0;
    while i < row.len() {
        let mut end = i;
        while end + 1 < row.len() && row[i] >= tau_merge && row[end + 1] >= tau_merge {
            end += 1;
        }
        if end > i {
            out.push(MergedCell {
                start: i,
                end,
                degree: row[i..=end].iter().sum::<f64>().min(1.0),
            });
        } else {
            out.push(MergedCell {
                start: i,
                end: i,
                degree: row[i],
            });
        }
        i = end + 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyParams {
    pub tau: f64,
    /// Drop statements built on the bottom partition member alone
    /// ("nearly none of the temperatures were hot").
    pub suppress_bottom: bool,
    pub merge: bool,
    pub tau_merge: f64,
}

impl Default for GreedyParams {
    fn default() -> Self {
        Self {
            tau: DEFAULT_TAU,
            suppress_bottom: true,
            merge: false,
            tau_merge: DEFAULT_TAU_MERGE,
        }
    }
}

/// One statement per label: its best (optionally merged) cell, kept when
/// the degree reaches `tau`. Statements are ordered by degree, then by
/// higher partition position, then by label order.
pub fn greedy_extract(m: &EvaluationMatrix, params: GreedyParams) -> Result<Vec<SummaryStatement>> {
    if !(0.0..=1.0).contains(&params.tau) {
        return Err(Error::InvalidParameter(format!(
            "tau {} outside [0, 1]",
            params.tau
        )));
    }
    let mut picked: Vec<(usize, SummaryStatement)> = Vec::new();
    for (j, row) in m.cells.iter().enumerate() {
        let candidates = if params.merge {
            merge_adjacent(row, params.tau_merge)
        } else {
            merge_adjacent(row, f64::INFINITY)
        };
        let Some(best) = candidates
            .iter()
            .copied()
            .reduce(|best, c| if c.degree > best.degree { c } else { best })
        else {
            continue;
        };
        if best.degree <= 0.0 || best.degree < params.tau {
            continue;
        }
        if params.suppress_bottom && best.start == 0 && best.end == 0 {
            continue;
        }
        picked.push((
            j,
            SummaryStatement {
                quantifiers: m.cols[best.start..=best.end].to_vec(),
                label: m.rows[j].clone(),
                degree: best.degree,
                merged: best.is_merged(),
                span: (best.start, best.end),
            },
        ));
    }
    // Degrees equal up to rounding noise count as ties.
    let key = |d: f64| (d / DEGREE_TIE_TOL).round() as i64;
    picked.sort_by(|(ja, a), (jb, b)| {
        key(b.degree)
            .cmp(&key(a.degree))
            .then(b.span.1.cmp(&a.span.1))
            .then(ja.cmp(jb))
    });
    Ok(picked.into_iter().map(|(_, s)| s).collect())
}

/// Best `rate_[r1, r2]` interval found by the grid scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSearchResult {
    pub r1: f64,
    pub r2: f64,
    pub degree: f64,
    pub step: f64,
    /// The restriction `X1` has no positive membership, so every rate
    /// quantifier evaluates to 0.
    pub empty_restriction: bool,
}

/// Grid of intervals `[k*step, min(1, k*step + delta_max)]` for every `k`
/// with `k*step <= 1 - delta_max`.
pub fn rate_grid(delta_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(delta_max > 0.0 && delta_max <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta_max {delta_max} outside (0, 1]"
        )));
    }
    if !(step > 0.0 && step <= delta_max) {
        return Err(Error::InvalidParameter(format!(
            "step {step} must lie in (0, delta_max = {delta_max}]"
        )));
    }
    let last = ((1.0 - delta_max) / step + 1e-9).floor() as usize;
    Ok((0..=last)
        .map(|k| {
            let h = k as f64 * step;
            (h, (h + delta_max).min(1.0))
        })
        .collect())
}

/// Evaluates `rate_[h, h + delta_max]` on `(x1, x2)` along the grid and
/// returns the maximizing interval, ties going to the smallest `h`.
pub fn rate_search(
    x1: &FuzzySet,
    x2: &FuzzySet,
    delta_max: f64,
    step: f64,
    method: FuzzificationMethod,
) -> Result<RateSearchResult> {
    if !same_base(x1.base(), x2.base()) {
        return Err(Error::BaseSetMismatch);
    }
    let grid = rate_grid(delta_max, step)?;
    let degrees: Vec<f64> = grid
        .par_iter()
        .map(|&(r1, r2)| fuzzify(q_rate(r1, r2)?, method).evaluate(&[x1, x2]))
        .collect::<Result<_>>()?;
    // Smallest h among the degrees tied with the maximum.
    let top = degrees.iter().copied().fold(0.0, f64::max);
    let best = degrees
        .iter()
        .position(|&d| d >= top - DEGREE_TIE_TOL)
        .expect("the grid is never empty");
    Ok(RateSearchResult {
        r1: grid[best].0,
        r2: grid[best].1,
        degree: degrees[best],
        step,
        empty_restriction: x1.degrees().iter().all(|&m| m == 0.0),
    })
}

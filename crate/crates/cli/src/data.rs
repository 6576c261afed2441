//! CSV time-series ingestion.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use fuzzyq_core::{RawSeries, TimeAxis};

use crate::error::CliError;

/// Every value column of a CSV file on one shared time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub axis: TimeAxis,
    /// Original time-column text, one per instant.
    pub labels: Vec<String>,
    pub columns: BTreeMap<String, RawSeries>,
    pub column_order: Vec<String>,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Result<&RawSeries, CliError> {
        self.columns.get(name).ok_or_else(|| {
            CliError::usage(format!(
                "no column `{name}` in the data (columns: {})",
                self.column_order.join(", ")
            ))
        })
    }

    pub fn label_of(&self, t: i64) -> Option<&str> {
        self.axis.index_of(t).map(|i| self.labels[i].as_str())
    }

    /// Resolves an instant given either as an integer or as the text of
    /// the time column.
    pub fn resolve_instant(&self, text: &str) -> Result<i64, CliError> {
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Ok(self.axis.start() + i as i64);
        }
        text.trim()
            .parse()
            .map_err(|_| CliError::usage(format!("`{text}` is neither an instant nor a time value")))
    }
}

enum TimeKind {
    Integer(Vec<i64>),
    Date(Vec<NaiveDate>),
}

pub fn load_csv(path: &Path, time_column: Option<&str>) -> Result<Dataset, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::data(format!("cannot open {}: {e}", path.display())))?;
    read_csv(file, time_column)
}

/// Reads a headed CSV whose time column (default: the first) holds integers
/// or ISO dates at uniform spacing. Empty cells are missing values.
pub fn read_csv(reader: impl Read, time_column: Option<&str>) -> Result<Dataset, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CliError::data(format!("cannot read CSV header: {e}")))?
        .clone();
    if headers.is_empty() {
        return Err(CliError::data("CSV header is empty"));
    }
    let time_idx = match time_column {
        Some(name) => headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::data(format!("no time column `{name}` in the CSV header")))?,
        None => 0,
    };
    let names: Vec<String> = headers.iter().map(str::to_string).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(CliError::data(format!("duplicate CSV column `{n}`")));
        }
    }

    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut labels = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| CliError::data(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        labels.push(record[time_idx].to_string());
        let mut values = Vec::with_capacity(names.len());
        for (j, cell) in record.iter().enumerate() {
            if j == time_idx {
                continue;
            }
            values.push(if cell.is_empty() {
                None
            } else {
                Some(cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                    CliError::data(format!(
                        "row {line}: cannot parse `{cell}` in column `{}` as a number",
                        names[j]
                    ))
                })?)
            });
        }
        rows.push(values);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(CliError::data("CSV has no data rows"));
    }

    let (start, unit) = time_axis(&labels, &lines)?;
    let axis = TimeAxis::new(start, rows.len(), unit).map_err(CliError::from)?;
    let value_names: Vec<String> = names
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != time_idx)
        .map(|(_, n)| n.clone())
        .collect();
    let mut columns = BTreeMap::new();
    for (k, name) in value_names.iter().enumerate() {
        let values = rows.iter().map(|r| r[k]).collect();
        columns.insert(name.clone(), RawSeries::new(axis.clone(), values).map_err(CliError::from)?);
    }
    Ok(Dataset {
        axis,
        labels,
        columns,
        column_order: value_names,
    })
}

/// Start instant and unit. Integer times at step 1 keep their values;
/// any other uniform spacing is renumbered from 0.
fn time_axis(labels: &[String], lines: &[u64]) -> Result<(i64, String), CliError> {
    // The first value decides between integer and date times.
    let kind = if labels[0].parse::<i64>().is_ok() {
        let mut ints = Vec::with_capacity(labels.len());
        for (l, line) in labels.iter().zip(lines) {
            ints.push(l.parse::<i64>().map_err(|_| {
                CliError::data(format!("row {line}: time value `{l}` is not an integer"))
            })?);
        }
        TimeKind::Integer(ints)
    } else {
        let mut dates = Vec::with_capacity(labels.len());
        for (l, line) in labels.iter().zip(lines) {
            let d = NaiveDate::parse_from_str(l, "%Y-%m-%d").map_err(|_| {
                CliError::data(format!("row {line}: time value `{l}` is neither an integer nor an ISO date"))
            })?;
            dates.push(d);
        }
        TimeKind::Date(dates)
    };
    let nonuniform = |i: usize| {
        CliError::data(format!(
            "row {}: nonuniform time spacing at `{}`",
            lines[i], labels[i]
        ))
    };
    match kind {
        TimeKind::Integer(ts) => {
            let step = check_uniform(&ts, nonuniform)?;
            Ok(if step == 1 { (ts[0], "step".into()) } else { (0, format!("{step} steps")) })
        }
        TimeKind::Date(ds) => {
            // Monthly data keeps the day of month and a uniform month distance.
            if ds.len() > 2 && ds.iter().all(|d| d.day() == ds[0].day()) {
                let months: Vec<i64> =
                    ds.iter().map(|d| i64::from(d.year()) * 12 + i64::from(d.month0())).collect();
                if let Ok(step) = check_uniform(&months, |_| ()) {
                    return Ok((0, if step == 1 { "month".into() } else { format!("{step} months") }));
                }
            }
            let days: Vec<i64> = ds.iter().map(|d| i64::from(d.num_days_from_ce())).collect();
            let step = check_uniform(&days, nonuniform)?;
            Ok((0, if step == 1 { "day".into() } else { format!("{step} days") }))
        }
    }
}

fn check_uniform<E>(ts: &[i64], err: impl Fn(usize) -> E) -> Result<i64, E> {
    let Some(step) = ts.get(1).map(|t| t - ts[0]) else {
        return Ok(1);
    };
    if step <= 0 {
        return Err(err(1));
    }
    match ts.windows(2).position(|w| w[1] - w[0] != step) {
        Some(i) => Err(err(i + 1)),
        None => Ok(step),
    }
}

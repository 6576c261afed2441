//! The `eval`, `slide`, `summarize` and `rate-search` commands. Each one
//! renders its whole result to a string; the caller writes it out only on
//! success.

use fuzzyq_core::summarizer::{DEFAULT_MARGIN, DEFAULT_TAU, DEFAULT_TAU_MERGE};
use fuzzyq_core::{
    best_single, build_matrix, displace_signal, fuzzify, greedy_extract, pct_change, rate_search,
    sliding_evaluate, threshold_observable, BaseSet, BestSingle, FuzzificationMethod, FuzzySet,
    FuzzySignal, GreedyParams, SlidePoint,
};
use fuzzyq_core::fuzzy::{DEFAULT_RUSPINI_GRID, DEFAULT_RUSPINI_TOL};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{BoundTerm, Config, Transform};
use crate::data::Dataset;
use crate::dsl::parse_term;
use crate::error::CliError;
use crate::output::{real, to_csv, to_json, Format};

/// Inputs shared by every command.
pub struct Context<'a> {
    pub config: &'a Config,
    pub data: &'a Dataset,
    pub method: FuzzificationMethod,
    pub format: Format,
}

/// Membership columns of `terms` over the whole axis, shifts applied,
/// keeping only instants where no argument is missing.
fn whole_set(ctx: &Context, terms: &[BoundTerm]) -> Result<(Vec<FuzzySet>, usize), CliError> {
    let signals: Vec<FuzzySignal> = terms
        .iter()
        .map(|t| {
            let s = t.signal(ctx.data)?;
            Ok(if t.shift() == 0 { s } else { displace_signal(&s, t.shift()) })
        })
        .collect::<Result<_, CliError>>()?;
    let axis = &ctx.data.axis;
    let keep: Vec<usize> = (0..axis.len())
        .filter(|&i| signals.iter().all(|s| !s.missing()[i]))
        .collect();
    let base = BaseSet::instants(keep.iter().map(|&i| axis.start() + i as i64))?;
    let sets = signals
        .iter()
        .map(|s| FuzzySet::new(base.clone(), keep.iter().map(|&i| s.degrees()[i]).collect()))
        .collect::<Result<_, _>>()?;
    Ok((sets, axis.len() - keep.len()))
}

pub struct EvalArgs {
    pub expr: String,
    pub at: Option<String>,
}

pub fn eval(ctx: &Context, args: &EvalArgs) -> Result<String, CliError> {
    let bound = ctx.config.bind(&ctx.config.expression(&args.expr)?)?;
    let fq = fuzzify(bound.quantifier.clone(), ctx.method);
    let mut doc = Map::new();
    doc.insert("expression".into(), json!(bound.expr.to_string()));
    doc.insert("method".into(), json!(ctx.method.to_string()));
    let mut row = Vec::new();
    let header: Vec<&str>;
    match &args.at {
        Some(at) => {
            let t = ctx.data.resolve_instant(at)?;
            let signals = bound.terms.iter().map(|b| b.signal(ctx.data)).collect::<Result<Vec<_>, _>>()?;
            let pairs: Vec<(&FuzzySignal, i64)> =
                signals.iter().zip(&bound.terms).map(|(s, b)| (s, b.shift())).collect();
            let p = sliding_evaluate(&fq, &bound.window, &pairs, &[t])?[0];
            doc.insert("mode".into(), json!("instant"));
            doc.insert("t".into(), json!(t));
            doc.insert("time".into(), json!(ctx.data.label_of(t)));
            doc.insert("boundary".into(), json!(p.boundary));
            doc.insert("degree".into(), json!(p.degree));
            header = vec!["t", "time", "degree", "boundary", "method"];
            row.extend([
                t.to_string(),
                ctx.data.label_of(t).unwrap_or("").to_string(),
                real(p.degree),
                p.boundary.to_string(),
            ]);
        }
        None => {
            // The window argument becomes the crisp set of all usable instants.
            let (sets, excluded) = whole_set(ctx, &bound.terms)?;
            let base = sets[0].base().clone();
            let all = FuzzySet::new(base.clone(), vec![1.0; base.len()])?;
            let mut refs = vec![&all];
            refs.extend(sets.iter());
            let degree = fq.evaluate(&refs)?;
            doc.insert("mode".into(), json!("whole_set"));
            doc.insert("instants".into(), json!(base.len()));
            doc.insert("excluded".into(), json!(excluded));
            doc.insert("degree".into(), json!(degree));
            header = vec!["degree", "instants", "excluded", "method"];
            row.extend([real(degree), base.len().to_string(), excluded.to_string()]);
        }
    }
    row.push(ctx.method.to_string());
    match ctx.format {
        Format::Json => to_json(&doc),
        Format::Csv => Ok(to_csv(&header, &[row])),
    }
}

pub struct SlideArgs {
    pub expr: String,
    pub thetas: Vec<f64>,
    pub from: Option<String>,
    pub to: Option<String>,
}

fn theta_key(theta: f64) -> String {
    format!("above_{}", real(theta))
}

pub fn slide(ctx: &Context, args: &SlideArgs) -> Result<String, CliError> {
    let bound = ctx.config.bind(&ctx.config.expression(&args.expr)?)?;
    for (i, th) in args.thetas.iter().enumerate() {
        if args.thetas[..i].contains(th) {
            return Err(CliError::usage(format!("threshold {th} given twice")));
        }
    }
    let axis = &ctx.data.axis;
    let from = args.from.as_deref().map(|s| ctx.data.resolve_instant(s)).transpose()?.unwrap_or(axis.start());
    let to = args.to.as_deref().map(|s| ctx.data.resolve_instant(s)).transpose()?.unwrap_or(axis.end());
    let instants: Vec<i64> = (from..=to).collect();

    let signals = bound.terms.iter().map(|b| b.signal(ctx.data)).collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(&FuzzySignal, i64)> = signals.iter().zip(&bound.terms).map(|(s, b)| (s, b.shift())).collect();
    let fq = fuzzify(bound.quantifier.clone(), ctx.method);
    let points: Vec<SlidePoint> = sliding_evaluate(&fq, &bound.window, &pairs, &instants)?;
    let flags = args
        .thetas
        .iter()
        .map(|&th| threshold_observable(&points, th).map(|o| o.flags))
        .collect::<Result<Vec<_>, _>>()?;
    let keys: Vec<String> = args.thetas.iter().map(|&th| theta_key(th)).collect();

    match ctx.format {
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let mut m = Map::new();
                    m.insert("t".into(), json!(p.t));
                    m.insert("time".into(), json!(ctx.data.label_of(p.t)));
                    m.insert("degree".into(), json!(p.degree));
                    m.insert("boundary".into(), json!(p.boundary));
                    for (key, f) in keys.iter().zip(&flags) {
                        m.insert(key.clone(), json!(f[k]));
                    }
                    Value::Object(m)
                })
                .collect();
            to_json(&json!({
                "expression": bound.expr.to_string(),
                "method": ctx.method.to_string(),
                "thetas": args.thetas,
                "points": rows,
            }))
        }
        Format::Csv => {
            let mut header = vec!["t", "time", "degree", "boundary"];
            header.extend(keys.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = points
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let mut r = vec![
                        p.t.to_string(),
                        ctx.data.label_of(p.t).unwrap_or("").to_string(),
                        real(p.degree),
                        p.boundary.to_string(),
                    ];
                    r.extend(flags.iter().map(|f| f[k].to_string()));
                    r
                })
                .collect();
            Ok(to_csv(&header, &rows))
        }
    }
}

pub struct SummarizeArgs {
    pub column: String,
    pub variable: String,
    pub partition: String,
    pub tau: f64,
    pub margin: f64,
    pub tau_merge: f64,
    pub merge: bool,
    pub suppress_bottom: bool,
    pub best_only: bool,
}

impl Default for SummarizeArgs {
    fn default() -> Self {
        Self {
            column: String::new(),
            variable: String::new(),
            partition: String::new(),
            tau: DEFAULT_TAU,
            margin: DEFAULT_MARGIN,
            tau_merge: DEFAULT_TAU_MERGE,
            merge: false,
            suppress_bottom: true,
            best_only: false,
        }
    }
}

#[derive(Serialize)]
struct RuspiniFlags {
    variable: bool,
    partition: bool,
}

pub fn summarize(ctx: &Context, args: &SummarizeArgs) -> Result<String, CliError> {
    let variable = ctx.config.require_variable(&args.variable)?;
    let partition = ctx.config.require_partition(&args.partition)?;
    let (column, transform, _) = ctx.config.series_source(&args.column);
    let raw = ctx.data.column(&column)?;
    let raw = match transform {
        Some(Transform::PctChange) => pct_change(raw)?,
        None => raw.clone(),
    };
    let values: Vec<f64> = raw.values().iter().flatten().copied().collect();
    let m = build_matrix(&values, variable, partition, ctx.method)?;
    let ruspini = RuspiniFlags {
        variable: variable.ruspini_check(DEFAULT_RUSPINI_GRID, DEFAULT_RUSPINI_TOL).is_ruspini,
        partition: partition.ruspini_check(DEFAULT_RUSPINI_GRID, DEFAULT_RUSPINI_TOL).is_ruspini,
    };

    if args.best_only {
        let best = best_single(&m, args.tau, args.margin)?;
        return match ctx.format {
            Format::Json => to_json(&json!({
                "method": ctx.method.to_string(),
                "ruspini": ruspini,
                "matrix": m,
                "best": best,
            })),
            Format::Csv => {
                let row = match &best {
                    BestSingle::Statement(s) => {
                        vec!["statement".into(), s.quantifier(), s.label.clone(), real(s.degree)]
                    }
                    BestSingle::NoneAdequate { top, .. } => vec![
                        "none_adequate".into(),
                        top.quantifier.clone(),
                        top.label.clone(),
                        real(top.degree),
                    ],
                };
                Ok(to_csv(&["status", "quantifier", "label", "degree"], &[row]))
            }
        };
    }

    let summary = greedy_extract(
        &m,
        GreedyParams {
            tau: args.tau,
            suppress_bottom: args.suppress_bottom,
            merge: args.merge,
            tau_merge: args.tau_merge,
        },
    )?;
    match ctx.format {
        Format::Json => to_json(&json!({
            "method": ctx.method.to_string(),
            "ruspini": ruspini,
            "matrix": m,
            "summary": summary,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = summary
                .iter()
                .map(|s| vec![s.quantifier(), s.label.clone(), real(s.degree), s.merged.to_string()])
                .collect();
            Ok(to_csv(&["quantifier", "label", "degree", "merged"], &rows))
        }
    }
}

pub struct RateSearchArgs {
    pub x1: String,
    pub x2: String,
    pub delta_max: f64,
    pub step: f64,
}

pub fn rate_search_cmd(ctx: &Context, args: &RateSearchArgs) -> Result<String, CliError> {
    let t1 = ctx.config.bind_term(&parse_term(&args.x1).map_err(|e| CliError::from(e).context("--x1"))?)?;
    let t2 = ctx.config.bind_term(&parse_term(&args.x2).map_err(|e| CliError::from(e).context("--x2"))?)?;
    let (sets, excluded) = whole_set(ctx, &[t1.clone(), t2.clone()])?;
    let r = rate_search(&sets[0], &sets[1], args.delta_max, args.step, ctx.method)?;
    match ctx.format {
        Format::Json => to_json(&json!({
            "x1": t1.term.to_string(),
            "x2": t2.term.to_string(),
            "method": ctx.method.to_string(),
            "delta_max": args.delta_max,
            "excluded": excluded,
            "result": r,
        })),
        Format::Csv => Ok(to_csv(
            &["r1", "r2", "degree", "step", "empty_restriction"],
            &[vec![
                real(r.r1),
                real(r.r2),
                real(r.degree),
                real(r.step),
                r.empty_restriction.to_string(),
            ]],
        )),
    }
}

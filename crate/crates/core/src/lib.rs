//! Fuzzy quantification over finite data and time series.
//!
//! The crate is organised bottom-up:
//!
//! * [`fuzzy`]: fuzzy sets, fuzzy numbers, linguistic variables, alpha-cuts;
//! * [`quantifier`]: semi-fuzzy quantifiers and their cardinality signatures;
//! * [`qfm`]: the `MD`, `I` and probabilistic `A` fuzzification mechanisms;
//! * [`temporal`]: fuzzy signals and sliding quantified patterns;
//! * [`summarizer`]: evaluation matrices and quantified summaries.

pub mod error;
pub mod fuzzy;
pub mod qfm;
pub mod quantifier;
pub mod summarizer;
pub mod temporal;

pub use error::{Error, Result};
pub use fuzzy::{
    fuzzify_values, level_breakpoints, ruspini_check, BaseSet, CrispSet, ElementId, FuzzyNumber,
    FuzzySet, Label, LinguisticVariable, ProportionalPartition, RuspiniReport, Shape,
};
pub use qfm::{
    apply_a_dp, apply_a_dp_with, apply_a_exact, apply_a_mc, apply_i, apply_md, fuzzify,
    representative_prob, AStrategy, DpOptions, EXACT_BIT_CAP, FuzzificationMethod, FuzzifiedQuantifier,
};
pub use quantifier::{
    q_about_abs, q_all, q_at_least_pct, q_prop_binary, q_prop_ternary, q_prop_unary,
    q_prop_unary_sum, q_rate, q_similarity, CardinalitySignature, Counts, QuantifierSpec,
    SemiFuzzyQuantifier, SignatureKind,
};
pub use summarizer::{
    best_single, build_matrix, evaluate_merged, greedy_extract, merge_adjacent, rate_search,
    BestSingle, EvaluationMatrix, GreedyParams, MergedCell, RateSearchResult, SummaryStatement,
};
pub use temporal::{
    displace_signal, displace_window, fuzzify_series, pct_change, sliding_evaluate,
    threshold_observable, BinaryObservableSeries, FuzzySignal, RawSeries, SlidePoint,
    TemporalWindow, TimeAxis,
};

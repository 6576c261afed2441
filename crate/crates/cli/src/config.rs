//! The JSON configuration document and name binding.

use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use fuzzyq_core::{
    fuzzify_series, pct_change, FuzzificationMethod, FuzzyNumber, FuzzySignal, LinguisticVariable,
    ProportionalPartition, QuantifierSpec, RawSeries, SemiFuzzyQuantifier, TemporalWindow,
};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::data::Dataset;
use crate::dsl::{parse_expression, Expression, Term};
use crate::error::CliError;

/// A JSON object read in document order that rejects repeated keys.
#[derive(Debug, Clone, PartialEq)]
pub struct Named<T>(pub Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Self(Vec::new())
    }
}

impl<T> Named<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Named<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object of named entries")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Named<T>, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(Named(out))
            }
        }

        deserializer.deserialize_map(V(PhantomData))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    PctChange,
}

/// A derived series: a CSV column, optionally transformed, whose labels
/// come from a linguistic variable.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSpec {
    pub column: String,
    #[serde(default)]
    pub transform: Option<Transform>,
    #[serde(default)]
    pub variable: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    /// Defaults to the first CSV column.
    #[serde(default)]
    pub column: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub time: TimeSpec,
    #[serde(default)]
    pub fuzzy_numbers: Named<FuzzyNumber>,
    #[serde(default)]
    pub variables: Vec<LinguisticVariable>,
    #[serde(default)]
    pub partitions: Vec<ProportionalPartition>,
    #[serde(default)]
    pub quantifiers: Named<QuantifierSpec>,
    #[serde(default)]
    pub windows: Named<TemporalWindow>,
    #[serde(default)]
    pub methods: Named<FuzzificationMethod>,
    #[serde(default)]
    pub expressions: Named<String>,
    #[serde(default)]
    pub series: Named<SeriesSpec>,
}

/// A term with its names resolved.
#[derive(Debug, Clone)]
pub struct BoundTerm {
    pub term: Term,
    pub column: String,
    pub transform: Option<Transform>,
    pub label: Option<FuzzyNumber>,
}

impl BoundTerm {
    pub fn shift(&self) -> i64 {
        self.term.shift.unwrap_or(0)
    }

    /// Membership signal over the dataset's axis, before any shift.
    pub fn signal(&self, data: &Dataset) -> Result<FuzzySignal, CliError> {
        let raw = data.column(&self.column)?;
        let raw: RawSeries = match self.transform {
            Some(Transform::PctChange) => pct_change(raw)?,
            None => raw.clone(),
        };
        if let Some(f) = &self.label {
            return Ok(fuzzify_series(&raw, f));
        }
        let mut mu = Vec::with_capacity(raw.values().len());
        let mut missing = Vec::with_capacity(mu.capacity());
        for (i, v) in raw.values().iter().enumerate() {
            match v {
                Some(x) if (0.0..=1.0).contains(x) => {
                    mu.push(*x);
                    missing.push(false);
                }
                Some(x) => {
                    return Err(CliError::data(format!(
                        "series `{}` has no label, so its values must be degrees in [0, 1]; found {x} at {}",
                        self.term.series,
                        data.labels[i]
                    )))
                }
                None => {
                    mu.push(0.0);
                    missing.push(true);
                }
            }
        }
        Ok(FuzzySignal::with_missing(raw.axis().clone(), mu, missing)?)
    }
}

#[derive(Debug, Clone)]
pub struct BoundExpression {
    pub expr: Expression,
    pub quantifier: SemiFuzzyQuantifier,
    pub window: TemporalWindow,
    pub terms: Vec<BoundTerm>,
}

fn unknown(kind: &str, name: &str, known: Vec<&str>) -> CliError {
    if known.is_empty() {
        CliError::usage(format!("unknown {kind} `{name}`: the config defines none"))
    } else {
        CliError::usage(format!("unknown {kind} `{name}` (known: {})", known.join(", ")))
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Config =
            serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| e.context(path.display()))
    }

    fn validate(&self) -> Result<(), CliError> {
        let dup = |kind: &str, names: Vec<&str>| {
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(CliError::usage(format!("invalid config: duplicate {kind} `{n}`")));
                }
            }
            Ok(())
        };
        dup("variable", self.variables.iter().map(|v| v.name()).collect())?;
        dup("partition", self.partitions.iter().map(|p| p.name()).collect())?;
        for (name, spec) in &self.quantifiers.0 {
            spec.build(name)
                .map_err(|e| CliError::usage(format!("invalid config: quantifier `{name}`: {e}")))?;
        }
        for (name, s) in &self.series.0 {
            if let Some(v) = &s.variable {
                if self.variable(v).is_none() {
                    return Err(CliError::usage(format!(
                        "invalid config: series `{name}` refers to unknown variable `{v}`"
                    )));
                }
            }
        }
        for (name, text) in &self.expressions.0 {
            parse_expression(text)
                .map_err(|e| CliError::usage(format!("invalid config: expression `{name}`: {e}")))?;
        }
        Ok(())
    }

    pub fn variable(&self, name: &str) -> Option<&LinguisticVariable> {
        self.variables.iter().find(|v| v.name() == name)
    }

    pub fn require_variable(&self, name: &str) -> Result<&LinguisticVariable, CliError> {
        self.variable(name).ok_or_else(|| {
            unknown("variable", name, self.variables.iter().map(|v| v.name()).collect())
        })
    }

    pub fn require_partition(&self, name: &str) -> Result<&ProportionalPartition, CliError> {
        self.partitions.iter().find(|p| p.name() == name).ok_or_else(|| {
            unknown("partition", name, self.partitions.iter().map(|p| p.name()).collect())
        })
    }

    /// A named method from the config, or an inline descriptor.
    pub fn method(&self, text: &str) -> Result<FuzzificationMethod, CliError> {
        if let Some(m) = self.methods.get(text) {
            return Ok(*m);
        }
        text.parse().map_err(|e| CliError::usage(format!("{e}")))
    }

    /// A named expression from the config, or expression text.
    pub fn expression(&self, text: &str) -> Result<Expression, CliError> {
        let source = self.expressions.get(text).map_or(text, String::as_str);
        Ok(parse_expression(source)?)
    }

    /// Column and transform behind a series name; unknown names fall back
    /// to the CSV column of the same name.
    pub fn series_source(&self, name: &str) -> (String, Option<Transform>, Option<&str>) {
        match self.series.get(name) {
            Some(s) => (s.column.clone(), s.transform, s.variable.as_deref()),
            None => (name.to_string(), None, None),
        }
    }

    /// Label lookup: the series' own variable if it declares one, else the
    /// named fuzzy numbers, else the one variable that defines the label.
    fn label(&self, series: &str, variable: Option<&str>, label: &str) -> Result<FuzzyNumber, CliError> {
        if let Some(v) = variable {
            let var = self.require_variable(v)?;
            return var.label(label).map(|l| l.function).ok_or_else(|| {
                unknown(
                    &format!("label of variable `{v}` (series `{series}`)"),
                    label,
                    var.labels().iter().map(|l| l.name.as_str()).collect(),
                )
            });
        }
        if let Some(f) = self.fuzzy_numbers.get(label) {
            return Ok(*f);
        }
        let owners: Vec<&LinguisticVariable> =
            self.variables.iter().filter(|v| v.label(label).is_some()).collect();
        match owners.as_slice() {
            [v] => Ok(v.label(label).expect("filtered").function),
            [] => Err(CliError::usage(format!(
                "unknown label `{label}`: not a named fuzzy number or a label of any variable"
            ))),
            many => Err(CliError::usage(format!(
                "label `{label}` is ambiguous between variables {}; give series `{series}` a variable",
                many.iter().map(|v| format!("`{}`", v.name())).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn bind_term(&self, term: &Term) -> Result<BoundTerm, CliError> {
        let (column, transform, variable) = self.series_source(&term.series);
        let label = term
            .label
            .as_deref()
            .map(|l| self.label(&term.series, variable, l))
            .transpose()?;
        Ok(BoundTerm {
            term: term.clone(),
            column,
            transform,
            label,
        })
    }

    pub fn bind(&self, expr: &Expression) -> Result<BoundExpression, CliError> {
        let spec = self.quantifiers.get(&expr.quantifier).ok_or_else(|| {
            unknown("quantifier", &expr.quantifier, self.quantifiers.names().collect())
        })?;
        let quantifier = spec.build(&expr.quantifier)?;
        let window = *self
            .windows
            .get(&expr.window)
            .ok_or_else(|| unknown("window", &expr.window, self.windows.names().collect()))?;
        if quantifier.arity() != expr.terms.len() + 1 {
            return Err(CliError::usage(format!(
                "quantifier `{}` takes {} argument(s): the window and {} term(s), but the expression has {} term(s)",
                expr.quantifier,
                quantifier.arity(),
                quantifier.arity() - 1,
                expr.terms.len()
            )));
        }
        let terms = expr.terms.iter().map(|t| self.bind_term(t)).collect::<Result<_, _>>()?;
        Ok(BoundExpression {
            expr: expr.clone(),
            quantifier,
            window,
            terms,
        })
    }
}

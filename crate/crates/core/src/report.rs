use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::Scalar;

/// Outcome of evaluating one theorem on one configuration.
///
/// The booleans are the individual claims, so a caller can test equivalence
/// statements (all equal) as well as implications.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Report {
    pub theorem: String,
    pub booleans: BTreeMap<String, bool>,
    pub residuals: BTreeMap<String, f64>,
    pub witness: serde_json::Value,
}

impl Report {
    pub fn new(theorem: impl Into<String>) -> Self {
        Report {
            theorem: theorem.into(),
            ..Report::default()
        }
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool) -> &mut Self {
        self.booleans.insert(name.into(), value);
        self
    }

    pub fn residual<S: Scalar>(&mut self, name: impl Into<String>, value: &S) -> &mut Self {
        self.residuals.insert(name.into(), value.to_f64().abs());
        self
    }

    pub fn with_witness<T: Serialize + ?Sized>(mut self, witness: &T) -> Self {
        self.witness = serde_json::to_value(witness).unwrap_or(serde_json::Value::Null);
        self
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.booleans.get(name).copied()
    }

    pub fn all_true(&self) -> bool {
        self.booleans.values().all(|&b| b)
    }

    pub fn all_false(&self) -> bool {
        self.booleans.values().all(|&b| !b)
    }

    /// No mixture of true and false among the booleans.
    pub fn consistent(&self) -> bool {
        self.all_true() || self.all_false()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

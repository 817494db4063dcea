//! Self-contained dual-certificate reports shared by both linear programs.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, ser, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackEntry {
    pub config: String,
    #[serde(serialize_with = "ser::rational")]
    pub slack: Rational,
}

/// Per-constraint slack ledger of an explicit dual solution. It can be
/// re-checked without re-solving: `valid` holds iff every slack is ≥ 0, the
/// tight set is exactly the expected one, and no extra check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub model: &'static str,
    pub d: usize,
    #[serde(serialize_with = "ser::rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser::named_rationals")]
    pub dual_values: Vec<(String, Rational)>,
    pub slacks: Vec<SlackEntry>,
    pub tight_set: Vec<String>,
    #[serde(serialize_with = "ser::rational")]
    pub optimum: Rational,
    pub valid: bool,
    pub failures: Vec<String>,
}

impl CertificateReport {
    /// Builds the report and judges it against the configurations that are
    /// meant to be tight.
    pub(crate) fn judge(
        model: &'static str,
        d: usize,
        lambda: &Rational,
        dual_values: Vec<(String, Rational)>,
        slacks: Vec<SlackEntry>,
        expected_tight: &[String],
        optimum: Rational,
    ) -> Self {
        let tight_set: Vec<String> = slacks.iter().filter(|s| s.slack.is_zero()).map(|s| s.config.clone()).collect();
        let mut failures = Vec::new();
        for s in &slacks {
            let should_be_tight = expected_tight.contains(&s.config);
            if s.slack.is_negative() {
                failures.push(format!("{}: negative slack {}", s.config, format_rational(&s.slack)));
            } else if should_be_tight && !s.slack.is_zero() {
                failures.push(format!("{}: expected tight, slack {}", s.config, format_rational(&s.slack)));
            } else if !should_be_tight && s.slack.is_zero() {
                failures.push(format!("{}: slack is zero off the tight set", s.config));
            }
        }
        for t in expected_tight {
            if !slacks.iter().any(|s| &s.config == t) {
                failures.push(format!("{t}: expected tight configuration is missing"));
            }
        }
        CertificateReport {
            model,
            d,
            lambda: lambda.clone(),
            dual_values,
            slacks,
            tight_set,
            optimum,
            valid: failures.is_empty(),
            failures,
        }
    }

    pub(crate) fn fail(&mut self, failure: String) {
        self.failures.push(failure);
        self.valid = false;
    }

    /// The first failure as a certificate error.
    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => {
                let (config, detail) = f.split_once(": ").unwrap_or(("certificate", f));
                Err(Error::CertificateFailure { config: config.to_string(), detail: detail.to_string() })
            }
        }
    }

    pub fn slack(&self, config: &str) -> Option<&Rational> {
        self.slacks.iter().find(|s| s.config == config).map(|s| &s.slack)
    }

    pub fn dual(&self, name: &str) -> Option<&Rational> {
        self.dual_values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

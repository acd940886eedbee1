//! The JSON envelope shared by all subcommands.
//!
//! Every command emits the same top-level keys: `command`, `input`,
//! `verdict`, `roots`, `expressions`, `residual`, `group`, `trace` and
//! `config`. Rationals are `"num/den"` strings and complex values are
//! `{re, im, err}` objects.

use galois_core::exact::UniPoly;
use galois_core::numeric::ComplexApprox;
use galois_core::radical::RadicalExpr;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::parse::coefficient_strings;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub source: String,
    /// Canonical rendering of what was parsed.
    pub parsed: Option<String>,
    /// Low degree first, for univariate input.
    pub coefficients: Option<Vec<String>>,
}

impl Input {
    pub fn raw(source: &str) -> Self {
        Self { source: source.to_string(), parsed: None, coefficients: None }
    }

    pub fn poly(source: &str, p: &UniPoly) -> Self {
        Self { source: source.to_string(), parsed: Some(p.to_string()), coefficients: Some(coefficient_strings(p)) }
    }
}

/// An expression as infix text, with the prefix form and JSON tree when it
/// is a radical expression.
#[derive(Clone, Debug, Serialize)]
pub struct Expression {
    pub text: String,
    pub prefix: Option<String>,
    pub tree: Option<RadicalExpr>,
}

impl Expression {
    pub fn plain(text: impl Into<String>) -> Self {
        Self { text: text.into(), prefix: None, tree: None }
    }

    pub fn radical(e: &RadicalExpr) -> Self {
        Self { text: e.to_string(), prefix: Some(e.to_prefix()), tree: Some(e.clone()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub command: &'static str,
    pub input: Input,
    pub verdict: String,
    pub roots: Vec<ComplexApprox>,
    pub expressions: Vec<Expression>,
    pub residual: Option<f64>,
    pub group: Option<Value>,
    pub trace: Vec<Value>,
    pub config: RunConfig,
}

impl Envelope {
    pub fn new(command: &'static str, input: Input, cfg: &RunConfig) -> Self {
        Self {
            command,
            input,
            verdict: String::new(),
            roots: Vec::new(),
            expressions: Vec::new(),
            residual: None,
            group: None,
            trace: Vec::new(),
            config: cfg.clone(),
        }
    }
}

/// What a command produced: the envelope, its text rendering and the exit
/// code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub envelope: Envelope,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn ok(envelope: Envelope, text: String) -> Self {
        Self { envelope, text, code: EXIT_OK }
    }

    /// A failure with `verdict` `"error"` (usage) or `"inconclusive"`.
    pub fn fail(mut envelope: Envelope, code: i32, message: impl Into<String>) -> Self {
        let message = message.into();
        envelope.verdict = if code == EXIT_INCONCLUSIVE { "inconclusive" } else { "error" }.into();
        envelope.trace.push(serde_json::json!({ "error": message }));
        let label = if code == EXIT_INCONCLUSIVE { "inconclusive" } else { "error" };
        Self { envelope, text: format!("{label}: {message}\n"), code }
    }

    pub fn render(&self) -> String {
        match self.envelope.config.output {
            crate::config::OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope).expect("envelope serializes");
                s.push('\n');
                s
            }
            crate::config::OutputFormat::Text => self.text.clone(),
        }
    }
}

/// Sort key `(re, im)` with the real part rounded so that conjugate pairs
/// stay adjacent despite rounding noise.
fn sort_key(z: &ComplexApprox) -> (f64, f64) {
    ((z.re() * 1e10).round(), z.im())
}

pub fn sort_roots(roots: &mut [ComplexApprox]) {
    roots.sort_by(|a, b| {
        let (ka, kb) = (sort_key(a), sort_key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

/// Sorts values with their expressions attached.
pub fn sort_pairs(values: &[ComplexApprox], exprs: &[RadicalExpr]) -> Vec<(ComplexApprox, RadicalExpr)> {
    let mut pairs: Vec<_> = values.iter().copied().zip(exprs.iter().cloned()).collect();
    pairs.sort_by(|a, b| {
        let (ka, kb) = (sort_key(&a.0), sort_key(&b.0));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    pairs
}

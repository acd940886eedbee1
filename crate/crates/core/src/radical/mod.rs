//! Radical expressions and the closed-form solvers built on them.

mod dispatch;
mod expr;
pub mod solvers;

use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::CyclotomicError;
use crate::exact::{AlgebraError, UniPoly};
use crate::numeric::{find_roots, ComplexApprox, NumericError, Precision, RootSet};
use crate::perm::NonSolvableWitness;
use crate::resolvent::ResolventError;

pub use dispatch::{solve_in_radicals, SolveConfig};
pub(crate) use expr::{is_prime, nth_root_near, prime_factors};
pub use expr::{eval_radical, Evaluator, RadicalExpr, RadicalNode};
pub use solvers::{
    cubic_identities, quartic_resolvent_cubic, solve_cubic, solve_demoivre, solve_linear, solve_quadratic,
    solve_quartic, Bridge, CosineForm, CubicIdentities,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadicalError {
    #[error("root index {0} is not prime")]
    NotPrimeIndex(u32),
    #[error("branch {branch} out of range for a root of index {index}")]
    BranchOutOfRange { index: u32, branch: u32 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("expected a monic polynomial of degree {expected}, got {got}")]
    WrongShape { expected: String, got: String },
    #[error("degree {0} is outside 1..=5")]
    DegreeOutOfRange(usize),
    #[error("polynomial is reducible over Q ({0}); factor it first")]
    Reducible(String),
    #[error("radical expressions miss the numeric roots by {0:e}")]
    VerificationFailed(f64),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Resolvent(#[from] ResolventError),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    Linear,
    Quadratic,
    Cubic,
    Quartic,
    Demoivre,
    Binomial,
    Cyclotomic,
    Unsolvable,
    NotAttempted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Solved,
    /// The Galois group is solvable but no closed form is implemented for it.
    SolvableUnimplemented,
    Unsolvable,
}

/// Galois group facts attached to degree-five reports.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub solvable: bool,
    /// Subgroup orders of a composition series, trivial group first.
    pub series_orders: Option<Vec<usize>>,
    pub witness: Option<NonSolvableWitness>,
    /// Number of membership tests run during identification.
    pub membership_tests: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub input: UniPoly,
    pub method: SolveMethod,
    pub status: SolveStatus,
    /// One expression per root.
    pub expressions: Vec<RadicalExpr>,
    /// The expressions evaluated at the report precision.
    pub values: Vec<ComplexApprox>,
    pub numeric_roots: RootSet,
    /// Largest distance between a value and its matched numeric root;
    /// `None` when there are no expressions.
    pub max_residual: Option<f64>,
    /// Largest `|p(value)|`.
    pub max_poly_residual: Option<f64>,
    pub cosine_form: Option<CosineForm>,
    pub group: Option<GroupSummary>,
    pub notes: Vec<String>,
}

impl SolveReport {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }

    pub(crate) fn unsolved(
        p: &UniPoly,
        method: SolveMethod,
        status: SolveStatus,
        precision: Precision,
    ) -> Result<Self, SolveError> {
        Ok(SolveReport {
            input: p.clone(),
            method,
            status,
            expressions: Vec::new(),
            values: Vec::new(),
            numeric_roots: find_roots(p, precision)?,
            max_residual: None,
            max_poly_residual: None,
            cosine_form: None,
            group: None,
            notes: Vec::new(),
        })
    }

    /// Evaluates `expressions` and measures them against the numeric roots.
    pub(crate) fn solved(
        p: &UniPoly,
        method: SolveMethod,
        expressions: Vec<RadicalExpr>,
        precision: Precision,
    ) -> Result<Self, SolveError> {
        let numeric_roots = find_roots(p, precision)?;
        let mut ev = Evaluator::new(precision);
        let values: Vec<ComplexApprox> = expressions.iter().map(|e| ev.eval(e)).collect();
        let max_residual = greedy_match(&values, &numeric_roots.roots);
        let max_poly_residual = values.iter().map(|v| eval_poly(p, v).abs()).fold(0.0, f64::max);
        Ok(SolveReport {
            input: p.clone(),
            method,
            status: SolveStatus::Solved,
            expressions,
            values,
            numeric_roots,
            max_residual: Some(max_residual),
            max_poly_residual: Some(max_poly_residual),
            cosine_form: None,
            group: None,
            notes: Vec::new(),
        })
    }

    fn residual(&self) -> f64 {
        self.max_residual.unwrap_or(f64::INFINITY)
    }
}

pub(crate) fn eval_poly(p: &UniPoly, z: &ComplexApprox) -> ComplexApprox {
    let prec = z.precision();
    p.coeffs()
        .iter()
        .rev()
        .fold(ComplexApprox::zero(prec), |acc, c| acc * *z + ComplexApprox::from_rational(c, prec))
}

/// Pairs each value with the nearest unused root; returns the largest
/// distance, or infinity when the counts differ.
fn greedy_match(values: &[ComplexApprox], roots: &[ComplexApprox]) -> f64 {
    if values.len() != roots.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; roots.len()];
    let mut worst: f64 = 0.0;
    for v in values {
        let best = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, r)| (i, v.dist(r)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((i, d)) = best else { return f64::INFINITY };
        used[i] = true;
        worst = worst.max(d);
    }
    worst
}

/// True when every expression re-evaluates within `tol` of a distinct
/// numeric root and all roots are covered.
pub fn verify_solution(report: &SolveReport, tol: f64) -> bool {
    if report.expressions.is_empty() {
        return false;
    }
    let mut ev = Evaluator::new(report.numeric_roots.precision);
    let values: Vec<ComplexApprox> = report.expressions.iter().map(|e| ev.eval(e)).collect();
    greedy_match(&values, &report.numeric_roots.roots) <= tol
}

/// Picks the first candidate set whose residual is below `accept`, else the
/// best one seen.
pub(crate) fn best_candidate(
    p: &UniPoly,
    method: SolveMethod,
    candidates: impl IntoIterator<Item = Result<Vec<RadicalExpr>, SolveError>>,
    precision: Precision,
    accept: f64,
) -> Result<SolveReport, SolveError> {
    let mut best: Option<SolveReport> = None;
    for c in candidates {
        let r = SolveReport::solved(p, method, c?, precision)?;
        if r.residual() <= accept {
            return Ok(r);
        }
        if best.as_ref().is_none_or(|b| r.residual() < b.residual()) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| SolveError::Other("no candidate expressions".into()))
}

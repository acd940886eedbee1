use num_traits::{Signed, Zero};

use super::solvers::{demoivre_params, solve_cubic, solve_demoivre, solve_linear, solve_quadratic, solve_quartic};
use super::{
    verify_solution, GroupSummary, RadicalExpr, SolveError, SolveMethod, SolveReport, SolveStatus,
};
use crate::cyclotomic::unit_root_expr;
use crate::exact::{factor_rational, UniPoly};
use crate::numeric::Precision;
use crate::perm::{composition_series, SeriesOutcome};
use crate::resolvent::{identify_galois_group, MembershipConfig};

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub precision: Precision,
    /// Largest accepted distance between an expression and its root.
    pub tolerance: f64,
    pub membership: MembershipConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self { precision: Precision::Extended, tolerance: 1e-9, membership: MembershipConfig::default() }
    }
}

/// `x^5 = A` as `A^(1/5) zeta5^m`, with the fifth roots of unity in square
/// roots and `A^(1/5)` real.
pub(crate) fn solve_binomial(p: &UniPoly, precision: Precision) -> Result<SolveReport, SolveError> {
    let a = -p.coeff(0);
    let real_root = if a.is_negative() {
        -RadicalExpr::root(5, 0, RadicalExpr::rational(-a.clone()))?
    } else {
        RadicalExpr::root(5, 0, RadicalExpr::rational(a.clone()))?
    };
    let exprs = (0..5)
        .map(|m| Ok(real_root.clone() * unit_root_expr(5, m)?))
        .collect::<Result<Vec<_>, SolveError>>()?;
    SolveReport::solved(p, SolveMethod::Binomial, exprs, precision)
}

fn check_irreducible(p: &UniPoly) -> Result<(), SolveError> {
    let factors = factor_rational(p)?;
    if factors.len() > 1 {
        let shown: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
        return Err(SolveError::Reducible(shown.join("*")));
    }
    Ok(())
}

/// Solves a monic polynomial of degree 1 to 5 in radicals where a closed
/// form is implemented, and otherwise classifies it by its Galois group.
///
/// Degrees up to four always go through the cascade solvers. A quintic must
/// be irreducible; it is tried as a DeMoivre or binomial quintic first, and
/// otherwise reported as solvable-but-unimplemented or unsolvable.
pub fn solve_in_radicals(p: &UniPoly, cfg: &SolveConfig) -> Result<SolveReport, SolveError> {
    let n = p.deg().unwrap_or(0);
    if !(1..=5).contains(&n) {
        return Err(SolveError::DegreeOutOfRange(n));
    }
    if !p.is_monic() {
        return Err(SolveError::WrongShape { expected: "monic".into(), got: p.to_string() });
    }
    let prec = cfg.precision;
    let report = match n {
        1 => solve_linear(p, prec)?,
        2 => solve_quadratic(p, prec)?,
        3 => solve_cubic(p, prec)?,
        4 => solve_quartic(p, prec)?,
        _ => {
            check_irreducible(p)?;
            if let Some(r) = solve_demoivre(p, prec)? {
                r
            } else if (1..5).all(|k| p.coeff(k).is_zero()) {
                solve_binomial(p, prec)?
            } else {
                return classify_quintic(p, cfg);
            }
        }
    };
    if !verify_solution(&report, cfg.tolerance) {
        return Err(SolveError::VerificationFailed(report.max_residual.unwrap_or(f64::INFINITY)));
    }
    Ok(report)
}

fn classify_quintic(p: &UniPoly, cfg: &SolveConfig) -> Result<SolveReport, SolveError> {
    debug_assert!(demoivre_params(p).is_none());
    let (monic_int, _) = p.to_monic_integer()?;
    let id = identify_galois_group(&monic_int, &cfg.membership)?;
    let outcome = composition_series(&id.group).map_err(crate::resolvent::ResolventError::from)?;
    let (status, method, series_orders, witness) = match outcome {
        SeriesOutcome::Solvable(s) => (SolveStatus::SolvableUnimplemented, SolveMethod::NotAttempted, Some(s.orders()), None),
        SeriesOutcome::NotSolvable(w) => (SolveStatus::Unsolvable, SolveMethod::Unsolvable, None, Some(w)),
    };
    let mut report = SolveReport::unsolved(p, method, status, cfg.precision)?;
    report.notes.push(match status {
        SolveStatus::SolvableUnimplemented => {
            format!("Galois group {} is solvable; closed-form recovery for it is not implemented", id.name)
        }
        _ => format!("Galois group {} has no composition series with prime-order quotients", id.name),
    });
    report.group = Some(GroupSummary {
        solvable: status == SolveStatus::SolvableUnimplemented,
        name: id.name,
        order: id.order,
        series_orders,
        witness,
        membership_tests: id.trace.len(),
    });
    Ok(report)
}

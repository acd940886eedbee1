use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use super::{best_candidate, RadicalExpr, SolveError, SolveMethod, SolveReport};
use crate::exact::{int, rat, rational_to_string, serde_rational, MultiPoly, Rational, UniPoly};
use crate::numeric::{dd_from_rational, ComplexApprox, Precision};
use crate::radical::{eval_radical, Evaluator};
use crate::symmetric::symmetric_reduce_all;

/// Residual below which the first branch choice is accepted without trying
/// the alternatives.
const CANDIDATE_TOL: f64 = 1e-9;

/// Sign bridge between coefficients and roots.
///
/// Writing `p = prod (x + r_i)` makes the coefficient of `x^(n-k)` equal to
/// `sigma_k(r)`, but those `r_i` are the negated roots. Every solver works with
/// the actual roots `rho_i = -r_i`, whose elementary symmetric values are
/// `e_k = (-1)^k sigma_k`.
#[derive(Clone, Debug)]
pub struct Bridge {
    n: usize,
    coeffs: Vec<Rational>,
}

impl Bridge {
    pub fn new(p: &UniPoly) -> Result<Self, SolveError> {
        let n = p.deg().unwrap_or(0);
        if n == 0 || !p.is_monic() {
            return Err(SolveError::WrongShape { expected: "monic, degree >= 1".into(), got: p.to_string() });
        }
        Ok(Self { n, coeffs: p.coeffs().to_vec() })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficient of `x^(n-k)`: `sigma_k` of the negated roots.
    pub fn sigma(&self, k: usize) -> Rational {
        self.coeffs[self.n - k].clone()
    }

    /// `e_k` of the actual roots.
    pub fn e(&self, k: usize) -> Rational {
        if k.is_multiple_of(2) {
            self.sigma(k)
        } else {
            -self.sigma(k)
        }
    }

    pub fn all_e(&self) -> Vec<Rational> {
        (1..=self.n).map(|k| self.e(k)).collect()
    }
}

fn expect_degree(p: &UniPoly, n: usize) -> Result<Bridge, SolveError> {
    let b = Bridge::new(p)?;
    if b.degree() != n {
        return Err(SolveError::WrongShape { expected: format!("monic, degree {n}"), got: p.to_string() });
    }
    Ok(b)
}

fn r(x: Rational) -> RadicalExpr {
    RadicalExpr::rational(x)
}

pub fn solve_linear(p: &UniPoly, precision: Precision) -> Result<SolveReport, SolveError> {
    let b = expect_degree(p, 1)?;
    SolveReport::solved(p, SolveMethod::Linear, vec![r(b.e(1))], precision)
}

fn quadratic_exprs(b: &Bridge) -> Result<Vec<RadicalExpr>, SolveError> {
    let (e1, e2) = (b.e(1), b.e(2));
    let disc = &e1 * &e1 - int(4) * &e2;
    let half = rat(1, 2);
    (0..2)
        .map(|br| Ok((r(e1.clone()) + RadicalExpr::sqrt(r(disc.clone()), br)?).scale(&half)))
        .collect()
}

/// Roots `(e1 +- sqrt(e1^2 - 4 e2)) / 2`.
pub fn solve_quadratic(p: &UniPoly, precision: Precision) -> Result<SolveReport, SolveError> {
    let b = expect_degree(p, 2)?;
    SolveReport::solved(p, SolveMethod::Quadratic, quadratic_exprs(&b)?, precision)
}

/// Exact quantities behind the cubic formula for `x^3 + a x^2 + b x + c`,
/// with `t1 = rho1 + w rho2 + w^2 rho3` and `t2 = rho1 + w^2 rho2 + w rho3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicIdentities {
    /// `t1^3 + t2^3 = 9ab - 2a^3 - 27c`.
    #[serde(with = "serde_rational")]
    pub sum_of_cubes: Rational,
    /// `(t1^3 - t2^3)^2 = -27 Disc`.
    #[serde(with = "serde_rational")]
    pub diff_squared: Rational,
    /// `t1 t2 = a^2 - 3b`.
    #[serde(with = "serde_rational")]
    pub product: Rational,
    #[serde(with = "serde_rational")]
    pub discriminant: Rational,
}

pub fn cubic_identities(p: &UniPoly) -> Result<CubicIdentities, SolveError> {
    expect_degree(p, 3)?;
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    let disc = &a * &a * &b * &b - int(4) * &b * &b * &b - int(4) * &a * &a * &a * &c - int(27) * &c * &c
        + int(18) * &a * &b * &c;
    Ok(CubicIdentities {
        sum_of_cubes: int(9) * &a * &b - int(2) * &a * &a * &a - int(27) * &c,
        diff_squared: int(-27) * &disc,
        product: &a * &a - int(3) * &b,
        discriminant: disc,
    })
}

/// Candidate root lists for a cubic; the first uses the branch of `t2`
/// forced by `t1 t2 = a^2 - 3b`, the rest are the other branches.
fn cubic_candidates(p: &UniPoly) -> Result<Vec<Vec<RadicalExpr>>, SolveError> {
    let b = expect_degree(p, 3)?;
    let id = cubic_identities(p)?;
    let e1 = r(b.e(1));
    let third = rat(1, 3);
    let half = rat(1, 2);
    let sd = [RadicalExpr::sqrt(r(id.diff_squared.clone()), 0)?, RadicalExpr::sqrt(r(id.diff_squared.clone()), 1)?];
    let cubes: Vec<RadicalExpr> = sd.iter().map(|s| (r(id.sum_of_cubes.clone()) + s.clone()).scale(&half)).collect();
    let mags: Vec<f64> = cubes.iter().map(|c| eval_radical(c, Precision::Extended).abs()).collect();
    // take t1 from the larger cube so it cannot vanish unless both do
    let (big, small) = if mags[0] >= mags[1] { (&cubes[0], &cubes[1]) } else { (&cubes[1], &cubes[0]) };
    let roots_for = |t2_branch: Option<u32>| -> Result<Vec<RadicalExpr>, SolveError> {
        (0..3u32)
            .map(|k| {
                let t1 = RadicalExpr::root(3, k, big.clone())?;
                let t2 = match t2_branch {
                    Some(b0) => RadicalExpr::root(3, (b0 + 3 - k) % 3, small.clone())?,
                    None => RadicalExpr::zero(),
                };
                Ok((e1.clone() + t1 + t2).scale(&third))
            })
            .collect()
    };
    if id.product.is_zero() {
        // t1^3 t2^3 = (a^2 - 3b)^3 = 0, so t2 = 0
        return Ok(vec![roots_for(None)?]);
    }
    let t1 = eval_radical(&RadicalExpr::root(3, 0, big.clone())?, Precision::Extended);
    let target = ComplexApprox::from_rational(&id.product, Precision::Extended);
    let mut order: Vec<(f64, u32)> = (0..3)
        .map(|br| {
            let t2 = eval_radical(&RadicalExpr::root(3, br, small.clone()).unwrap(), Precision::Extended);
            ((t1 * t2).dist(&target), br)
        })
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    order.into_iter().map(|(_, br)| roots_for(Some(br))).collect()
}

/// Cardano through the resolvents `t1, t2`: `rho_k = (e1 + w^k t1 + w^-k t2) / 3`.
pub fn solve_cubic(p: &UniPoly, precision: Precision) -> Result<SolveReport, SolveError> {
    let cands = cubic_candidates(p)?;
    best_candidate(p, SolveMethod::Cubic, cands.into_iter().map(Ok), precision, CANDIDATE_TOL)
}

/// `E1, E2, E3` of the pair invariants `t_i` and the product `d1 d2 d3`,
/// all in the elementary symmetric polynomials of four roots.
fn quartic_forms() -> &'static [MultiPoly; 4] {
    static FORMS: OnceLock<[MultiPoly; 4]> = OnceLock::new();
    FORMS.get_or_init(|| {
        let x: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(4, i)).collect();
        let pair = |a: usize, b: usize| &x[a] + &x[b];
        let sq = |m: &MultiPoly| m * m;
        let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
        let t: Vec<MultiPoly> = pairings.iter().map(|&(a, b, c, d)| &sq(&pair(a, b)) + &sq(&pair(c, d))).collect();
        let d: Vec<MultiPoly> = pairings.iter().map(|&(a, b, c, d)| &pair(a, b) - &pair(c, d)).collect();
        let e1 = &(&t[0] + &t[1]) + &t[2];
        let e2 = &(&(&t[0] * &t[1]) + &(&t[0] * &t[2])) + &(&t[1] * &t[2]);
        let e3 = &(&t[0] * &t[1]) * &t[2];
        let prod = &(&d[0] * &d[1]) * &d[2];
        let v = symmetric_reduce_all(&[e1, e2, e3, prod]).expect("pair invariants are symmetric");
        [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
    })
}

/// `prod (y - t_i)` with `t_i = (rho_a + rho_b)^2 + (rho_c + rho_d)^2` over
/// the three pairings.
pub fn quartic_resolvent_cubic(p: &UniPoly) -> Result<UniPoly, SolveError> {
    let b = expect_degree(p, 4)?;
    let e = b.all_e();
    let f = quartic_forms();
    let (e1, e2, e3) = (f[0].eval_rational(&e), f[1].eval_rational(&e), f[2].eval_rational(&e));
    Ok(UniPoly::new(vec![-e3, e2, -e1, Rational::one()]))
}

fn quartic_candidates(p: &UniPoly) -> Result<Vec<Vec<RadicalExpr>>, SolveError> {
    let b = expect_degree(p, 4)?;
    let e = b.all_e();
    let s = b.e(1);
    let prod = quartic_forms()[3].eval_rational(&e);
    let rc = quartic_resolvent_cubic(p)?;
    let ts = cubic_candidates(&rc)?.swap_remove(0);
    // (rho_a + rho_b - rho_c - rho_d)^2 = 2 t - s^2
    let radicands: Vec<RadicalExpr> =
        ts.iter().map(|t| t.scale(&int(2)) - r(&s * &s)).collect();
    let d1 = RadicalExpr::sqrt(radicands[0].clone(), 0)?;
    let d2 = RadicalExpr::sqrt(radicands[1].clone(), 0)?;
    let mut ev = Evaluator::new(Precision::Extended);
    let d12 = ev.eval(&d1) * ev.eval(&d2);
    let target = ComplexApprox::from_rational(&prod, Precision::Extended);
    let mut order: Vec<(f64, u32)> = (0..2)
        .map(|br| {
            let d3 = RadicalExpr::sqrt(radicands[2].clone(), br).unwrap();
            ((d12 * ev.eval(&d3)).dist(&target), br)
        })
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let quarter = rat(1, 4);
    order
        .into_iter()
        .map(|(_, br)| {
            let d3 = RadicalExpr::sqrt(radicands[2].clone(), br)?;
            let signs = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)];
            Ok(signs
                .iter()
                .map(|&(a, b2, c)| {
                    let pick = |sgn: i32, d: &RadicalExpr| if sgn > 0 { d.clone() } else { -d.clone() };
                    RadicalExpr::sum([r(s.clone()), pick(a, &d1), pick(b2, &d2), pick(c, &d3)]).scale(&quarter)
                })
                .collect())
        })
        .collect()
}

/// Quartic through its resolvent cubic in the pair invariants `t_i`.
pub fn solve_quartic(p: &UniPoly, precision: Precision) -> Result<SolveReport, SolveError> {
    let cands = quartic_candidates(p)?;
    best_candidate(p, SolveMethod::Quartic, cands.into_iter().map(Ok), precision, CANDIDATE_TOL)
}

/// The all-real form `r_m = 2 sqrt(-a) cos((2 pi m + acos(-b / (2 (-a)^(5/2)))) / 5)`.
#[derive(Clone, Debug, Serialize)]
pub struct CosineForm {
    pub formula: String,
    pub values: Vec<ComplexApprox>,
}

fn cosine_form(a: &Rational, b: &Rational, precision: Precision) -> CosineForm {
    let na = -a.clone();
    let root = dd_from_rational(&na).sqrt();
    let arg = -dd_from_rational(b) / (TwoFloat::from(2.0) * dd_from_rational(&(&na * &na)) * root);
    let phi = arg.acos();
    let tau = TwoFloat::from(2.0) * twofloat::consts::PI;
    let values = (0..5)
        .map(|m| {
            let v = TwoFloat::from(2.0) * root * ((tau * TwoFloat::from(m as f64) + phi) / TwoFloat::from(5.0)).cos();
            // acos and cos in double-double are accurate to a few ulps
            ComplexApprox::with_err(v.hi(), 0.0, 1e-28 * v.hi().abs().max(1.0), Precision::Extended)
                .inflate(v.lo().abs())
                .at_precision(precision)
        })
        .collect();
    let na_s = rational_to_string(&na).replace("/1", "");
    let b_s = rational_to_string(&(-b.clone())).replace("/1", "");
    CosineForm {
        formula: format!("2*sqrt({na_s})*cos((2*pi*m + acos({b_s}/(2*({na_s})^(5/2))))/5), m = 0..4"),
        values,
    }
}

/// Matches `x^5 + 5a x^3 + 5a^2 x + b` exactly, returning `(a, b)`.
pub fn demoivre_params(p: &UniPoly) -> Option<(Rational, Rational)> {
    if p.deg() != Some(5) || !p.is_monic() || !p.coeff(4).is_zero() || !p.coeff(2).is_zero() {
        return None;
    }
    let a = p.coeff(3) / int(5);
    (p.coeff(1) == int(5) * &a * &a).then(|| (a, p.coeff(0)))
}

/// Solves a DeMoivre quintic by fifth roots of `u = (-b +- sqrt(b^2 + 4a^5)) / 2`,
/// or returns `None` when `p` is not of that shape.
pub fn solve_demoivre(p: &UniPoly, precision: Precision) -> Result<Option<SolveReport>, SolveError> {
    let Some((a, b)) = demoivre_params(p) else { return Ok(None) };
    if a.is_zero() {
        return super::dispatch::solve_binomial(p, precision).map(Some);
    }
    let disc = &b * &b + int(4) * num_traits::pow(a.clone(), 5);
    let half = rat(1, 2);
    let u = |br: u32| -> Result<RadicalExpr, SolveError> {
        Ok((r(-b.clone()) + RadicalExpr::sqrt(r(disc.clone()), br)?).scale(&half))
    };
    let (u1, u2) = (u(0)?, u(1)?);
    let y = eval_radical(&RadicalExpr::root(5, 0, u1.clone())?, Precision::Extended);
    let target = ComplexApprox::from_rational(&-a.clone(), Precision::Extended);
    let mut order: Vec<(f64, u32)> = (0..5)
        .map(|br| {
            let z = eval_radical(&RadicalExpr::root(5, br, u2.clone()).unwrap(), Precision::Extended);
            ((y * z).dist(&target), br)
        })
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    // r_m = w^m u1^(1/5) + w^(5-m) u2^(1/5), with the pair product -a
    let cands = order.into_iter().map(|(_, bz)| {
        (0..5u32)
            .map(|m| {
                Ok(RadicalExpr::root(5, m, u1.clone())? + RadicalExpr::root(5, (bz + 5 - m) % 5, u2.clone())?)
            })
            .collect::<Result<Vec<_>, SolveError>>()
    });
    let mut report = best_candidate(p, SolveMethod::Demoivre, cands, precision, CANDIDATE_TOL)?;
    if disc.is_negative() {
        report.cosine_form = Some(cosine_form(&a, &b, precision));
        report.notes.push(format!("b^2 + 4a^5 = {} < 0: all five roots are real", rational_to_string(&disc).replace("/1", "")));
    }
    Ok(Some(report))
}

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::ResolventError;
use crate::exact::{int, rational_to_string, MultiPoly, Rational, UniPoly};
use crate::numeric::{find_roots, ComplexApprox, Precision};
use crate::perm::{frobenius20, symmetric, Perm};

/// `sum_k r_k^2 (r_{k-1} r_{k+1} + r_{k-2} r_{k+2})`, indices mod 5: the
/// ten-term orbit of `r1^2 r2 r5` under the Frobenius group.
pub fn f20_invariant_poly() -> MultiPoly {
    let mut t = MultiPoly::zero_in(5);
    for k in 0..5 {
        for d in [1, 2] {
            let mut e = vec![0u32; 5];
            e[k] = 2;
            e[(k + d) % 5] = 1;
            e[(k + 5 - d) % 5] = 1;
            t = &t + &MultiPoly::monomial(5, e, Rational::one());
        }
    }
    t
}

/// The Frobenius invariant evaluated on `r_{pi(1)}, ..., r_{pi(5)}`.
pub fn f20_invariant(roots: &[ComplexApprox], pi: &Perm) -> ComplexApprox {
    assert_eq!(roots.len(), 5, "the Frobenius invariant needs five roots");
    let r: Vec<ComplexApprox> = (0..5).map(|k| roots[pi.apply(k)]).collect();
    let mut t = ComplexApprox::zero(r[0].precision());
    for k in 0..5 {
        let sq = r[k] * r[k];
        let pair = r[(k + 4) % 5] * r[(k + 1) % 5] + r[(k + 3) % 5] * r[(k + 2) % 5];
        t = t + sq * pair;
    }
    t
}

/// Solvable Bring quintics `x^5 + a x + b` with
/// `a = 5 d^4 (3 - 4c) / (c^2 + 1)` and `b = 4 d^5 (2c + 11) / (c^2 + 1)`.
pub fn bring_param(c: &Rational, d: &Rational) -> Result<UniPoly, ResolventError> {
    if d.is_zero() {
        return Err(ResolventError::Algebra(crate::exact::AlgebraError::ConstantPolynomial));
    }
    let den = c * c + Rational::one();
    let d4 = d * d * d * d;
    let a = int(5) * &d4 * (int(3) - int(4) * c) / &den;
    let b = int(4) * &d4 * d * (int(2) * c + int(11)) / &den;
    let mut coeffs = vec![Rational::zero(); 6];
    coeffs[0] = b;
    coeffs[1] = a;
    coeffs[5] = Rational::one();
    Ok(UniPoly::new(coeffs))
}

/// Snapping tolerance, relative to `max(1, |t L^4|)`.
pub const SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct BringReport {
    pub polynomial: UniPoly,
    /// Left-coset representatives of the Frobenius group in `S_5`.
    pub coset_reps: Vec<Perm>,
    /// The six invariant values, one per coset.
    pub invariants: Vec<ComplexApprox>,
    /// Rational snap of each invariant, when one is found.
    pub near_rational: Vec<Option<String>>,
    /// Coefficients of `prod (t - t_i)`, constant term first.
    pub sextic: Vec<ComplexApprox>,
    /// Relative residual of each invariant in
    /// `(t + 2a)^4 (t^2 + 16 a^2) = 5^5 b^4 (t + 3a)`. Reported only: the
    /// normalisation of `t` in that relation is not pinned down.
    pub bring_relation_residuals: Vec<f64>,
}

impl BringReport {
    pub fn has_near_rational(&self) -> bool {
        self.near_rational.iter().any(Option::is_some)
    }
}

/// The invariant is homogeneous of degree 4 in the roots, and `L * root` is
/// an algebraic integer, so a rational invariant has denominator dividing `L^4`.
fn snap(z: &ComplexApprox, l4: &BigInt) -> Option<Rational> {
    let den = l4.to_f64()?;
    let (re, im) = (z.re() * den, z.im() * den);
    let tol = SNAP_TOLERANCE * (re.abs().max(im.abs())).max(1.0);
    if im.abs() > tol || (re - re.round()).abs() > tol {
        return None;
    }
    Some(Rational::new(BigInt::from(re.round() as i64), l4.clone()))
}

/// Evaluates the six Frobenius coset invariants of `x^5 + a x + b`.
pub fn bring_sextic_check(
    a: &Rational,
    b: &Rational,
    precision: Precision,
) -> Result<BringReport, ResolventError> {
    let mut coeffs = vec![Rational::zero(); 6];
    coeffs[0] = b.clone();
    coeffs[1] = a.clone();
    coeffs[5] = Rational::one();
    let p = UniPoly::new(coeffs);
    if !p.is_squarefree() {
        return Err(ResolventError::NotSquarefree);
    }
    let (_, l) = p.to_monic_integer()?;
    let l4 = num_traits::pow(l, 4);
    let roots = find_roots(&p, precision)?.roots;
    let coset_reps = symmetric(5).left_transversal(&frobenius20())?;
    let invariants: Vec<ComplexApprox> = coset_reps.iter().map(|pi| f20_invariant(&roots, pi)).collect();
    let near_rational = invariants
        .iter()
        .map(|t| snap(t, &l4).map(|r| rational_to_string(&r)))
        .collect();
    let mut sextic = vec![ComplexApprox::one(precision)];
    for t in &invariants {
        let mut next = vec![ComplexApprox::zero(precision); sextic.len() + 1];
        for (k, c) in sextic.iter().enumerate() {
            next[k + 1] = next[k + 1] + *c;
            next[k] = next[k] - *c * *t;
        }
        sextic = next;
    }
    let af = ComplexApprox::from_rational(a, precision);
    let bf = ComplexApprox::from_rational(b, precision);
    let c16 = ComplexApprox::from_rational(&int(16), precision);
    let c3125 = ComplexApprox::from_rational(&int(3125), precision);
    let two = ComplexApprox::from_rational(&int(2), precision);
    let three = ComplexApprox::from_rational(&int(3), precision);
    let bring_relation_residuals = invariants
        .iter()
        .map(|&t| {
            let lhs = (t + two * af).powu(4) * (t * t + c16 * af * af);
            let rhs = c3125 * bf.powu(4) * (t + three * af);
            (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0)
        })
        .collect();
    Ok(BringReport {
        polynomial: p,
        coset_reps,
        invariants,
        near_rational,
        sextic,
        bring_relation_residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::resolvent::{subgroup_membership_test, MembershipConfig, MembershipVerdict};

    fn ones() -> Vec<ComplexApprox> {
        vec![ComplexApprox::one(Precision::Extended); 5]
    }

    #[test]
    fn invariant_polynomial_shape() {
        let t = f20_invariant_poly();
        assert_eq!(t.num_terms(), 10);
        assert_eq!(t.eval_rational(&[int(1), int(1), int(1), int(1), int(1)]), int(10));
        assert!((f20_invariant(&ones(), &Perm::identity(5)).re() - 10.0).abs() < 1e-25);
        for g in frobenius20().elements() {
            let images: Vec<usize> = g.images().to_vec();
            assert_eq!(t.permute_vars(&images), t, "{g}");
        }
        // the seed r1^2 r2 r3 has a twenty-term orbit instead
        let seed = MultiPoly::monomial(5, vec![2, 1, 1, 0, 0], int(1));
        let orbit: std::collections::BTreeSet<_> =
            frobenius20().elements().map(|g| seed.permute_vars(g.images())).map(|m| format!("{m}")).collect();
        assert_eq!(orbit.len(), 20);
    }

    #[test]
    fn six_values_on_generic_roots() {
        let roots = find_roots(&UniPoly::from_ints(&[1, -1, 0, 0, 0, 1]), Precision::Extended).unwrap().roots;
        let reps = symmetric(5).left_transversal(&frobenius20()).unwrap();
        assert_eq!(reps.len(), 6);
        let vals: Vec<ComplexApprox> = reps.iter().map(|pi| f20_invariant(&roots, pi)).collect();
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[i + 1..] {
                assert!(a.dist(b) > 1e-3);
            }
        }
        // constant on each coset
        for pi in &reps {
            let base = f20_invariant(&roots, pi);
            for h in frobenius20().elements() {
                assert!(f20_invariant(&roots, &pi.compose(h)).dist(&base) < 1e-20);
            }
        }
    }

    #[test]
    fn parameterisation() {
        assert_eq!(bring_param(&int(2), &int(1)).unwrap(), UniPoly::from_ints(&[12, -5, 0, 0, 0, 1]));
        let q = bring_param(&int(3), &int(1)).unwrap();
        assert_eq!(q.coeff(1), rat(-9, 2));
        assert_eq!(q.coeff(0), rat(34, 5));
        assert!(bring_param(&int(1), &int(0)).is_err());
    }

    #[test]
    fn parameterised_quintics_are_frobenius() {
        let cfg = MembershipConfig::default();
        for (c, d) in [(2, 1), (0, 1), (1, 1), (5, 1), (-1, 1)] {
            let q = bring_param(&int(c), &int(d)).unwrap();
            let (monic, _) = q.to_monic_integer().unwrap();
            let r = subgroup_membership_test(&monic, &frobenius20(), &cfg).unwrap();
            // large scaled coefficients can exhaust double-double precision
            assert_ne!(r.verdict, MembershipVerdict::NotContained, "c={c} d={d}: {q}");
            let rep = bring_sextic_check(&q.coeff(1), &q.coeff(0), Precision::Extended).unwrap();
            assert!(rep.has_near_rational(), "c={c}: {:?}", rep.invariants);
        }
    }

    #[test]
    fn rational_invariant_found_only_when_solvable() {
        let rep = bring_sextic_check(&int(-5), &int(12), Precision::Extended).unwrap();
        assert_eq!(rep.near_rational.iter().flatten().collect::<Vec<_>>(), vec!["40/1"]);
        assert_eq!(rep.sextic.len(), 7);
        assert_eq!(rep.bring_relation_residuals.len(), 6);
        assert!(!bring_sextic_check(&int(-1), &int(1), Precision::Extended).unwrap().has_near_rational());
        assert!(!bring_sextic_check(&int(5), &int(12), Precision::Extended).unwrap().has_near_rational());
        assert!(bring_sextic_check(&int(0), &int(0), Precision::Extended).is_err());
    }

    #[test]
    fn sextic_has_rational_coefficients() {
        let rep = bring_sextic_check(&int(-1), &int(1), Precision::Extended).unwrap();
        for c in &rep.sextic {
            assert!(c.im().abs() < 1e-12);
            assert!((c.re() - c.re().round()).abs() < 1e-12, "{c}");
        }
    }
}

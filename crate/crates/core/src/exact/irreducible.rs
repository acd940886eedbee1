//! Rational roots, small-degree factorisation over Q, resultants.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, Rational, UniPoly};

/// Largest absolute integer value whose divisors the factor search will
/// enumerate.
pub const HEIGHT_BOUND: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    let n = n.abs();
    let v = n
        .to_u64()
        .filter(|&v| v <= HEIGHT_BOUND)
        .ok_or_else(|| AlgebraError::HeightExceeded(n.to_string()))?;
    if v == 0 {
        return Ok(Vec::new());
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = v.sqrt();
    for d in 1..=r {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d != v / d {
                large.push(BigInt::from(v / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

fn eval_int(c: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x + a)
}

/// Distinct rational roots, in increasing order.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rational>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroDivisor);
    }
    let mut c = f.primitive_integer();
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c.first().is_some_and(Zero::is_zero) {
            c.remove(0);
        }
    }
    if c.len() > 1 {
        let ps = positive_divisors(&c[0])?;
        let qs = positive_divisors(c.last().unwrap())?;
        let g = UniPoly::from_bigints(&c);
        let mut seen = std::collections::BTreeSet::new();
        for q in &qs {
            for p in &ps {
                for s in [p.clone(), -p.clone()] {
                    let r = Rational::new(s, q.clone());
                    if seen.insert(r.clone()) && g.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Finds a monic quadratic factor of a primitive integer polynomial of
/// degree 4 or 5 with no rational roots, by interpolation through the
/// values at -1, 0, 1.
fn quadratic_factor(c: &[BigInt]) -> Result<Option<UniPoly>, AlgebraError> {
    let f = UniPoly::from_bigints(c);
    let lc = c.last().unwrap();
    let (vm, v0, v1) = (eval_int(c, -1), eval_int(c, 0), eval_int(c, 1));
    let v2 = eval_int(c, 2);
    let d0 = positive_divisors(&v0)?;
    let d1 = positive_divisors(&v1)?;
    let dm = positive_divisors(&vm)?;
    let signed = |v: &[BigInt]| -> Vec<BigInt> {
        v.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
    };
    let (d1, dm) = (signed(&d1), signed(&dm));
    let two = BigInt::from(2);
    for cc in &d0 {
        for h1 in &d1 {
            for hm in &dm {
                // h(x) = a x^2 + b x + cc with h(1) = h1, h(-1) = hm
                let s = h1 + hm;
                if s.is_odd() {
                    continue;
                }
                let a = &s / &two - cc;
                if a.is_zero() || !(lc % &a).is_zero() {
                    continue;
                }
                let b = (h1 - hm) / &two;
                let h2: BigInt = &a * BigInt::from(4) + &b * &two + cc;
                if h2.is_zero() || !(&v2 % &h2).is_zero() {
                    continue;
                }
                let h = UniPoly::from_bigints(&[cc.clone(), b, a]);
                if f.rem(&h)?.is_zero() {
                    return Ok(Some(h.monic()));
                }
            }
        }
    }
    Ok(None)
}

/// Monic irreducible factors over Q (with multiplicity) of a polynomial of
/// degree at most 5, sorted by degree then coefficients.
pub fn factor_rational(f: &UniPoly) -> Result<Vec<UniPoly>, AlgebraError> {
    let n = f.deg().ok_or(AlgebraError::ZeroDivisor)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 5 {
        return Err(AlgebraError::DegreeUnsupported(n));
    }
    let mut g = f.monic();
    let mut out = Vec::new();
    for r in rational_roots(&g)? {
        let lin = UniPoly::new(vec![-r, Rational::one()]);
        loop {
            let (q, rem) = g.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            out.push(lin.clone());
            g = q;
        }
    }
    match g.deg().unwrap_or(0) {
        0 => {}
        1..=3 => out.push(g),
        _ => match quadratic_factor(&g.primitive_integer())? {
            Some(h) => {
                let (q, _) = g.div_rem(&h)?;
                // both pieces have degree <= 3 and no rational roots
                out.push(h);
                out.push(q.monic());
            }
            None => out.push(g),
        },
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

impl UniPoly {
    /// Irreducibility over Q for degrees 1 through 5.
    pub fn is_irreducible_small(&self) -> Result<bool, AlgebraError> {
        match self.deg() {
            Some(d @ 1..=5) => {
                let factors = factor_rational(self)?;
                Ok(factors.len() == 1 && factors[0].deg() == Some(d))
            }
            Some(d) => Err(AlgebraError::DegreeUnsupported(d)),
            None => Err(AlgebraError::DegreeUnsupported(0)),
        }
    }
}

/// Resultant of two polynomials via the Euclidean recurrence.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Rational {
    let (Some(df), Some(dg)) = (f.deg(), g.deg()) else {
        return Rational::zero();
    };
    if dg == 0 {
        return num_traits::pow(g.coeffs()[0].clone(), df);
    }
    if df == 0 {
        return num_traits::pow(f.coeffs()[0].clone(), dg);
    }
    let r = f.rem(g).expect("g is non-zero");
    let Some(dr) = r.deg() else {
        return Rational::zero();
    };
    let sign = if (df * dg) % 2 == 1 { -Rational::one() } else { Rational::one() };
    sign * num_traits::pow(g.leading_coeff().unwrap().clone(), df - dr) * resultant(g, &r)
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<Rational, AlgebraError> {
    let n = f.deg().filter(|&n| n >= 1).ok_or(AlgebraError::ConstantPolynomial)?;
    let res = resultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * res / f.leading_coeff().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn finds_rational_roots() {
        // (2x - 1)(x + 3)(x) = 2x^3 + 5x^2 - 3x
        assert_eq!(
            rational_roots(&p(&[0, -3, 5, 2])).unwrap(),
            vec![int(-3), int(0), rat(1, 2)]
        );
        assert!(rational_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn irreducibility_small_degrees() {
        assert!(p(&[1, 0, -10, 0, 1]).is_irreducible_small().unwrap());
        assert!(!p(&[4, 0, 0, 0, 1]).is_irreducible_small().unwrap()); // x^4+4 = (x^2+2x+2)(x^2-2x+2)
        assert!(p(&[1, -1, 0, 0, 0, 1]).is_irreducible_small().unwrap());
        // x^5 + x + 1 = (x^2 + x + 1)(x^3 - x^2 + 1)
        assert!(!p(&[1, 1, 0, 0, 0, 1]).is_irreducible_small().unwrap());
        assert!(p(&[1, 20, 0, -10, 0, 1]).is_irreducible_small().unwrap());
        assert!(p(&[-2, 0, 0, 0, 0, 1]).is_irreducible_small().unwrap());
        assert!(!p(&[-1, 0, 1]).is_irreducible_small().unwrap());
        assert!(matches!(
            p(&[1, 0, 0, 0, 0, 0, 1]).is_irreducible_small(),
            Err(AlgebraError::DegreeUnsupported(6))
        ));
    }

    #[test]
    fn factor_quartic_into_quadratics() {
        let f = p(&[4, 0, 0, 0, 1]);
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs, vec![p(&[2, -2, 1]), p(&[2, 2, 1])]);
        let prod = fs.iter().fold(UniPoly::one(), |a, b| &a * b);
        assert_eq!(prod, f);
    }

    #[test]
    fn factor_with_multiplicity() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, 0, 1]);
        assert_eq!(factor_rational(&f).unwrap(), vec![p(&[-1, 1]), p(&[-1, 1]), p(&[1, 0, 1])]);
    }

    #[test]
    fn discriminants() {
        // x^2 + bx + c -> b^2 - 4c
        assert_eq!(discriminant(&p(&[3, 5, 1])).unwrap(), int(13));
        // x^3 - 3x - 1 -> -4(-3)^3 - 27 = 81
        assert_eq!(discriminant(&p(&[-1, -3, 0, 1])).unwrap(), int(81));
        // x^5 - x + 1 -> 5^5 * 1 + 4^4 * (-1)^5 = 2869
        assert_eq!(discriminant(&p(&[1, -1, 0, 0, 0, 1])).unwrap(), int(2869));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])), int(0));
    }
}

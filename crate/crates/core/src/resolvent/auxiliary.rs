use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{Resolvent, ResolventError};
use crate::exact::{rational_to_string, MultiPoly, Rational, UniPoly};
use crate::numeric::{ComplexApprox, Precision};
use crate::perm::symmetric;
use crate::symmetric::{coeffs_to_sigma, symmetric_reduce_all};

/// A polynomial with Gaussian-rational coefficients, stored as `re + i*im`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianPoly {
    pub re: UniPoly,
    pub im: UniPoly,
}

impl GaussianPoly {
    pub fn degree(&self) -> Option<usize> {
        match (self.re.deg(), self.im.deg()) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => Some(a.max(b)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn coeff(&self, k: usize) -> (Rational, Rational) {
        (self.re.coeff(k), self.im.coeff(k))
    }

    pub fn eval(&self, z: &ComplexApprox) -> ComplexApprox {
        let p = z.precision();
        let Some(n) = self.degree() else { return ComplexApprox::zero(p) };
        (0..=n).rev().fold(ComplexApprox::zero(p), |acc, k| {
            let (a, b) = self.coeff(k);
            let c = ComplexApprox::from_rational(&a, p)
                + ComplexApprox::from_rational(&b, p) * ComplexApprox::new(0.0, 1.0, p);
            acc * *z + c
        })
    }
}

impl fmt::Display for GaussianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

/// `q(x) = prod over all n! permutations of (x - V_sigma)`.
#[derive(Clone, Debug, Serialize)]
pub struct AuxiliaryPoly {
    pub source: UniPoly,
    pub resolvent: Resolvent,
    pub q: GaussianPoly,
}

/// Coefficient of `x^k` in `q`, as a pair of polynomials in `s1..sn`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolicCoeff {
    pub power: usize,
    pub re: String,
    pub im: String,
    #[serde(skip)]
    re_poly: MultiPoly,
    #[serde(skip)]
    im_poly: MultiPoly,
}

struct GMulti {
    re: MultiPoly,
    im: MultiPoly,
}

impl GMulti {
    fn mul(&self, o: &GMulti) -> GMulti {
        GMulti {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

/// Expands `q` in the roots and rewrites each coefficient in the elementary
/// symmetric polynomials. Variables `s1..sn` are the `sigma_k` with
/// `p = x^n - s1 x^(n-1) + s2 x^(n-2) - ...`.
pub fn auxiliary_symbolic(v: &Resolvent) -> Result<Vec<SymbolicCoeff>, ResolventError> {
    let n = v.len();
    if !(2..=4).contains(&n) {
        return Err(if n > 4 { ResolventError::AuxiliaryTooLarge } else { ResolventError::DegreeOutOfRange(n) });
    }
    let a = v.gaussian_coeffs().ok_or(ResolventError::NotGaussian)?;
    let arity = n + 1;
    let x = MultiPoly::var(arity, n);
    let mut acc = GMulti { re: MultiPoly::constant(arity, Rational::one()), im: MultiPoly::zero_in(arity) };
    for sigma in symmetric(n).elements() {
        let mut re = x.clone();
        let mut im = MultiPoly::zero_in(arity);
        for (i, ai) in a.iter().enumerate() {
            let r = MultiPoly::var(arity, sigma.apply(i));
            re = &re - &r.scale(&Rational::from_integer(ai.re.clone()));
            im = &im - &r.scale(&Rational::from_integer(ai.im.clone()));
        }
        acc = acc.mul(&GMulti { re, im });
    }
    let split = |p: &MultiPoly| -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero_in(n); n_fact(n) + 1];
        for (e, c) in p.terms() {
            let k = e[n] as usize;
            let t = MultiPoly::monomial(n, e[..n].to_vec(), c.clone());
            out[k] = &out[k] + &t;
        }
        out
    };
    let re_parts = split(&acc.re);
    let im_parts = split(&acc.im);
    let mut all = re_parts.clone();
    all.extend(im_parts.iter().cloned());
    let reduced = symmetric_reduce_all(&all)?;
    let m = n_fact(n) + 1;
    Ok((0..m)
        .map(|k| SymbolicCoeff {
            power: k,
            re: reduced[k].display_with("s"),
            im: reduced[m + k].display_with("s"),
            re_poly: reduced[k].clone(),
            im_poly: reduced[m + k].clone(),
        })
        .collect())
}

fn n_fact(n: usize) -> usize {
    (1..=n).product()
}

/// Exact `q` for a monic `p` of degree 2 to 4 and a Gaussian-integer resolvent.
pub fn auxiliary_exact(p: &UniPoly, v: &Resolvent) -> Result<AuxiliaryPoly, ResolventError> {
    let n = p.deg().unwrap_or(0);
    if n > 4 {
        return Err(ResolventError::AuxiliaryTooLarge);
    }
    if n < 2 {
        return Err(ResolventError::DegreeOutOfRange(n));
    }
    if v.len() != n {
        return Err(ResolventError::ArityMismatch(v.len(), n));
    }
    let c = coeffs_to_sigma(p)?;
    // coefficient c_{n-k} equals (-1)^k sigma_k
    let sigma: Vec<Rational> = c
        .iter()
        .enumerate()
        .map(|(i, ck)| if i % 2 == 0 { -ck.clone() } else { ck.clone() })
        .collect();
    let coeffs = auxiliary_symbolic(v)?;
    let re = UniPoly::new(coeffs.iter().map(|c| c.re_poly.eval_rational(&sigma)).collect());
    let im = UniPoly::new(coeffs.iter().map(|c| c.im_poly.eval_rational(&sigma)).collect());
    Ok(AuxiliaryPoly { source: p.clone(), resolvent: v.clone(), q: GaussianPoly { re, im } })
}

impl AuxiliaryPoly {
    pub fn degree(&self) -> Option<usize> {
        self.q.degree()
    }

    /// Coefficients from the constant term up, as `(re, im)` strings.
    pub fn coeff_strings(&self) -> Vec<(String, String)> {
        let n = self.degree().unwrap_or(0);
        (0..=n)
            .map(|k| {
                let (a, b) = self.q.coeff(k);
                (serde_rational_string(&a), serde_rational_string(&b))
            })
            .collect()
    }

    /// `|q(z)|` for a numeric resolvent value.
    pub fn residual_at(&self, z: &ComplexApprox) -> f64 {
        self.q.eval(&z.at_precision(Precision::Extended)).abs()
    }
}

fn serde_rational_string(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        rational_to_string(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::numeric::find_roots;
    use crate::resolvent::resolvent_values;

    fn s2() -> Resolvent {
        Resolvent::default_for(2).unwrap()
    }

    #[test]
    fn quadratic_symbolic_form() {
        let c = auxiliary_symbolic(&s2()).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].re, "-s1^2 + 4*s2");
        assert_eq!(c[1].re, "0");
        assert_eq!(c[2].re, "1");
        assert!(c.iter().all(|k| k.im == "0"));
    }

    #[test]
    fn quadratic_concrete() {
        let q = auxiliary_exact(&UniPoly::from_ints(&[2, -3, 1]), &s2()).unwrap();
        assert_eq!(q.q.re, UniPoly::from_ints(&[-1, 0, 1]));
        assert!(q.q.is_real());
        // x^2 + b x + c gives x^2 - (b^2 - 4c)
        for (b, c) in [(5, 3), (-7, 2), (0, 1)] {
            let q = auxiliary_exact(&UniPoly::from_ints(&[c, b, 1]), &s2()).unwrap();
            assert_eq!(q.q.re, UniPoly::new(vec![-int(b * b - 4 * c), int(0), int(1)]));
        }
    }

    #[test]
    fn cubic_values_are_roots_of_q() {
        let p = UniPoly::from_ints(&[-1, -3, 0, 1]);
        let v = Resolvent::gaussian(&[(1, 0), (0, 1), (-1, 0)]);
        let q = auxiliary_exact(&p, &v).unwrap();
        assert_eq!(q.degree(), Some(6));
        assert!(!q.q.is_real());
        let roots = find_roots(&p, Precision::Extended).unwrap().roots;
        let vals = resolvent_values(&roots, &v, symmetric(3).elements()).unwrap();
        for z in &vals {
            assert!(q.residual_at(z) < 1e-20, "{}", q.residual_at(z));
        }
        // a shuffled root order gives the same exact coefficients by construction;
        // the numeric values are still roots
        let mut shuffled = roots.clone();
        shuffled.rotate_left(1);
        let vals = resolvent_values(&shuffled, &v, symmetric(3).elements()).unwrap();
        assert!(vals.iter().all(|z| q.residual_at(z) < 1e-20));
    }

    #[test]
    fn limits() {
        let v5 = Resolvent::default_for(5).unwrap();
        let p5 = UniPoly::from_ints(&[1, -1, 0, 0, 0, 1]);
        assert_eq!(auxiliary_exact(&p5, &v5).unwrap_err(), ResolventError::AuxiliaryTooLarge);
        let p3 = UniPoly::from_ints(&[-2, 0, 0, 1]);
        assert_eq!(
            auxiliary_exact(&p3, &Resolvent::default_for(3).unwrap()).unwrap_err(),
            ResolventError::NotGaussian
        );
        assert!(auxiliary_exact(&p3, &s2()).is_err());
    }
}

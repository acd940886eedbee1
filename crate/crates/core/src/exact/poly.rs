use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rational};

/// Degree of a univariate polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// Dense univariate polynomial over Q, coefficients stored low to high.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Integer coefficients, low to high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// Euclidean division: `self = q*g + r` with `deg r < deg g`.
    pub fn div_rem(&self, g: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let dg = g.deg().ok_or(AlgebraError::ZeroDivisor)?;
        let lc_inv = g.coeffs[dg].recip();
        let mut r = self.coeffs.clone();
        let Some(df) = self.deg().filter(|&d| d >= dg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut q = vec![Rational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let c = &r[k + dg] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                r[k + j] -= &c * gj;
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, g: &UniPoly) -> Result<UniPoly, AlgebraError> {
        self.div_rem(g).map(|(_, r)| r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, g: &UniPoly) -> Result<UniPoly, AlgebraError> {
        if self.is_zero() && g.is_zero() {
            return Err(AlgebraError::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// `f / gcd(f, f')`, made monic.
    pub fn squarefree_part(&self) -> Result<UniPoly, AlgebraError> {
        if self.is_constant() {
            return Err(AlgebraError::ConstantPolynomial);
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_constant() && self.gcd(&self.derivative()).is_ok_and(|g| g.is_constant())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as integers, when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Monic integer polynomial with the same splitting field, via
    /// `x -> x / L`. Returns the new polynomial and `L`.
    pub fn to_monic_integer(&self) -> Result<(UniPoly, BigInt), AlgebraError> {
        let n = self.deg().filter(|&d| d >= 1).ok_or(AlgebraError::ConstantPolynomial)?;
        let m = self.monic();
        let l = m.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        // L^n m(y / L) = sum c_k L^(n-k) y^k
        let coeffs = m
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from_integer(num_traits::pow(l.clone(), n - k)))
            .collect();
        Ok((UniPoly::new(coeffs), l))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Writes `c * <mono>` in the usual sparse style; shared by polynomial printers.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rational, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match (mono.is_empty(), a.is_one()) {
            (true, _) => write!(f, "{a}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{a}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Serialized as its display string, e.g. `"x^2 - 2"`.
impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().rev().map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                };
                (c.clone(), mono)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn degree_sentinel_orders_first() {
        assert_eq!(UniPoly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p(&[1, 0, 3]).degree(), Degree::Finite(2));
        assert_eq!(p(&[1, 0, 0, 0]).deg(), Some(0));
    }

    #[test]
    fn division_identity() {
        let f = p(&[1, 0, -10, 0, 1]);
        let g = p(&[-1, 2, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.deg() < g.deg());
        assert_eq!(f.div_rem(&UniPoly::zero()), Err(AlgebraError::ZeroDivisor));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = p(&[2, -3, 0, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[-1, 1]));
        assert_eq!(a.squarefree_part().unwrap(), p(&[-2, 1, 1]));
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), Err(AlgebraError::ZeroGcd));
        assert_eq!(p(&[5]).squarefree_part(), Err(AlgebraError::ConstantPolynomial));
        assert!(!a.is_squarefree());
        assert!(b.is_squarefree());
    }

    #[test]
    fn display_matches_conventional_form() {
        assert_eq!(p(&[1, 0, -10, 0, 1]).to_string(), "x^4 - 10*x^2 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let q = UniPoly::new(vec![rat(34, 5), rat(9, 2), int(0), int(0), int(0), int(1)]);
        assert_eq!(q.to_string(), "x^5 + 9/2*x + 34/5");
    }

    #[test]
    fn eval_compose_derivative() {
        let f = p(&[1, 1, 1]);
        assert_eq!(f.eval(&int(2)), int(7));
        assert_eq!(f.derivative(), p(&[1, 2]));
        assert_eq!(f.compose(&p(&[1, 1])), p(&[3, 3, 1]));
    }

    #[test]
    fn primitive_and_monic_integer() {
        let f = UniPoly::new(vec![rat(-1, 2), rat(3, 4), rat(-3, 2)]);
        let prim: Vec<i64> = f
            .primitive_integer()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(prim, vec![2, -3, 6]);
        let q = UniPoly::new(vec![rat(34, 5), rat(9, 2), int(0), int(0), int(0), int(1)]);
        let (m, l) = q.to_monic_integer().unwrap();
        assert_eq!(l, BigInt::from(10));
        assert!(m.has_integer_coeffs() && m.is_monic());
        assert_eq!(m.coeff(0), int(680_000));
    }
}

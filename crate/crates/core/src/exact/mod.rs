//! Exact arithmetic over the rationals.
//!
//! Everything here is exact: rationals are arbitrary precision, polynomials
//! carry [`Rational`] coefficients, and quadratic towers store coordinates in
//! a fixed power-of-two basis.

mod gaussian;
mod irreducible;
mod multi;
mod poly;
mod tower;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use gaussian::GaussianInteger;
pub use irreducible::{discriminant, factor_rational, rational_roots, resultant, HEIGHT_BOUND};
pub use multi::MultiPoly;
pub use poly::{Degree, UniPoly};
pub use tower::{factor_over_tower, QuadTower, QuadTowerElem, TowerFactorization, TowerPoly};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Errors raised by exact polynomial and tower arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,
    #[error("degree {0} is outside the supported range")]
    DegreeUnsupported(usize),
    #[error("factor search exceeded the height bound ({0})")]
    HeightExceeded(String),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("invalid quadratic tower: {0}")]
    InvalidTower(String),
    #[error("elements belong to different towers")]
    TowerMismatch,
}

/// Formats a rational as `num/den`, always including the denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Nearest-f64 conversion of a rational (saturating to infinity when huge).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    }
}

/// Exact square root of a rational, when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// accepted only if it lies within `tol` of `x`.
pub fn rational_approx(x: f64, max_den: u64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    let mut best = None;
    for _ in 0..64 {
        let a = y.floor();
        let ai = BigInt::from(a as i128);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        let cand = Rational::new(h2.clone(), k2.clone());
        if (rational_to_f64(&cand) - x).abs() <= tol {
            best = Some(cand);
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    best
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{rational_from_str, rational_to_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        rational_from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&rational_to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| {
                    rational_from_str(s)
                        .ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn continued_fraction_snap() {
        assert_eq!(rational_approx(0.3333333333333, 1000, 1e-9), Some(rat(1, 3)));
        assert_eq!(rational_approx(-2.5, 10, 1e-12), Some(rat(-5, 2)));
        assert_eq!(rational_approx(std::f64::consts::PI, 100, 1e-9), None);
    }

    #[test]
    fn rational_strings_round_trip() {
        let r = rat(-7, 3);
        assert_eq!(rational_to_string(&r), "-7/3");
        assert_eq!(rational_from_str("-7/3"), Some(r));
        assert_eq!(rational_from_str("5"), Some(int(5)));
        assert_eq!(rational_from_str("1/0"), None);
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// An element `re + im*i` of Z[i].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussianInteger {
    #[serde(with = "bigint_str")]
    pub re: BigInt,
    #[serde(with = "bigint_str")]
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl From<i64> for GaussianInteger {
    fn from(n: i64) -> Self {
        Self::new(n, 0)
    }
}

impl Add for &GaussianInteger {
    type Output = GaussianInteger;
    fn add(self, o: &GaussianInteger) -> GaussianInteger {
        GaussianInteger { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussianInteger {
    type Output = GaussianInteger;
    fn sub(self, o: &GaussianInteger) -> GaussianInteger {
        GaussianInteger { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussianInteger {
    type Output = GaussianInteger;
    fn mul(self, o: &GaussianInteger) -> GaussianInteger {
        GaussianInteger {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}i", self.re, sign, self.im.abs())
            }
        }
    }
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussianInteger::new(3, -2);
        let b = GaussianInteger::new(1, 4);
        assert_eq!(&a * &b, GaussianInteger::new(11, 10));
        assert_eq!(&a + &b, GaussianInteger::new(4, 2));
        assert_eq!((&a * &a.conj()).re, a.norm());
        assert_eq!(a.to_string(), "3 - 2i");
        assert_eq!(GaussianInteger::i().to_string(), "1i");
    }
}

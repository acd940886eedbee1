//! Certified numerics: complex approximations with error radii and a
//! polynomial root finder.
//!
//! Values are carried in double-double arithmetic. At
//! [`Precision::Standard`] every operation rounds its result back to a
//! single `f64`, so the standard mode behaves like ordinary double precision
//! while sharing the same code path.

mod roots;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

use crate::exact::{GaussianInteger, Rational};

pub use roots::{find_roots, min_separation, roots_f64, RootSet};

/// Working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE double, about 15-16 significant digits.
    Standard,
    /// Double-double, about 31 significant digits.
    Extended,
}

impl Precision {
    /// Relative rounding error charged per arithmetic operation.
    pub fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Standard => f64::EPSILON / 2.0,
            Precision::Extended => 1e-31,
        }
    }

    fn round(self, x: TwoFloat) -> TwoFloat {
        match self {
            Precision::Standard => TwoFloat::from(x.hi()),
            Precision::Extended => x,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("root iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize, best: Vec<ComplexApprox> },
}

pub(crate) fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// Double-double value nearest to a rational (to about 106 bits).
pub(crate) fn dd_from_rational(r: &Rational) -> TwoFloat {
    let hi = crate::exact::rational_to_f64(r);
    if !hi.is_finite() {
        return dd(hi);
    }
    let rest = r - Rational::from_float(hi).expect("finite");
    let lo = crate::exact::rational_to_f64(&rest);
    TwoFloat::new_add(hi, lo)
}

/// Double-double complex number without error tracking.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Cdd {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: TwoFloat::from_f64(0.0), im: TwoFloat::from_f64(0.0) };
    pub const ONE: Cdd = Cdd { re: TwoFloat::from_f64(1.0), im: TwoFloat::from_f64(0.0) };

    pub fn new(re: TwoFloat, im: TwoFloat) -> Self {
        Self { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        Self::new(dd(z.re), dd(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi(), self.im.hi())
    }

    pub fn norm_sqr(self) -> TwoFloat {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        let n = self.norm_sqr();
        if n.hi() == 0.0 {
            0.0
        } else {
            n.sqrt().hi()
        }
    }

    pub fn round(self, p: Precision) -> Self {
        Self::new(p.round(self.re), p.round(self.im))
    }

    pub fn recip(self) -> Self {
        let n = self.norm_sqr();
        Self::new(self.re / n, -self.im / n)
    }

    pub fn scale(self, s: TwoFloat) -> Self {
        Self::new(self.re * s, self.im * s)
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        self * o.recip()
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd::new(-self.re, -self.im)
    }
}

/// A complex number known to lie within `err` of its center.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    center: Cdd,
    err: f64,
    precision: Precision,
}

impl ComplexApprox {
    pub(crate) fn from_cdd(center: Cdd, err: f64, precision: Precision) -> Self {
        let c = center.round(precision);
        let rounding = if precision == Precision::Standard {
            (c - center).abs()
        } else {
            0.0
        };
        Self { center: c, err: err + rounding, precision }
    }

    pub(crate) fn center(&self) -> Cdd {
        self.center
    }

    /// Exact value `re + i*im`.
    pub fn new(re: f64, im: f64, precision: Precision) -> Self {
        Self { center: Cdd::new(dd(re), dd(im)), err: 0.0, precision }
    }

    pub fn with_err(re: f64, im: f64, err: f64, precision: Precision) -> Self {
        Self { center: Cdd::new(dd(re), dd(im)), err, precision }
    }

    pub fn zero(precision: Precision) -> Self {
        Self::new(0.0, 0.0, precision)
    }

    pub fn one(precision: Precision) -> Self {
        Self::new(1.0, 0.0, precision)
    }

    pub fn from_rational(r: &Rational, precision: Precision) -> Self {
        let v = dd_from_rational(r);
        let u = precision.unit_roundoff();
        Self::from_cdd(Cdd::new(v, dd(0.0)), v.hi().abs() * u, precision)
    }

    pub fn from_gaussian(g: &GaussianInteger, precision: Precision) -> Self {
        let re = Self::from_rational(&Rational::from_integer(g.re.clone()), precision);
        let im = Self::from_rational(&Rational::from_integer(g.im.clone()), precision);
        Self::from_cdd(
            Cdd::new(re.center.re, im.center.re),
            re.err + im.err,
            precision,
        )
    }

    pub fn re(&self) -> f64 {
        self.center.re.hi() + self.center.re.lo()
    }

    pub fn im(&self) -> f64 {
        self.center.im.hi() + self.center.im.lo()
    }

    /// Real part as a double-double.
    pub fn re_dd(&self) -> TwoFloat {
        self.center.re
    }

    pub fn im_dd(&self) -> TwoFloat {
        self.center.im
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re(), self.im())
    }

    /// Modulus of the center.
    pub fn abs(&self) -> f64 {
        self.center.abs()
    }

    /// Distance between centers.
    pub fn dist(&self, o: &Self) -> f64 {
        (self.center - o.center).abs()
    }

    /// Widens the error radius.
    pub fn inflate(mut self, extra: f64) -> Self {
        self.err += extra;
        self
    }

    pub fn at_precision(self, precision: Precision) -> Self {
        Self::from_cdd(self.center, self.err, precision)
    }

    pub fn conj(&self) -> Self {
        Self { center: Cdd::new(self.center.re, -self.center.im), ..*self }
    }

    pub fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one(self.precision);
        for _ in 0..k {
            acc = acc * *self;
        }
        acc
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        *self * Self::from_rational(r, self.precision)
    }

    fn join(a: Precision, b: Precision) -> Precision {
        a.min(b)
    }
}

impl Add for ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, o: Self) -> Self {
        let p = Self::join(self.precision, o.precision);
        let u = p.unit_roundoff();
        let err = self.err + o.err + u * (self.abs() + o.abs());
        Self::from_cdd(self.center + o.center, err, p)
    }
}

impl Sub for ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> Self {
        Self { center: -self.center, ..self }
    }
}

impl Mul for ComplexApprox {
    type Output = ComplexApprox;
    fn mul(self, o: Self) -> Self {
        let p = Self::join(self.precision, o.precision);
        let u = p.unit_roundoff();
        let (a, b) = (self.abs(), o.abs());
        let err = a * o.err + b * self.err + self.err * o.err + 4.0 * u * a * b;
        Self::from_cdd(self.center * o.center, err, p)
    }
}

impl Div for ComplexApprox {
    type Output = ComplexApprox;
    fn div(self, o: Self) -> Self {
        let p = Self::join(self.precision, o.precision);
        let u = p.unit_roundoff();
        let q = self.center / o.center;
        let b = o.abs();
        let err = if b > o.err {
            (self.err + q.abs() * o.err) / (b - o.err) + 8.0 * u * q.abs()
        } else {
            f64::INFINITY
        };
        Self::from_cdd(q, err, p)
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        if im >= 0.0 {
            write!(f, "{re:.15} + {im:.15}i")
        } else {
            write!(f, "{re:.15} - {:.15}i", -im)
        }
    }
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
    err: f64,
}

impl Serialize for ComplexApprox {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexJson { re: self.re(), im: self.im(), err: self.err }.serialize(s)
    }
}

/// `exp(2 pi i power / order)`.
pub fn unit_root(order: u32, power: i64, precision: Precision) -> ComplexApprox {
    assert!(order > 0, "root of unity of order 0");
    let k = power.rem_euclid(order as i64);
    if k == 0 {
        return ComplexApprox::one(precision);
    }
    if 2 * k == order as i64 {
        return ComplexApprox::new(-1.0, 0.0, precision);
    }
    if 4 * k == order as i64 {
        return ComplexApprox::new(0.0, 1.0, precision);
    }
    if 4 * k == 3 * order as i64 {
        return ComplexApprox::new(0.0, -1.0, precision);
    }
    let theta = std::f64::consts::TAU * k as f64 / order as f64;
    let mut z = Cdd::new(dd(theta.cos()), dd(theta.sin()));
    // Newton on z^n - 1 keeps the nearby root, which is the one we want.
    let n = order as i32;
    let mut step = f64::INFINITY;
    for _ in 0..3 {
        let zn1 = cpow(z, n - 1);
        let f = zn1 * z - Cdd::ONE;
        let df = zn1.scale(dd(n as f64));
        let d = f / df;
        step = d.abs();
        z = z - d;
    }
    let err = 4.0 * step + 8.0 * Precision::Extended.unit_roundoff();
    ComplexApprox::from_cdd(z, err, precision)
}

pub(crate) fn cpow(z: Cdd, n: i32) -> Cdd {
    let mut acc = Cdd::ONE;
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// Distance from `z` to the nearest Gaussian integer.
pub fn gaussian_deviation(z: &ComplexApprox) -> (GaussianInteger, f64) {
    let re = z.re_dd().round();
    let im = z.im_dd().round();
    let dev = Cdd::new(z.re_dd() - re, z.im_dd() - im).abs();
    let g = GaussianInteger::new(dd_to_bigint(re), dd_to_bigint(im));
    (g, dev)
}

fn dd_to_bigint(x: TwoFloat) -> num_bigint::BigInt {
    let hi = Rational::from_float(x.hi()).unwrap_or_else(num_traits::Zero::zero);
    let lo = Rational::from_float(x.lo()).unwrap_or_else(num_traits::Zero::zero);
    (hi + lo).round().to_integer()
}

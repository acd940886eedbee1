use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::RadicalError;
use crate::exact::{rational_to_string, serde_rational, Rational};
use crate::numeric::{cpow, dd, unit_root, Cdd, ComplexApprox, Precision};

/// One node of a radical expression tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RadicalNode {
    Rational {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// `exp(2 pi i power / order)`.
    UnitRoot { order: u32, power: u32 },
    Sum { terms: Vec<RadicalExpr> },
    Product { factors: Vec<RadicalExpr> },
    Neg { arg: RadicalExpr },
    /// The principal `index`-th root of `radicand` times `zeta_index^branch`.
    Root { index: u32, branch: u32, radicand: RadicalExpr },
    /// Integer power; negative exponents are reciprocals.
    Pow { base: RadicalExpr, exponent: i32 },
}

/// Shared, immutable radical expression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RadicalExpr(Arc<RadicalNode>);

pub(crate) fn is_prime(k: u32) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

/// Prime factors with multiplicity, ascending.
pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact `k`-th root of a non-negative rational, if there is one.
fn exact_root(r: &Rational, k: u32) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let c = n.nth_root(k);
        (num_traits::pow(c.clone(), k as usize) == *n).then_some(c)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

impl RadicalExpr {
    fn node(n: RadicalNode) -> Self {
        RadicalExpr(Arc::new(n))
    }

    pub fn kind(&self) -> &RadicalNode {
        &self.0
    }

    pub fn rational(value: Rational) -> Self {
        Self::node(RadicalNode::Rational { value })
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn unit_root(order: u32, power: i64) -> Self {
        assert!(order > 0, "root of unity of order 0");
        let power = power.rem_euclid(order as i64) as u32;
        match (order, power) {
            (_, 0) => Self::one(),
            (o, p) if 2 * p == o => Self::int(-1),
            (o, p) => Self::node(RadicalNode::UnitRoot { order: o, power: p }),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self.kind() {
            RadicalNode::Rational { value } => Some(value),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }

    /// Sum with rational terms folded together.
    pub fn sum(terms: impl IntoIterator<Item = RadicalExpr>) -> Self {
        let mut constant = Rational::zero();
        let mut rest = Vec::new();
        for t in terms {
            match t.kind() {
                RadicalNode::Rational { value } => constant += value,
                RadicalNode::Sum { terms } => rest.extend(terms.iter().cloned()),
                _ => rest.push(t),
            }
        }
        if !constant.is_zero() {
            rest.push(Self::rational(constant));
        }
        match rest.len() {
            0 => Self::zero(),
            1 => rest.pop().unwrap(),
            _ => Self::node(RadicalNode::Sum { terms: rest }),
        }
    }

    /// Product with rational factors folded together.
    pub fn product(factors: impl IntoIterator<Item = RadicalExpr>) -> Self {
        let mut constant = Rational::one();
        let mut rest = Vec::new();
        for f in factors {
            match f.kind() {
                RadicalNode::Rational { value } => constant *= value,
                _ => rest.push(f),
            }
        }
        if constant.is_zero() {
            return Self::zero();
        }
        if rest.is_empty() {
            return Self::rational(constant);
        }
        if constant == -Rational::one() {
            let inner = Self::product(rest);
            return -inner;
        }
        if !constant.is_one() {
            rest.insert(0, Self::rational(constant));
        }
        if rest.len() == 1 {
            return rest.pop().unwrap();
        }
        Self::node(RadicalNode::Product { factors: rest })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::product([Self::rational(r.clone()), self.clone()])
    }

    /// `radicand^(1/index)` on the given branch; `index` must be prime.
    pub fn root(index: u32, branch: u32, radicand: RadicalExpr) -> Result<Self, RadicalError> {
        if !is_prime(index) {
            return Err(RadicalError::NotPrimeIndex(index));
        }
        if branch >= index {
            return Err(RadicalError::BranchOutOfRange { index, branch });
        }
        if radicand.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(r) = radicand.as_rational().and_then(|r| exact_root(r, index)) {
            return Ok(Self::product([Self::rational(r), Self::unit_root(index, branch as i64)]));
        }
        Ok(Self::node(RadicalNode::Root { index, branch, radicand }))
    }

    pub fn sqrt(radicand: RadicalExpr, branch: u32) -> Result<Self, RadicalError> {
        Self::root(2, branch, radicand)
    }

    pub fn pow(&self, exponent: i32) -> Self {
        match (exponent, self.as_rational()) {
            (0, _) => Self::one(),
            (1, _) => self.clone(),
            (e, Some(r)) if !r.is_zero() || e > 0 => Self::rational(num_traits::pow::Pow::pow(r, e)),
            _ => Self::node(RadicalNode::Pow { base: self.clone(), exponent }),
        }
    }

    /// Number of distinct nodes in the tree.
    pub fn size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&e.0)) {
                continue;
            }
            stack.extend(e.children().cloned());
        }
        seen.len()
    }

    fn children(&self) -> Box<dyn Iterator<Item = &RadicalExpr> + '_> {
        match self.kind() {
            RadicalNode::Rational { .. } | RadicalNode::UnitRoot { .. } => Box::new(std::iter::empty()),
            RadicalNode::Sum { terms } => Box::new(terms.iter()),
            RadicalNode::Product { factors } => Box::new(factors.iter()),
            RadicalNode::Neg { arg } => Box::new(std::iter::once(arg)),
            RadicalNode::Root { radicand, .. } => Box::new(std::iter::once(radicand)),
            RadicalNode::Pow { base, .. } => Box::new(std::iter::once(base)),
        }
    }

    /// Every root node's index, for checking which radicals an expression uses.
    pub fn root_indices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&e.0)) {
                continue;
            }
            if let RadicalNode::Root { index, .. } = e.kind() {
                out.push(*index);
            }
            stack.extend(e.children().cloned());
        }
        out
    }

    /// Same tree with the branch of the first root node found (pre-order)
    /// whose radicand equals `target` replaced.
    pub fn with_branch(&self, target: &RadicalExpr, branch: u32) -> Result<Self, RadicalError> {
        Ok(match self.kind() {
            RadicalNode::Root { index, radicand, .. } if radicand == target => {
                Self::root(*index, branch, radicand.clone())?
            }
            RadicalNode::Root { index, branch: b, radicand } => {
                Self::node(RadicalNode::Root { index: *index, branch: *b, radicand: radicand.with_branch(target, branch)? })
            }
            RadicalNode::Sum { terms } => Self::node(RadicalNode::Sum {
                terms: terms.iter().map(|t| t.with_branch(target, branch)).collect::<Result<_, _>>()?,
            }),
            RadicalNode::Product { factors } => Self::node(RadicalNode::Product {
                factors: factors.iter().map(|t| t.with_branch(target, branch)).collect::<Result<_, _>>()?,
            }),
            RadicalNode::Neg { arg } => Self::node(RadicalNode::Neg { arg: arg.with_branch(target, branch)? }),
            RadicalNode::Pow { base, exponent } => {
                Self::node(RadicalNode::Pow { base: base.with_branch(target, branch)?, exponent: *exponent })
            }
            _ => self.clone(),
        })
    }
}

impl From<Rational> for RadicalExpr {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add for RadicalExpr {
    type Output = RadicalExpr;
    fn add(self, o: Self) -> Self {
        Self::sum([self, o])
    }
}

impl Sub for RadicalExpr {
    type Output = RadicalExpr;
    fn sub(self, o: Self) -> Self {
        Self::sum([self, -o])
    }
}

impl Mul for RadicalExpr {
    type Output = RadicalExpr;
    fn mul(self, o: Self) -> Self {
        Self::product([self, o])
    }
}

impl Neg for RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> Self {
        match self.kind() {
            RadicalNode::Rational { value } => Self::rational(-value.clone()),
            RadicalNode::Neg { arg } => arg.clone(),
            _ => Self::node(RadicalNode::Neg { arg: self }),
        }
    }
}

/// Evaluates expressions, sharing work across common subtrees.
pub struct Evaluator {
    precision: Precision,
    memo: HashMap<*const RadicalNode, ComplexApprox>,
    // keeps memo keys alive
    held: Vec<RadicalExpr>,
}

impl Evaluator {
    pub fn new(precision: Precision) -> Self {
        Self { precision, memo: HashMap::new(), held: Vec::new() }
    }

    pub fn eval(&mut self, e: &RadicalExpr) -> ComplexApprox {
        let key = Arc::as_ptr(&e.0);
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let p = self.precision;
        let v = match e.kind() {
            RadicalNode::Rational { value } => ComplexApprox::from_rational(value, p),
            RadicalNode::UnitRoot { order, power } => unit_root(*order, *power as i64, p),
            RadicalNode::Sum { terms } => {
                terms.iter().fold(ComplexApprox::zero(p), |acc, t| acc + self.eval(t))
            }
            RadicalNode::Product { factors } => {
                factors.iter().fold(ComplexApprox::one(p), |acc, t| acc * self.eval(t))
            }
            RadicalNode::Neg { arg } => -self.eval(arg),
            RadicalNode::Root { index, branch, radicand } => {
                let a = self.eval(radicand);
                principal_root(&a, *index) * unit_root(*index, *branch as i64, p)
            }
            RadicalNode::Pow { base, exponent } => {
                let b = self.eval(base);
                let m = b.powu(exponent.unsigned_abs());
                if *exponent < 0 {
                    ComplexApprox::one(p) / m
                } else {
                    m
                }
            }
        };
        self.memo.insert(key, v);
        self.held.push(e.clone());
        v
    }
}

/// Numeric value of `e`, honoring each root node's branch.
pub fn eval_radical(e: &RadicalExpr, precision: Precision) -> ComplexApprox {
    Evaluator::new(precision).eval(e)
}

/// Principal `k`-th root: argument in `(-pi/k, pi/k]`. A radicand whose
/// imaginary part is within its error of zero counts as real, so negative
/// reals get argument `pi` regardless of rounding.
pub(crate) fn principal_root(a: &ComplexApprox, k: u32) -> ComplexApprox {
    let p = a.precision();
    let r = a.abs();
    if r <= a.err() || r == 0.0 {
        let bound = (r + a.err()).powf(1.0 / k as f64);
        return ComplexApprox::with_err(0.0, 0.0, bound, p);
    }
    let im = if a.im().abs() <= a.err() && a.re() < 0.0 { 0.0 } else { a.im() };
    let seed = Complex64::new(a.re(), im).powf(1.0 / k as f64);
    let target = Cdd::new(a.re_dd(), if im == 0.0 { dd(0.0) } else { a.im_dd() });
    let mut z = Cdd::from_c64(seed);
    let mut step = f64::INFINITY;
    for _ in 0..3 {
        let zk1 = cpow(z, k as i32 - 1);
        let f = zk1 * z - target;
        let d = f / zk1.scale(dd(k as f64));
        step = d.abs();
        z = z - d;
    }
    let y = z.abs();
    // |d(a^(1/k))| <= |a|^(1/k - 1) / k * |da| while the disc stays clear of 0
    let prop = if a.err() < r / 2.0 { 2.0 * y / (k as f64 * r) * a.err() } else { y };
    let err = prop + 4.0 * step + 8.0 * y * p.unit_roundoff();
    ComplexApprox::from_cdd(z, err, p)
}

/// Builds an `n`-th root of `radicand` as nested prime roots, choosing each
/// branch so the result lands nearest `target`.
pub fn nth_root_near(
    n: u32,
    radicand: RadicalExpr,
    target: Complex64,
) -> Result<RadicalExpr, RadicalError> {
    let mut e = radicand;
    let mut rem = n;
    for q in prime_factors(n) {
        rem /= q;
        let goal = target.powu(rem);
        let mut best = (f64::INFINITY, None);
        for b in 0..q {
            let cand = RadicalExpr::root(q, b, e.clone())?;
            let d = (eval_radical(&cand, Precision::Extended).to_c64() - goal).norm();
            if d < best.0 {
                best = (d, Some(cand));
            }
        }
        e = best.1.expect("a prime has at least two branches");
    }
    Ok(e)
}

fn needs_parens_in_product(e: &RadicalExpr) -> bool {
    match e.kind() {
        RadicalNode::Sum { .. } | RadicalNode::Neg { .. } => true,
        RadicalNode::Rational { value } => value.is_negative() || !value.is_integer(),
        _ => false,
    }
}

impl RadicalExpr {
    /// Prefix form: `(+ a b)`, `(* a b)`, `(- a)`, `(root k branch a)`,
    /// `(pow a e)`, `(zeta n k)`; rationals print as `n` or `n/d`.
    pub fn to_prefix(&self) -> String {
        let mut out = String::new();
        self.write_prefix(&mut out);
        out
    }

    fn write_prefix(&self, out: &mut String) {
        let list = |out: &mut String, head: &str, args: &[RadicalExpr]| {
            out.push('(');
            out.push_str(head);
            for a in args {
                out.push(' ');
                a.write_prefix(out);
            }
            out.push(')');
        };
        match self.kind() {
            RadicalNode::Rational { value } if value.is_integer() => out.push_str(&value.numer().to_string()),
            RadicalNode::Rational { value } => out.push_str(&rational_to_string(value)),
            RadicalNode::UnitRoot { order, power } => out.push_str(&format!("(zeta {order} {power})")),
            RadicalNode::Sum { terms } => list(out, "+", terms),
            RadicalNode::Product { factors } => list(out, "*", factors),
            RadicalNode::Neg { arg } => list(out, "-", std::slice::from_ref(arg)),
            RadicalNode::Root { index, branch, radicand } => {
                list(out, &format!("root {index} {branch}"), std::slice::from_ref(radicand))
            }
            RadicalNode::Pow { base, exponent } => {
                out.push_str("(pow ");
                base.write_prefix(out);
                out.push_str(&format!(" {exponent})"));
            }
        }
    }
}

impl fmt::Display for RadicalExpr {
    /// Roots print as `sqrt(..)`, `cbrt(..)` or `rootK(..)`; a non-principal
    /// branch `b` is shown as `sqrt[b](..)`. `zetaN^k` is `exp(2 pi i k / N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RadicalNode::Rational { value } => f.write_str(&rational_to_string(value).replace("/1", "")),
            RadicalNode::UnitRoot { order, power: 1 } => write!(f, "zeta{order}"),
            RadicalNode::UnitRoot { order, power } => write!(f, "zeta{order}^{power}"),
            RadicalNode::Sum { terms } => {
                for (i, t) in terms.iter().enumerate() {
                    match (i, t.kind()) {
                        (0, _) => write!(f, "{t}")?,
                        (_, RadicalNode::Neg { arg }) => write!(f, " - {arg}")?,
                        (_, RadicalNode::Rational { value }) if value.is_negative() => {
                            write!(f, " - {}", RadicalExpr::rational(-value.clone()))?
                        }
                        _ => write!(f, " + {t}")?,
                    }
                }
                Ok(())
            }
            RadicalNode::Product { factors } => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if needs_parens_in_product(t) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            RadicalNode::Neg { arg } => match arg.kind() {
                RadicalNode::Sum { .. } => write!(f, "-({arg})"),
                _ => write!(f, "-{arg}"),
            },
            RadicalNode::Root { index, branch, radicand } => {
                let name = match index {
                    2 => "sqrt".to_string(),
                    3 => "cbrt".to_string(),
                    k => format!("root{k}"),
                };
                if *branch == 0 {
                    write!(f, "{name}({radicand})")
                } else {
                    write!(f, "{name}[{branch}]({radicand})")
                }
            }
            RadicalNode::Pow { base, exponent } => write!(f, "({base})^({exponent})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ev(e: &RadicalExpr) -> ComplexApprox {
        eval_radical(e, Precision::Extended)
    }

    #[test]
    fn literals_and_branches() {
        assert_eq!(ev(&RadicalExpr::rational(rat(3, 2))).re(), 1.5);
        let two = RadicalExpr::int(2);
        let s0 = RadicalExpr::sqrt(two.clone(), 0).unwrap();
        let s1 = RadicalExpr::sqrt(two.clone(), 1).unwrap();
        assert!((ev(&s0).re() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((ev(&s1).re() + std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(ev(&s0).err() < 1e-28);
        assert_eq!(format!("{s1}"), "sqrt[1](2)");
    }

    #[test]
    fn index_must_be_prime() {
        assert_eq!(RadicalExpr::root(4, 0, RadicalExpr::int(2)), Err(RadicalError::NotPrimeIndex(4)));
        assert!(matches!(RadicalExpr::root(3, 3, RadicalExpr::int(2)), Err(RadicalError::BranchOutOfRange { .. })));
    }

    #[test]
    fn negative_real_radicands_use_argument_pi() {
        let c = RadicalExpr::root(3, 0, RadicalExpr::int(-2)).unwrap();
        let v = ev(&c);
        let expect = Complex64::from_polar(2f64.cbrt(), std::f64::consts::PI / 3.0);
        assert!((v.to_c64() - expect).norm() < 1e-15);
        // each branch cubes back to the radicand
        for b in 0..3 {
            let e = RadicalExpr::root(3, b, RadicalExpr::int(-2)).unwrap();
            assert!(ev(&e).powu(3).dist(&ComplexApprox::from_rational(&int(-2), Precision::Extended)) < 1e-28);
        }
    }

    #[test]
    fn folding() {
        assert_eq!(RadicalExpr::root(2, 1, RadicalExpr::int(4)).unwrap(), RadicalExpr::int(-2));
        assert_eq!(RadicalExpr::root(3, 0, RadicalExpr::rational(rat(8, 27))).unwrap(), RadicalExpr::rational(rat(2, 3)));
        let s = RadicalExpr::sum([RadicalExpr::int(1), RadicalExpr::int(2)]);
        assert_eq!(s, RadicalExpr::int(3));
        let p = RadicalExpr::product([RadicalExpr::int(0), RadicalExpr::sqrt(RadicalExpr::int(2), 0).unwrap()]);
        assert!(p.is_zero());
        assert_eq!(RadicalExpr::int(2).pow(-1), RadicalExpr::rational(rat(1, 2)));
    }

    #[test]
    fn nested_roots_near_target() {
        // a sixteenth root of 2 reached through four square roots
        let target = Complex64::from_polar(2f64.powf(1.0 / 16.0), 3.0 * std::f64::consts::TAU / 16.0);
        let e = nth_root_near(16, RadicalExpr::int(2), target).unwrap();
        assert_eq!(e.root_indices(), vec![2, 2, 2, 2]);
        assert!((ev(&e).to_c64() - target).norm() < 1e-14);
    }

    #[test]
    fn prefix_form() {
        let e = RadicalExpr::rational(rat(1, 2)) * (RadicalExpr::int(1) + RadicalExpr::sqrt(RadicalExpr::int(5), 0).unwrap());
        assert_eq!(e.to_prefix(), "(* 1/2 (+ (root 2 0 5) 1))");
        let c = RadicalExpr::root(3, 2, RadicalExpr::int(-2)).unwrap();
        assert_eq!((-c).to_prefix(), "(- (root 3 2 -2))");
    }

    #[test]
    fn shared_subtrees_evaluate_once() {
        let s = RadicalExpr::sqrt(RadicalExpr::int(3), 0).unwrap();
        let mut e = s.clone();
        for _ in 0..40 {
            e = RadicalExpr::product([e.clone(), e.clone()]);
            e = RadicalExpr::root(2, 0, e).unwrap();
        }
        assert!(e.size() < 100);
        assert!((ev(&e).re() - 3f64.sqrt()).abs() < 1e-12);
    }
}

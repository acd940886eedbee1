use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::write_terms;
use super::Rational;

/// Sparse polynomial over Q in `arity` variables.
///
/// Terms map exponent vectors (length `arity`) to non-zero coefficients.
/// Binary operations accept operands of different arity and produce the
/// larger one, treating missing variables as absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero_in(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(arity, vec![0; arity], c)
    }

    /// The variable with 0-based index `i`.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(arity, e, Rational::one())
    }

    pub fn monomial(arity: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), arity, "exponent vector length must equal arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { arity, terms }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero_in(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length must equal arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.arity])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Re-embeds in `arity` variables. Shrinking is allowed only when the
    /// dropped variables do not occur.
    pub fn with_arity(&self, arity: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                if arity < self.arity {
                    assert!(e[arity..].iter().all(|&x| x == 0), "dropped variable occurs");
                }
                e2.resize(arity, 0);
                (e2, c.clone())
            })
            .collect();
        Self { arity, terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.arity, Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0; self.arity];
                for (i, &x) in e.iter().enumerate() {
                    e2[perm[i]] = x;
                }
                (e2, c.clone())
            })
            .collect();
        Self { arity: self.arity, terms }
    }

    /// Sets variable `i` to zero (arity unchanged).
    pub fn set_var_zero(&self, i: usize) -> Self {
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division by the product of all variables, if every term is
    /// divisible by it.
    pub fn divide_by_all_vars(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.contains(&0) {
                return None;
            }
            terms.insert(e.iter().map(|x| x - 1).collect(), c.clone());
        }
        Some(Self { arity: self.arity, terms })
    }

    /// Invariance under a transposition and a full cycle of the variables,
    /// which together generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        let n = self.arity;
        if n < 2 {
            return true;
        }
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        &self.permute_vars(&swap) == self && &self.permute_vars(&cycle) == self
    }

    /// Evaluates in any ring, mapping coefficients through `lift`.
    pub fn eval_with<T>(&self, vals: &[T], lift: impl Fn(&Rational) -> T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + Add<Output = T>,
    {
        assert!(vals.len() >= self.arity, "too few values");
        let mut powers: Vec<Vec<T>> = vals[..self.arity].iter().map(|v| vec![T::one(), v.clone()]).collect();
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= x as usize {
                    let next = pw.last().unwrap().clone() * pw[1].clone();
                    pw.push(next);
                }
                t = t * pw[x as usize].clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_rational(&self, vals: &[Rational]) -> Rational {
        self.eval_with(vals, Rational::clone)
    }

    /// Substitutes `polys[i]` for variable `i`.
    pub fn substitute(&self, polys: &[MultiPoly]) -> MultiPoly {
        let target = polys.iter().map(MultiPoly::arity).max().unwrap_or(0);
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut acc = MultiPoly::zero_in(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, x))
                    .or_insert_with(|| polys[i].pow(x).with_arity(target))
                    .clone();
                t = &t * &pw;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn grlex_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Renders with variables named `{prefix}1 .. {prefix}n`.
    pub fn display_with(&self, prefix: &str) -> String {
        struct D<'a>(&'a MultiPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let terms = self.0.grlex_terms().into_iter().map(|(e, c)| {
                    let mono: Vec<String> = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x > 0)
                        .map(|(i, &x)| {
                            if x == 1 {
                                format!("{}{}", self.1, i + 1)
                            } else {
                                format!("{}{}^{}", self.1, i + 1, x)
                            }
                        })
                        .collect();
                    (c.clone(), mono.join("*"))
                });
                write_terms(f, terms)
            }
        }
        D(self, prefix).to_string()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("r"))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let n = self.arity.max(o.arity);
        let mut out = if self.arity == n { self.clone() } else { self.with_arity(n) };
        for (e, c) in &o.terms {
            let mut e2 = e.clone();
            e2.resize(n, 0);
            out.add_term(e2, c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let n = self.arity.max(o.arity);
        let mut out = MultiPoly::zero_in(n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(0, Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn r(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn ring_operations() {
        let x = r(2, 0);
        let y = r(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.display_with("r"), "r1^2 + 2*r1*r2 + r2^2");
        assert!((&sq - &sq).is_zero());
        assert_eq!((&x * &y).divide_by_all_vars().unwrap(), MultiPoly::constant(2, int(1)));
        assert!(x.divide_by_all_vars().is_none());
    }

    #[test]
    fn mixed_arity_combines_to_larger() {
        let a = MultiPoly::var(1, 0);
        let b = MultiPoly::var(3, 2);
        let c = &a + &b;
        assert_eq!(c.arity(), 3);
        assert_eq!(c.to_string(), "r1 + r3");
        assert_eq!((MultiPoly::one() + a.clone()).arity(), 1);
    }

    #[test]
    fn symmetry_detection() {
        let n = 3;
        let e2 = &(&(&r(n, 0) * &r(n, 1)) + &(&r(n, 0) * &r(n, 2))) + &(&r(n, 1) * &r(n, 2));
        assert!(e2.is_symmetric());
        assert!(!(&r(n, 0) * &r(n, 1)).is_symmetric());
        // invariant under the cycle but not the transposition
        let c = &(&(&r(n, 0).pow(2) * &r(n, 1)) + &(&r(n, 1).pow(2) * &r(n, 2))) + &(&r(n, 2).pow(2) * &r(n, 0));
        assert!(!c.is_symmetric());
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = &r(2, 0).pow(2) - &r(2, 1);
        let g = f.substitute(&[&r(1, 0) + &MultiPoly::constant(1, int(1)), r(1, 0)]);
        assert_eq!(g.to_string(), "r1^2 + r1 + 1");
        assert_eq!(f.eval_rational(&[int(3), int(4)]), int(5));
        assert_eq!(f.set_var_zero(0), -&r(2, 1));
    }
}

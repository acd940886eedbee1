//! Symmetric polynomials.
//!
//! Variables are `r1..rn`; the elementary symmetric polynomials are
//! `s1 = r1 + ... + rn`, ..., `sn = r1 * ... * rn`. A monic polynomial is
//! associated with its coefficient vector `[c_{n-1}, ..., c_0]`, which equals
//! `(s1, ..., sn)` evaluated at the negated roots.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{MultiPoly, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("index k = {k} out of range for n = {n}")]
    OutOfRange { n: usize, k: usize },
    #[error("input polynomial is not symmetric")]
    NotSymmetric,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("expected at least one value")]
    Empty,
}

/// Commutative ring operations used by the sigma/tau recursion.
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

/// The `k`-th elementary symmetric polynomial in `n` variables.
pub fn elementary_symmetric(n: usize, k: usize) -> Result<MultiPoly, SymmetricError> {
    if k > n {
        return Err(SymmetricError::OutOfRange { n, k });
    }
    let mut terms = Vec::new();
    let mut pick = vec![0u32; n];
    fn rec(i: usize, left: usize, pick: &mut Vec<u32>, terms: &mut Vec<(Vec<u32>, Rational)>) {
        let n = pick.len();
        if left == 0 {
            terms.push((pick.clone(), Rational::one()));
            return;
        }
        if n - i < left {
            return;
        }
        pick[i] = 1;
        rec(i + 1, left - 1, pick, terms);
        pick[i] = 0;
        rec(i + 1, left, pick, terms);
    }
    rec(0, k, &mut pick, &mut terms);
    Ok(MultiPoly::from_terms(n, terms))
}

/// Builds `s1..sn` of `n` values from `t1..t(n-1)` of the first `n - 1`
/// values and the extra value `r`:
/// `s1 = t1 + r`, `sk = tk + r t(k-1)`, `sn = r t(n-1)`.
pub fn sigma_from_tau<T: Ring>(tau: &[T], r: &T) -> Vec<T> {
    let n = tau.len() + 1;
    let tau_at = |k: usize| -> T {
        match k {
            0 => T::one(),
            k if k < n => tau[k - 1].clone(),
            _ => T::zero(),
        }
    };
    (1..=n).map(|k| tau_at(k) + r.clone() * tau_at(k - 1)).collect()
}

/// Result of inverting the sigma/tau recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct TauFromSigma<T> {
    /// `t1..t(n-1)`.
    pub tau: Vec<T>,
    /// `sn - r t(n-1)`; zero exactly when `r` is consistent with the sigmas.
    pub residual: T,
}

impl<T: Ring> TauFromSigma<T> {
    pub fn is_consistent(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Inverts [`sigma_from_tau`]: `t1 = s1 - r`, `tk = sk - r t(k-1)`.
pub fn tau_from_sigma<T: Ring>(sigma: &[T], r: &T) -> Result<TauFromSigma<T>, SymmetricError> {
    let n = sigma.len();
    if n == 0 {
        return Err(SymmetricError::Empty);
    }
    let mut tau: Vec<T> = Vec::with_capacity(n - 1);
    let mut prev = T::one();
    for s in &sigma[..n - 1] {
        let t = s.clone() - r.clone() * prev;
        tau.push(t.clone());
        prev = t;
    }
    let residual = sigma[n - 1].clone() - r.clone() * prev;
    Ok(TauFromSigma { tau, residual })
}

/// Coefficient vector `[c_{n-1}, ..., c_0]` of a monic polynomial.
pub fn coeffs_to_sigma(p: &UniPoly) -> Result<Vec<Rational>, SymmetricError> {
    if !p.is_monic() {
        return Err(SymmetricError::NotMonic);
    }
    let n = p.deg().unwrap_or(0);
    Ok((1..=n).map(|k| p.coeff(n - k)).collect())
}

/// A symmetric polynomial rewritten in elementary symmetric polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricDecomposition {
    pub input: MultiPoly,
    /// Polynomial in `s1..sn` (variable `i` stands for `s(i+1)`).
    pub result: MultiPoly,
    /// Successive quotients `f1, f2, ...` of the top-level reduction.
    pub trace: Vec<MultiPoly>,
}

impl SymmetricDecomposition {
    /// The result rendered with variables `s1..sn`.
    pub fn result_string(&self) -> String {
        self.result.display_with("s")
    }
}

#[derive(Default)]
struct Reducer {
    memo: HashMap<(usize, MultiPoly), MultiPoly>,
    esym: HashMap<usize, Vec<MultiPoly>>,
}

impl Reducer {
    fn esyms(&mut self, n: usize) -> Vec<MultiPoly> {
        self.esym
            .entry(n)
            .or_insert_with(|| {
                (1..=n)
                    .map(|k| elementary_symmetric(n, k).expect("k <= n"))
                    .collect()
            })
            .clone()
    }

    /// Reduces a symmetric polynomial of arity `n`: set `rn = 0`, reduce the
    /// remainder in `n - 1` variables, subtract its lift, divide by
    /// `r1 * ... * rn`, and repeat on the quotient.
    fn reduce(&mut self, f: &MultiPoly, mut trace: Option<&mut Vec<MultiPoly>>) -> Option<MultiPoly> {
        let n = f.arity();
        if f.is_constant() {
            return Some(MultiPoly::constant(n, f.constant_term()));
        }
        if n == 1 {
            return Some(f.clone());
        }
        if trace.is_none() {
            if let Some(g) = self.memo.get(&(n, f.clone())) {
                return Some(g.clone());
            }
        }
        let es = self.esyms(n);
        let sn = MultiPoly::var(n, n - 1);
        let mut current = f.clone();
        let mut total = MultiPoly::zero_in(n);
        let mut sn_pow = MultiPoly::constant(n, Rational::one());
        loop {
            if current.is_zero() {
                break;
            }
            if current.is_constant() {
                total = &total + &sn_pow.scale(&current.constant_term());
                break;
            }
            let f0 = current.set_var_zero(n - 1).with_arity(n - 1);
            let g0 = self.reduce(&f0, None)?.with_arity(n);
            let lifted = g0.substitute(&es);
            let q = (&current - &lifted).divide_by_all_vars()?;
            total = &total + &(&g0 * &sn_pow);
            if let Some(t) = trace.as_deref_mut() {
                t.push(q.clone());
            }
            current = q;
            sn_pow = &sn_pow * &sn;
        }
        self.memo.insert((n, f.clone()), total.clone());
        Some(total)
    }
}

/// Expresses a symmetric polynomial in the elementary symmetric polynomials.
pub fn symmetric_reduce(f: &MultiPoly) -> Result<SymmetricDecomposition, SymmetricError> {
    if !f.is_symmetric() {
        return Err(SymmetricError::NotSymmetric);
    }
    let mut trace = Vec::new();
    let result = Reducer::default()
        .reduce(f, Some(&mut trace))
        .ok_or(SymmetricError::NotSymmetric)?;
    Ok(SymmetricDecomposition { input: f.clone(), result, trace })
}

/// Expresses several symmetric polynomials of the same arity, sharing one
/// memo table.
pub fn symmetric_reduce_all(fs: &[MultiPoly]) -> Result<Vec<MultiPoly>, SymmetricError> {
    let mut reducer = Reducer::default();
    fs.iter()
        .map(|f| {
            if !f.is_symmetric() {
                return Err(SymmetricError::NotSymmetric);
            }
            reducer.reduce(f, None).ok_or(SymmetricError::NotSymmetric)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn r(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn elementary_polynomials() {
        let e2 = elementary_symmetric(3, 2).unwrap();
        assert_eq!(e2.to_string(), "r1*r2 + r1*r3 + r2*r3");
        assert_eq!(elementary_symmetric(4, 0).unwrap(), MultiPoly::constant(4, int(1)));
        assert!(elementary_symmetric(2, 3).is_err());
    }

    #[test]
    fn power_sum_of_two_variables() {
        let f = &r(2, 0).pow(4) + &r(2, 1).pow(4);
        let d = symmetric_reduce(&f).unwrap();
        assert_eq!(d.result_string(), "s1^4 - 4*s1^2*s2 + 2*s2^2");
        // first quotient: ((r1^4 + r2^4) - (r1 + r2)^4) / (r1 r2)
        assert_eq!(d.trace[0].to_string(), "-4*r1^2 - 6*r1*r2 - 4*r2^2");
        assert_eq!(d.trace[1], MultiPoly::constant(2, int(2)));
    }

    #[test]
    fn rejects_non_symmetric() {
        assert_eq!(symmetric_reduce(&r(2, 0)), Err(SymmetricError::NotSymmetric));
    }

    #[test]
    fn reduction_round_trips() {
        // sum r_i^2 r_j over i != j in three variables
        let n = 3;
        let mut f = MultiPoly::zero_in(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    f = &f + &(&r(n, i).pow(2) * &r(n, j));
                }
            }
        }
        let d = symmetric_reduce(&f).unwrap();
        assert_eq!(d.result_string(), "s1*s2 - 3*s3");
        let es: Vec<MultiPoly> = (1..=n).map(|k| elementary_symmetric(n, k).unwrap()).collect();
        assert_eq!(d.result.substitute(&es), f);
    }

    #[test]
    fn sigma_tau_round_trip_rational() {
        let tau = vec![int(3), int(-2)];
        let r = int(5);
        let s = sigma_from_tau(&tau, &r);
        assert_eq!(s, vec![int(8), int(13), int(-10)]);
        let back = tau_from_sigma(&s, &r).unwrap();
        assert_eq!(back.tau, tau);
        assert!(back.is_consistent());
        assert!(!tau_from_sigma(&s, &int(4)).unwrap().is_consistent());
    }

    #[test]
    fn sigma_tau_symbolic() {
        // tau of r1, r2 and the extra r3 give the elementary polynomials of three variables
        let n = 3;
        let tau = vec![&r(n, 0) + &r(n, 1), &r(n, 0) * &r(n, 1)];
        let s = sigma_from_tau(&tau, &r(n, 2));
        for (k, sk) in s.iter().enumerate() {
            assert_eq!(sk, &elementary_symmetric(n, k + 1).unwrap());
        }
    }

    #[test]
    fn coefficient_vector() {
        let p = UniPoly::from_ints(&[3, 0, -2, 1]);
        assert_eq!(coeffs_to_sigma(&p).unwrap(), vec![int(-2), int(0), int(3)]);
        assert!(coeffs_to_sigma(&UniPoly::from_ints(&[1, 2])).is_err());
    }
}

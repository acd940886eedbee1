//! Roots of unity of prime order in radicals, through Lagrange resolvents
//! taken along a primitive-root ordering.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rat, UniPoly};
use crate::numeric::{dd, unit_root, Cdd, ComplexApprox, Precision};
use crate::perm::Perm;
use crate::radical::{is_prime, nth_root_near, prime_factors, RadicalError, RadicalExpr, SolveError, SolveMethod, SolveReport};

/// Primes whose roots of unity are built here.
pub const SUPPORTED_PRIMES: [u32; 7] = [2, 3, 5, 7, 11, 13, 17];

/// Relative tolerance for snapping `t_j^(p-1)` to integer coordinates.
pub const SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CyclotomicError {
    #[error("{0} is not a prime of at least 3")]
    NotOddPrime(u32),
    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitive { p: u32, g: u32 },
    #[error("resolvent index {j} out of range for p = {p}")]
    IndexOutOfRange { p: u32, j: u32 },
    #[error("roots of unity of order {0} need primes outside 2..=17")]
    Unsupported(u32),
    #[error("t_{j}^{m} for p = {p} is {dist:e} away from the integer lattice", m = p - 1)]
    SnapFailed { p: u32, j: u32, dist: f64 },
    #[error(transparent)]
    Radical(#[from] RadicalError),
}

fn check_odd_prime(p: u32) -> Result<(), CyclotomicError> {
    if p < 3 || !is_prime(p) {
        return Err(CyclotomicError::NotOddPrime(p));
    }
    Ok(())
}

fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * b as u64 % m as u64) as u32
}

fn is_primitive(g: u32, p: u32) -> bool {
    let n = p - 1;
    !g.is_multiple_of(p) && prime_factors(n).into_iter().all(|q| pow_mod(g, n / q, p) != 1)
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u32) -> Result<u32, CyclotomicError> {
    check_odd_prime(p)?;
    Ok((2..p).find(|&g| is_primitive(g, p)).expect("every prime has a primitive root"))
}

/// `[g^0, g^1, ..., g^(p-2)] mod p`.
pub fn power_sequence(p: u32, g: u32) -> Result<Vec<u32>, CyclotomicError> {
    check_odd_prime(p)?;
    if !is_primitive(g, p) {
        return Err(CyclotomicError::NotPrimitive { p, g });
    }
    Ok((0..p - 1).map(|k| pow_mod(g, k, p)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicContext {
    pub p: u32,
    pub g: u32,
    /// Exponents `g^k mod p` for `k = 0..p-2`.
    pub ordering: Vec<u32>,
}

impl CyclotomicContext {
    pub fn new(p: u32) -> Result<Self, CyclotomicError> {
        let g = primitive_root(p)?;
        Ok(Self { p, g, ordering: power_sequence(p, g)? })
    }

    /// `k` with `g^k = e mod p`.
    pub fn index_of(&self, e: u32) -> Option<usize> {
        self.ordering.iter().position(|&x| x == e % self.p)
    }

    /// The substitution `alpha -> alpha^(g^m)` as a permutation of the
    /// exponents `1..p-1` (point `i` stands for exponent `i + 1`).
    pub fn substitution(&self, m: u32) -> Perm {
        let h = pow_mod(self.g, m, self.p);
        let images = (1..self.p).map(|e| (e * h % self.p) as usize - 1).collect();
        Perm::from_images(images).expect("multiplication by a unit permutes residues")
    }
}

/// `t_j` with `alpha` replaced by `alpha^(g^shift)`:
/// `sum_k beta^(jk) alpha^(g^(k + shift))`.
pub fn gauss_resolvent_shifted(
    p: u32,
    j: u32,
    shift: u32,
    precision: Precision,
) -> Result<ComplexApprox, CyclotomicError> {
    let ctx = CyclotomicContext::new(p)?;
    if j > p - 2 {
        return Err(CyclotomicError::IndexOutOfRange { p, j });
    }
    let m = p - 1;
    let mut t = ComplexApprox::zero(Precision::Extended);
    for k in 0..m {
        let beta = unit_root(m, (j as i64 * k as i64) % m as i64, Precision::Extended);
        let alpha = unit_root(p, ctx.ordering[((k + shift) % m) as usize] as i64, Precision::Extended);
        t = t + beta * alpha;
    }
    Ok(t.at_precision(precision))
}

/// `t_j = sum_{k=0}^{p-2} beta^(jk) alpha^(g^k)` with `alpha = exp(2 pi i / p)`
/// and `beta = exp(2 pi i / (p - 1))`.
pub fn gauss_resolvent(p: u32, j: u32, precision: Precision) -> Result<ComplexApprox, CyclotomicError> {
    gauss_resolvent_shifted(p, j, 0, precision)
}

fn totient_units(m: u32) -> Vec<u32> {
    (1..=m).filter(|&a| gcd(a, m) == 1).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Solves `A x = b` over double-double complex numbers.
fn solve_dense(mut a: Vec<Vec<Cdd>>, mut b: Vec<Cdd>) -> Vec<Cdd> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let sub = f * a[col][k];
                a[row][k] = a[row][k] - sub;
            }
            let sub = f * b[col];
            b[row] = b[row] - sub;
        }
    }
    let mut x = vec![Cdd::ZERO; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// Radical form of the `p`-th roots of unity.
#[derive(Clone, Debug, Serialize)]
pub struct CyclotomicRadicals {
    pub context: CyclotomicContext,
    /// `exp(2 pi i / (p - 1))`.
    pub beta: RadicalExpr,
    /// Integer coordinates of `t_j^(p-1)` in `1, beta, ..., beta^(phi(p-1) - 1)`.
    pub resolvent_powers: Vec<Vec<i64>>,
    pub resolvents: Vec<RadicalExpr>,
    /// `alpha^k` for `k = 1..p-1`, in that order.
    pub by_power: Vec<RadicalExpr>,
}

/// Builds every `p`-th root of unity from the resolvents: `t_j` is a
/// `(p-1)`-th root of its power, which lies in `Z[beta]`, and
/// `alpha^(g^k) = (1/(p-1)) sum_j beta^(-jk) t_j`.
pub fn cyclotomic_radicals(p: u32) -> Result<CyclotomicRadicals, CyclotomicError> {
    check_odd_prime(p)?;
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(CyclotomicError::Unsupported(p));
    }
    let ctx = CyclotomicContext::new(p)?;
    let m = p - 1;
    let beta = zeta(m)?;
    let units = totient_units(m);
    let phi = units.len();
    let t: Vec<ComplexApprox> = (0..m).map(|j| gauss_resolvent(p, j, Precision::Extended)).collect::<Result<_, _>>()?;
    let t_pow: Vec<Cdd> = t.iter().map(|z| z.powu(m).center()).collect();
    let mut resolvent_powers = vec![vec![1]];
    let mut resolvents = vec![RadicalExpr::int(-1)];
    for j in 1..m {
        // conjugating beta -> beta^a sends t_j to t_(aj), so the coordinates
        // solve a Vandermonde system in the conjugates of beta
        let rows: Vec<Vec<Cdd>> = units
            .iter()
            .map(|&a| (0..phi).map(|i| unit_root(m, (a as i64 * i as i64) % m as i64, Precision::Extended).center()).collect())
            .collect();
        let rhs: Vec<Cdd> = units.iter().map(|&a| t_pow[(a * j % m) as usize]).collect();
        let x = solve_dense(rows, rhs);
        let mut coords = Vec::with_capacity(phi);
        for c in &x {
            let re = c.re.hi() + c.re.lo();
            let dist = (c.re - dd(re.round())).hi().abs().max(c.im.hi().abs());
            if dist > SNAP_TOLERANCE * re.abs().max(1.0) {
                return Err(CyclotomicError::SnapFailed { p, j, dist });
            }
            coords.push(re.round() as i64);
        }
        let radicand = RadicalExpr::sum(
            coords.iter().enumerate().map(|(i, &c)| beta.pow(i as i32).scale(&rat(c, 1))),
        );
        resolvents.push(nth_root_near(m, radicand, t[j as usize].to_c64())?);
        resolvent_powers.push(coords);
    }
    let mut by_power = vec![RadicalExpr::zero(); m as usize];
    for k in 0..m {
        let terms = (0..m).map(|j| {
            let e = (m - (j * k) % m) % m;
            beta.pow(e as i32) * resolvents[j as usize].clone()
        });
        by_power[ctx.ordering[k as usize] as usize - 1] = RadicalExpr::sum(terms).scale(&rat(1, m as i64));
    }
    Ok(CyclotomicRadicals { context: ctx, beta, resolvent_powers, resolvents, by_power })
}

fn zeta_cache() -> &'static Mutex<HashMap<u32, RadicalExpr>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RadicalExpr>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `exp(2 pi i / n)` in radicals.
fn zeta(n: u32) -> Result<RadicalExpr, CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::Unsupported(0));
    }
    if let Some(e) = zeta_cache().lock().expect("cache poisoned").get(&n) {
        return Ok(e.clone());
    }
    let factors = prime_factors(n);
    if factors.iter().any(|q| !SUPPORTED_PRIMES.contains(q)) {
        return Err(CyclotomicError::Unsupported(n));
    }
    let q = factors.first().copied().unwrap_or(1);
    let qe = factors.iter().filter(|&&f| f == q).product::<u32>();
    let e = if n == 1 {
        RadicalExpr::one()
    } else if n == 2 {
        RadicalExpr::int(-1)
    } else if qe == n && factors.len() == 1 {
        cyclotomic_radicals(n)?.by_power[0].clone()
    } else if qe == n {
        let target = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
        nth_root_near(n / q, zeta(q)?, target)?
    } else {
        // zeta_n = zeta_n1^x zeta_n2^y with x n2 + y n1 = 1 mod n
        let (n1, n2) = (qe, n / qe);
        let (x, y) = (0..n1)
            .flat_map(|x| (0..n2).map(move |y| (x, y)))
            .find(|&(x, y)| (x * n2 + y * n1) % n == 1)
            .expect("coprime parts");
        zeta(n1)?.pow(x as i32) * zeta(n2)?.pow(y as i32)
    };
    zeta_cache().lock().expect("cache poisoned").insert(n, e.clone());
    Ok(e)
}

/// `exp(2 pi i k / n)` in radicals; prime `n` uses the resolvent formula
/// for the requested power directly.
pub fn unit_root_expr(n: u32, k: i64) -> Result<RadicalExpr, CyclotomicError> {
    let k = k.rem_euclid(n as i64) as u32;
    if k == 0 {
        return Ok(RadicalExpr::one());
    }
    if n > 2 && is_prime(n) {
        return Ok(cyclotomic_radicals(n)?.by_power[k as usize - 1].clone());
    }
    Ok(zeta(n)?.pow(k as i32))
}

/// Solves `x^(p-1) + ... + x + 1 = 0` in radicals.
pub fn roots_in_radicals(p: u32, precision: Precision) -> Result<SolveReport, SolveError> {
    let rad = cyclotomic_radicals(p)?;
    let poly = UniPoly::from_ints(&vec![1; p as usize]);
    let mut report = SolveReport::solved(&poly, SolveMethod::Cyclotomic, rad.by_power, precision)?;
    let kinds: std::collections::BTreeSet<u32> =
        report.expressions.iter().flat_map(|e| e.root_indices()).collect();
    report.notes.push(format!(
        "primitive root {}, root indices used: {:?}",
        rad.context.g,
        kinds.into_iter().collect::<Vec<_>>()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use crate::radical::{eval_radical, verify_solution};

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(11).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(17).unwrap(), 3);
        assert!(primitive_root(9).is_err());
        assert!(primitive_root(2).is_err());
    }

    #[test]
    fn power_sequences() {
        assert_eq!(power_sequence(11, 2).unwrap(), vec![1, 2, 4, 8, 5, 10, 9, 7, 3, 6]);
        assert_eq!(power_sequence(5, 2).unwrap(), vec![1, 2, 4, 3]);
        assert_eq!(power_sequence(3, 2).unwrap(), vec![1, 2]);
        assert_eq!(power_sequence(7, 2), Err(CyclotomicError::NotPrimitive { p: 7, g: 2 }));
        for p in [3, 5, 7, 11, 13, 17] {
            let mut s = CyclotomicContext::new(p).unwrap().ordering;
            s.sort();
            assert_eq!(s, (1..p).collect::<Vec<_>>());
        }
    }

    #[test]
    fn gauss_sums() {
        assert!(gauss_resolvent(7, 0, Precision::Extended).unwrap().dist(&ComplexApprox::new(-1.0, 0.0, Precision::Extended)) < 1e-28);
        let t = gauss_resolvent(5, 1, Precision::Extended).unwrap();
        assert!((t.abs() * t.abs() - 5.0).abs() < 1e-13);
    }

    #[test]
    fn shift_multiplies_by_beta_power() {
        for p in [5, 7, 13, 17] {
            let m = p - 1;
            for j in 0..m {
                let t = gauss_resolvent(p, j, Precision::Extended).unwrap();
                let s = gauss_resolvent_shifted(p, j, 1, Precision::Extended).unwrap();
                let b = unit_root(m, -(j as i64), Precision::Extended);
                assert!(s.dist(&(b * t)) < 1e-25);
                assert!(s.powu(m).dist(&t.powu(m)) < 1e-8 * t.powu(m).abs().max(1.0));
            }
        }
    }

    #[test]
    fn substitutions_form_a_cyclic_group() {
        let ctx = CyclotomicContext::new(17).unwrap();
        let gens: Vec<Perm> = (0..16).map(|m| ctx.substitution(m)).collect();
        let g = PermGroup::closure(16, &gens[1..2]).unwrap();
        assert_eq!(g.order(), 16);
        assert!(gens.iter().all(|s| g.contains(s)));
        assert!(g.is_abelian());
        assert_eq!(gens[1].order(), 16);
    }

    #[test]
    fn small_primes() {
        let r3 = cyclotomic_radicals(3).unwrap();
        assert_eq!(r3.resolvent_powers[1], vec![-3]);
        let want = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        assert!((eval_radical(&r3.by_power[0], Precision::Extended).to_c64() - want).norm() < 1e-15);
        let r5 = roots_in_radicals(5, Precision::Extended).unwrap();
        assert!(verify_solution(&r5, 1e-9));
        assert!(r5.expressions.iter().flat_map(|e| e.root_indices()).all(|k| k == 2));
    }

    #[test]
    fn seventeen_uses_square_roots_only() {
        let rep = roots_in_radicals(17, Precision::Extended).unwrap();
        assert!(verify_solution(&rep, 1e-9));
        assert!(rep.expressions.iter().flat_map(|e| e.root_indices()).all(|k| k == 2));
        for (k, v) in rep.values.iter().enumerate() {
            assert!(v.dist(&unit_root(17, k as i64 + 1, Precision::Extended)) < 1e-9);
        }
    }

    #[test]
    fn unsupported() {
        assert_eq!(cyclotomic_radicals(19).unwrap_err(), CyclotomicError::Unsupported(19));
        assert!(unit_root_expr(38, 1).is_err());
        let z12 = unit_root_expr(12, 5).unwrap();
        assert!(eval_radical(&z12, Precision::Extended).dist(&unit_root(12, 5, Precision::Extended)) < 1e-25);
    }
}

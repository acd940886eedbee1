use num_complex::Complex64;
use serde::Serialize;

use super::{dd, dd_from_rational, Cdd, ComplexApprox, NumericError, Precision};
use crate::exact::UniPoly;

const MAX_ITERATIONS: usize = 500;

/// All complex roots of a polynomial, each with a certified error radius.
#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub roots: Vec<ComplexApprox>,
    /// Largest `|p(z)|` over the returned centers, including evaluation error.
    pub residual_bound: f64,
    pub precision: Precision,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots ordered by real part, then imaginary part.
    pub fn sorted(&self) -> Vec<ComplexApprox> {
        let mut v = self.roots.clone();
        v.sort_by(|a, b| {
            a.re()
                .partial_cmp(&b.re())
                .unwrap()
                .then(a.im().partial_cmp(&b.im()).unwrap())
        });
        v
    }
}

/// Smallest distance between two root centers.
pub fn min_separation(roots: &[ComplexApprox]) -> f64 {
    let mut m = f64::INFINITY;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            m = m.min(a.dist(b));
        }
    }
    m
}

fn horner_c64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Bound on the rounding error of Horner evaluation in `f64`.
fn horner_bound_c64(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let s = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    4.0 * c.len() as f64 * f64::EPSILON * s
}

fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    // Fujiwara bound
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let mut v = (c[n - k] / lc).norm();
        if k == n {
            v /= 2.0;
        }
        bound = bound.max(v.powf(1.0 / k as f64));
    }
    let r = if bound > 0.0 { 2.0 * bound } else { 1.0 };
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r * (1.0 + 0.01 * k as f64), theta)
        })
        .collect()
}

/// Aberth-Ehrlich iteration in `f64`. Returns the iterates and whether they
/// converged.
fn aberth_c64(c: &[Complex64]) -> (Vec<Complex64>, bool, usize) {
    let n = c.len() - 1;
    let mut z = initial_guesses(c);
    for it in 0..MAX_ITERATIONS {
        let mut moved: f64 = 0.0;
        let mut all_small = true;
        for k in 0..n {
            let (p, dp) = horner_c64(c, z[k]);
            if p.norm() <= horner_bound_c64(c, z[k]) {
                continue;
            }
            all_small = false;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let ratio = p / dp;
            let w = ratio / (1.0 - ratio * s);
            let w = if w.is_finite() { w } else { Complex64::new(1e-8, 1e-8) };
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if all_small || moved <= 4.0 * f64::EPSILON {
            return (z, true, it);
        }
    }
    (z, false, MAX_ITERATIONS)
}

/// Roots of a polynomial with `f64` complex coefficients (low to high).
/// Returns `None` when the iteration fails to converge.
pub fn roots_f64(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|a| *a == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.len() < 2 {
        return Some(Vec::new());
    }
    let (z, ok, _) = aberth_c64(&c);
    ok.then_some(z)
}

fn horner_cdd(c: &[Cdd], z: Cdd) -> (Cdd, Cdd) {
    let mut p = Cdd::ZERO;
    let mut dp = Cdd::ZERO;
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

/// Error bound for Horner evaluation in double-double, including the
/// representation error of the coefficients.
fn horner_bound_cdd(c: &[Cdd], z: Cdd) -> f64 {
    let r = z.abs();
    let s = c.iter().rev().fold(0.0, |acc, a| acc * r + a.abs());
    (4.0 * c.len() as f64 + 2.0) * Precision::Extended.unit_roundoff() * s
}

fn polish(c: &[Cdd], z: &mut [Cdd], precision: Precision) {
    let n = z.len();
    let rounds = match precision {
        Precision::Standard => 2,
        Precision::Extended => 6,
    };
    for _ in 0..rounds {
        for k in 0..n {
            let (p, dp) = horner_cdd(c, z[k]);
            if p.abs() <= horner_bound_cdd(c, z[k]) {
                continue;
            }
            let mut s = Cdd::ZERO;
            for j in 0..n {
                if j != k {
                    s = s + (z[k] - z[j]).recip();
                }
            }
            let ratio = p / dp;
            let w = ratio / (Cdd::ONE - ratio * s);
            let cand = (z[k] - w).round(precision);
            if !(cand.re.hi().is_finite() && cand.im.hi().is_finite()) {
                continue;
            }
            let (pc, _) = horner_cdd(c, cand);
            if pc.abs() <= p.abs() {
                z[k] = cand;
            }
        }
    }
}

/// Inclusion radius for a root near `z`: the smaller of the Newton bound
/// `n |p| / |p'|` and the product bound `(|p| / |lc|)^(1/n)`.
fn inclusion_radius(c: &[Cdd], z: Cdd) -> (f64, f64) {
    let n = (c.len() - 1) as f64;
    let (p, dp) = horner_cdd(c, z);
    let e = horner_bound_cdd(c, z);
    let pe = p.abs() + e;
    let dpa = dp.abs();
    let newton = if dpa > 0.0 { n * pe / dpa } else { f64::INFINITY };
    let lc = c.last().unwrap().abs();
    let product = (pe / lc).powf(1.0 / n);
    (newton.min(product) * (1.0 + 1e-12), pe)
}

/// Finds all complex roots of `p`.
///
/// Aberth-Ehrlich in `f64` from deterministic starting points, then polishing
/// in double-double (extended) or one more `f64` round (standard). Polishing
/// never accepts a step that increases `|p(z)|`.
pub fn find_roots(p: &UniPoly, precision: Precision) -> Result<RootSet, NumericError> {
    let n = p.deg().filter(|&n| n >= 1).ok_or(NumericError::DegreeTooLow)?;
    let cdd: Vec<Cdd> = p
        .coeffs()
        .iter()
        .map(|r| Cdd::new(dd_from_rational(r), dd(0.0)))
        .collect();
    let c64: Vec<Complex64> = cdd.iter().map(|a| a.to_c64()).collect();
    let (z64, ok, iterations) = if n == 1 {
        (vec![-c64[0] / c64[1]], true, 0)
    } else {
        aberth_c64(&c64)
    };
    let mut z: Vec<Cdd> = z64.iter().map(|&w| Cdd::from_c64(w)).collect();
    if n == 1 {
        z[0] = -(cdd[0] / cdd[1]);
    }
    polish(&cdd, &mut z, precision);
    let mut residual_bound: f64 = 0.0;
    let roots: Vec<ComplexApprox> = z
        .iter()
        .map(|&w| {
            let w = w.round(precision);
            let (r, pe) = inclusion_radius(&cdd, w);
            residual_bound = residual_bound.max(pe);
            ComplexApprox::from_cdd(w, r, precision)
        })
        .collect();
    if !ok {
        // accept if the polished iterates are certified anyway
        let sep = min_separation(&roots);
        let certified = roots.iter().all(|r| r.err().is_finite() && 2.0 * r.err() < sep);
        if !certified {
            return Err(NumericError::NoConvergence { iterations, best: roots });
        }
    }
    Ok(RootSet { roots, residual_bound, precision })
}

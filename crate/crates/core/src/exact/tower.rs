//! Towers Q(sqrt(d1), ..., sqrt(dk)) of real quadratic extensions.
//!
//! An element is stored as `2^k` rational coordinates; coordinate `m` is the
//! coefficient of the product of `sqrt(d_i)` over the bits `i` set in `m`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::poly::write_terms;
use super::{
    factor_rational, rational_approx, rational_roots, rational_sqrt, rational_to_f64,
    AlgebraError, Rational, UniPoly,
};

/// Ordered list of positive rational radicands, multiplicatively
/// independent modulo squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadTower {
    radicands: Vec<Rational>,
}

impl QuadTower {
    pub fn new(radicands: Vec<Rational>) -> Result<Arc<Self>, AlgebraError> {
        if let Some(d) = radicands.iter().find(|d| !d.is_positive()) {
            return Err(AlgebraError::InvalidTower(format!("radicand {d} is not positive")));
        }
        for mask in 1usize..(1 << radicands.len()) {
            let prod = bits(mask).fold(Rational::one(), |acc, i| acc * &radicands[i]);
            if rational_sqrt(&prod).is_some() {
                return Err(AlgebraError::InvalidTower(format!(
                    "radicands are dependent: product over subset {mask:#b} is a square"
                )));
            }
        }
        Ok(Arc::new(Self { radicands }))
    }

    pub fn from_ints(radicands: &[i64]) -> Result<Arc<Self>, AlgebraError> {
        Self::new(radicands.iter().map(|&d| Rational::from_integer(d.into())).collect())
    }

    pub fn radicands(&self) -> &[Rational] {
        &self.radicands
    }

    pub fn len(&self) -> usize {
        self.radicands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radicands.is_empty()
    }

    /// Dimension over Q.
    pub fn dim(&self) -> usize {
        1 << self.radicands.len()
    }
}

fn bits(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |i| mask >> i & 1 == 1)
}

// Field arithmetic on coordinate slices at level `rads.len()`.

fn f_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn f_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn f_scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

fn f_is_zero(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn f_const(level: usize, c: Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 1 << level];
    v[0] = c;
    v
}

fn f_embed(a: &[Rational], level: usize) -> Vec<Rational> {
    let mut v = a.to_vec();
    v.resize(1 << level, Rational::zero());
    v
}

fn f_mul(rads: &[Rational], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let f = bits(i & j).fold(x * y, |acc, t| acc * &rads[t]);
            out[i ^ j] += f;
        }
    }
    out
}

fn f_inv(rads: &[Rational], a: &[Rational]) -> Option<Vec<Rational>> {
    let Some((d, lower)) = rads.split_last() else {
        return (!a[0].is_zero()).then(|| vec![a[0].recip()]);
    };
    let half = a.len() / 2;
    let (x, y) = a.split_at(half);
    // (x + y sqrt d)^-1 = (x - y sqrt d) / (x^2 - d y^2)
    let norm = f_sub(&f_mul(lower, x, x), &f_scale(&f_mul(lower, y, y), d));
    let ninv = f_inv(lower, &norm)?;
    let mut out = f_mul(lower, x, &ninv);
    out.extend(f_mul(lower, &f_scale(y, &-Rational::one()), &ninv));
    Some(out)
}

fn f_sqrt(rads: &[Rational], a: &[Rational]) -> Option<Vec<Rational>> {
    let Some((d, lower)) = rads.split_last() else {
        return rational_sqrt(&a[0]).map(|s| vec![s]);
    };
    let half = a.len() / 2;
    let (x, y) = a.split_at(half);
    let zeros = vec![Rational::zero(); half];
    if f_is_zero(y) {
        if let Some(s) = f_sqrt(lower, x) {
            return Some([s, zeros].concat());
        }
        let xd = f_scale(x, &d.recip());
        return f_sqrt(lower, &xd).map(|s| [zeros, s].concat());
    }
    // (p + q sqrt d)^2 = x + y sqrt d  =>  p^2 = (x +- sqrt(x^2 - d y^2)) / 2
    let norm = f_sub(&f_mul(lower, x, x), &f_scale(&f_mul(lower, y, y), d));
    let s = f_sqrt(lower, &norm)?;
    let half_r = Rational::new(1.into(), 2.into());
    for sign in [Rational::one(), -Rational::one()] {
        let p2 = f_scale(&f_add(x, &f_scale(&s, &sign)), &half_r);
        if f_is_zero(&p2) {
            continue;
        }
        if let Some(p) = f_sqrt(lower, &p2) {
            let inv2p = f_inv(lower, &f_scale(&p, &Rational::from_integer(2.into())))?;
            let q = f_mul(lower, y, &inv2p);
            let cand = [p, q].concat();
            if f_mul(rads, &cand, &cand) == a {
                return Some(cand);
            }
        }
    }
    None
}

/// Value of `sqrt` of the product of radicands in `mask`, with `signs`
/// selecting the embedding (bit i set means `sqrt(d_i)` maps to its negative).
fn basis_value(rads: &[Rational], mask: usize, signs: usize) -> f64 {
    bits(mask).fold(1.0, |acc, i| {
        let s = if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
        acc * s * rational_to_f64(&rads[i]).sqrt()
    })
}

fn f_embed_value(rads: &[Rational], a: &[Rational], signs: usize) -> f64 {
    a.iter()
        .enumerate()
        .map(|(m, q)| rational_to_f64(q) * basis_value(rads, m, signs))
        .sum()
}

type FPoly = Vec<Vec<Rational>>;

fn fp_eval(rads: &[Rational], p: &FPoly, x: &[Rational]) -> Vec<Rational> {
    p.iter()
        .rev()
        .fold(f_const(rads.len(), Rational::zero()), |acc, c| f_add(&f_mul(rads, &acc, x), c))
}

fn fp_mul(rads: &[Rational], a: &FPoly, b: &FPoly) -> FPoly {
    let mut out = vec![f_const(rads.len(), Rational::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f_add(&out[i + j], &f_mul(rads, x, y));
        }
    }
    out
}

/// Roots lying in the field of a monic polynomial over it.
///
/// At level 0 this is the exact rational-root test. Higher levels evaluate
/// the polynomial under every real embedding, recover candidate coordinates
/// from the embedded real roots, snap them to small-height rationals, and
/// keep the candidates that are exact roots.
fn roots_in_field(rads: &[Rational], p: &FPoly) -> Vec<Vec<Rational>> {
    let level = rads.len();
    if p.iter().all(|c| f_is_zero(&c[1..])) {
        let up = UniPoly::new(p.iter().map(|c| c[0].clone()).collect());
        let mut out: Vec<Vec<Rational>> = rational_roots(&up)
            .unwrap_or_default()
            .into_iter()
            .map(|r| f_const(level, r))
            .collect();
        if level == 0 {
            return out;
        }
        out.extend(numeric_roots_in_field(rads, p));
        out.sort();
        out.dedup();
        return out;
    }
    numeric_roots_in_field(rads, p)
}

fn numeric_roots_in_field(rads: &[Rational], p: &FPoly) -> Vec<Vec<Rational>> {
    let level = rads.len();
    let nemb = 1usize << level;
    let mut per_embedding: Vec<Vec<f64>> = Vec::with_capacity(nemb);
    for s in 0..nemb {
        let c: Vec<Complex64> = p
            .iter()
            .map(|a| Complex64::new(f_embed_value(rads, a, s), 0.0))
            .collect();
        let Some(roots) = crate::numeric::roots_f64(&c) else {
            return Vec::new();
        };
        per_embedding.push(
            roots
                .iter()
                .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
                .map(|z| z.re)
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; nemb];
    if per_embedding.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let vals: Vec<f64> = (0..nemb).map(|s| per_embedding[s][idx[s]]).collect();
        let mut cand = Vec::with_capacity(nemb);
        for m in 0..nemb {
            let b = basis_value(rads, m, 0);
            let q: f64 = (0..nemb)
                .map(|s| {
                    let chi = if (m & s).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                    chi * vals[s]
                })
                .sum::<f64>()
                / (nemb as f64 * b);
            match rational_approx(q, 1_000_000, 1e-7 * (1.0 + q.abs())) {
                Some(r) => cand.push(r),
                None => break,
            }
        }
        if cand.len() == nemb && f_is_zero(&fp_eval(rads, p, &cand)) && !out.contains(&cand) {
            out.push(cand);
        }
        // odometer over root choices
        let mut k = 0;
        loop {
            if k == nemb {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_embedding[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Splits a monic irreducible quadratic over level `j` at level `j + 1`.
fn split_quadratic(rads: &[Rational], g: &FPoly) -> Option<[FPoly; 2]> {
    let up = &rads[..rads.len() - 1];
    let lvl = rads.len();
    let (c, b) = (&g[0], &g[1]);
    let disc = f_sub(&f_mul(up, b, b), &f_scale(c, &Rational::from_integer(4.into())));
    let s = f_sqrt(rads, &f_embed(&disc, lvl))?;
    let half = Rational::new(1.into(), 2.into());
    let mb = f_scale(&f_embed(b, lvl), &-Rational::one());
    let r1 = f_scale(&f_add(&mb, &s), &half);
    let r2 = f_scale(&f_sub(&mb, &s), &half);
    let lin = |r: Vec<Rational>| vec![f_scale(&r, &-Rational::one()), f_const(lvl, Rational::one())];
    Some([lin(r1), lin(r2)])
}

/// Splits a monic irreducible quartic over level `j` into conjugate
/// quadratics `A^2 - d B^2` at level `j + 1`.
fn split_quartic(rads: &[Rational], g: &FPoly) -> Option<[FPoly; 2]> {
    let (d, up) = rads.split_last().unwrap();
    let lvl = rads.len();
    let j = up.len();
    let r = |n: i64, m: i64| Rational::new(n.into(), m.into());
    let (g0, g1, g2, g3) = (&g[0], &g[1], &g[2], &g[3]);
    let a1 = f_scale(g3, &r(1, 2));
    let alpha = f_scale(&f_sub(g2, &f_mul(up, &a1, &a1)), &r(1, 2));
    let beta = f_sub(&f_mul(up, &a1, &alpha), &f_scale(g1, &r(1, 2)));
    let gamma = f_scale(&a1, &r(1, 2));
    // w^3 + 4(alpha - gamma^2) w^2 + 4(alpha^2 - g0 - 2 beta gamma) w - 4 beta^2
    let four = r(4, 1);
    let c2 = f_scale(&f_sub(&alpha, &f_mul(up, &gamma, &gamma)), &four);
    let c1 = f_scale(
        &f_sub(
            &f_sub(&f_mul(up, &alpha, &alpha), g0),
            &f_scale(&f_mul(up, &beta, &gamma), &r(2, 1)),
        ),
        &four,
    );
    let c0 = f_scale(&f_mul(up, &beta, &beta), &-four);
    let cubic: FPoly = vec![c0, c1, c2, f_const(j, Rational::one())];
    let dinv = d.recip();
    for w in roots_in_field(up, &cubic) {
        let a0 = f_add(&alpha, &f_scale(&w, &r(1, 2)));
        let (b1, b0) = if f_is_zero(&w) {
            let t = f_scale(&f_sub(&f_mul(up, &a0, &a0), g0), &dinv);
            let Some(b0) = f_sqrt(up, &t) else { continue };
            (f_const(j, Rational::zero()), b0)
        } else {
            let Some(b1) = f_sqrt(up, &f_scale(&w, &dinv)) else { continue };
            let num = f_sub(&f_mul(up, &a1, &a0), &f_scale(g1, &r(1, 2)));
            let den = f_inv(up, &f_scale(&b1, d))?;
            (b1, f_mul(up, &num, &den))
        };
        // coefficient of x is a1 + b1 sqrt d, constant a0 + b0 sqrt d
        let h = vec![[a0.clone(), b0.clone()].concat(), [a1.clone(), b1.clone()].concat(), f_const(lvl, Rational::one())];
        let hbar = vec![
            [a0.clone(), f_scale(&b0, &-Rational::one())].concat(),
            [a1.clone(), f_scale(&b1, &-Rational::one())].concat(),
            f_const(lvl, Rational::one()),
        ];
        let gl: FPoly = g.iter().map(|c| f_embed(c, lvl)).collect();
        if fp_mul(rads, &h, &hbar) == gl {
            return Some([h, hbar]);
        }
    }
    None
}

/// An element of a [`QuadTower`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadTowerElem {
    tower: Arc<QuadTower>,
    coords: Vec<Rational>,
}

impl QuadTowerElem {
    pub fn new(tower: &Arc<QuadTower>, coords: Vec<Rational>) -> Result<Self, AlgebraError> {
        if coords.len() != tower.dim() {
            return Err(AlgebraError::InvalidTower(format!(
                "expected {} coordinates, got {}",
                tower.dim(),
                coords.len()
            )));
        }
        Ok(Self { tower: tower.clone(), coords })
    }

    pub fn from_rational(tower: &Arc<QuadTower>, r: Rational) -> Self {
        Self { tower: tower.clone(), coords: f_const(tower.len(), r) }
    }

    /// `sqrt(d_i)` itself.
    pub fn generator(tower: &Arc<QuadTower>, i: usize) -> Self {
        let mut coords = f_const(tower.len(), Rational::zero());
        coords[1 << i] = Rational::one();
        Self { tower: tower.clone(), coords }
    }

    pub fn tower(&self) -> &Arc<QuadTower> {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        f_is_zero(&self.coords)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        f_is_zero(&self.coords[1..]).then(|| &self.coords[0])
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.tower == o.tower {
            Ok(())
        } else {
            Err(AlgebraError::TowerMismatch)
        }
    }

    fn with(&self, coords: Vec<Rational>) -> Self {
        Self { tower: self.tower.clone(), coords }
    }

    pub fn add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        Ok(self.with(f_add(&self.coords, &o.coords)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        Ok(self.with(f_sub(&self.coords, &o.coords)))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        Ok(self.with(f_mul(self.tower.radicands(), &self.coords, &o.coords)))
    }

    pub fn neg(&self) -> Self {
        self.with(f_scale(&self.coords, &-Rational::one()))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        f_inv(self.tower.radicands(), &self.coords)
            .map(|c| self.with(c))
            .ok_or(AlgebraError::ZeroDivisor)
    }

    /// Automorphism sending `sqrt(d_j)` to `-sqrt(d_j)`.
    pub fn conj(&self, j: usize) -> Self {
        self.with(
            self.coords
                .iter()
                .enumerate()
                .map(|(m, q)| if m >> j & 1 == 1 { -q } else { q.clone() })
                .collect(),
        )
    }

    /// A square root inside the tower, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        f_sqrt(self.tower.radicands(), &self.coords).map(|c| self.with(c))
    }

    /// Value under the embedding sending every `sqrt(d_i)` to its positive root.
    pub fn to_f64(&self) -> f64 {
        f_embed_value(self.tower.radicands(), &self.coords, 0)
    }

    fn terms(&self) -> Vec<(Rational, String)> {
        let rads = self.tower.radicands();
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(m, q)| {
                let mono: Vec<String> = bits(m).map(|i| format!("sqrt({})", rads[i])).collect();
                (q.clone(), mono.join("*"))
            })
            .collect()
    }
}

impl fmt::Display for QuadTowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().into_iter())
    }
}

/// Univariate polynomial with [`QuadTowerElem`] coefficients, low to high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPoly {
    tower: Arc<QuadTower>,
    coeffs: Vec<QuadTowerElem>,
}

impl TowerPoly {
    pub fn new(tower: &Arc<QuadTower>, mut coeffs: Vec<QuadTowerElem>) -> Self {
        while coeffs.last().is_some_and(QuadTowerElem::is_zero) {
            coeffs.pop();
        }
        Self { tower: tower.clone(), coeffs }
    }

    pub fn from_unipoly(tower: &Arc<QuadTower>, p: &UniPoly) -> Self {
        Self::new(
            tower,
            p.coeffs().iter().map(|c| QuadTowerElem::from_rational(tower, c.clone())).collect(),
        )
    }

    fn from_fpoly(tower: &Arc<QuadTower>, p: &FPoly) -> Self {
        Self::new(
            tower,
            p.iter()
                .map(|c| QuadTowerElem { tower: tower.clone(), coords: f_embed(c, tower.len()) })
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[QuadTowerElem] {
        &self.coeffs
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        if self.tower != o.tower {
            return Err(AlgebraError::TowerMismatch);
        }
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(Self::new(&self.tower, Vec::new()));
        }
        let a: FPoly = self.coeffs.iter().map(|c| c.coords.clone()).collect();
        let b: FPoly = o.coeffs.iter().map(|c| c.coords.clone()).collect();
        Ok(Self::from_fpoly(&self.tower, &fp_mul(self.tower.radicands(), &a, &b)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            &self.tower,
            self.coeffs.iter().map(|e| e.with(f_scale(&e.coords, c))).collect(),
        )
    }
}

impl fmt::Display for TowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let xk = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let ct = c.terms();
            if k == 0 || ct.len() == 1 {
                for (q, m) in ct {
                    let mono = match (m.is_empty(), xk.is_empty()) {
                        (true, _) => xk.clone(),
                        (false, true) => m,
                        (false, false) => format!("{m}*{xk}"),
                    };
                    terms.push((q, mono));
                }
            } else if !ct.is_empty() {
                terms.push((Rational::one(), format!("({c})*{xk}")));
            }
        }
        write_terms(f, terms.into_iter())
    }
}

/// `leading * product(factors)`, with every factor monic and irreducible
/// over the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFactorization {
    pub leading: Rational,
    pub factors: Vec<TowerPoly>,
}

impl TowerFactorization {
    pub fn product(&self) -> TowerPoly {
        let tower = self.factors[0].tower.clone();
        self.factors
            .iter()
            .fold(TowerPoly::new(&tower, vec![QuadTowerElem::from_rational(&tower, Rational::one())]), |acc, g| {
                acc.mul(g).expect("same tower")
            })
            .scale(&self.leading)
    }
}

/// Factors `f` into irreducibles over `Q(sqrt(d1), ..., sqrt(dk))`, `k <= 3`,
/// `deg f <= 5`.
pub fn factor_over_tower(
    f: &UniPoly,
    tower: &Arc<QuadTower>,
) -> Result<TowerFactorization, AlgebraError> {
    if tower.len() > 3 {
        return Err(AlgebraError::InvalidTower("at most three radicands are supported".into()));
    }
    let leading = f.leading_coeff().ok_or(AlgebraError::ConstantPolynomial)?.clone();
    if f.is_constant() {
        return Err(AlgebraError::ConstantPolynomial);
    }
    let rads = tower.radicands();
    let mut current: Vec<FPoly> = factor_rational(f)?
        .iter()
        .map(|g| g.coeffs().iter().map(|c| vec![c.clone()]).collect())
        .collect();
    for j in 0..rads.len() {
        let sub = &rads[..=j];
        let mut next = Vec::new();
        for g in current {
            let split = match g.len() - 1 {
                2 => split_quadratic(sub, &g),
                4 => split_quartic(sub, &g),
                _ => None,
            };
            match split {
                Some(pair) => next.extend(pair),
                None => next.push(g.iter().map(|c| f_embed(c, j + 1)).collect()),
            }
        }
        current = next;
    }
    let mut factors: Vec<TowerPoly> =
        current.iter().map(|g| TowerPoly::from_fpoly(tower, g)).collect();
    factors.sort_by(|a, b| {
        let key = |p: &TowerPoly| -> Vec<f64> {
            p.coeffs.iter().rev().skip(1).map(QuadTowerElem::to_f64).collect()
        };
        a.deg()
            .cmp(&b.deg())
            .then_with(|| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(TowerFactorization { leading, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn elem(t: &Arc<QuadTower>, c: &[i64]) -> QuadTowerElem {
        QuadTowerElem::new(t, c.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn rejects_dependent_radicands() {
        assert!(QuadTower::from_ints(&[2, 8]).is_err());
        assert!(QuadTower::from_ints(&[2, 3, 6]).is_err());
        assert!(QuadTower::from_ints(&[-2]).is_err());
        assert!(QuadTower::from_ints(&[2, 3, 5]).is_ok());
    }

    #[test]
    fn multiplication_of_basis_elements() {
        let t = QuadTower::from_ints(&[2, 3]).unwrap();
        let s2 = QuadTowerElem::generator(&t, 0);
        let s3 = QuadTowerElem::generator(&t, 1);
        let s6 = s2.mul(&s3).unwrap();
        assert_eq!(s6, elem(&t, &[0, 0, 0, 1]));
        assert_eq!(s6.mul(&s6).unwrap(), elem(&t, &[6, 0, 0, 0]));
        assert_eq!(s6.mul(&s2).unwrap(), elem(&t, &[0, 0, 2, 0]));
    }

    #[test]
    fn inverse_and_conjugation() {
        let t = QuadTower::from_ints(&[2, 3, 5]).unwrap();
        let a = QuadTowerElem::new(&t, (1..=8).map(|i| rat(i, 3)).collect()).unwrap();
        let one = QuadTowerElem::from_rational(&t, int(1));
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
        assert!(QuadTowerElem::from_rational(&t, int(0)).inv().is_err());
        // conjugation is a ring automorphism
        let b = elem(&t, &[1, -1, 2, 0, 0, 3, 0, 1]);
        assert_eq!(a.mul(&b).unwrap().conj(1), a.conj(1).mul(&b.conj(1)).unwrap());
        assert_eq!(a.conj(2).conj(2), a);
    }

    #[test]
    fn square_roots() {
        let t = QuadTower::from_ints(&[2, 3]).unwrap();
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let e = elem(&t, &[3, 2, 0, 0]);
        let s = e.sqrt().unwrap();
        assert_eq!(s.mul(&s).unwrap(), e);
        // 5 + 2 sqrt 6 = (sqrt 2 + sqrt 3)^2
        let e = elem(&t, &[5, 0, 0, 2]);
        assert_eq!(e.sqrt().unwrap().mul(&e.sqrt().unwrap()).unwrap(), e);
        assert!(elem(&t, &[5, 0, 0, 0]).sqrt().is_none());
        assert!(elem(&t, &[-1, 0, 0, 0]).sqrt().is_none());
        assert_eq!(elem(&t, &[12, 0, 0, 0]).sqrt().unwrap().to_f64(), 12f64.sqrt());
    }

    #[test]
    fn factor_x4_minus_10x2_plus_1() {
        let f = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
        let t1 = QuadTower::from_ints(&[2]).unwrap();
        let fac = factor_over_tower(&f, &t1).unwrap();
        let shown: Vec<String> = fac.factors.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["x^2 - 2*sqrt(2)*x - 1", "x^2 + 2*sqrt(2)*x - 1"]);
        assert_eq!(fac.product(), TowerPoly::from_unipoly(&t1, &f));

        let t2 = QuadTower::from_ints(&[2, 3]).unwrap();
        let fac = factor_over_tower(&f, &t2).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.iter().all(|g| g.deg() == Some(1)));
        assert_eq!(fac.product(), TowerPoly::from_unipoly(&t2, &f));
        assert_eq!(fac.factors[0].to_string(), "x - sqrt(2) - sqrt(3)");
    }

    #[test]
    fn irreducible_stays_put() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let t = QuadTower::from_ints(&[2]).unwrap();
        let fac = factor_over_tower(&f, &t).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].to_string(), "x^2 + 1");
    }

    #[test]
    fn quartic_splitting_only_at_second_level() {
        // roots +-sqrt3 +-sqrt5; the only quadratic subfield is Q(sqrt 15)
        let f = UniPoly::from_ints(&[4, 0, -16, 0, 1]);
        let t = QuadTower::from_ints(&[2, 15]).unwrap();
        let fac = factor_over_tower(&f, &t).unwrap();
        assert_eq!(fac.product(), TowerPoly::from_unipoly(&t, &f));
        assert_eq!(fac.factors.len(), 2);
    }
}

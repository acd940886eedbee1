//! Lagrange resolvents and what they are used for: exact auxiliary
//! polynomials, numeric subgroup-membership tests, Galois group
//! identification, and the quintic invariants.

mod auxiliary;
mod identify;
mod membership;
mod quintic;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{AlgebraError, GaussianInteger, UniPoly};
use crate::numeric::{unit_root, ComplexApprox, NumericError, Precision};
use crate::perm::Perm;

pub use auxiliary::{auxiliary_exact, auxiliary_symbolic, AuxiliaryPoly, GaussianPoly};
pub use identify::{catalog_children, catalog_group, catalog_root, identify_galois_group, GaloisIdentification};
pub use membership::{
    subgroup_membership_test, MembershipConfig, MembershipMethod, MembershipReport,
    MembershipVerdict, INTEGRALITY_TOLERANCE,
};
pub use quintic::{
    bring_param, bring_sextic_check, f20_invariant, f20_invariant_poly, BringReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolventError {
    #[error("degree {0} outside the supported range")]
    DegreeOutOfRange(usize),
    #[error("exact auxiliary polynomials are limited to quartics")]
    AuxiliaryTooLarge,
    #[error("resolvent coefficients must be Gaussian integers for this operation")]
    NotGaussian,
    #[error("polynomial must be monic with integer coefficients")]
    NotMonicInteger,
    #[error("polynomial is not square-free")]
    NotSquarefree,
    #[error("polynomial is reducible over Q; factors: {0}")]
    Reducible(String),
    #[error("no separating resolvent found after {0} attempts")]
    NoSeparatingResolvent(usize),
    #[error("resolvent arity {0} does not match {1} roots")]
    ArityMismatch(usize, usize),
    #[error("membership test inconclusive for {group} after {tests} tests")]
    Inconclusive { group: String, tests: usize, trace: Vec<MembershipReport> },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Numeric(#[from] NumericError),
    #[error("{0}")]
    Symmetric(#[from] crate::symmetric::SymmetricError),
    #[error("{0}")]
    Perm(#[from] crate::perm::PermError),
}

/// One coefficient of a resolvent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolventCoeff {
    Gaussian { value: GaussianInteger },
    /// `exp(2 pi i power / order)`.
    UnitRoot { order: u32, power: u32 },
}

impl ResolventCoeff {
    pub fn gaussian(re: i64, im: i64) -> Self {
        ResolventCoeff::Gaussian { value: GaussianInteger::new(re, im) }
    }

    pub fn value(&self, precision: Precision) -> ComplexApprox {
        match self {
            ResolventCoeff::Gaussian { value } => ComplexApprox::from_gaussian(value, precision),
            ResolventCoeff::UnitRoot { order, power } => unit_root(*order, *power as i64, precision),
        }
    }
}

/// A linear form `V = a1 r1 + ... + an rn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolvent {
    coeffs: Vec<ResolventCoeff>,
}

impl Resolvent {
    pub fn new(coeffs: Vec<ResolventCoeff>) -> Self {
        Self { coeffs }
    }

    /// Gaussian-integer coefficients given as `(re, im)` pairs.
    pub fn gaussian(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(a, b)| ResolventCoeff::gaussian(a, b)).collect())
    }

    /// `[1, -1]`, `[1, w, w^2]`, `[1, i, -1, -i]` and `[1, i, -1, -i, 0]`
    /// for degrees 2 through 5.
    pub fn default_for(n: usize) -> Result<Self, ResolventError> {
        match n {
            2 => Ok(Self::gaussian(&[(1, 0), (-1, 0)])),
            3 => Ok(Self::new(
                (0..3).map(|k| ResolventCoeff::UnitRoot { order: 3, power: k }).collect(),
            )),
            4 => Ok(Self::gaussian(&[(1, 0), (0, 1), (-1, 0), (0, -1)])),
            5 => Ok(Self::gaussian(&[(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)])),
            _ => Err(ResolventError::DegreeOutOfRange(n)),
        }
    }

    pub fn coeffs(&self) -> &[ResolventCoeff] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn gaussian_coeffs(&self) -> Option<Vec<GaussianInteger>> {
        self.coeffs
            .iter()
            .map(|c| match c {
                ResolventCoeff::Gaussian { value } => Some(value.clone()),
                ResolventCoeff::UnitRoot { .. } => None,
            })
            .collect()
    }

    /// Pairwise distinct coefficients (needed for separation).
    pub fn has_distinct_coeffs(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, a)| self.coeffs[i + 1..].iter().all(|b| a != b))
    }

    /// `V(r_sigma(1), ..., r_sigma(n))`.
    pub fn evaluate(&self, roots: &[ComplexApprox], sigma: &Perm) -> ComplexApprox {
        let precision = roots.first().map_or(Precision::Extended, ComplexApprox::precision);
        self.coeffs
            .iter()
            .enumerate()
            .fold(ComplexApprox::zero(precision), |acc, (i, a)| {
                acc + a.value(precision) * roots[sigma.apply(i)]
            })
    }

    pub(crate) fn coeff_values(&self, precision: Precision) -> Vec<ComplexApprox> {
        self.coeffs.iter().map(|c| c.value(precision)).collect()
    }
}

/// Resolvent value at each permutation, in the order given.
pub fn resolvent_values<'a>(
    roots: &[ComplexApprox],
    v: &Resolvent,
    perms: impl IntoIterator<Item = &'a Perm>,
) -> Result<Vec<ComplexApprox>, ResolventError> {
    if roots.len() != v.len() {
        return Err(ResolventError::ArityMismatch(v.len(), roots.len()));
    }
    let a = v.coeff_values(roots.first().map_or(Precision::Extended, ComplexApprox::precision));
    Ok(perms
        .into_iter()
        .map(|s| {
            a.iter()
                .enumerate()
                .fold(ComplexApprox::zero(roots[0].precision()), |acc, (i, ai)| {
                    acc + *ai * roots[s.apply(i)]
                })
        })
        .collect())
}

/// Extra gap, beyond the error radii, required between resolvent values.
pub const SEPARATION_TOLERANCE: f64 = 1e-12;

/// True iff every pair of values is separated by more than the sum of their
/// error radii plus [`SEPARATION_TOLERANCE`].
pub fn is_separating(values: &[ComplexApprox]) -> bool {
    values.iter().enumerate().all(|(i, a)| {
        values[i + 1..]
            .iter()
            .all(|b| a.dist(b) > a.err() + b.err() + SEPARATION_TOLERANCE)
    })
}

/// Irreducibility, square-freeness, monic-integer normalisation shared by
/// the membership test and the identifier.
pub(crate) fn check_monic_integer(p: &UniPoly) -> Result<(), ResolventError> {
    if !p.is_monic() || !p.has_integer_coeffs() {
        return Err(ResolventError::NotMonicInteger);
    }
    if !p.is_squarefree() {
        return Err(ResolventError::NotSquarefree);
    }
    Ok(())
}

pub(crate) fn check_irreducible(p: &UniPoly) -> Result<(), ResolventError> {
    let factors = crate::exact::factor_rational(p)?;
    if factors.len() > 1 {
        let parts: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
        return Err(ResolventError::Reducible(parts.join("")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::find_roots;
    use crate::perm::symmetric;

    #[test]
    fn defaults() {
        assert_eq!(Resolvent::default_for(4).unwrap(), Resolvent::gaussian(&[(1, 0), (0, 1), (-1, 0), (0, -1)]));
        assert_eq!(
            Resolvent::default_for(5).unwrap(),
            Resolvent::gaussian(&[(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)])
        );
        assert_eq!(Resolvent::default_for(2).unwrap(), Resolvent::gaussian(&[(1, 0), (-1, 0)]));
        assert!(Resolvent::default_for(3).unwrap().gaussian_coeffs().is_none());
        assert!(Resolvent::default_for(6).is_err());
        assert!(Resolvent::default_for(1).is_err());
        for n in 2..=5 {
            assert!(Resolvent::default_for(n).unwrap().has_distinct_coeffs());
        }
    }

    #[test]
    fn values_for_s2() {
        let p = UniPoly::from_ints(&[2, -3, 1]);
        let rs = find_roots(&p, Precision::Extended).unwrap();
        let roots = rs.sorted();
        let vals = resolvent_values(&roots, &Resolvent::default_for(2).unwrap(), symmetric(2).elements()).unwrap();
        assert_eq!(vals.len(), 2);
        assert!((vals[0].re() + 1.0).abs() < 1e-25);
        assert!((vals[1].re() - 1.0).abs() < 1e-25);
        assert!(is_separating(&vals));
        assert!(!is_separating(&[vals[0], vals[0]]));
        let id = Perm::identity(2);
        assert_eq!(resolvent_values(&roots, &Resolvent::default_for(2).unwrap(), [&id]).unwrap().len(), 1);
    }

    #[test]
    fn default_quartic_resolvent_collides_on_biquadratic_roots() {
        // roots +-sqrt2 +-sqrt3: r1 - r2 = r3 - r4 = 2 sqrt3, so V(r1,r3,r2,r4)
        // equals V(r3,r1,r4,r2) for V = a - c + i(b - d)
        let p = UniPoly::from_ints(&[1, 0, -10, 0, 1]);
        let roots = find_roots(&p, Precision::Extended).unwrap().roots;
        let v = Resolvent::default_for(4).unwrap();
        let vals = resolvent_values(&roots, &v, symmetric(4).elements()).unwrap();
        assert!(!is_separating(&vals));
        let w = Resolvent::gaussian(&[(1, 0), (2, 1), (-3, 2), (5, -4)]);
        let vals = resolvent_values(&roots, &w, symmetric(4).elements()).unwrap();
        assert!(is_separating(&vals));
    }
}

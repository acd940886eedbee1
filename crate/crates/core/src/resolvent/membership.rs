use rand::{RngExt, SeedableRng};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_irreducible, check_monic_integer, is_separating, resolvent_values, Resolvent, ResolventCoeff, ResolventError};
use crate::exact::{discriminant, rational_sqrt, GaussianInteger, UniPoly};
use crate::numeric::{find_roots, gaussian_deviation, ComplexApprox, Precision};
use crate::perm::{alternating, symmetric, Perm, PermGroup};

/// A product counts as integer valued when both its error radius and its
/// distance to the nearest Gaussian integer are below this.
pub const INTEGRALITY_TOLERANCE: f64 = 0.25;

#[derive(Clone, Debug, Serialize)]
pub struct MembershipConfig {
    pub precision: Precision,
    /// Retry once at extended precision before giving up.
    pub escalate: bool,
    pub seed: u64,
    pub max_retries: usize,
    /// Sample points are `c + d i` with `|c|, |d| <= box_half_width`; the box
    /// grows if it holds fewer than `|H| + 1` points.
    pub box_half_width: i64,
    /// Overrides the default resolvent.
    pub resolvent: Option<Resolvent>,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        Self {
            precision: Precision::Standard,
            escalate: true,
            seed: 0,
            max_retries: 5,
            box_half_width: 2,
            resolvent: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipVerdict {
    Contained,
    NotContained,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipMethod {
    /// Products `prod (x - V_sigma)` at Gaussian-integer points.
    NumericProduct,
    /// Exact square test on the discriminant (alternating groups only).
    Discriminant,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipReport {
    pub candidate_group: String,
    pub group_order: usize,
    pub verdict: MembershipVerdict,
    pub method: MembershipMethod,
    pub resolvent: Resolvent,
    /// Conjugate `pi H pi^-1` that contains the Galois group, when found.
    pub conjugator: Option<Perm>,
    pub conjugates_tested: usize,
    pub sample_points: Vec<GaussianInteger>,
    /// Products at the sample points for the deciding conjugate.
    pub values: Vec<ComplexApprox>,
    pub max_deviation_from_integer: f64,
    pub max_error: f64,
    pub precision: Precision,
    pub resolvent_attempts: usize,
    /// Verdict of the rerun with a rational-integer resolvent, made whenever a
    /// non-real resolvent reports containment.
    pub real_confirmation: Option<MembershipVerdict>,
}

impl MembershipReport {
    pub fn is_contained(&self) -> bool {
        self.verdict == MembershipVerdict::Contained
    }
}

fn sample_points(half_width: i64, needed: usize) -> Vec<GaussianInteger> {
    let mut w = half_width.max(1);
    while ((2 * w + 1) * (2 * w + 1)) as usize <= needed {
        w += 1;
    }
    let mut pts = Vec::new();
    for c in -w..=w {
        for d in -w..=w {
            pts.push(GaussianInteger::new(c, d));
        }
    }
    pts
}

/// Gaussian draws come from `[-9, 9]^2`. Real draws are kept small, from
/// `[-2 - widen, 2 + widen]`, because the products grow like `|V|^|H|`.
fn random_resolvent(n: usize, rng: &mut ChaCha8Rng, real: bool, widen: i64) -> Resolvent {
    loop {
        let pairs: Vec<(i64, i64)> = (0..n)
            .map(|_| {
                if real {
                    (rng.random_range(-2 - widen..=2 + widen), 0)
                } else {
                    (rng.random_range(-9..=9), rng.random_range(-9..=9))
                }
            })
            .collect();
        let v = Resolvent::gaussian(&pairs);
        if v.has_distinct_coeffs() {
            return v;
        }
    }
}

/// Picks a Gaussian resolvent that separates all `n!` root orderings. With
/// `real` set, only rational-integer coefficients are drawn.
fn separating_resolvent(
    roots: &[ComplexApprox],
    cfg: &MembershipConfig,
    real: bool,
) -> Result<(Resolvent, usize), ResolventError> {
    let n = roots.len();
    let sn = symmetric(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut candidate = match &cfg.resolvent {
        _ if real => {
            rng.set_stream(1);
            random_resolvent(n, &mut rng, true, 0)
        }
        Some(v) => v.clone(),
        None => Resolvent::default_for(n)?,
    };
    if candidate.len() != n {
        return Err(ResolventError::ArityMismatch(candidate.len(), n));
    }
    // a non-Gaussian default is replaced outright, without counting a retry
    if candidate.gaussian_coeffs().is_none() {
        candidate = random_resolvent(n, &mut rng, real, 0);
    }
    for attempt in 0..=cfg.max_retries {
        if candidate.has_distinct_coeffs() && is_separating(&resolvent_values(roots, &candidate, sn.elements())?) {
            return Ok((candidate, attempt));
        }
        candidate = random_resolvent(n, &mut rng, real, attempt as i64 / 2);
    }
    Err(ResolventError::NoSeparatingResolvent(cfg.max_retries))
}

struct ConjugateOutcome {
    verdict: MembershipVerdict,
    values: Vec<ComplexApprox>,
    max_dev: f64,
    max_err: f64,
}

/// With a real resolvent, containment over Q means the product has rational
/// integer coefficients, which shows up as `P(conj x) = conj P(x)` on the
/// conjugation-symmetric grid, on top of Gaussian integrality.
fn test_conjugate(
    roots: &[ComplexApprox],
    v: &Resolvent,
    k: &PermGroup,
    points: &[GaussianInteger],
    real: bool,
) -> Result<ConjugateOutcome, ResolventError> {
    let precision = roots[0].precision();
    let vals = resolvent_values(roots, v, k.elements())?;
    let mut out = ConjugateOutcome {
        verdict: MembershipVerdict::Contained,
        values: Vec::with_capacity(points.len()),
        max_dev: 0.0,
        max_err: 0.0,
    };
    for x in points {
        let x = ComplexApprox::from_gaussian(x, precision);
        let prod = vals.iter().fold(ComplexApprox::one(precision), |acc, vs| acc * (x - *vs));
        out.values.push(prod);
    }
    for (x, prod) in points.iter().zip(&out.values) {
        let (_, mut dev) = gaussian_deviation(prod);
        let mut err = prod.err();
        if real {
            let mirror = points.iter().position(|y| *y == x.conj()).expect("symmetric grid");
            let other = out.values[mirror];
            dev = dev.max(prod.dist(&other.conj()) / 2.0);
            err = err.max(other.err());
        }
        out.max_dev = out.max_dev.max(dev);
        out.max_err = out.max_err.max(err);
        if err < INTEGRALITY_TOLERANCE {
            if dev >= INTEGRALITY_TOLERANCE {
                out.verdict = MembershipVerdict::NotContained;
            }
        } else if out.verdict == MembershipVerdict::Contained {
            out.verdict = MembershipVerdict::Inconclusive;
        }
    }
    Ok(out)
}

fn numeric_test(
    p: &UniPoly,
    h: &PermGroup,
    cfg: &MembershipConfig,
    precision: Precision,
    real: bool,
) -> Result<MembershipReport, ResolventError> {
    let n = h.degree();
    let roots = find_roots(p, precision)?.roots;
    let (v, attempts) = separating_resolvent(&roots, cfg, real)?;
    let points = sample_points(cfg.box_half_width, h.order());
    let conjugates = symmetric(n).conjugates_of(h);
    let mut report = MembershipReport {
        candidate_group: h.label(),
        group_order: h.order(),
        verdict: MembershipVerdict::NotContained,
        method: MembershipMethod::NumericProduct,
        resolvent: v.clone(),
        conjugator: None,
        conjugates_tested: 0,
        sample_points: points.clone(),
        values: Vec::new(),
        max_deviation_from_integer: 0.0,
        max_error: 0.0,
        precision,
        resolvent_attempts: attempts,
        real_confirmation: None,
    };
    for (pi, k) in &conjugates {
        let o = test_conjugate(&roots, &v, k, &points, real)?;
        report.conjugates_tested += 1;
        // keep the conjugate closest to integrality
        let closer = report.values.is_empty() || o.max_dev < report.max_deviation_from_integer;
        if o.verdict == MembershipVerdict::Contained || closer {
            report.values = o.values;
            report.max_deviation_from_integer = o.max_dev;
            report.max_error = o.max_err;
        }
        match o.verdict {
            MembershipVerdict::Contained => {
                report.verdict = MembershipVerdict::Contained;
                report.conjugator = Some(pi.clone());
                return Ok(report);
            }
            MembershipVerdict::Inconclusive => report.verdict = MembershipVerdict::Inconclusive,
            MembershipVerdict::NotContained => {}
        }
    }
    Ok(report)
}

fn escalating_test(
    p: &UniPoly,
    h: &PermGroup,
    cfg: &MembershipConfig,
    real: bool,
) -> Result<MembershipReport, ResolventError> {
    let report = numeric_test(p, h, cfg, cfg.precision, real)?;
    if report.verdict == MembershipVerdict::Inconclusive
        && cfg.escalate
        && cfg.precision == Precision::Standard
    {
        return numeric_test(p, h, cfg, Precision::Extended, real);
    }
    Ok(report)
}

/// Decides whether the Galois group of `p` lies in some conjugate of `h`.
///
/// For each conjugate `K` of `h` in `S_n`, the product `prod_{sigma in K}
/// (x - V_sigma)` is evaluated at Gaussian-integer points; if the Galois
/// group lies in `K` these values are Gaussian integers. A resolvent with
/// non-real coefficients only detects the group over `Q(i)`, so containment
/// found that way is rechecked with a rational-integer resolvent. Standard precision
/// is escalated to extended once when error radii are too large to decide.
/// Alternating groups fall back to the exact discriminant test when the
/// numeric products stay inconclusive.
pub fn subgroup_membership_test(
    p: &UniPoly,
    h: &PermGroup,
    cfg: &MembershipConfig,
) -> Result<MembershipReport, ResolventError> {
    check_monic_integer(p)?;
    let n = p.deg().unwrap_or(0);
    if !(2..=5).contains(&n) {
        return Err(ResolventError::DegreeOutOfRange(n));
    }
    if h.degree() != n {
        return Err(ResolventError::ArityMismatch(h.degree(), n));
    }
    check_irreducible(p)?;
    let mut report = escalating_test(p, h, cfg, false)?;
    if report.is_contained() && !report.resolvent.is_real() {
        let confirm = escalating_test(p, h, cfg, true)?;
        if confirm.verdict != MembershipVerdict::Contained {
            report = confirm.clone();
        }
        report.real_confirmation = Some(confirm.verdict);
    }
    if report.verdict == MembershipVerdict::Inconclusive && *h == alternating(n) {
        let square = rational_sqrt(&discriminant(p)?).is_some();
        report.method = MembershipMethod::Discriminant;
        report.verdict = if square { MembershipVerdict::Contained } else { MembershipVerdict::NotContained };
        report.conjugator = square.then(|| Perm::identity(n));
    }
    Ok(report)
}

impl Resolvent {
    /// True if every coefficient is a rational integer.
    pub fn is_real(&self) -> bool {
        self.coeffs()
            .iter()
            .all(|c| matches!(c, ResolventCoeff::Gaussian { value } if value.im.is_zero()))
    }
}

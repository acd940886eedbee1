use serde::Serialize;

use super::{subgroup_membership_test, MembershipConfig, MembershipReport, MembershipVerdict, ResolventError};
use crate::exact::UniPoly;
use crate::perm::{alternating, cyclic, dihedral, frobenius20, klein4, named_group, symmetric, PermGroup};

/// The full group `S_n` at the top of the catalog.
pub fn catalog_root(n: usize) -> Result<PermGroup, ResolventError> {
    match n {
        2..=5 => Ok(symmetric(n)),
        _ => Err(ResolventError::DegreeOutOfRange(n)),
    }
}

/// Looks up a catalog group by name.
pub fn catalog_group(name: &str) -> Result<PermGroup, ResolventError> {
    Ok(match name {
        "A3" => alternating(3),
        "Z4" => cyclic(4),
        "Z5" => cyclic(5),
        "D4" => dihedral(4)?,
        "D5" => dihedral(5)?,
        "V4" => klein4(),
        "F20" => frobenius20(),
        other => named_group(other)?,
    })
}

/// Maximal transitive subgroups below a catalog node, largest first.
pub fn catalog_children(name: &str) -> Vec<PermGroup> {
    let names: &[&str] = match name {
        "S3" => &["A3"],
        "S4" => &["A4", "D4"],
        "A4" => &["V4"],
        "D4" => &["V4", "Z4"],
        "S5" => &["A5", "F20"],
        "A5" => &["D5"],
        "F20" => &["D5"],
        "D5" => &["Z5"],
        _ => &[],
    };
    names.iter().map(|n| catalog_group(n).expect("catalog names resolve")).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisIdentification {
    pub name: String,
    pub order: usize,
    #[serde(skip)]
    pub group: PermGroup,
    /// Every membership test run during the descent, in order.
    pub trace: Vec<MembershipReport>,
}

/// Identifies the Galois group of an irreducible monic integer polynomial
/// of degree 2 to 5 by walking down the catalog of transitive groups.
///
/// At each node the children are tested largest first; the walk descends
/// into the first one that contains the Galois group and stops when none
/// does.
pub fn identify_galois_group(
    p: &UniPoly,
    cfg: &MembershipConfig,
) -> Result<GaloisIdentification, ResolventError> {
    let n = p.deg().unwrap_or(0);
    let mut current = catalog_root(n)?;
    super::check_monic_integer(p)?;
    let mut trace = Vec::new();
    super::check_irreducible(p)?;
    'descend: loop {
        let name = current.name().unwrap_or_default().to_string();
        for child in catalog_children(&name) {
            let report = subgroup_membership_test(p, &child, cfg)?;
            let verdict = report.verdict;
            trace.push(report);
            match verdict {
                MembershipVerdict::Contained => {
                    current = child;
                    continue 'descend;
                }
                MembershipVerdict::NotContained => {}
                MembershipVerdict::Inconclusive => {
                    return Err(ResolventError::Inconclusive {
                        group: child.label(),
                        tests: trace.len(),
                        trace,
                    });
                }
            }
        }
        break;
    }
    Ok(GaloisIdentification {
        name: current.label(),
        order: current.order(),
        group: current,
        trace,
    })
}

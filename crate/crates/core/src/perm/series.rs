use serde::Serialize;

use super::group::is_prime;
use super::{PermError, PermGroup};

/// Largest group order accepted by [`composition_series`].
pub const SERIES_ORDER_CAP: usize = 200;

/// `{e} = G0 < G1 < ... < Gk = G`, each normal of prime index in the next.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// Ascending from the trivial group.
    pub groups: Vec<PermGroup>,
}

impl CompositionSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.groups.iter().map(PermGroup::order).collect()
    }

    /// `|G(i+1)| / |G(i)|`, all prime.
    pub fn quotient_orders(&self) -> Vec<usize> {
        self.groups.windows(2).map(|w| w[1].order() / w[0].order()).collect()
    }
}

/// One step of the failed descent: a group and the orders of its normal
/// subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalScan {
    pub order: usize,
    pub normal_subgroup_orders: Vec<usize>,
}

/// Evidence that a group has no composition series with prime quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonSolvableWitness {
    /// Descent along prime-index normal subgroups, starting at the group.
    pub scans: Vec<NormalScan>,
    /// Order of the non-trivial group with no normal subgroup of prime index.
    pub stuck_order: usize,
}

#[derive(Clone, Debug)]
pub enum SeriesOutcome {
    Solvable(CompositionSeries),
    NotSolvable(NonSolvableWitness),
}

impl SeriesOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SeriesOutcome::Solvable(_))
    }
}

fn descend(g: &PermGroup, scans: &mut Vec<NormalScan>) -> Option<Vec<PermGroup>> {
    if g.order() == 1 {
        return Some(vec![g.clone()]);
    }
    let normals = g.normal_subgroups();
    scans.push(NormalScan {
        order: g.order(),
        normal_subgroup_orders: normals.iter().map(PermGroup::order).collect(),
    });
    for n in normals.iter().rev() {
        if n.order() == g.order() || !is_prime(g.order() / n.order()) {
            continue;
        }
        if let Some(mut chain) = descend(n, scans) {
            chain.push(g.clone());
            return Some(chain);
        }
    }
    None
}

/// Finds a composition series with prime quotients by depth-first search
/// over prime-index normal subgroups, or reports where the search got stuck.
pub fn composition_series(g: &PermGroup) -> Result<SeriesOutcome, PermError> {
    if g.order() > SERIES_ORDER_CAP {
        return Err(PermError::OrderCapExceeded(g.order(), SERIES_ORDER_CAP));
    }
    let mut scans = Vec::new();
    match descend(g, &mut scans) {
        Some(groups) => Ok(SeriesOutcome::Solvable(CompositionSeries { groups })),
        None => {
            let stuck_order = scans.last().map_or(g.order(), |s| s.order);
            Ok(SeriesOutcome::NotSolvable(NonSolvableWitness { scans, stuck_order }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating, cyclic, dihedral, frobenius20, symmetric};

    fn series(g: &PermGroup) -> CompositionSeries {
        match composition_series(g).unwrap() {
            SeriesOutcome::Solvable(s) => s,
            SeriesOutcome::NotSolvable(w) => panic!("unexpected: {w:?}"),
        }
    }

    #[test]
    fn s4_series() {
        let s = series(&symmetric(4));
        assert_eq!(s.orders(), vec![1, 2, 4, 12, 24]);
        assert_eq!(s.quotient_orders(), vec![2, 2, 3, 2]);
        for w in s.groups.windows(2) {
            assert!(w[0].is_normal_in(&w[1]));
        }
    }

    #[test]
    fn f20_and_small_series() {
        assert_eq!(series(&frobenius20()).orders(), vec![1, 5, 10, 20]);
        assert_eq!(series(&dihedral(5).unwrap()).orders(), vec![1, 5, 10]);
        assert_eq!(series(&cyclic(5)).orders(), vec![1, 5]);
        assert_eq!(series(&symmetric(3)).orders(), vec![1, 3, 6]);
    }

    #[test]
    fn s5_is_not_solvable() {
        match composition_series(&symmetric(5)).unwrap() {
            SeriesOutcome::NotSolvable(w) => {
                assert_eq!(w.scans[0].normal_subgroup_orders, vec![1, 60, 120]);
                assert_eq!(w.stuck_order, 60);
            }
            SeriesOutcome::Solvable(_) => panic!("S5 reported solvable"),
        }
        assert!(!composition_series(&alternating(5)).unwrap().is_solvable());
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            composition_series(&symmetric(6)),
            Err(PermError::OrderCapExceeded(720, _))
        ));
    }
}

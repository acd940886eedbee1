use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{Perm, PermError};

/// A finite permutation group stored by its full element set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Perm>,
    generators: Vec<Perm>,
    name: Option<String>,
}

impl PartialEq for PermGroup {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.elements == o.elements
    }
}

impl Eq for PermGroup {}

/// Which side the group element sits on in a coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetSide {
    /// `gN`
    Left,
    /// `Ng`
    Right,
}

/// Structure of a quotient `G / N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientInfo {
    pub order: usize,
    pub is_cyclic: bool,
    pub is_prime_order: bool,
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PermGroup {
    /// The subgroup generated by `gens` (breadth-first closure).
    pub fn closure(degree: usize, gens: &[Perm]) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut elements = BTreeSet::new();
        let id = Perm::identity(degree);
        elements.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if elements.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(Self { degree, elements, generators: gens, name: None })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::closure(degree, &[]).expect("no generators")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if known, otherwise the order.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("order {}", self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.elements.is_subset(&g.elements)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_transitive(&self) -> bool {
        let mut orbit = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                if orbit.insert(g.apply(x)) {
                    stack.push(g.apply(x));
                }
            }
        }
        orbit.len() == self.degree || self.degree == 0
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators.iter().all(|x| {
                self.generators
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(x)))
            })
    }

    /// `pi H pi^-1`.
    pub fn conjugate(&self, pi: &Perm) -> PermGroup {
        PermGroup {
            degree: self.degree,
            elements: self.elements.iter().map(|h| h.conjugate_by(pi)).collect(),
            generators: self.generators.iter().map(|h| h.conjugate_by(pi)).collect(),
            name: self.name.clone(),
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<Perm>> {
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for x in &self.elements {
            if seen.contains(x) {
                continue;
            }
            let class: BTreeSet<Perm> = self.elements.iter().map(|g| x.conjugate_by(g)).collect();
            seen.extend(class.iter().cloned());
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// All normal subgroups, ordered by size then elements.
    ///
    /// Each normal subgroup is a join of normal closures of conjugacy
    /// classes, so closing the set of class closures under joins finds all.
    pub fn normal_subgroups(&self) -> Vec<PermGroup> {
        let classes = self.conjugacy_classes();
        let mut found: Vec<PermGroup> = vec![PermGroup::trivial(self.degree)];
        let mut i = 0;
        while i < found.len() {
            for c in &classes {
                if found[i].contains(&c[0]) {
                    continue;
                }
                let mut gens = found[i].generators.clone();
                gens.extend(c.iter().cloned());
                let j = PermGroup::closure(self.degree, &gens).expect("same degree");
                if !found.contains(&j) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        found
    }

    pub fn quotient_structure(&self, normal: &PermGroup) -> Result<QuotientInfo, PermError> {
        if !normal.is_normal_in(self) {
            return Err(PermError::NotNormal);
        }
        let order = self.order() / normal.order();
        let is_cyclic = self.elements.iter().any(|g| {
            let mut x = g.clone();
            let mut k = 1;
            while !normal.contains(&x) {
                x = x.compose(g);
                k += 1;
            }
            k == order
        });
        Ok(QuotientInfo { order, is_cyclic, is_prime_order: is_prime(order) })
    }

    /// Cosets of `sub`, each sorted, listed by smallest element.
    pub fn cosets(&self, sub: &PermGroup, side: CosetSide) -> Result<Vec<Vec<Perm>>, PermError> {
        if !sub.is_subgroup_of(self) {
            return Err(PermError::NotSubgroup);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in &self.elements {
            if seen.contains(g) {
                continue;
            }
            let coset: BTreeSet<Perm> = sub
                .elements
                .iter()
                .map(|h| match side {
                    CosetSide::Left => g.compose(h),
                    CosetSide::Right => h.compose(g),
                })
                .collect();
            seen.extend(coset.iter().cloned());
            out.push(coset.into_iter().collect::<Vec<_>>());
        }
        out.sort();
        Ok(out)
    }

    /// One representative per left coset `g H` of `sub`.
    pub fn left_transversal(&self, sub: &PermGroup) -> Result<Vec<Perm>, PermError> {
        Ok(self
            .cosets(sub, CosetSide::Left)?
            .into_iter()
            .map(|c| c[0].clone())
            .collect())
    }

    /// Distinct conjugates `pi H pi^-1` of `sub` by elements of `self`.
    pub fn conjugates_of(&self, sub: &PermGroup) -> Vec<(Perm, PermGroup)> {
        let mut out: Vec<(Perm, PermGroup)> = Vec::new();
        for pi in &self.elements {
            let c = sub.conjugate(pi);
            if !out.iter().any(|(_, d)| d == &c) {
                out.push((pi.clone(), c));
            }
        }
        out
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name.as_deref().unwrap_or("G"), self.order())
    }
}

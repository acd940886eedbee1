//! Permutations and finite permutation groups.
//!
//! Symbols are `0..n` internally and `1..=n` in cycle notation. Composition
//! is right to left: `g.compose(h)` applies `h` first.

mod group;
mod named;
mod series;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use group::{CosetSide, PermGroup, QuotientInfo};
pub use named::{
    alternating, cyclic, dihedral, frobenius20, klein4, named_group, symmetric, trivial,
};
pub use series::{composition_series, CompositionSeries, NonSolvableWitness, SeriesOutcome, SERIES_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid cycle notation: {0}")]
    InvalidCycle(String),
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("not a normal subgroup")]
    NotNormal,
    #[error("group order {0} exceeds the supported bound {1}")]
    OrderCapExceeded(usize, usize),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
}

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective(images));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || used[a - 1] {
                    return Err(PermError::InvalidCycle(format!("{cyc:?}")));
                }
                used[a - 1] = true;
                let b = cyc[(i + 1) % cyc.len()];
                images[a - 1] = b - 1;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`, `(1 2)` or `()`.
    pub fn parse(s: &str, n: usize) -> Result<Self, PermError> {
        let s = s.trim();
        let bad = || PermError::InvalidCycle(s.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let body = &open[..close];
            let nums: Result<Vec<usize>, _> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::parse::<usize>)
                .collect();
            let nums = nums.map_err(|_| bad())?;
            if !nums.is_empty() {
                cycles.push(nums);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: applies `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    /// Applies `self`, then `other` (left-to-right product).
    pub fn then(&self, other: &Perm) -> Perm {
        other.compose(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Perm::identity(self.degree()), |acc, _| acc.compose(&base))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Non-trivial cycles, 1-based, each starting at its smallest symbol.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle lengths (including fixed points) in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// `g self g^-1`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// `g^-1 h^-1 g h`.
    pub fn commutator(g: &Perm, h: &Perm) -> Perm {
        g.inverse().compose(&h.inverse()).compose(g).compose(h)
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", body.join(","))
            })
            .collect()
    }

    /// One-line notation `[a1 a2 .. an]`, 1-based.
    pub fn to_one_line(&self) -> String {
        let body: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        format!("[{}]", body.join(" "))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(1,2,3)(4,5)", 5).to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(p("(2 3 1)", 3).to_cycle_string(), "(1,2,3)");
        assert_eq!(p("()", 4).to_cycle_string(), "()");
        assert_eq!(p("(1,3)", 3).to_one_line(), "[3 2 1]");
        assert!(Perm::parse("(1,6)", 5).is_err());
        assert!(Perm::parse("(1,2)(2,3)", 3).is_err());
        assert!(Perm::parse("1,2", 3).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // apply (2,3) then (1,2): 1->1->2, 2->3->3, 3->2->1
        assert_eq!(a.compose(&b), p("(1,2,3)", 3));
        assert_eq!(a.then(&b), b.compose(&a));
    }

    #[test]
    fn commutator_example() {
        let g = p("(4,2,1)", 5);
        let h = p("(1,5,3)", 5);
        assert_eq!(Perm::commutator(&g, &h), p("(1,2,3)", 5));
    }

    #[test]
    fn inverse_order_parity() {
        let g = p("(1,2,3,4)(5,6)", 6);
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.order(), 4);
        assert!(g.is_even());
        assert_eq!(g.cycle_type(), vec![4, 2]);
        assert_eq!(g.pow(4), Perm::identity(6));
        assert_eq!(g.pow(-1), g.inverse());
    }
}

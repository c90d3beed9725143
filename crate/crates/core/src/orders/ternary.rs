use super::AlmostLinearOrder;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A set with a ternary relation, kept as a sorted list of triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TernaryStructure {
    pub size: usize,
    pub triples: Vec<(usize, usize, usize)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TernaryError {
    #[error("triple {0:?} leaves the ground set")]
    Range((usize, usize, usize)),
    #[error("antireflexivity fails at {0:?}")]
    Antireflexivity((usize, usize, usize)),
    #[error("symmetry fails at {0:?}")]
    Symmetry((usize, usize, usize)),
    #[error("transitivity fails at {0:?} and {1:?}")]
    Transitivity((usize, usize, usize), (usize, usize, usize)),
    #[error("linearity fails at {0:?}")]
    Linearity((usize, usize, usize)),
}

impl TernaryStructure {
    pub fn new(size: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Self {
        let set: BTreeSet<_> = triples.into_iter().collect();
        TernaryStructure { size, triples: set.into_iter().collect() }
    }

    pub fn holds(&self, x: usize, y: usize, z: usize) -> bool {
        self.triples.binary_search(&(x, y, z)).is_ok()
    }

    /// Check the four axioms, reporting the first offending tuple.
    pub fn check_axioms(&self) -> Result<(), TernaryError> {
        for &t in &self.triples {
            let (x, y, z) = t;
            if x >= self.size || y >= self.size || z >= self.size {
                return Err(TernaryError::Range(t));
            }
            if x == y || y == z || x == z {
                return Err(TernaryError::Antireflexivity(t));
            }
            if !self.holds(x, z, y) {
                return Err(TernaryError::Symmetry(t));
            }
        }
        for &s in &self.triples {
            for &t in self.triples.iter().filter(|t| t.0 == s.1) {
                if !self.holds(s.0, t.1, t.2) {
                    return Err(TernaryError::Transitivity(s, t));
                }
            }
        }
        let n = self.size;
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    if !(self.holds(x, y, z) || self.holds(y, z, x) || self.holds(z, x, y)) {
                        return Err(TernaryError::Linearity((x, y, z)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `R(x, y, z)` iff `x` is the minimum of the three-point set `{x, y, z}`.
    pub fn from_order(x: &AlmostLinearOrder) -> Self {
        Self::from_relation(x.size(), |a, b| x.less(a, b))
    }

    /// The relation of `x` pulled back along `map: 0..map.len() → x`.
    pub fn from_order_along(x: &AlmostLinearOrder, map: &[usize]) -> Self {
        Self::from_relation(map.len(), |a, b| x.less(map[a], map[b]))
    }

    /// As [`from_order`](Self::from_order) for an order on `0..size` given by
    /// its strict part.
    pub fn from_relation(size: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let mut t = Vec::new();
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if y != z && less(x, y) && less(x, z) {
                        t.push((x, y, z));
                    }
                }
            }
        }
        Self::new(size, t)
    }

    /// The derived strict order `x < y :⟺ ∃w R(x, y, w)`.
    pub fn derived_less(&self, x: usize, y: usize) -> bool {
        let lo = self.triples.partition_point(|t| (t.0, t.1) < (x, y));
        self.triples.get(lo).is_some_and(|t| t.0 == x && t.1 == y)
    }

    /// The almost linear order induced by `R`, together with the bijection
    /// from the ground set onto it.
    pub fn to_order(&self) -> Result<(AlmostLinearOrder, Vec<usize>), TernaryError> {
        self.check_axioms()?;
        let n = self.size;
        let below: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| self.derived_less(x, y)).count()).collect();
        let mut elems: Vec<usize> = (0..n).collect();
        elems.sort_by_key(|&x| (below[x], x));
        let incomparable = n >= 2 && {
            let (a, b) = (elems[n - 2], elems[n - 1]);
            !self.derived_less(a, b) && !self.derived_less(b, a)
        };
        let order = if incomparable { AlmostLinearOrder::lb(n - 2) } else { AlmostLinearOrder::linear(n) };
        let mut map = vec![0; n];
        for (pos, &x) in elems.iter().enumerate() {
            map[x] = pos;
        }
        Ok((order, map))
    }
}

/// Every structure on `0..n` satisfying the axioms, by filtering all
/// relations symmetric in the last two places. Meant for `n <= 4`.
pub fn brute_force_ternary(n: usize) -> Vec<TernaryStructure> {
    let mut slots = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if x != y && x != z {
                    slots.push((x, y, z));
                }
            }
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let triples = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, &(x, y, z))| [(x, y, z), (x, z, y)]);
        let t = TernaryStructure::new(n, triples);
        if t.check_axioms().is_ok() {
            out.push(t);
        }
    }
    out
}

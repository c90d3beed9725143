//! Finite monoids given by tables, word monoids over a finite alphabet, and
//! the closed-form Ramsey criteria for them.

mod enumerate;
mod word;

pub use enumerate::{canonical_form, enumerate_monoids, EnumerateError};
pub use word::{ParityCertificate, Word, WordMonoid, WordRamseyWitness};

use crate::category::EnumerableCategory;
use crate::verdict::Verdict;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite monoid with elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MonoidData", into = "MonoidData")]
pub struct FiniteMonoid {
    order: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MonoidData {
    order: usize,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<MonoidData> for FiniteMonoid {
    type Error = MonoidError;
    fn try_from(d: MonoidData) -> Result<Self, MonoidError> {
        FiniteMonoid::new(d.order, d.unit, d.table)
    }
}

impl From<FiniteMonoid> for MonoidData {
    fn from(m: FiniteMonoid) -> Self {
        MonoidData { order: m.order, unit: m.unit, table: m.table }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("monoid order must be positive")]
    Empty,
    #[error("table must be {0}x{0}")]
    Shape(usize),
    #[error("entry {2} at ({0}, {1}) out of range")]
    Entry(usize, usize, usize),
    #[error("unit {0} out of range")]
    UnitRange(usize),
    #[error("unit law fails at {0}")]
    Unit(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("element {0} out of range")]
    Element(usize),
}

impl FiniteMonoid {
    pub fn new(order: usize, unit: usize, table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        if order == 0 {
            return Err(MonoidError::Empty);
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(MonoidError::Shape(order));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(MonoidError::Entry(i, j, v));
                }
            }
        }
        if unit >= order {
            return Err(MonoidError::UnitRange(unit));
        }
        for x in 0..order {
            if table[unit][x] != x || table[x][unit] != x {
                return Err(MonoidError::Unit(x));
            }
        }
        if let Some((x, y, z)) = first_non_associative(&table) {
            return Err(MonoidError::Associativity(x, y, z));
        }
        Ok(FiniteMonoid { order, unit, table })
    }

    pub fn trivial() -> Self {
        FiniteMonoid { order: 1, unit: 0, table: vec![vec![0]] }
    }

    /// `Z/n` under addition.
    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid::new(n, 0, table).unwrap()
    }

    /// `({0, .., n-1}, max)` with unit 0.
    pub fn truncated_max(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
        FiniteMonoid::new(n, 0, table).unwrap()
    }

    /// Unit 0 plus `n` elements with `z_i z_j = z_j`.
    pub fn right_zero(n: usize) -> Self {
        let table = (0..=n).map(|i| (0..=n).map(|j| if j == 0 { i } else { j }).collect()).collect();
        FiniteMonoid::new(n + 1, 0, table).unwrap()
    }

    /// Unit 0 plus `n` elements with `z_i z_j = z_i`.
    pub fn left_zero(n: usize) -> Self {
        let table = (0..=n).map(|i| (0..=n).map(|j| if i == 0 { j } else { i }).collect()).collect();
        FiniteMonoid::new(n + 1, 0, table).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    fn check(&self, a: usize) -> Result<(), MonoidError> {
        if a < self.order {
            Ok(())
        } else {
            Err(MonoidError::Element(a))
        }
    }

    /// `{z : zx = z for all x}`.
    pub fn left_zeros(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.elements().all(|x| self.mul(z, x) == z)).collect()
    }

    /// `{z : xz = z for all x}`.
    pub fn right_zeros(&self) -> Vec<usize> {
        self.elements().filter(|&z| self.elements().all(|x| self.mul(x, z) == z)).collect()
    }

    /// The left ideal `Mα`, sorted.
    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let s: BTreeSet<usize> = self.elements().map(|x| self.mul(x, a)).collect();
        s.into_iter().collect()
    }

    fn equalizer(&self, x: usize, y: usize) -> Option<usize> {
        self.elements().find(|&e| self.mul(e, x) == self.mul(e, y))
    }

    /// (LE) in its pairwise form: every `x, y ∈ Mα` have `e` with `ex = ey`.
    pub fn satisfies_le(&self, a: usize) -> Result<bool, MonoidError> {
        self.check(a)?;
        let orb = self.orbit(a);
        Ok(orb
            .iter()
            .enumerate()
            .all(|(i, &x)| orb[i + 1..].iter().all(|&y| self.equalizer(x, y).is_some())))
    }

    /// Multipliers `f` with `Mαf ⊆ Mα`.
    pub fn stabilizing_multipliers(&self, a: usize) -> Vec<usize> {
        let orb = self.orbit(a);
        let inside: BTreeSet<usize> = orb.iter().copied().collect();
        self.elements()
            .filter(|&f| orb.iter().all(|&x| inside.contains(&self.mul(x, f))))
            .collect()
    }

    /// Undirected components of the graph on `Mα` with edges `{x, xf}` for
    /// stabilizing `f`.
    pub fn right_action_components(&self, a: usize) -> Vec<Vec<usize>> {
        let orb = self.orbit(a);
        let fs = self.stabilizing_multipliers(a);
        let pos = |x: usize| orb.binary_search(&x).unwrap();
        let mut parent: Vec<usize> = (0..orb.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for (i, &x) in orb.iter().enumerate() {
            for &f in &fs {
                let j = pos(self.mul(x, f));
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &x) in orb.iter().enumerate() {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().push(x);
        }
        comps.into_values().collect()
    }

    /// Ramsey test through the right-action graph. With finitely many
    /// components (always the case here) `α` is Ramsey exactly when one left
    /// multiplier collapses all of `Mα` to a point.
    pub fn is_ramsey_element(&self, a: usize) -> Result<Verdict<RamseyElementWitness, RamseyElementCertificate>, MonoidError> {
        self.check(a)?;
        let orbit = self.orbit(a);
        let components = self.right_action_components(a);
        let collapsing = self.elements().find(|&e| {
            let first = self.mul(e, orbit[0]);
            orbit.iter().all(|&x| self.mul(e, x) == first)
        });
        Ok(match collapsing {
            Some(e) => Verdict::Yes(RamseyElementWitness { orbit, components: components.len(), collapser: e }),
            None => {
                // the collapse fails, so some pair is never equalized: take
                // the first such pair as the certificate
                let pair = find_unequalized(self, &orbit);
                Verdict::No(RamseyElementCertificate { orbit, components: components.len(), pair })
            }
        })
    }

    /// Every pair of elements can be equalized from the left.
    pub fn has_ramsey_property(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.equalizer(x, y).is_some()))
    }

    /// Some element is a Ramsey arrow.
    pub fn has_weak_ramsey_property(&self) -> Verdict<usize, Vec<RamseyElementCertificate>> {
        let mut certs = Vec::new();
        for a in self.elements() {
            match self.is_ramsey_element(a).unwrap() {
                Verdict::Yes(_) => return Verdict::Yes(a),
                Verdict::No(c) => certs.push(c),
                Verdict::Unknown(r) => return Verdict::Unknown(r),
            }
        }
        Verdict::No(certs)
    }

    /// Pairs `(x, y)` with `x = xy`, sorted.
    pub fn absorption_relation(&self) -> AbsorptionRelation {
        let pairs = self
            .elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| self.mul(x, y) == x)
            .collect();
        AbsorptionRelation { order: self.order, pairs }
    }

    pub fn classify(&self) -> MonoidFlags {
        let els: Vec<usize> = self.elements().collect();
        let non_unit: Vec<usize> = els.iter().copied().filter(|&x| x != self.unit).collect();
        let idempotent = els.iter().all(|&x| self.mul(x, x) == x);
        let commutative = els.iter().all(|&x| els.iter().all(|&y| self.mul(x, y) == self.mul(y, x)));
        let left_zero = non_unit.iter().all(|&x| non_unit.iter().all(|&y| self.mul(x, y) == x));
        let right_zero = non_unit.iter().all(|&x| non_unit.iter().all(|&y| self.mul(x, y) == y));
        let left_cancellative = els.iter().all(|&x| {
            let row: BTreeSet<usize> = els.iter().map(|&y| self.mul(x, y)).collect();
            row.len() == self.order
        });
        MonoidFlags {
            idempotent,
            commutative,
            semilattice: idempotent && commutative,
            left_zero,
            right_zero,
            left_cancellative,
        }
    }

    /// Relabel by `perm` (old index → new index).
    pub fn relabel(&self, perm: &[usize]) -> FiniteMonoid {
        let mut table = vec![vec![0; self.order]; self.order];
        for x in 0..self.order {
            for y in 0..self.order {
                table[perm[x]][perm[y]] = perm[self.table[x][y]];
            }
        }
        FiniteMonoid { order: self.order, unit: perm[self.unit], table }
    }
}

fn find_unequalized(m: &FiniteMonoid, orbit: &[usize]) -> Option<(usize, usize)> {
    for (i, &x) in orbit.iter().enumerate() {
        for &y in &orbit[i + 1..] {
            if m.equalizer(x, y).is_none() {
                return Some((x, y));
            }
        }
    }
    None
}

pub(crate) fn first_non_associative(t: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let xy = t[x][y];
            for z in 0..n {
                if t[xy][z] != t[x][t[y][z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyElementWitness {
    pub orbit: Vec<usize>,
    pub components: usize,
    /// `e` with `eMα` a single point.
    pub collapser: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyElementCertificate {
    pub orbit: Vec<usize>,
    pub components: usize,
    /// A pair of `Mα` that no left multiplier equalizes. Always present for
    /// finite monoids; kept optional so a disagreement with the pairwise test
    /// stays visible.
    pub pair: Option<(usize, usize)>,
}

impl RamseyElementWitness {
    pub fn check(&self, m: &FiniteMonoid, a: usize) -> bool {
        self.orbit == m.orbit(a)
            && self.collapser < m.order()
            && self.orbit.iter().all(|&x| m.mul(self.collapser, x) == m.mul(self.collapser, self.orbit[0]))
    }
}

impl RamseyElementCertificate {
    pub fn check(&self, m: &FiniteMonoid, a: usize) -> bool {
        let orbit = m.orbit(a);
        match self.pair {
            Some((x, y)) => {
                self.orbit == orbit && orbit.contains(&x) && orbit.contains(&y) && m.equalizer(x, y).is_none()
            }
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionRelation {
    pub order: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl AbsorptionRelation {
    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| {
            self.pairs.iter().filter(|p| p.0 == y).all(|&(_, z)| self.holds(x, z))
        })
    }

    /// Elements below or equal to everything.
    pub fn minima(&self) -> Vec<usize> {
        (0..self.order).filter(|&m| (0..self.order).all(|x| self.holds(x, m))).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFlags {
    pub idempotent: bool,
    pub commutative: bool,
    pub semilattice: bool,
    /// Non-unit elements satisfy `xy = x`.
    pub left_zero: bool,
    /// Non-unit elements satisfy `xy = y`.
    pub right_zero: bool,
    pub left_cancellative: bool,
}

/// A finite monoid as a one-object category; `g ∘ f = g·f`.
impl EnumerableCategory for FiniteMonoid {
    type Obj = ();
    type Arr = usize;

    fn grade(&self, _a: &()) -> usize {
        0
    }
    fn objects_of_grade(&self, g: usize) -> Vec<()> {
        if g == 0 {
            vec![()]
        } else {
            Vec::new()
        }
    }
    fn max_grade(&self) -> Option<usize> {
        Some(0)
    }
    fn hom(&self, _a: &(), _b: &()) -> Vec<usize> {
        self.elements().collect()
    }
    fn dom(&self, _f: &usize) {}
    fn cod(&self, _f: &usize) {}
    fn compose(&self, g: &usize, f: &usize) -> usize {
        self.mul(*g, *f)
    }
    fn identity(&self, _a: &()) -> usize {
        self.unit
    }
    fn is_object(&self, _a: &()) -> bool {
        true
    }
    fn is_arrow(&self, f: &usize) -> bool {
        *f < self.order
    }
}

#[cfg(test)]
mod tests;

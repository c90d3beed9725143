//! Finite linear and almost linear orders, their ternary-relation form, and
//! the categories of one-to-one homomorphisms between them.

mod category;
mod ternary;

pub use category::{glue_orders, AlmostLinearOrders, LinearOrders};
pub use ternary::{brute_force_ternary, TernaryError, TernaryStructure};

use serde::{Deserialize, Serialize};

/// A finite order in which every three-element set has a minimum: a chain, or
/// a chain `0 < .. < n-1` with two incomparable maxima `n` and `n+1` on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlmostLinearOrder {
    Linear { n: usize },
    Lb { n: usize },
}

impl AlmostLinearOrder {
    pub fn linear(n: usize) -> Self {
        AlmostLinearOrder::Linear { n }
    }
    pub fn lb(n: usize) -> Self {
        AlmostLinearOrder::Lb { n }
    }

    pub fn size(&self) -> usize {
        match *self {
            AlmostLinearOrder::Linear { n } => n,
            AlmostLinearOrder::Lb { n } => n + 2,
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, AlmostLinearOrder::Linear { .. })
    }

    /// The two incomparable maxima, if any.
    pub fn maxima(&self) -> Option<(usize, usize)> {
        match *self {
            AlmostLinearOrder::Lb { n } => Some((n, n + 1)),
            AlmostLinearOrder::Linear { .. } => None,
        }
    }

    /// Strict order.
    pub fn less(&self, x: usize, y: usize) -> bool {
        match *self {
            AlmostLinearOrder::Linear { .. } => x < y,
            AlmostLinearOrder::Lb { n } => x < y && x < n,
        }
    }

    /// All orders of a given size, linear first.
    pub fn of_size(size: usize) -> Vec<Self> {
        let mut v = vec![Self::linear(size)];
        if size >= 2 {
            v.push(Self::lb(size - 2));
        }
        v
    }

    /// Forget the order between the two largest elements of a chain with at
    /// least two elements.
    pub fn forget_top(&self) -> Self {
        match *self {
            AlmostLinearOrder::Linear { n } if n >= 2 => Self::lb(n - 2),
            x => x,
        }
    }
}

/// A one-to-one homomorphism `map: dom → cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AloArrow {
    pub dom: AlmostLinearOrder,
    pub cod: AlmostLinearOrder,
    pub map: Vec<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("map has {got} entries, domain has {want}")]
    Length { got: usize, want: usize },
    #[error("image {0} out of range")]
    Range(usize),
    #[error("map is not injective at {0} and {1}")]
    NotInjective(usize, usize),
    #[error("{0} < {1} is not preserved")]
    NotMonotone(usize, usize),
    #[error("order is already linear")]
    AlreadyLinear,
}

impl AloArrow {
    pub fn new(dom: AlmostLinearOrder, cod: AlmostLinearOrder, map: Vec<usize>) -> Result<Self, OrderError> {
        let f = AloArrow { dom, cod, map };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(x: AlmostLinearOrder) -> Self {
        AloArrow { dom: x, cod: x, map: (0..x.size()).collect() }
    }

    pub fn validate(&self) -> Result<(), OrderError> {
        let n = self.dom.size();
        if self.map.len() != n {
            return Err(OrderError::Length { got: self.map.len(), want: n });
        }
        if let Some(&v) = self.map.iter().find(|&&v| v >= self.cod.size()) {
            return Err(OrderError::Range(v));
        }
        for x in 0..n {
            for y in 0..n {
                if x < y && self.map[x] == self.map[y] {
                    return Err(OrderError::NotInjective(x, y));
                }
                if self.dom.less(x, y) && !self.cod.less(self.map[x], self.map[y]) {
                    return Err(OrderError::NotMonotone(x, y));
                }
            }
        }
        Ok(())
    }

    /// Reflects the order as well.
    pub fn is_embedding(&self) -> bool {
        let n = self.dom.size();
        (0..n).all(|x| (0..n).all(|y| self.dom.less(x, y) == self.cod.less(self.map[x], self.map[y])))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &AloArrow) -> AloArrow {
        AloArrow { dom: self.dom, cod: g.cod, map: self.map.iter().map(|&x| g.map[x]).collect() }
    }
}

/// The two linear refinements of `L + B`: keep the maxima in index order, or
/// swap them.
pub fn refinements(x: AlmostLinearOrder) -> Result<[AloArrow; 2], OrderError> {
    let (a, b) = x.maxima().ok_or(OrderError::AlreadyLinear)?;
    let target = AlmostLinearOrder::linear(x.size());
    let keep: Vec<usize> = (0..x.size()).collect();
    let mut swap = keep.clone();
    swap.swap(a, b);
    Ok([AloArrow { dom: x, cod: target, map: keep }, AloArrow { dom: x, cod: target, map: swap }])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ArrowClass {
    Embedding,
    RefinementThenEmbedding {
        /// Which refinement (0 keeps the maxima order, 1 swaps).
        choice: usize,
        refinement: AloArrow,
        embedding: AloArrow,
    },
}

/// Split an arrow into an embedding, or a refinement followed by one.
pub fn classify_arrow(f: &AloArrow) -> Result<ArrowClass, OrderError> {
    f.validate()?;
    let Some((a, b)) = f.dom.maxima() else {
        return Ok(ArrowClass::Embedding);
    };
    let (fa, fb) = (f.map[a], f.map[b]);
    if !f.cod.less(fa, fb) && !f.cod.less(fb, fa) {
        return Ok(ArrowClass::Embedding);
    }
    let choice = usize::from(f.cod.less(fb, fa));
    let refinement = refinements(f.dom)?[choice].clone();
    // refinement is an involution on indices
    let embedding = AloArrow {
        dom: refinement.cod,
        cod: f.cod,
        map: (0..f.dom.size()).map(|i| f.map[refinement.map[i]]).collect(),
    };
    Ok(ArrowClass::RefinementThenEmbedding { choice, refinement, embedding })
}

/// Closed form: an arrow fails to be amalgamable exactly when it sends the
/// two maxima of `L + B` onto the two maxima of `L' + B`.
pub fn is_amalgamable_alo_arrow(f: &AloArrow) -> Result<bool, OrderError> {
    f.validate()?;
    Ok(match (f.dom.maxima(), f.cod.maxima()) {
        (Some((a, b)), Some((c, d))) => {
            let mut img = [f.map[a], f.map[b]];
            img.sort_unstable();
            img != [c, d]
        }
        _ => true,
    })
}

/// Objects in the image of the ternary-structure functor: chains with at
/// most one element and every `L + B`.
pub fn is_ternary_shape(x: &AlmostLinearOrder) -> bool {
    !x.is_linear() || x.size() <= 1
}

/// `L → L + B` for chains of size at least two, the identity otherwise.
pub fn ternary_completion(x: &AlmostLinearOrder) -> AloArrow {
    if is_ternary_shape(x) {
        AloArrow::identity(*x)
    } else {
        let n = x.size();
        AloArrow { dom: *x, cod: AlmostLinearOrder::lb(n), map: (0..n).collect() }
    }
}

/// Ternary-shaped orders as a full subcategory, with `ternary_completion` for
/// cofinality.
pub fn ternary_subcategory(c: &AlmostLinearOrders) -> crate::category::FullSubcategory<'_, AlmostLinearOrders> {
    crate::category::FullSubcategory::new(c, is_ternary_shape).with_completion(ternary_completion)
}

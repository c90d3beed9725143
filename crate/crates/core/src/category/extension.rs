use super::{arrows_over, EnumerableCategory};
use serde::Serialize;

/// The arrow extension of a base category: objects are base arrows
/// `α: a → a'`, and an arrow `α → β` (with `β: b → b'`) is a base arrow
/// `a → b` that factors through `α`. Identities are added formally when the
/// base identity does not factor.
pub struct ArrowExtension<'a, C: EnumerableCategory> {
    pub base: &'a C,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtArrow<A> {
    pub dom: A,
    pub cod: A,
    /// `None` is the formal identity.
    pub map: Option<A>,
}

impl<'a, C: EnumerableCategory> ArrowExtension<'a, C> {
    pub fn new(base: &'a C) -> Self {
        ArrowExtension { base }
    }

    /// The base arrow `a → b` underlying `f` (the base identity for formal
    /// identities).
    pub fn underlying(&self, f: &ExtArrow<C::Arr>) -> C::Arr {
        match &f.map {
            Some(h) => h.clone(),
            None => self.base.identity(&self.base.dom(&f.dom)),
        }
    }

    /// `α` read as an arrow from the object `α` to the object `id_{a'}`.
    pub fn arrow_to_identity(&self, alpha: &C::Arr) -> ExtArrow<C::Arr> {
        let target = self.base.identity(&self.base.cod(alpha));
        ExtArrow { dom: alpha.clone(), cod: target, map: Some(alpha.clone()) }
    }

    fn base_identity_factors(&self, alpha: &C::Arr) -> bool {
        let a = self.base.dom(alpha);
        arrows_over(self.base, alpha, &a).contains(&self.base.identity(&a))
    }

    // base arrow b → b' composed after the underlying map
    fn pushed(&self, f: &ExtArrow<C::Arr>) -> C::Arr {
        self.base.compose(&f.cod, &self.underlying(f))
    }
}

impl<C: EnumerableCategory> EnumerableCategory for ArrowExtension<'_, C> {
    type Obj = C::Arr;
    type Arr = ExtArrow<C::Arr>;

    fn grade(&self, alpha: &C::Arr) -> usize {
        self.base.grade(&self.base.dom(alpha)) + self.base.grade(&self.base.cod(alpha))
    }
    fn objects_of_grade(&self, g: usize) -> Vec<C::Arr> {
        let mut out = Vec::new();
        for i in 0..=g {
            let sources = self.base.objects_of_grade(i);
            if sources.is_empty() {
                continue;
            }
            let targets = self.base.objects_of_grade(g - i);
            for a in &sources {
                for b in &targets {
                    out.extend(self.base.hom(a, b));
                }
            }
        }
        out
    }
    fn max_grade(&self) -> Option<usize> {
        self.base.max_grade().map(|m| 2 * m)
    }
    fn hom(&self, alpha: &C::Arr, beta: &C::Arr) -> Vec<ExtArrow<C::Arr>> {
        let b = self.base.dom(beta);
        let mut out: Vec<_> = arrows_over(self.base, alpha, &b)
            .into_iter()
            .map(|h| ExtArrow { dom: alpha.clone(), cod: beta.clone(), map: Some(h) })
            .collect();
        if alpha == beta && !self.base_identity_factors(alpha) {
            out.insert(0, ExtArrow { dom: alpha.clone(), cod: alpha.clone(), map: None });
        }
        out
    }
    fn dom(&self, f: &ExtArrow<C::Arr>) -> C::Arr {
        f.dom.clone()
    }
    fn cod(&self, f: &ExtArrow<C::Arr>) -> C::Arr {
        f.cod.clone()
    }
    fn compose(&self, g: &ExtArrow<C::Arr>, f: &ExtArrow<C::Arr>) -> ExtArrow<C::Arr> {
        match (&g.map, &f.map) {
            (None, _) => f.clone(),
            (_, None) => g.clone(),
            (Some(h2), Some(h1)) => ExtArrow {
                dom: f.dom.clone(),
                cod: g.cod.clone(),
                map: Some(self.base.compose(h2, h1)),
            },
        }
    }
    fn identity(&self, alpha: &C::Arr) -> ExtArrow<C::Arr> {
        let map = if self.base_identity_factors(alpha) {
            Some(self.base.identity(&self.base.dom(alpha)))
        } else {
            None
        };
        ExtArrow { dom: alpha.clone(), cod: alpha.clone(), map }
    }
    fn is_object(&self, alpha: &C::Arr) -> bool {
        self.base.is_arrow(alpha)
    }
    fn is_arrow(&self, f: &ExtArrow<C::Arr>) -> bool {
        if !self.base.is_arrow(&f.dom) || !self.base.is_arrow(&f.cod) {
            return false;
        }
        match &f.map {
            None => f.dom == f.cod && !self.base_identity_factors(&f.dom),
            Some(h) => self.base.is_arrow(h) && arrows_over(self.base, &f.dom, &self.base.dom(&f.cod)).contains(h),
        }
    }
    fn amalgamate(&self, p: &Self::Arr, q: &Self::Arr) -> Option<(Self::Arr, Self::Arr)> {
        let (l1, l2) = self.base.amalgamate(&self.pushed(p), &self.pushed(q))?;
        let w = self.base.cod(&l1);
        let target = self.base.identity(&w);
        Some((
            ExtArrow { dom: p.cod.clone(), cod: target.clone(), map: Some(self.base.compose(&l1, &p.cod)) },
            ExtArrow { dom: q.cod.clone(), cod: target, map: Some(self.base.compose(&l2, &q.cod)) },
        ))
    }
    fn obstruction(&self, p: &Self::Arr, q: &Self::Arr) -> Option<String> {
        self.base.obstruction(&self.pushed(p), &self.pushed(q))
    }
    fn initial_object(&self) -> Option<C::Arr> {
        self.base.initial_object().map(|i| self.base.identity(&i))
    }
    fn arrows_raise_grade(&self) -> bool {
        self.base.arrows_raise_grade()
    }
    // β: b → b' receives an arrow from α: a → a' only if b receives one from a'
    fn targets(&self, alpha: &C::Arr, g: usize) -> Vec<C::Arr> {
        let top = self.base.cod(alpha);
        let mut out = Vec::new();
        for i in 0..=g {
            for b in self.base.targets(&top, i) {
                for b2 in self.base.targets(&b, g - i) {
                    out.extend(self.base.hom(&b, &b2));
                }
            }
        }
        out
    }
    // every β: b → b' maps on into id_{b'}, through β itself
    fn cofinal_targets(&self, alpha: &C::Arr, g: usize) -> Vec<C::Arr> {
        if g % 2 == 1 {
            return Vec::new();
        }
        let top = self.base.cod(alpha);
        self.base.targets(&top, g / 2).iter().map(|b| self.base.identity(b)).collect()
    }
}

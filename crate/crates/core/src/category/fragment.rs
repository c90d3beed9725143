use super::EnumerableCategory;

/// The full subcategory of objects of grade at most `top`. It is finite when
/// every grade is, so the generic searches over it are exhaustive.
pub struct Fragment<'a, C: EnumerableCategory> {
    pub base: &'a C,
    pub top: usize,
}

impl<'a, C: EnumerableCategory> Fragment<'a, C> {
    pub fn new(base: &'a C, top: usize) -> Self {
        Fragment { base, top }
    }

    fn fits(&self, a: &C::Obj) -> bool {
        self.base.grade(a) <= self.top
    }
}

impl<C: EnumerableCategory> EnumerableCategory for Fragment<'_, C> {
    type Obj = C::Obj;
    type Arr = C::Arr;

    fn grade(&self, a: &C::Obj) -> usize {
        self.base.grade(a)
    }
    fn objects_of_grade(&self, g: usize) -> Vec<C::Obj> {
        if g > self.top {
            return Vec::new();
        }
        self.base.objects_of_grade(g)
    }
    fn max_grade(&self) -> Option<usize> {
        Some(self.base.max_grade().map_or(self.top, |m| m.min(self.top)))
    }
    fn hom(&self, a: &C::Obj, b: &C::Obj) -> Vec<C::Arr> {
        self.base.hom(a, b)
    }
    fn dom(&self, f: &C::Arr) -> C::Obj {
        self.base.dom(f)
    }
    fn cod(&self, f: &C::Arr) -> C::Obj {
        self.base.cod(f)
    }
    fn compose(&self, g: &C::Arr, f: &C::Arr) -> C::Arr {
        self.base.compose(g, f)
    }
    fn identity(&self, a: &C::Obj) -> C::Arr {
        self.base.identity(a)
    }
    fn is_object(&self, a: &C::Obj) -> bool {
        self.fits(a) && self.base.is_object(a)
    }
    fn is_arrow(&self, f: &C::Arr) -> bool {
        self.fits(&self.base.cod(f)) && self.fits(&self.base.dom(f)) && self.base.is_arrow(f)
    }
    fn amalgamate(&self, p: &C::Arr, q: &C::Arr) -> Option<(C::Arr, C::Arr)> {
        let (pp, qq) = self.base.amalgamate(p, q)?;
        self.fits(&self.base.cod(&pp)).then_some((pp, qq))
    }
    // a clash in the base rules out cocones here too
    fn obstruction(&self, p: &C::Arr, q: &C::Arr) -> Option<String> {
        self.base.obstruction(p, q)
    }
    fn initial_object(&self) -> Option<C::Obj> {
        self.base.initial_object().filter(|i| self.fits(i))
    }
    fn arrows_raise_grade(&self) -> bool {
        self.base.arrows_raise_grade()
    }
    fn targets(&self, a: &C::Obj, g: usize) -> Vec<C::Obj> {
        if g > self.top {
            return Vec::new();
        }
        self.base.targets(a, g)
    }
    fn factor_through(&self, along: &C::Arr, target: &C::Arr) -> Option<C::Arr> {
        self.base.factor_through(along, target)
    }
}

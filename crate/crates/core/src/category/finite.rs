use super::EnumerableCategory;
use std::collections::HashMap;

/// A finite category given by explicit tables. Objects are `0..objects`,
/// arrows are `0..arrows`; every object sits in grade 0.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    identities: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FiniteCategoryError {
    #[error("arrow {0} has an endpoint out of range")]
    Endpoint(usize),
    #[error("identity of object {0} is not an endomorphism of it")]
    Identity(usize),
    #[error("composite {g}∘{f} missing or ill-typed")]
    Composite { g: usize, f: usize },
    #[error("identity law fails at arrow {0}")]
    IdentityLaw(usize),
    #[error("composition is not associative at ({h}, {g}, {f})")]
    Associativity { h: usize, g: usize, f: usize },
}

impl FiniteCategory {
    /// `arrows[i] = (dom, cod)`, `identities[x]` is the identity arrow of `x`,
    /// and `compose` lists `(g, f, g∘f)` for every composable pair.
    pub fn new(
        objects: usize,
        arrows: &[(usize, usize)],
        identities: &[usize],
        compose: &[(usize, usize, usize)],
    ) -> Result<Self, FiniteCategoryError> {
        for (i, &(d, c)) in arrows.iter().enumerate() {
            if d >= objects || c >= objects {
                return Err(FiniteCategoryError::Endpoint(i));
            }
        }
        let cat = FiniteCategory {
            objects,
            dom: arrows.iter().map(|a| a.0).collect(),
            cod: arrows.iter().map(|a| a.1).collect(),
            identities: identities.to_vec(),
            compose: compose.iter().map(|&(g, f, h)| ((g, f), h)).collect(),
        };
        cat.check()?;
        Ok(cat)
    }

    /// The category with a single object and only its identity.
    pub fn trivial() -> Self {
        Self::new(1, &[(0, 0)], &[0], &[(0, 0, 0)]).unwrap()
    }

    /// `n` objects and nothing but identities.
    pub fn discrete(n: usize) -> Self {
        let arrows: Vec<_> = (0..n).map(|i| (i, i)).collect();
        let ids: Vec<_> = (0..n).collect();
        let comp: Vec<_> = (0..n).map(|i| (i, i, i)).collect();
        Self::new(n, &arrows, &ids, &comp).unwrap()
    }

    pub fn arrow_count(&self) -> usize {
        self.dom.len()
    }

    fn check(&self) -> Result<(), FiniteCategoryError> {
        let n = self.dom.len();
        if self.identities.len() != self.objects {
            return Err(FiniteCategoryError::Identity(self.identities.len()));
        }
        for (x, &i) in self.identities.iter().enumerate() {
            if i >= n || self.dom[i] != x || self.cod[i] != x {
                return Err(FiniteCategoryError::Identity(x));
            }
        }
        for f in 0..n {
            for g in 0..n {
                if self.cod[f] != self.dom[g] {
                    continue;
                }
                match self.compose.get(&(g, f)) {
                    Some(&h) if h < n && self.dom[h] == self.dom[f] && self.cod[h] == self.cod[g] => {}
                    _ => return Err(FiniteCategoryError::Composite { g, f }),
                }
            }
        }
        for f in 0..n {
            if self.compose[&(self.identities[self.cod[f]], f)] != f
                || self.compose[&(f, self.identities[self.dom[f]])] != f
            {
                return Err(FiniteCategoryError::IdentityLaw(f));
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| self.dom[g] == self.cod[f]) {
                for h in (0..n).filter(|&h| self.dom[h] == self.cod[g]) {
                    let l = self.compose[&(h, self.compose[&(g, f)])];
                    let r = self.compose[&(self.compose[&(h, g)], f)];
                    if l != r {
                        return Err(FiniteCategoryError::Associativity { h, g, f });
                    }
                }
            }
        }
        Ok(())
    }
}

impl EnumerableCategory for FiniteCategory {
    type Obj = usize;
    type Arr = usize;

    fn grade(&self, _a: &usize) -> usize {
        0
    }
    fn objects_of_grade(&self, g: usize) -> Vec<usize> {
        if g == 0 {
            (0..self.objects).collect()
        } else {
            Vec::new()
        }
    }
    fn max_grade(&self) -> Option<usize> {
        Some(0)
    }
    fn hom(&self, a: &usize, b: &usize) -> Vec<usize> {
        (0..self.dom.len()).filter(|&f| self.dom[f] == *a && self.cod[f] == *b).collect()
    }
    fn dom(&self, f: &usize) -> usize {
        self.dom[*f]
    }
    fn cod(&self, f: &usize) -> usize {
        self.cod[*f]
    }
    fn compose(&self, g: &usize, f: &usize) -> usize {
        self.compose[&(*g, *f)]
    }
    fn identity(&self, a: &usize) -> usize {
        self.identities[*a]
    }
    fn is_object(&self, a: &usize) -> bool {
        *a < self.objects
    }
    fn is_arrow(&self, f: &usize) -> bool {
        *f < self.dom.len()
    }
}

use super::{is_amalgamable_arrow, objects_up_to, CategoryError, EnumerableCategory};
use crate::verdict::{BudgetReport, SearchBudget, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Extra grades allowed for the pairs quantified over when testing a
/// subcategory arrow for amalgamability.
pub const ARROW_SLACK: usize = 2;

type Member<O> = Box<dyn Fn(&O) -> bool + Send + Sync>;
type Completion<O, A> = Box<dyn Fn(&O) -> A + Send + Sync>;

/// A full subcategory of `base` cut out by a membership predicate.
///
/// `completion`, when given, sends every base object to an arrow into a
/// member object; it is used (and re-checked) for cofinality.
pub struct FullSubcategory<'a, C: EnumerableCategory> {
    pub base: &'a C,
    member: Member<C::Obj>,
    completion: Option<Completion<C::Obj, C::Arr>>,
}

impl<'a, C: EnumerableCategory> FullSubcategory<'a, C> {
    pub fn new(base: &'a C, member: impl Fn(&C::Obj) -> bool + Send + Sync + 'static) -> Self {
        FullSubcategory { base, member: Box::new(member), completion: None }
    }

    pub fn with_completion(mut self, completion: impl Fn(&C::Obj) -> C::Arr + Send + Sync + 'static) -> Self {
        self.completion = Some(Box::new(completion));
        self
    }

    pub fn contains(&self, a: &C::Obj) -> bool {
        (self.member)(a)
    }
}

impl<C: EnumerableCategory> EnumerableCategory for FullSubcategory<'_, C> {
    type Obj = C::Obj;
    type Arr = C::Arr;

    fn grade(&self, a: &C::Obj) -> usize {
        self.base.grade(a)
    }
    fn objects_of_grade(&self, g: usize) -> Vec<C::Obj> {
        self.base.objects_of_grade(g).into_iter().filter(|a| self.contains(a)).collect()
    }
    fn max_grade(&self) -> Option<usize> {
        self.base.max_grade()
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
        self.base.is_object(a) && self.contains(a)
    }
    fn is_arrow(&self, f: &C::Arr) -> bool {
        self.base.is_arrow(f) && self.contains(&self.base.dom(f)) && self.contains(&self.base.cod(f))
    }
    fn targets(&self, a: &C::Obj, g: usize) -> Vec<C::Obj> {
        self.base.targets(a, g).into_iter().filter(|x| self.contains(x)).collect()
    }
    fn factor_through(&self, along: &C::Arr, target: &C::Arr) -> Option<C::Arr> {
        self.base.factor_through(along, target)
    }
    fn amalgamate(&self, p: &C::Arr, q: &C::Arr) -> Option<(C::Arr, C::Arr)> {
        let (pp, qq) = self.base.amalgamate(p, q)?;
        let w = self.base.cod(&pp);
        if self.contains(&w) {
            return Some((pp, qq));
        }
        let c = self.completion.as_ref()?(&w);
        Some((self.base.compose(&c, &pp), self.base.compose(&c, &qq)))
    }
    fn obstruction(&self, p: &C::Arr, q: &C::Arr) -> Option<String> {
        self.base.obstruction(p, q)
    }
    fn initial_object(&self) -> Option<C::Obj> {
        self.base.initial_object().filter(|i| self.contains(i))
    }
    fn arrows_raise_grade(&self) -> bool {
        self.base.arrows_raise_grade()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionWitness<O, A> {
    pub size_bound: usize,
    /// For each base object, an arrow into a member object.
    pub cofinal: Vec<(O, A)>,
    /// Base objects outside the subcategory, all amalgamable.
    pub outside: Vec<O>,
    /// Each amalgamable subcategory arrow with a factorization `h ∘ k` through
    /// an amalgamable base object.
    pub factorizations: Vec<(A, A, A)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionCertificate<O, A> {
    NotCofinal(O),
    OutsideNotAmalgamable(O),
    NoFactorization(A),
}

fn cofinal_arrow<C: EnumerableCategory>(
    sub: &FullSubcategory<C>,
    x: &C::Obj,
    budget: &SearchBudget,
) -> Option<C::Arr> {
    let c = sub.base;
    if let Some(comp) = &sub.completion {
        let f = comp(x);
        if c.is_arrow(&f) && c.dom(&f) == *x && sub.contains(&c.cod(&f)) {
            return Some(f);
        }
    }
    if sub.contains(x) {
        return Some(c.identity(x));
    }
    let cap = c.max_grade().unwrap_or(c.grade(x) + budget.max_candidates);
    let mut tried = 0;
    for g in 0..=cap {
        for y in sub.objects_of_grade(g) {
            if tried >= budget.max_candidates {
                return None;
            }
            tried += 1;
            if let Some(f) = c.hom(x, &y).into_iter().next() {
                return Some(f);
            }
        }
    }
    None
}

/// Check within `budget` that `base ⊇ sub` is an amalgamation extension:
/// `sub` is cofinal, every base object outside `sub` is amalgamable, and every
/// amalgamable `sub`-arrow factors through an amalgamable base object.
pub fn verify_amalgamation_extension<C: EnumerableCategory>(
    sub: &FullSubcategory<C>,
    budget: &SearchBudget,
) -> Result<Verdict<ExtensionWitness<C::Obj, C::Arr>, ExtensionCertificate<C::Obj, C::Arr>>, CategoryError> {
    let c = sub.base;
    let objs = objects_up_to(c, budget.max_size);
    let mut cofinal = Vec::new();
    for x in &objs {
        match cofinal_arrow(sub, x, budget) {
            Some(f) => cofinal.push((x.clone(), f)),
            None => {
                return Ok(match c.max_grade() {
                    Some(_) => Verdict::No(ExtensionCertificate::NotCofinal(x.clone())),
                    None => Verdict::Unknown(BudgetReport::new("no member target among the candidates")),
                })
            }
        }
    }

    let mut amalgamable_obj: HashMap<C::Obj, bool> = HashMap::new();
    let mut unknown = None;
    let mut object_status = |x: &C::Obj| -> Result<Option<bool>, CategoryError> {
        if let Some(&b) = amalgamable_obj.get(x) {
            return Ok(Some(b));
        }
        let v = is_amalgamable_arrow(c, &c.identity(x), budget)?;
        Ok(v.decided().inspect(|&b| {
            amalgamable_obj.insert(x.clone(), b);
        }))
    };

    let mut outside = Vec::new();
    for x in objs.iter().filter(|x| !sub.contains(x)) {
        match object_status(x)? {
            Some(true) => outside.push(x.clone()),
            Some(false) => return Ok(Verdict::No(ExtensionCertificate::OutsideNotAmalgamable(x.clone()))),
            None => {
                unknown.get_or_insert_with(|| BudgetReport::new("amalgamability of an outside object undecided"));
            }
        }
    }

    let mut factorizations = Vec::new();
    let members: Vec<&C::Obj> = objs.iter().filter(|x| sub.contains(x)).collect();
    for a in &members {
        for b in &members {
            for alpha in c.hom(a, b) {
                // pairs out of b must be able to leave the size bound, or
                // arrows at the bound pass vacuously
                let local = SearchBudget { max_size: budget.max_size.max(c.grade(b) + ARROW_SLACK), ..budget.clone() };
                match is_amalgamable_arrow(sub, &alpha, &local)? {
                    Verdict::Yes(_) => {}
                    Verdict::No(_) => continue,
                    Verdict::Unknown(r) => {
                        unknown.get_or_insert(r);
                        continue;
                    }
                }
                let mut found = None;
                'mid: for x in objs.iter().filter(|x| c.grade(x) <= c.grade(b)) {
                    for k in c.hom(a, x) {
                        for h in c.hom(x, b) {
                            if c.compose(&h, &k) == alpha && object_status(x)? == Some(true) {
                                found = Some((alpha.clone(), k.clone(), h));
                                break 'mid;
                            }
                        }
                    }
                }
                match found {
                    Some(t) => factorizations.push(t),
                    None => {
                        if c.max_grade().is_some() {
                            return Ok(Verdict::No(ExtensionCertificate::NoFactorization(alpha)));
                        }
                        unknown.get_or_insert_with(|| {
                            BudgetReport::new(format!("no factorization through an amalgamable object for {alpha:?}"))
                        });
                    }
                }
            }
        }
    }
    if let Some(r) = unknown {
        return Ok(Verdict::Unknown(r));
    }
    Ok(Verdict::Yes(ExtensionWitness { size_bound: budget.max_size, cofinal, outside, factorizations }))
}

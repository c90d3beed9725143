//! Categories given by graded object enumeration and hom-set listing, with
//! bounded checks for amalgamability, directedness and Ramsey arrows.

pub mod coloring;
mod extension;
mod finite;
mod fragment;
mod subcategory;

pub use extension::{ArrowExtension, ExtArrow};
pub use finite::FiniteCategory;
pub use fragment::Fragment;
pub use subcategory::{verify_amalgamation_extension, ExtensionCertificate, ExtensionWitness, FullSubcategory};

use crate::verdict::{BudgetReport, SearchBudget, Verdict};
use coloring::{ColoringOutcome, Hypergraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

/// A possibly infinite category seen through a size grading.
///
/// `objects_of_grade` and `hom` must list their results in the same order on
/// every call.
pub trait EnumerableCategory: Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync + Serialize;
    type Arr: Clone + Eq + Hash + Debug + Send + Sync + Serialize;

    fn grade(&self, a: &Self::Obj) -> usize;
    fn objects_of_grade(&self, g: usize) -> Vec<Self::Obj>;
    /// `Some(g)` if every object has grade at most `g`.
    fn max_grade(&self) -> Option<usize> {
        None
    }
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Arr>;
    fn dom(&self, f: &Self::Arr) -> Self::Obj;
    fn cod(&self, f: &Self::Arr) -> Self::Obj;
    /// `g ∘ f`; the caller guarantees `cod(f) = dom(g)`.
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr;
    fn identity(&self, a: &Self::Obj) -> Self::Arr;
    fn is_object(&self, a: &Self::Obj) -> bool;
    fn is_arrow(&self, f: &Self::Arr) -> bool;

    /// Backend amalgamation of `p: z → x` and `q: z → y`: arrows `p': x → w`
    /// and `q': y → w` with `p'∘p = q'∘q`. Callers re-check the answer.
    fn amalgamate(&self, _p: &Self::Arr, _q: &Self::Arr) -> Option<(Self::Arr, Self::Arr)> {
        None
    }
    /// A reason why `p` and `q` admit no cocone at all, if the backend can
    /// prove one.
    fn obstruction(&self, _p: &Self::Arr, _q: &Self::Arr) -> Option<String> {
        None
    }
    fn initial_object(&self) -> Option<Self::Obj> {
        None
    }
    /// True if `hom(a, b)` nonempty implies `grade(a) <= grade(b)`; lets the
    /// searches skip small candidates.
    fn arrows_raise_grade(&self) -> bool {
        false
    }
    /// A backend proof that `alpha` is not a Ramsey arrow.
    fn ramsey_obstruction(&self, _alpha: &Self::Arr) -> Option<String> {
        None
    }
    /// Objects of grade `g` that may receive an arrow from `a`. Any superset
    /// of the true answer is fine; backends override this to avoid listing
    /// a whole grade.
    fn targets(&self, _a: &Self::Obj, g: usize) -> Vec<Self::Obj> {
        self.objects_of_grade(g)
    }
    /// Objects of grade `g` such that every object receiving an arrow from
    /// `a` maps on into one of them (possibly of another grade). Pairs out
    /// of an arrow only need checking into these. Defaults to [`targets`].
    ///
    /// [`targets`]: EnumerableCategory::targets
    fn cofinal_targets(&self, a: &Self::Obj, g: usize) -> Vec<Self::Obj> {
        self.targets(a, g)
    }
    /// Some `h` with `h ∘ along = target`, where `dom(along) = dom(target)`.
    fn factor_through(&self, along: &Self::Arr, target: &Self::Arr) -> Option<Self::Arr> {
        self.hom(&self.cod(along), &self.cod(target))
            .into_iter()
            .find(|h| self.compose(h, along) == *target)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("arrow set is not contained in C(alpha, b): {0}")]
    NotOverAlpha(String),
}

/// All objects with grade at most `g`, in canonical order.
pub fn objects_up_to<C: EnumerableCategory>(c: &C, g: usize) -> Vec<C::Obj> {
    let top = c.max_grade().map_or(g, |m| m.min(g));
    (0..=top).flat_map(|i| c.objects_of_grade(i)).collect()
}

/// All arrows out of `a` into objects of grade at most `g`.
pub fn arrows_out<C: EnumerableCategory>(c: &C, a: &C::Obj, g: usize) -> Vec<C::Arr> {
    let top = c.max_grade().map_or(g, |m| m.min(g));
    let start = if c.arrows_raise_grade() { c.grade(a) } else { 0 };
    (start..=top).flat_map(|i| c.targets(a, i)).flat_map(|x| c.hom(a, &x)).collect()
}

// arrows out of `a` into the cofinal targets up to grade `g`
fn cofinal_arrows_out<C: EnumerableCategory>(c: &C, a: &C::Obj, g: usize) -> Vec<C::Arr> {
    let top = c.max_grade().map_or(g, |m| m.min(g));
    let start = if c.arrows_raise_grade() { c.grade(a) } else { 0 };
    (start..=top).flat_map(|i| c.cofinal_targets(a, i)).flat_map(|x| c.hom(a, &x)).collect()
}

/// `C(α, b) = C(a', b) ∘ α` without repetitions, in canonical order.
pub fn arrows_over<C: EnumerableCategory>(c: &C, alpha: &C::Arr, b: &C::Obj) -> Vec<C::Arr> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for h in c.hom(&c.cod(alpha), b) {
        let f = c.compose(&h, alpha);
        if seen.insert(f.clone()) {
            out.push(f);
        }
    }
    out
}

fn check_arrow<C: EnumerableCategory>(c: &C, f: &C::Arr) -> Result<(), CategoryError> {
    if c.is_arrow(f) {
        Ok(())
    } else {
        Err(CategoryError::InvalidArrow(format!("{f:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocone<A> {
    pub f: A,
    pub g: A,
    pub f_prime: A,
    pub g_prime: A,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationWitness<A> {
    /// Largest grade the pairs `(f, g)` were drawn from.
    pub size_bound: usize,
    pub pairs_checked: usize,
    /// One cocone per pair with distinct composites.
    pub cocones: Vec<Cocone<A>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationCertificate<A> {
    pub f: A,
    pub g: A,
    pub reason: String,
}

pub type AmalgamationVerdict<A> = Verdict<AmalgamationWitness<A>, AmalgamationCertificate<A>>;

enum CoconeSearch<A> {
    Found(A, A),
    Missing { exhaustive: bool, candidates: usize },
}

fn valid_cocone<C: EnumerableCategory>(c: &C, p: &C::Arr, q: &C::Arr, pp: &C::Arr, qq: &C::Arr) -> bool {
    c.is_arrow(pp)
        && c.is_arrow(qq)
        && c.dom(pp) == c.cod(p)
        && c.dom(qq) == c.cod(q)
        && c.cod(pp) == c.cod(qq)
        && c.compose(pp, p) == c.compose(qq, q)
}

fn search_cocone<C: EnumerableCategory>(c: &C, p: &C::Arr, q: &C::Arr, budget: &SearchBudget) -> CoconeSearch<C::Arr> {
    if let Some((pp, qq)) = c.amalgamate(p, q) {
        if valid_cocone(c, p, q, &pp, &qq) {
            return CoconeSearch::Found(pp, qq);
        }
    }
    let (x, y) = (c.cod(p), c.cod(q));
    let start = if c.arrows_raise_grade() { c.grade(&x).max(c.grade(&y)) } else { 0 };
    let cap = match c.max_grade() {
        Some(m) => m,
        None => c.grade(&x).max(c.grade(&y)) + budget.max_candidates,
    };
    let mut tried = 0;
    for g in start..=cap {
        for w in c.cofinal_targets(&x, g) {
            if tried >= budget.max_candidates {
                return CoconeSearch::Missing { exhaustive: false, candidates: tried };
            }
            tried += 1;
            let from_y = c.hom(&y, &w);
            if from_y.is_empty() {
                continue;
            }
            let targets: HashMap<C::Arr, C::Arr> =
                from_y.into_iter().map(|qq| (c.compose(&qq, q), qq)).collect();
            for pp in c.hom(&x, &w) {
                if let Some(qq) = targets.get(&c.compose(&pp, p)) {
                    return CoconeSearch::Found(pp, qq.clone());
                }
            }
        }
    }
    CoconeSearch::Missing { exhaustive: c.max_grade().is_some(), candidates: tried }
}

enum PairOutcome<A> {
    Cocone(Cocone<A>),
    No(AmalgamationCertificate<A>),
    Unknown(usize),
}

/// Decide within `budget` whether `alpha` is amalgamable: every pair
/// `f, g` out of `cod(alpha)` into objects of grade at most `budget.max_size`
/// must admit `f', g'` with `f'∘f∘alpha = g'∘g∘alpha`.
///
/// No is only returned with a backend obstruction or when the category is
/// finite and was searched exhaustively.
pub fn is_amalgamable_arrow<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    budget: &SearchBudget,
) -> Result<AmalgamationVerdict<C::Arr>, CategoryError> {
    check_arrow(c, alpha)?;
    let deadline = budget.deadline();
    let outs = cofinal_arrows_out(c, &c.cod(alpha), budget.max_size);
    // pairs only matter through their composites with alpha
    let mut seen = HashMap::new();
    let mut reps: Vec<(C::Arr, C::Arr)> = Vec::new();
    for f in outs {
        let p = c.compose(&f, alpha);
        if !seen.contains_key(&p) {
            seen.insert(p.clone(), reps.len());
            reps.push((f, p));
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..reps.len()).flat_map(|i| (i + 1..reps.len()).map(move |j| (i, j))).collect();
    let decide = |&(i, j): &(usize, usize)| -> PairOutcome<C::Arr> {
        if deadline.passed() {
            return PairOutcome::Unknown(0);
        }
        let (f, p) = &reps[i];
        let (g, q) = &reps[j];
        if let Some(reason) = c.obstruction(p, q) {
            return PairOutcome::No(AmalgamationCertificate { f: f.clone(), g: g.clone(), reason });
        }
        match search_cocone(c, p, q, budget) {
            CoconeSearch::Found(pp, qq) => PairOutcome::Cocone(Cocone { f: f.clone(), g: g.clone(), f_prime: pp, g_prime: qq }),
            CoconeSearch::Missing { exhaustive: true, .. } => PairOutcome::No(AmalgamationCertificate {
                f: f.clone(),
                g: g.clone(),
                reason: "no cocone in the finite category".into(),
            }),
            CoconeSearch::Missing { candidates, .. } => PairOutcome::Unknown(candidates),
        }
    };
    let mut cocones = Vec::with_capacity(pairs.len());
    let mut unknown: Option<usize> = None;
    // chunks keep the first refutation in pair order while stopping early
    for chunk in pairs.chunks(256) {
        let outcomes: Vec<PairOutcome<C::Arr>> = if rayon::current_num_threads() > 1 {
            chunk.par_iter().map(decide).collect()
        } else {
            chunk.iter().map(decide).collect()
        };
        for o in outcomes {
            match o {
                PairOutcome::Cocone(k) => cocones.push(k),
                PairOutcome::No(cert) => return Ok(Verdict::No(cert)),
                PairOutcome::Unknown(n) => {
                    unknown.get_or_insert(n);
                }
            }
        }
    }
    if let Some(n) = unknown {
        return Ok(Verdict::Unknown(BudgetReport {
            reason: "a pair had no cocone among the candidate objects".into(),
            objects_examined: n,
            pairs_examined: pairs.len(),
            coloring_nodes: 0,
        }));
    }
    Ok(Verdict::Yes(AmalgamationWitness {
        size_bound: budget.max_size,
        pairs_checked: pairs.len(),
        cocones,
    }))
}

/// Re-check every cocone of an amalgamation witness.
pub fn check_amalgamation_witness<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    w: &AmalgamationWitness<C::Arr>,
) -> bool {
    w.cocones.iter().all(|k| {
        let p = c.compose(&k.f, alpha);
        let q = c.compose(&k.g, alpha);
        valid_cocone(c, &p, &q, &k.f_prime, &k.g_prime)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointTarget<O, A> {
    pub x: O,
    pub y: O,
    pub from_x: A,
    pub from_y: A,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedWitness<O, A> {
    pub size_bound: usize,
    pub targets: Vec<JointTarget<O, A>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedCertificate<O> {
    pub x: O,
    pub y: O,
}

/// Find arrows `x → z ← y` for `x, y` of grade at most `budget.max_size`.
pub fn joint_target<C: EnumerableCategory>(
    c: &C,
    x: &C::Obj,
    y: &C::Obj,
    budget: &SearchBudget,
) -> Option<(C::Arr, C::Arr)> {
    if let Some(i) = c.initial_object() {
        let (fx, fy) = (c.hom(&i, x), c.hom(&i, y));
        if let (Some(p), Some(q)) = (fx.first(), fy.first()) {
            if let CoconeSearch::Found(a, b) = search_cocone(c, p, q, &SearchBudget { max_candidates: 0, ..budget.clone() }) {
                return Some((a, b));
            }
        }
    }
    let cap = c.max_grade().unwrap_or(c.grade(x).max(c.grade(y)) + budget.max_candidates);
    let start = if c.arrows_raise_grade() { c.grade(x).max(c.grade(y)) } else { 0 };
    let mut tried = 0;
    for g in start..=cap {
        for z in c.objects_of_grade(g) {
            if tried >= budget.max_candidates {
                return None;
            }
            tried += 1;
            if let (Some(a), Some(b)) = (c.hom(x, &z).into_iter().next(), c.hom(y, &z).into_iter().next()) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Check that every two objects of grade at most `budget.max_size` have a
/// common target.
pub fn is_directed<C: EnumerableCategory>(
    c: &C,
    budget: &SearchBudget,
) -> Verdict<DirectedWitness<C::Obj, C::Arr>, DirectedCertificate<C::Obj>> {
    let objs = objects_up_to(c, budget.max_size);
    let pairs: Vec<(usize, usize)> =
        (0..objs.len()).flat_map(|i| (i..objs.len()).map(move |j| (i, j))).collect();
    let found: Vec<Option<(C::Arr, C::Arr)>> = pairs
        .par_iter()
        .map(|&(i, j)| joint_target(c, &objs[i], &objs[j], budget))
        .collect();
    let mut targets = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(found) {
        match r {
            Some((a, b)) => targets.push(JointTarget {
                x: objs[i].clone(),
                y: objs[j].clone(),
                from_x: a,
                from_y: b,
            }),
            None => {
                let exhaustive = c.max_grade().is_some_and(|m| {
                    objects_up_to(c, m).len() <= budget.max_candidates
                });
                if exhaustive {
                    return Verdict::No(DirectedCertificate { x: objs[i].clone(), y: objs[j].clone() });
                }
                return Verdict::Unknown(BudgetReport {
                    reason: "no common target among the candidate objects".into(),
                    objects_examined: budget.max_candidates,
                    pairs_examined: targets.len() + 1,
                    coloring_nodes: 0,
                });
            }
        }
    }
    Verdict::Yes(DirectedWitness { size_bound: budget.max_size, targets })
}

/// Colorings of `C(α, v)` for the (wR) condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadColoring<A> {
    /// The arrows of `C(α, v)` in canonical order.
    pub arrows: Vec<A>,
    /// Color of each arrow.
    pub colors: Vec<usize>,
}

/// Result of a bounded bad-coloring search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadColoringSearch<A> {
    Bad(BadColoring<A>),
    NoneExists,
    Exhausted { nodes: u64 },
}

fn ramsey_hypergraph<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    v: &C::Obj,
    b: &C::Obj,
    family: &[C::Arr],
) -> (Vec<C::Arr>, Hypergraph) {
    let arrows = arrows_over(c, alpha, v);
    let index: HashMap<&C::Arr, usize> = arrows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let edges = c
        .hom(b, v)
        .iter()
        .map(|e| family.iter().map(|f| index[&c.compose(e, f)]).collect())
        .collect();
    let h = Hypergraph::new(arrows.len(), edges);
    (arrows, h)
}

fn resolve_family<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    b: &C::Obj,
    family: Option<&[C::Arr]>,
) -> Result<Vec<C::Arr>, CategoryError> {
    let over = arrows_over(c, alpha, b);
    match family {
        None => Ok(over),
        Some(fs) => {
            for f in fs {
                if !over.contains(f) {
                    return Err(CategoryError::NotOverAlpha(format!("{f:?}")));
                }
            }
            Ok(fs.to_vec())
        }
    }
}

/// Bounded search for a coloring `φ: C(α, v) → k` such that no `e: b → v`
/// makes `φ` constant on `e ∘ F`. `family = None` means `F = C(α, b)`.
pub fn find_bad_coloring_bounded<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    v: &C::Obj,
    b: &C::Obj,
    family: Option<&[C::Arr]>,
    k: usize,
    max_nodes: u64,
    parallel: bool,
) -> Result<BadColoringSearch<C::Arr>, CategoryError> {
    check_arrow(c, alpha)?;
    let fam = resolve_family(c, alpha, b, family)?;
    let (arrows, h) = ramsey_hypergraph(c, alpha, v, b, &fam);
    Ok(match coloring::find_bad_coloring(&h, k, max_nodes, parallel) {
        ColoringOutcome::Found(colors) => BadColoringSearch::Bad(BadColoring { arrows, colors }),
        ColoringOutcome::NoneExists => BadColoringSearch::NoneExists,
        ColoringOutcome::Exhausted { nodes } => BadColoringSearch::Exhausted { nodes },
    })
}

/// Unbounded form: `Some(coloring)` if a bad coloring exists, `None` if `v`
/// witnesses (wR) for `b`, `F` and `k`.
pub fn find_bad_coloring<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    v: &C::Obj,
    b: &C::Obj,
    family: Option<&[C::Arr]>,
    k: usize,
) -> Result<Option<BadColoring<C::Arr>>, CategoryError> {
    match find_bad_coloring_bounded(c, alpha, v, b, family, k, u64::MAX, true)? {
        BadColoringSearch::Bad(bc) => Ok(Some(bc)),
        _ => Ok(None),
    }
}

/// Re-check a bad coloring against the definition.
pub fn check_bad_coloring<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    v: &C::Obj,
    b: &C::Obj,
    family: Option<&[C::Arr]>,
    k: usize,
    bc: &BadColoring<C::Arr>,
) -> bool {
    let Ok(fam) = resolve_family(c, alpha, b, family) else { return false };
    let (arrows, h) = ramsey_hypergraph(c, alpha, v, b, &fam);
    arrows == bc.arrows && bc.colors.iter().all(|&x| x < k) && h.is_bad_coloring(&bc.colors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyWitnessEntry<O> {
    pub b: O,
    pub colors: usize,
    pub v: O,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyWitness<O> {
    pub size_bound: usize,
    pub max_colors: usize,
    pub entries: Vec<RamseyWitnessEntry<O>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyCertificate<O, A> {
    pub b: Option<O>,
    pub colors: usize,
    /// One bad coloring per candidate object, when the category is finite.
    pub bad_colorings: Vec<(O, BadColoring<A>)>,
    pub reason: String,
}

pub type RamseyVerdict<O, A> = Verdict<RamseyWitness<O>, RamseyCertificate<O, A>>;

/// Result of looking for the least witness object `v` for fixed `b, F, k`.
pub enum WitnessSearch<O, A> {
    Found(O),
    /// Every candidate admits a bad coloring; `exhaustive` if the candidates
    /// cover the whole (finite) category.
    AllBad { colorings: Vec<(O, BadColoring<A>)>, exhaustive: bool },
    Exhausted(BudgetReport),
}

/// Least `v` (in canonical order) with no bad coloring for `α, b, F, k`.
pub fn search_ramsey_witness<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    b: &C::Obj,
    family: Option<&[C::Arr]>,
    k: usize,
    budget: &SearchBudget,
) -> Result<WitnessSearch<C::Obj, C::Arr>, CategoryError> {
    check_arrow(c, alpha)?;
    resolve_family(c, alpha, b, family)?;
    let cap = c.max_grade().unwrap_or(c.grade(b) + budget.max_candidates);
    let start = if c.arrows_raise_grade() { c.grade(b) } else { 0 };
    let deadline = budget.deadline();
    let mut tried = 0;
    let mut colorings = Vec::new();
    let mut nodes_total = 0u64;
    for g in start..=cap {
        for v in c.objects_of_grade(g) {
            if tried >= budget.max_candidates || deadline.passed() {
                return Ok(WitnessSearch::Exhausted(BudgetReport {
                    reason: "candidate cap reached".into(),
                    objects_examined: tried,
                    pairs_examined: 0,
                    coloring_nodes: nodes_total,
                }));
            }
            tried += 1;
            if c.hom(b, &v).is_empty() {
                continue;
            }
            match find_bad_coloring_bounded(c, alpha, &v, b, family, k, budget.max_coloring_nodes, true)? {
                BadColoringSearch::NoneExists => return Ok(WitnessSearch::Found(v)),
                BadColoringSearch::Bad(bc) => colorings.push((v, bc)),
                BadColoringSearch::Exhausted { nodes } => {
                    nodes_total += nodes;
                    return Ok(WitnessSearch::Exhausted(BudgetReport {
                        reason: "coloring node cap reached".into(),
                        objects_examined: tried,
                        pairs_examined: 0,
                        coloring_nodes: nodes_total,
                    }));
                }
            }
        }
    }
    Ok(WitnessSearch::AllBad { colorings, exhaustive: c.max_grade().is_some() })
}

/// Check (wR) for `alpha` against every `b` of grade at most
/// `budget.max_size` and every color count `2..=budget.max_colors`, with
/// `F = C(α, b)`.
pub fn is_ramsey_arrow<C: EnumerableCategory>(
    c: &C,
    alpha: &C::Arr,
    budget: &SearchBudget,
) -> Result<RamseyVerdict<C::Obj, C::Arr>, CategoryError> {
    check_arrow(c, alpha)?;
    let mut entries = Vec::new();
    for b in objects_up_to(c, budget.max_size) {
        if arrows_over(c, alpha, &b).is_empty() {
            continue;
        }
        for k in 2..=budget.max_colors {
            match search_ramsey_witness(c, alpha, &b, None, k, budget)? {
                WitnessSearch::Found(v) => entries.push(RamseyWitnessEntry { b: b.clone(), colors: k, v }),
                WitnessSearch::AllBad { colorings, exhaustive } => {
                    if exhaustive {
                        return Ok(Verdict::No(RamseyCertificate {
                            b: Some(b),
                            colors: k,
                            bad_colorings: colorings,
                            reason: "every object of the finite category admits a bad coloring".into(),
                        }));
                    }
                    return Ok(ramsey_fallback(c, alpha, "no witness among the candidates"));
                }
                WitnessSearch::Exhausted(report) => {
                    return Ok(match c.ramsey_obstruction(alpha) {
                        Some(reason) => Verdict::No(RamseyCertificate {
                            b: None,
                            colors: k,
                            bad_colorings: Vec::new(),
                            reason,
                        }),
                        None => Verdict::Unknown(report),
                    });
                }
            }
        }
    }
    Ok(Verdict::Yes(RamseyWitness { size_bound: budget.max_size, max_colors: budget.max_colors, entries }))
}

fn ramsey_fallback<C: EnumerableCategory>(c: &C, alpha: &C::Arr, why: &str) -> RamseyVerdict<C::Obj, C::Arr> {
    match c.ramsey_obstruction(alpha) {
        Some(reason) => Verdict::No(RamseyCertificate { b: None, colors: 2, bad_colorings: Vec::new(), reason }),
        None => Verdict::Unknown(BudgetReport::new(why)),
    }
}

#[cfg(test)]
mod tests;

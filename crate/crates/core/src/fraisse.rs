//! Finite prefixes of weak Fraïssé sequences: a bookkeeping builder, checks
//! for cofinality and weak absorption, back-and-forth zig-zags between two
//! prefixes, and a dense colored chain.

use crate::category::{arrows_out, is_amalgamable_arrow, objects_up_to, CategoryError, EnumerableCategory};
use crate::verdict::{BudgetReport, SearchBudget, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FraisseError {
    #[error("the category has no initial object to start from")]
    NoInitialObject,
    #[error("the backend could not amalgamate a scheduled pair: {0}")]
    NoAmalgamation(String),
    #[error("index {0} is outside the prefix")]
    Index(usize),
    #[error("connecting arrow {0} does not fit the objects")]
    Broken(usize),
    #[error("no arrow to grow the sequence past grade {0}")]
    Stuck(usize),
    #[error("zig-zag step {step} could not be closed inside the prefixes")]
    Open { step: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// What has been checked about a prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixBounds {
    /// Every object up to this grade maps into some `u_n`.
    pub w0: Option<usize>,
    /// Grade headroom used for the absorption checks.
    pub headroom: usize,
    /// `w1[n] = Some(m)`: `u_n^m` is amalgamable and absorbs every arrow out
    /// of `u_m` within the headroom.
    pub w1: Vec<Option<usize>>,
}

/// `u_0 → u_1 → … → u_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequencePrefix<O, A> {
    pub objects: Vec<O>,
    /// `arrows[i]: u_i → u_{i+1}`.
    pub arrows: Vec<A>,
    pub bounds: PrefixBounds,
}

impl<O: Clone + PartialEq, A: Clone + PartialEq> SequencePrefix<O, A> {
    pub fn new<C: EnumerableCategory<Obj = O, Arr = A>>(c: &C, objects: Vec<O>, arrows: Vec<A>) -> Result<Self, FraisseError> {
        if objects.is_empty() || arrows.len() + 1 != objects.len() {
            return Err(FraisseError::Broken(arrows.len()));
        }
        for (i, f) in arrows.iter().enumerate() {
            if !c.is_arrow(f) || c.dom(f) != objects[i] || c.cod(f) != objects[i + 1] {
                return Err(FraisseError::Broken(i));
            }
        }
        Ok(SequencePrefix { objects, arrows, bounds: PrefixBounds::default() })
    }

    /// `x → x → …` with identities.
    pub fn constant<C: EnumerableCategory<Obj = O, Arr = A>>(c: &C, x: O, len: usize) -> Self {
        let len = len.max(1);
        SequencePrefix { objects: vec![x.clone(); len], arrows: vec![c.identity(&x); len - 1], bounds: PrefixBounds::default() }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// `u_k^m`.
    pub fn composite<C: EnumerableCategory<Obj = O, Arr = A>>(&self, c: &C, k: usize, m: usize) -> Result<A, FraisseError> {
        if m >= self.len() {
            return Err(FraisseError::Index(m));
        }
        if k > m {
            return Err(FraisseError::Index(k));
        }
        Ok(self.arrows[k..m].iter().fold(c.identity(&self.objects[k]), |acc, f| c.compose(f, &acc)))
    }

    /// First triple `k ≤ l ≤ m` with `u_k^m ≠ u_l^m ∘ u_k^l`.
    pub fn functoriality_failure<C: EnumerableCategory<Obj = O, Arr = A>>(&self, c: &C) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for k in 0..n {
            for l in k..n {
                for m in l..n {
                    let direct = self.composite(c, k, m).ok()?;
                    let split = c.compose(&self.composite(c, l, m).ok()?, &self.composite(c, k, l).ok()?);
                    if direct != split {
                        return Some((k, l, m));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinalityWitness<O, A> {
    pub bound: usize,
    /// `(x, n, x → u_n)` for every object up to the bound.
    pub arrows: Vec<(O, usize, A)>,
}

fn arrow_into<C: EnumerableCategory>(c: &C, x: &C::Obj, y: &C::Obj) -> Option<C::Arr> {
    if let Some(i) = c.initial_object() {
        if let (Some(a), Some(b)) = (c.hom(&i, x).into_iter().next(), c.hom(&i, y).into_iter().next()) {
            return c.factor_through(&a, &b);
        }
    }
    c.hom(x, y).into_iter().next()
}

/// Every object up to grade `bound` maps into some object of the prefix.
/// No names an object that maps into none of them.
pub fn verify_w0<C: EnumerableCategory>(
    c: &C,
    seq: &SequencePrefix<C::Obj, C::Arr>,
    bound: usize,
) -> Verdict<CofinalityWitness<C::Obj, C::Arr>, C::Obj> {
    let mut arrows = Vec::new();
    for x in objects_up_to(c, bound) {
        let hit = seq.objects.iter().enumerate().find_map(|(n, u)| arrow_into(c, &x, u).map(|f| (n, f)));
        match hit {
            Some((n, f)) => arrows.push((x, n, f)),
            None => return Verdict::No(x),
        }
    }
    Verdict::Yes(CofinalityWitness { bound, arrows })
}

/// An arrow out of `u_m` and how the prefix takes it back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Absorption<A> {
    pub f: A,
    pub l: usize,
    /// `g ∘ f ∘ u_n^m = u_n^l`.
    pub g: A,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionWitness<A> {
    pub n: usize,
    pub m: usize,
    pub headroom: usize,
    pub absorbed: Vec<Absorption<A>>,
}

/// Look for `m ≥ n` with `u_n^m` amalgamable such that every arrow `f` out
/// of `u_m` into an object at most `headroom` grades larger has some
/// `g: cod f → u_l` with `g ∘ f ∘ u_n^m = u_n^l`.
///
/// A finite prefix can never refute this, since the witnesses may lie
/// further along, so the answer is never No; when no `m` works it is
/// Unknown, naming the `m` found not amalgamable in the report.
pub fn verify_w1_step<C: EnumerableCategory>(
    c: &C,
    seq: &SequencePrefix<C::Obj, C::Arr>,
    n: usize,
    headroom: usize,
    budget: &SearchBudget,
) -> Result<Verdict<AbsorptionWitness<C::Arr>, ()>, FraisseError> {
    if n >= seq.len() {
        return Err(FraisseError::Index(n));
    }
    let mut rejected = Vec::new();
    let mut reason = String::from("no index of the prefix absorbs every arrow");
    'm: for m in n..seq.len() {
        let um = &seq.objects[m];
        let top = c.grade(um) + headroom;
        let unm = seq.composite(c, n, m)?;
        let local = SearchBudget { max_size: budget.max_size.max(top), ..budget.clone() };
        match is_amalgamable_arrow(c, &unm, &local)? {
            Verdict::Yes(_) => {}
            Verdict::No(_) => {
                rejected.push(m);
                continue;
            }
            Verdict::Unknown(r) => {
                reason = r.reason;
                continue;
            }
        }
        let mut absorbed = Vec::new();
        for f in arrows_out(c, um, top) {
            let along = c.compose(&f, &unm);
            let hit = (m..seq.len()).find_map(|l| {
                let unl = seq.composite(c, n, l).ok()?;
                c.factor_through(&along, &unl).map(|g| Absorption { f: f.clone(), l, g })
            });
            match hit {
                Some(a) => absorbed.push(a),
                None => continue 'm,
            }
        }
        return Ok(Verdict::Yes(AbsorptionWitness { n, m, headroom, absorbed }));
    }
    if !rejected.is_empty() {
        reason = format!("{reason}; u_{n}^m not amalgamable for m in {rejected:?}");
    }
    Ok(Verdict::Unknown(BudgetReport { reason, objects_examined: seq.len() - n, pairs_examined: rejected.len(), coloring_nodes: 0 }))
}

/// Settings for [`build_weak_fraisse_prefix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Objects up to this grade are joined into the sequence, one grade per
    /// step.
    pub w0_bound: usize,
    /// Each step absorbs every arrow out of the last object into objects at
    /// most this many grades larger.
    pub headroom: usize,
    pub budget: SearchBudget,
    /// Record the absorption checks in the prefix bounds.
    pub certify: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { w0_bound: 3, headroom: 1, budget: SearchBudget::default(), certify: true }
    }
}

fn absorb<C: EnumerableCategory>(c: &C, conn: &C::Arr, f: &C::Arr) -> Option<C::Arr> {
    let (p, _) = c.amalgamate(conn, f)?;
    Some(c.compose(&p, conn))
}

/// Build `length` objects starting from the initial object. Step `i`
/// absorbs, by repeated amalgamation, every arrow out of `u_{i-1}` within
/// the headroom that is compatible with the ones absorbed before it, then
/// joins in the objects of grade `i - 1` (up to the cofinality bound) that
/// do not map in yet. A step that changes nothing follows the first arrow
/// to a larger object.
pub fn build_weak_fraisse_prefix<C: EnumerableCategory>(
    c: &C,
    length: usize,
    opts: &BuildOptions,
) -> Result<SequencePrefix<C::Obj, C::Arr>, FraisseError> {
    let init = c.initial_object().ok_or(FraisseError::NoInitialObject)?;
    let mut objects = vec![init.clone()];
    let mut arrows: Vec<C::Arr> = Vec::new();
    while objects.len() < length.max(1) {
        let i = objects.len();
        let u = objects[i - 1].clone();
        let mut conn = c.identity(&u);
        for f in arrows_out(c, &u, c.grade(&u) + opts.headroom) {
            if c.obstruction(&conn, &f).is_some() {
                continue;
            }
            if let Some(next) = absorb(c, &conn, &f) {
                conn = next;
            }
        }
        if i - 1 <= opts.w0_bound {
            for x in c.objects_of_grade(i - 1) {
                let w = c.cod(&conn);
                if arrow_into(c, &x, &w).is_some() {
                    continue;
                }
                let into_w = c.hom(&init, &w).into_iter().next();
                let into_x = c.hom(&init, &x).into_iter().next();
                let (Some(a), Some(b)) = (into_w, into_x) else { continue };
                let (p, _) = c.amalgamate(&a, &b).ok_or_else(|| FraisseError::NoAmalgamation(format!("{x:?}")))?;
                conn = c.compose(&p, &conn);
            }
        }
        if c.cod(&conn) == u {
            let g = c.grade(&u);
            let step = (g + 1..=g + 1 + opts.budget.max_candidates)
                .flat_map(|h| c.targets(&u, h).into_iter().flat_map(|y| c.hom(&u, &y)).take(1).collect::<Vec<_>>())
                .next()
                .ok_or(FraisseError::Stuck(g))?;
            conn = step;
        }
        objects.push(c.cod(&conn));
        arrows.push(conn);
    }
    let mut seq = SequencePrefix { objects, arrows, bounds: PrefixBounds::default() };
    seq.bounds.headroom = opts.headroom;
    if opts.certify {
        if verify_w0(c, &seq, opts.w0_bound).is_yes() {
            seq.bounds.w0 = Some(opts.w0_bound);
        }
        for n in 0..seq.len() {
            let v = verify_w1_step(c, &seq, n, opts.headroom, &opts.budget)?;
            seq.bounds.w1.push(v.witness().map(|w| w.m));
        }
    }
    Ok(seq)
}

/// `f_i: u_{k_i} → v_{l_i}` and `g_i: v_{l_i} → u_{k_{i+1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZag<A> {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub f: Vec<A>,
    pub g: Vec<A>,
}

impl<A: Clone + PartialEq> ZigZag<A> {
    /// Recheck `g_i ∘ f_i = u_{k_i}^{k_{i+1}}` and
    /// `f_{i+1} ∘ g_i = v_{l_i}^{l_{i+1}}`.
    pub fn check<C: EnumerableCategory<Arr = A>>(
        &self,
        c: &C,
        u: &SequencePrefix<C::Obj, A>,
        v: &SequencePrefix<C::Obj, A>,
    ) -> bool {
        let ok = |x: Result<A, FraisseError>, y: A| x.is_ok_and(|x| x == y);
        self.g.iter().enumerate().all(|(i, g)| {
            ok(u.composite(c, self.k[i], self.k[i + 1]), c.compose(g, &self.f[i]))
                && (i + 1 >= self.f.len() || ok(v.composite(c, self.l[i], self.l[i + 1]), c.compose(&self.f[i + 1], g)))
        })
    }
}

/// Alternate between the two prefixes `steps` times, each time taking the
/// least index at which the last arrow factors.
pub fn back_and_forth<C: EnumerableCategory>(
    c: &C,
    u: &SequencePrefix<C::Obj, C::Arr>,
    v: &SequencePrefix<C::Obj, C::Arr>,
    steps: usize,
) -> Result<ZigZag<C::Arr>, FraisseError> {
    let mut z = ZigZag { k: vec![0], l: Vec::new(), f: Vec::new(), g: Vec::new() };
    let first = (0..v.len())
        .find_map(|l| arrow_into(c, &u.objects[0], &v.objects[l]).map(|f| (l, f)))
        .ok_or(FraisseError::Open { step: 0 })?;
    z.l.push(first.0);
    z.f.push(first.1);
    for step in 0..steps {
        let (k, f) = (*z.k.last().unwrap(), z.f.last().unwrap().clone());
        let (k2, g) = (k + 1..u.len())
            .find_map(|k2| c.factor_through(&f, &u.composite(c, k, k2).ok()?).map(|g| (k2, g)))
            .ok_or(FraisseError::Open { step })?;
        z.k.push(k2);
        z.g.push(g.clone());
        if step + 1 == steps {
            break;
        }
        let l = *z.l.last().unwrap();
        let (l2, f2) = (l + 1..v.len())
            .find_map(|l2| c.factor_through(&g, &v.composite(c, l, l2).ok()?).map(|f2| (l2, f2)))
            .ok_or(FraisseError::Open { step })?;
        z.l.push(l2);
        z.f.push(f2);
    }
    Ok(z)
}

/// A finite chain with colored points, built in rounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredChain {
    pub colors: Vec<usize>,
    /// Round in which each point was added, starting at 1.
    pub round: Vec<usize>,
}

/// Round 1 places one point of each color; every later round puts one
/// point of each color into every gap, including both ends.
pub fn generic_coloring_prefix(colors: usize, rounds: usize) -> ColoredChain {
    let mut pts: Vec<(usize, usize)> = Vec::new();
    for r in 1..=rounds {
        if colors == 0 {
            break;
        }
        if r == 1 {
            pts = (0..colors).map(|c| (c, 1)).collect();
            continue;
        }
        let fill = || (0..colors).map(move |c| (c, r));
        let mut next = Vec::with_capacity(pts.len() * (colors + 1) + colors);
        next.extend(fill());
        for &p in &pts {
            next.push(p);
            next.extend(fill());
        }
        pts = next;
    }
    ColoredChain { colors: pts.iter().map(|p| p.0).collect(), round: pts.iter().map(|p| p.1).collect() }
}

#[cfg(test)]
mod tests;

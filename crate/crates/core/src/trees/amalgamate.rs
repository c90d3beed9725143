use super::{level_dominate, nodes_of_incompatibility, LexTree, MorphismFlags, TreeArrow, TreeError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

/// Which step of the construction produced (part of) an amalgam.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// Empty common part: both trees side by side under a new root.
    Joint,
    /// `M = {1}`: merge of two chains.
    Linear,
    /// One of the extensions is the identity.
    Trivial,
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: Case,
    pub detail: String,
}

/// `left: T1 → T` and `right: T2 → T` with `left ∘ f1 = right ∘ f2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgamation {
    pub tree: Arc<LexTree>,
    pub left: TreeArrow,
    pub right: TreeArrow,
    pub case: Case,
    /// No new nodes were needed: `|T| = |T1| + |T2| - |S|`.
    pub free: bool,
    pub trace: Vec<TraceStep>,
}

type Id = u32;
type Set = BTreeSet<Id>;

/// Mutable tree over arbitrary ids.
#[derive(Clone, Debug, Default)]
struct WTree {
    root: Option<Id>,
    parent: BTreeMap<Id, Option<Id>>,
    kids: BTreeMap<Id, Vec<Id>>,
}

struct Fresh(Id);

impl Fresh {
    fn next(&mut self) -> Id {
        self.0 += 1;
        self.0 - 1
    }
}

impl WTree {
    fn from_lex(t: &LexTree, ids: &[Id]) -> Self {
        let mut w = WTree { root: t.root().map(|r| ids[r]), ..Default::default() };
        for x in 0..t.len() {
            w.parent.insert(ids[x], t.parent(x).map(|p| ids[p]));
            w.kids.insert(ids[x], t.children(x).iter().map(|&c| ids[c]).collect());
        }
        w
    }

    fn kids(&self, x: Id) -> &[Id] {
        &self.kids[&x]
    }
    fn par(&self, x: Id) -> Option<Id> {
        self.parent[&x]
    }
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn preorder(&self) -> Vec<Id> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<Id> = self.root.into_iter().collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.kids(x).iter().rev());
        }
        out
    }

    fn depths(&self) -> HashMap<Id, usize> {
        let mut d = HashMap::new();
        for x in self.preorder() {
            let v = self.par(x).map_or(0, |p| d[&p] + 1);
            d.insert(x, v);
        }
        d
    }

    fn set_node(&mut self, x: Id, parent: Option<Id>, kids: Vec<Id>) {
        self.parent.insert(x, parent);
        self.kids.insert(x, kids);
    }

    // put `new` where `old` hangs (or at the root)
    fn replace_child(&mut self, old: Id, new: Id) {
        match self.par(old) {
            Some(p) => {
                let k = self.kids.get_mut(&p).unwrap();
                let i = k.iter().position(|&c| c == old).unwrap();
                k[i] = new;
            }
            None => self.root = Some(new),
        }
        self.parent.insert(new, self.par(old));
    }

    /// Insert `h` new nodes between `x` and its predecessor; each gets
    /// `width` successors, the first one continuing towards `x`.
    fn splice_column(&mut self, x: Id, h: usize, width: u32, fresh: &mut Fresh) {
        if h == 0 {
            return;
        }
        let spine: Vec<Id> = (0..h).map(|_| fresh.next()).collect();
        self.replace_child(x, spine[0]);
        for i in 0..h {
            let up = if i + 1 < h { spine[i + 1] } else { x };
            let mut ks = vec![up];
            for _ in 1..width {
                let leaf = fresh.next();
                self.set_node(leaf, Some(spine[i]), Vec::new());
                ks.push(leaf);
            }
            let p = if i == 0 { self.par(spine[0]) } else { Some(spine[i - 1]) };
            self.set_node(spine[i], p, ks);
            self.parent.insert(up, Some(spine[i]));
        }
    }

    /// Restriction to a set closed under predecessors.
    fn induced(&self, set: &Set) -> WTree {
        let mut w = WTree { root: self.root.filter(|r| set.contains(r)), ..Default::default() };
        for &x in set {
            w.set_node(x, self.par(x), self.kids(x).iter().copied().filter(|c| set.contains(c)).collect());
        }
        w
    }

    fn base_parent(&self, base: &Set, x: Id) -> Option<Id> {
        let mut y = self.par(x);
        while let Some(z) = y {
            if base.contains(&z) {
                return Some(z);
            }
            y = self.par(z);
        }
        None
    }

    /// Nodes strictly between `x` and its nearest predecessor in `base`,
    /// lowest first.
    fn spine(&self, base: &Set, x: Id) -> Vec<Id> {
        let mut out = Vec::new();
        let mut y = self.par(x);
        while let Some(z) = y {
            if base.contains(&z) {
                break;
            }
            out.push(z);
            y = self.par(z);
        }
        out.reverse();
        out
    }

    fn base_level(&self, base: &Set, x: Id) -> usize {
        let mut n = 0;
        let mut y = self.base_parent(base, x);
        while let Some(z) = y {
            n += 1;
            y = self.base_parent(base, z);
        }
        n
    }

    /// Height of the columns inserted below each level of `base`.
    fn column_heights(&self, base: &Set) -> Vec<usize> {
        let mut h: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in base {
            h.entry(self.base_level(base, x)).or_insert_with(|| self.spine(base, x).len());
        }
        h.into_values().collect()
    }

    /// Lower closure of `base` plus the successors of its nodes outside
    /// `base`.
    fn middle(&self, base: &Set) -> Set {
        let mut lower = Set::new();
        for &x in base {
            let mut y = Some(x);
            while let Some(z) = y {
                if !lower.insert(z) {
                    break;
                }
                y = self.par(z);
            }
        }
        let mut out = lower.clone();
        for &z in lower.iter().filter(|z| !base.contains(z)) {
            out.extend(self.kids(z).iter().copied());
        }
        out
    }

    fn is_terminal_over(&self, base: &Set) -> bool {
        self.middle(base) == *base
    }
    fn is_nonterminal_over(&self, base: &Set) -> bool {
        self.middle(base).len() == self.len()
    }

    /// Terminal nodes of `base` that carry new successors here.
    fn planting_nodes(&self, base: &Set) -> Set {
        base.iter().copied().filter(|&a| self.kids(a).first().is_some_and(|c| !base.contains(c))).collect()
    }

    /// Levels of `base` below which columns were inserted.
    fn surgery_levels(&self, base: &Set) -> BTreeSet<usize> {
        self.column_heights(base).iter().enumerate().filter(|(_, &h)| h > 0).map(|(l, _)| l).collect()
    }
}

struct Ctx {
    min_m: u32,
    branching: Option<u32>,
    fresh: Fresh,
    trace: Vec<TraceStep>,
}

impl Ctx {
    fn log(&mut self, case: Case, detail: impl Into<String>) {
        self.trace.push(TraceStep { case, detail: detail.into() });
    }

    // both extensions non-terminal; columns of `low` end up below those of `high`
    fn nonterminal(&mut self, base: &Set, low: &WTree, high: &WTree) -> WTree {
        let mut t = low.clone();
        let hl = low.column_heights(base);
        let hh = high.column_heights(base);
        for &s in base {
            let sp = high.spine(base, s);
            if sp.is_empty() {
                continue;
            }
            let alpha = high.base_level(base, s);
            let low_top = low.spine(base, s).last().copied();
            t.replace_child(s, sp[0]);
            for (i, &c) in sp.iter().enumerate() {
                let p = if i == 0 { t.par(c) } else { Some(sp[i - 1]) };
                t.set_node(c, p, high.kids(c).to_vec());
                let up = sp.get(i + 1).copied().unwrap_or(s);
                for &x in high.kids(c).iter().filter(|&&x| x != up) {
                    t.set_node(x, Some(c), Vec::new());
                }
            }
            t.parent.insert(s, sp.last().copied());
            if let Some(top) = low_top.filter(|_| hl[alpha] > 0) {
                let sides: Vec<Id> = low.kids(top).iter().copied().filter(|&x| x != s).collect();
                for x in sides {
                    t.splice_column(x, hh[alpha], self.min_m, &mut self.fresh);
                }
            }
        }
        t
    }

    // `term` terminal and `non` non-terminal over `base`
    fn term_nonterm(&mut self, base: &Set, term: &WTree, non: &WTree) -> WTree {
        let mut t = non.clone();
        let hn = non.column_heights(base);
        let depth = term.depths();
        let added: Vec<Id> = term.preorder().into_iter().filter(|x| !base.contains(x)).collect();
        for &a in &term.planting_nodes(base) {
            t.kids.insert(a, term.kids(a).to_vec());
        }
        for &x in &added {
            t.set_node(x, term.par(x), term.kids(x).to_vec());
        }
        for &x in &added {
            let d = depth[&x];
            if let Some(&h) = hn.get(d) {
                t.splice_column(x, h, self.min_m, &mut self.fresh);
            }
        }
        t
    }

    // both extensions terminal; shared planting nodes get paired bushes
    fn terminal(&mut self, base: &Set, t1: &WTree, t2: &WTree) -> Result<WTree, TreeError> {
        let (d1, d2) = (t1.depths(), t2.depths());
        let mut t = t1.clone();
        for x in t2.preorder().into_iter().filter(|x| !base.contains(x)) {
            t.set_node(x, t2.par(x), t2.kids(x).to_vec());
        }
        let (p1, p2) = (t1.planting_nodes(base), t2.planting_nodes(base));
        for &a in p2.difference(&p1) {
            t.kids.insert(a, t2.kids(a).to_vec());
        }
        let shared: Vec<Id> = p1.intersection(&p2).copied().collect();
        if shared.is_empty() {
            return Ok(t);
        }
        let w2 = self.branching.ok_or_else(|| TreeError::Internal("pairing needs a degree >= 2".into()))?;
        let mut paired = Set::new();
        let mut levels = BTreeSet::new();
        for &a in &shared {
            let (k1, k2) = (t1.kids(a), t2.kids(a));
            if k1.len() != k2.len() {
                return Err(TreeError::Internal(format!("planted degrees differ at {a}")));
            }
            levels.insert(d1[&a] + 1);
            let mut roots = Vec::new();
            for (&b1, &b2) in k1.iter().zip(k2) {
                let r = self.fresh.next();
                let mut ks = vec![b1, b2];
                for _ in 2..w2 {
                    let leaf = self.fresh.next();
                    t.set_node(leaf, Some(r), Vec::new());
                    ks.push(leaf);
                }
                t.parent.insert(b1, Some(r));
                t.parent.insert(b2, Some(r));
                t.set_node(r, Some(a), ks);
                roots.push(r);
                paired.extend([b1, b2]);
            }
            t.kids.insert(a, roots);
        }
        let singles: Vec<Id> = t1
            .preorder()
            .into_iter()
            .map(|x| (x, d1[&x]))
            .chain(t2.preorder().into_iter().filter(|x| !base.contains(x)).map(|x| (x, d2[&x])))
            .filter(|(x, d)| levels.contains(d) && !paired.contains(x))
            .map(|(x, _)| x)
            .collect();
        for x in singles {
            t.splice_column(x, 1, self.min_m, &mut self.fresh);
        }
        Ok(t)
    }

    fn joint(&mut self, t1: &WTree, t2: &WTree) -> WTree {
        let (Some(r1), Some(r2)) = (t1.root, t2.root) else {
            return if t1.root.is_some() { t1.clone() } else { t2.clone() };
        };
        let mut t = t1.clone();
        for (&x, &p) in &t2.parent {
            t.set_node(x, p, t2.kids(x).to_vec());
        }
        match self.branching {
            Some(w) => {
                let r = self.fresh.next();
                let mut ks = vec![r1, r2];
                for _ in 2..w {
                    let leaf = self.fresh.next();
                    t.set_node(leaf, Some(r), Vec::new());
                    ks.push(leaf);
                }
                t.set_node(r, None, ks);
                t.parent.insert(r1, Some(r));
                t.parent.insert(r2, Some(r));
                t.root = Some(r);
            }
            None => {
                let top = *t1.preorder().last().unwrap();
                t.kids.insert(top, vec![r2]);
                t.parent.insert(r2, Some(top));
            }
        }
        t
    }

    // chains: interleave the pieces between consecutive common nodes
    fn linear(&mut self, base: &Set, t1: &WTree, t2: &WTree) -> WTree {
        let (c1, c2) = (t1.preorder(), t2.preorder());
        let mut seq = Vec::new();
        let (mut i, mut j) = (0, 0);
        loop {
            while i < c1.len() && !base.contains(&c1[i]) {
                seq.push(c1[i]);
                i += 1;
            }
            while j < c2.len() && !base.contains(&c2[j]) {
                seq.push(c2[j]);
                j += 1;
            }
            if i == c1.len() {
                break;
            }
            seq.push(c1[i]);
            i += 1;
            j += 1;
        }
        let mut t = WTree { root: seq.first().copied(), ..Default::default() };
        for (k, &x) in seq.iter().enumerate() {
            let p = k.checked_sub(1).map(|k| seq[k]);
            t.set_node(x, p, seq.get(k + 1).map(|&y| vec![y]).unwrap_or_default());
        }
        t
    }

    fn dispatch(&mut self, base: &Set, t1: &WTree, t2: &WTree) -> Result<(WTree, Case, bool), TreeError> {
        if base.is_empty() {
            self.log(Case::Joint, "no common nodes");
            return Ok((self.joint(t1, t2), Case::Joint, t1.root.is_none() || t2.root.is_none()));
        }
        if self.branching.is_none() {
            self.log(Case::Linear, "all trees are chains");
            return Ok((self.linear(base, t1, t2), Case::Linear, true));
        }
        if t1.len() == base.len() || t2.len() == base.len() {
            self.log(Case::Trivial, "one side adds nothing");
            let t = if t1.len() == base.len() { t2.clone() } else { t1.clone() };
            return Ok((t, Case::Trivial, true));
        }
        let (term1, term2) = (t1.is_terminal_over(base), t2.is_terminal_over(base));
        let (non1, non2) = (t1.is_nonterminal_over(base), t2.is_nonterminal_over(base));
        if term1 && term2 {
            let (p1, p2) = (t1.planting_nodes(base), t2.planting_nodes(base));
            let shared: Vec<Id> = p1.intersection(&p2).copied().collect();
            let case = if shared.is_empty() || p1 != p2 || p1.len() > 1 {
                Case::III
            } else if shared.iter().all(|&a| bush_only(t1, a) && bush_only(t2, a)) {
                Case::I
            } else {
                Case::II
            };
            self.log(case, format!("terminal on both sides, shared planting nodes {shared:?}"));
            let free = shared.is_empty();
            return Ok((self.terminal(base, t1, t2)?, case, free));
        }
        if non1 && non2 {
            let (l1, l2) = (t1.surgery_levels(base), t2.surgery_levels(base));
            let case = if l1 == l2 && l1.len() == 1 { Case::V } else { Case::VI };
            let free = l1.is_disjoint(&l2);
            self.log(case, format!("non-terminal on both sides, surgery levels {l1:?} and {l2:?}"));
            return Ok((self.nonterminal(base, t1, t2), case, free));
        }
        if term1 && non2 {
            self.log(Case::IV, "first terminal, second non-terminal");
            return Ok((self.term_nonterm(base, t1, t2), Case::IV, false));
        }
        if non1 && term2 {
            self.log(Case::IV, "first non-terminal, second terminal");
            return Ok((self.term_nonterm(base, t2, t1), Case::IV, false));
        }
        self.log(Case::VII, "decompose both extensions");
        let s1 = t1.middle(base);
        let s2 = t2.middle(base);
        let (w1, w2) = (t1.induced(&s1), t2.induced(&s2));
        self.log(Case::VI, format!("amalgamate the non-terminal parts ({} and {} nodes)", s1.len(), s2.len()));
        let sp = self.nonterminal(base, &w1, &w2);
        let s2pp = sp.middle(&s2);
        let wpp = sp.induced(&s2pp);
        self.log(Case::IV, "first terminal part over the joint non-terminal part");
        let t1p = self.term_nonterm(&s1, t1, &sp);
        self.log(Case::IV, "second terminal part over its non-terminal closure");
        let t2pp = self.term_nonterm(&s2, t2, &wpp);
        self.log(Case::III, "join the two terminal extensions");
        Ok((self.terminal(&s2pp, &t1p, &t2pp)?, Case::VII, false))
    }
}

fn bush_only(t: &WTree, a: Id) -> bool {
    t.kids(a).iter().all(|&c| t.kids(c).is_empty())
}

/// Non-gluing amalgamation of two strong extensions of a common tree.
///
/// Fails with the nodes of incompatibility when the two targets decide some
/// node of the source differently.
pub fn amalgamate(f1: &TreeArrow, f2: &TreeArrow) -> Result<Amalgamation, TreeError> {
    if f1.dom != f2.dom {
        return Err(TreeError::SourceMismatch);
    }
    f1.validate(MorphismFlags::STRONG)?;
    f2.validate(MorphismFlags::STRONG)?;
    let bad = nodes_of_incompatibility(f1, f2)?;
    if !bad.is_empty() {
        return Err(TreeError::Incompatible(bad));
    }
    let s = &*f1.dom;
    let (x1, x2) = (&*f1.cod, &*f2.cod);
    let n = s.len() as Id;
    let mut fresh = Fresh(n);
    let mut ids_for = |f: &TreeArrow| {
        let mut ids = vec![Id::MAX; f.cod.len()];
        for (i, &x) in f.map.iter().enumerate() {
            ids[x] = i as Id;
        }
        for slot in ids.iter_mut().filter(|v| **v == Id::MAX) {
            *slot = fresh.next();
        }
        ids
    };
    let (id1, id2) = (ids_for(f1), ids_for(f2));
    let (w1, w2) = (WTree::from_lex(x1, &id1), WTree::from_lex(x2, &id2));
    let base: Set = (0..n).collect();
    let mut ctx = Ctx { min_m: s.min_m(), branching: s.min_branching(), fresh, trace: Vec::new() };
    let (w, case, free) = ctx.dispatch(&base, &w1, &w2)?;

    let mut labels: HashMap<Id, u32> = HashMap::new();
    for (t, ids) in [(x2, &id2), (x1, &id1)] {
        for x in 0..t.len() {
            if let Some(d) = t.dspl(x) {
                labels.insert(ids[x], d);
            }
        }
    }
    let seen: BTreeSet<Id> = id1.iter().chain(&id2).copied().collect();
    let decide_fresh = x1.is_fully_decided() && x2.is_fully_decided();
    let (tree, pos) = LexTree::build(
        s.m().to_vec(),
        w.root,
        |x| w.kids(x).to_vec(),
        |x| {
            if !w.kids(x).is_empty() {
                None
            } else if let Some(&d) = labels.get(&x) {
                Some(d)
            } else if !seen.contains(&x) && decide_fresh {
                Some(s.min_m())
            } else {
                None
            }
        },
    );
    let tree = Arc::new(tree);
    let leg = |f: &TreeArrow, ids: &[Id]| TreeArrow {
        dom: f.cod.clone(),
        cod: tree.clone(),
        map: ids.iter().map(|i| pos[i]).collect(),
    };
    let (left, right) = (leg(f1, &id1), leg(f2, &id2));
    left.validate(MorphismFlags::STRONG).map_err(|e| TreeError::Internal(format!("left leg: {e}")))?;
    right.validate(MorphismFlags::STRONG).map_err(|e| TreeError::Internal(format!("right leg: {e}")))?;
    if f1.then(&left) != f2.then(&right) {
        return Err(TreeError::Internal("legs disagree on the common part".into()));
    }
    Ok(Amalgamation { tree, left, right, case, free, trace: ctx.trace })
}

/// Amalgamation for arrows that need not preserve levels: first pad both
/// targets so the source sits level-preservingly, then amalgamate. The legs
/// preserve order, meets, splitting and lex order, not levels.
pub fn amalgamate_leveless(f1: &TreeArrow, f2: &TreeArrow) -> Result<Amalgamation, TreeError> {
    let d1 = level_dominate(f1)?;
    let d2 = level_dominate(f2)?;
    let mut a = amalgamate(&d1.inner, &d2.inner)?;
    a.left = d1.outer.then(&a.left);
    a.right = d2.outer.then(&a.right);
    a.free = false;
    a.trace.insert(0, TraceStep { case: a.case, detail: "targets padded to level-preserving extensions".into() });
    Ok(a)
}

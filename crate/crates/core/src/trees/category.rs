use super::{
    amalgamate, amalgamate_leveless, embeddings, find_embedding, nodes_of_incompatibility, LexTree, MorphismFlags,
    Nested, TreeArrow, TreeError,
};
use crate::category::{EnumerableCategory, FullSubcategory};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// Which trees and arrows a tree category has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// No decided degrees on terminal nodes.
    Tw,
    /// Terminal nodes may carry decided degrees.
    Tc,
    /// Every terminal node carries a decided degree.
    Ta,
    /// As `Tc`, with arrows that need not preserve levels.
    Leveless,
}

impl Variant {
    pub fn flags(self) -> MorphismFlags {
        match self {
            Variant::Leveless => MorphismFlags::LEVELESS,
            _ => MorphismFlags::STRONG,
        }
    }

    /// Label rule only; the splitting set is checked by the category.
    pub fn admits(self, t: &LexTree) -> bool {
        match self {
            Variant::Tw => !t.has_labels(),
            Variant::Ta => t.is_fully_decided(),
            Variant::Tc | Variant::Leveless => true,
        }
    }

    fn leaf_labels(self, m: &[u32]) -> Vec<Option<u32>> {
        match self {
            Variant::Tw => vec![None],
            Variant::Ta => m.iter().copied().map(Some).collect(),
            Variant::Tc | Variant::Leveless => std::iter::once(None).chain(m.iter().copied().map(Some)).collect(),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, TreeError> {
        match s.to_ascii_lowercase().as_str() {
            "tw" => Ok(Variant::Tw),
            "tc" => Ok(Variant::Tc),
            "ta" => Ok(Variant::Ta),
            "leveless" => Ok(Variant::Leveless),
            _ => Err(TreeError::Variant(format!("unknown variant {s:?}"))),
        }
    }
}

/// Trees over a fixed `M`, graded by node count.
pub struct TreeCategory {
    m: Vec<u32>,
    variant: Variant,
    shapes: Mutex<HashMap<usize, Arc<Vec<Nested>>>>,
    objects: Mutex<HashMap<usize, Arc<Vec<Arc<LexTree>>>>>,
}

impl TreeCategory {
    pub fn new(m: &[u32], variant: Variant) -> Result<Self, TreeError> {
        let m = LexTree::empty(m)?.m().to_vec();
        Ok(TreeCategory { m, variant, shapes: Mutex::default(), objects: Mutex::default() })
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }
    pub fn variant(&self) -> Variant {
        self.variant
    }

    // unlabelled shapes with n nodes, in a fixed order
    fn shapes(&self, n: usize) -> Arc<Vec<Nested>> {
        if let Some(s) = self.shapes.lock().unwrap().get(&n) {
            return s.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Nested::leaf(None));
        } else if n > 1 {
            for &k in &self.m {
                for sizes in compositions(n - 1, k as usize) {
                    let mut acc: Vec<Vec<Nested>> = vec![Vec::new()];
                    for &sz in &sizes {
                        let opts = self.shapes(sz);
                        acc = acc
                            .into_iter()
                            .flat_map(|pre| {
                                opts.iter().map(move |o| {
                                    let mut v = pre.clone();
                                    v.push(o.clone());
                                    v
                                })
                            })
                            .collect();
                    }
                    out.extend(acc.into_iter().map(Nested::node));
                }
            }
        }
        let out = Arc::new(out);
        self.shapes.lock().unwrap().insert(n, out.clone());
        out
    }

    /// Every way of deciding the undecided terminal nodes of `t` allowed by
    /// the variant, `t` itself first.
    pub fn decisions(&self, t: &LexTree) -> Vec<LexTree> {
        let opts = self.variant.leaf_labels(&self.m);
        let free: Vec<usize> = t.terminals().into_iter().filter(|&x| t.dspl(x).is_none()).collect();
        let mut out = vec![t.clone()];
        for x in free {
            out = out
                .into_iter()
                .flat_map(|u| opts.iter().map(move |&d| u.with_label(x, d)).collect::<Vec<_>>())
                .collect();
        }
        out.retain(|u| self.variant.admits(u));
        out
    }

    // trees with one more node that receive an arrow from t
    fn one_node_extensions(&self, t: &LexTree) -> Vec<LexTree> {
        fn rebuild(t: &LexTree, x: usize, edit: &dyn Fn(usize, Nested) -> Nested) -> Nested {
            let n = Nested { dspl: t.dspl(x), children: t.children(x).iter().map(|&c| rebuild(t, c, edit)).collect() };
            edit(x, n)
        }
        let mut out: Vec<Nested> = Vec::new();
        let Some(root) = t.root() else {
            return self.variant.leaf_labels(&self.m).into_iter().filter_map(|d| LexTree::single(&self.m, d).ok()).collect();
        };
        if !t.allows(1) {
            return Vec::new();
        }
        for x in 0..t.len() {
            if t.is_terminal(x) && matches!(t.dspl(x), None | Some(1)) {
                out.push(rebuild(t, root, &|y, n| if y == x { Nested::node(vec![Nested::leaf(None)]) } else { n }));
            }
            let alone = t.level(t.depth(x)).len() == 1;
            if alone || self.variant == Variant::Leveless {
                out.push(rebuild(t, root, &|y, n| if y == x { Nested::node(vec![n]) } else { n }));
            }
        }
        let mut seen = BTreeSet::new();
        out.into_iter()
            .filter_map(|n| LexTree::from_nested(&self.m, Some(&n)).ok())
            .flat_map(|u| self.decisions(&u))
            .filter(|u| seen.insert(u.clone()))
            .collect()
    }
}

// ordered k-tuples of positive integers summing to n
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (1..=n.saturating_sub(k - 1))
        .flat_map(|first| {
            compositions(n - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

impl EnumerableCategory for TreeCategory {
    type Obj = Arc<LexTree>;
    type Arr = TreeArrow;

    fn grade(&self, a: &Arc<LexTree>) -> usize {
        a.len()
    }

    fn objects_of_grade(&self, g: usize) -> Vec<Arc<LexTree>> {
        if let Some(o) = self.objects.lock().unwrap().get(&g) {
            return o.to_vec();
        }
        let out: Vec<Arc<LexTree>> = if g == 0 {
            vec![Arc::new(LexTree::empty(&self.m).expect("checked in new"))]
        } else {
            let opts = self.variant.leaf_labels(&self.m);
            let mut out = Vec::new();
            for shape in self.shapes(g).iter() {
                let t = LexTree::from_nested(&self.m, Some(shape)).expect("shapes use allowed degrees");
                let mut acc = vec![t.clone()];
                for x in t.terminals() {
                    acc = acc.into_iter().flat_map(|u| opts.iter().map(move |&d| u.with_label(x, d)).collect::<Vec<_>>()).collect();
                }
                out.extend(acc.into_iter().map(Arc::new));
            }
            out
        };
        self.objects.lock().unwrap().insert(g, Arc::new(out.clone()));
        out
    }

    fn hom(&self, a: &Arc<LexTree>, b: &Arc<LexTree>) -> Vec<TreeArrow> {
        embeddings(a, b, self.variant.flags())
    }
    fn dom(&self, f: &TreeArrow) -> Arc<LexTree> {
        f.dom.clone()
    }
    fn cod(&self, f: &TreeArrow) -> Arc<LexTree> {
        f.cod.clone()
    }
    fn compose(&self, g: &TreeArrow, f: &TreeArrow) -> TreeArrow {
        f.then(g)
    }
    fn identity(&self, a: &Arc<LexTree>) -> TreeArrow {
        TreeArrow::identity(a.clone())
    }
    fn is_object(&self, a: &Arc<LexTree>) -> bool {
        a.m() == self.m.as_slice() && a.validate().is_ok() && self.variant.admits(a)
    }
    fn is_arrow(&self, f: &TreeArrow) -> bool {
        self.is_object(&f.dom) && self.is_object(&f.cod) && f.is_valid(self.variant.flags())
    }

    fn amalgamate(&self, p: &TreeArrow, q: &TreeArrow) -> Option<(TreeArrow, TreeArrow)> {
        let a = match self.variant {
            Variant::Leveless => amalgamate_leveless(p, q),
            _ => amalgamate(p, q),
        }
        .ok()?;
        Some((a.left, a.right))
    }

    fn obstruction(&self, p: &TreeArrow, q: &TreeArrow) -> Option<String> {
        let bad = nodes_of_incompatibility(p, q).ok()?;
        (!bad.is_empty()).then(|| format!("decided degrees clash at source nodes {bad:?}"))
    }

    fn initial_object(&self) -> Option<Arc<LexTree>> {
        Some(Arc::new(LexTree::empty(&self.m).expect("checked in new")))
    }
    fn arrows_raise_grade(&self) -> bool {
        true
    }

    fn targets(&self, a: &Arc<LexTree>, g: usize) -> Vec<Arc<LexTree>> {
        let n = a.len();
        if g < n {
            Vec::new()
        } else if g == n {
            self.decisions(a).into_iter().map(Arc::new).collect()
        } else if g == n + 1 {
            self.one_node_extensions(a).into_iter().map(Arc::new).collect()
        } else {
            self.objects_of_grade(g)
        }
    }

    fn factor_through(&self, along: &TreeArrow, target: &TreeArrow) -> Option<TreeArrow> {
        if along.dom != target.dom {
            return None;
        }
        let mut fixed = vec![None; along.cod.len()];
        for (x, &y) in along.map.iter().enumerate() {
            fixed[y] = Some(target.map[x]);
        }
        let map = find_embedding(&along.cod, &target.cod, self.variant.flags(), &fixed)?;
        Some(TreeArrow { dom: along.cod.clone(), cod: target.cod.clone(), map })
    }
}

/// `t` with every undecided terminal node decided to the least allowed
/// degree, and the identity-shaped arrow into it.
pub fn decided_completion(t: &Arc<LexTree>) -> TreeArrow {
    let mut u = (**t).clone();
    for x in t.terminals() {
        if t.dspl(x).is_none() {
            u = u.with_label(x, Some(t.min_m()));
        }
    }
    TreeArrow { dom: t.clone(), cod: Arc::new(u), map: (0..t.len()).collect() }
}

/// The fully decided trees inside `c`, with [`decided_completion`] as the
/// cofinality witness.
pub fn fully_decided_subcategory(c: &TreeCategory) -> FullSubcategory<'_, TreeCategory> {
    FullSubcategory::new(c, |t: &Arc<LexTree>| t.is_fully_decided()).with_completion(decided_completion)
}

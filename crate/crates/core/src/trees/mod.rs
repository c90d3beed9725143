//! Finite lexicographic trees with splitting degrees from a fixed set `M`,
//! strong embeddings, planting and surgery, and a non-gluing amalgamation
//! of extensions.
//!
//! Trees are stored in canonical form: nodes are numbered in preorder with
//! children in lex order, so structural equality is equality up to the
//! unique isomorphism. Levels are depths.

mod amalgamate;
mod category;
mod dominate;
mod embed;
mod extension;
mod milliken;
mod vtree;

pub use amalgamate::{amalgamate, amalgamate_leveless, Amalgamation, Case, TraceStep};
pub use category::{decided_completion, fully_decided_subcategory, TreeCategory, Variant};
pub use dominate::{level_dominate, Domination};
pub use embed::{embeddings, enumerate_embeddings, find_embedding};
pub use extension::{
    canonical_nonterminal_form, canonical_terminal_form, decompose_extension, is_amalgamable_tree_arrow,
    nodes_of_incompatibility, nonterminal_violation, recompose_nonterminal, recompose_terminal, terminal_plant,
    terminal_violation, tree_surgery, BushColumn, BushLayer, Decomposition, LevelSurgery, Planting,
};
pub use milliken::{milliken_witness_search, subtree_hypergraph, MillikenError};
pub use vtree::{build_v, prune_v, v_size, VTree};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("splitting set is empty")]
    EmptyM,
    #[error("0 is not a splitting degree")]
    ZeroInM,
    #[error("node {0}: id appears twice")]
    DuplicateId(u64),
    #[error("node {node}: unknown id {other}")]
    UnknownId { node: u64, other: u64 },
    #[error("tree has {0} roots")]
    Roots(usize),
    #[error("node {0}: parent and child lists disagree")]
    ParentMismatch(u64),
    #[error("node {0}: not reachable from the root")]
    Unreachable(u64),
    #[error("node {node}: {children} children, not an allowed degree")]
    Splitting { node: u64, children: usize },
    #[error("node {node}: decided degree {dspl} is not allowed")]
    LabelNotInM { node: u64, dspl: u32 },
    #[error("node {node}: decided degree {dspl} but {spl} children")]
    LabelMismatch { node: u64, dspl: u32, spl: usize },
    #[error("trees use different splitting sets")]
    MDiffers,
    #[error("tree is empty")]
    Empty,
    #[error("node {0} out of range")]
    NodeRange(usize),
    #[error("map has {got} entries, source has {want}")]
    MapLength { got: usize, want: usize },
    #[error("node {0}: image not strictly above the image of its parent")]
    Order(usize),
    #[error("node {node}: image has {got} successors, expected {want}")]
    SplitNotPreserved { node: usize, got: usize, want: usize },
    #[error("node {0}: successors not sent to distinct successor cones in lex order")]
    Lex(usize),
    #[error("node {0}: decided degree not preserved")]
    Label(usize),
    #[error("nodes {0} and {1}: levels not preserved")]
    Levels(usize, usize),
    #[error("node {0} is not terminal")]
    NotTerminal(usize),
    #[error("node {0}: decided degree clashes with the planted tree")]
    PlantLabel(usize),
    #[error("extension is not terminal: node {0} of the target")]
    NotTerminalExtension(usize),
    #[error("extension is not non-terminal: node {0} of the target")]
    NotNonTerminalExtension(usize),
    #[error("arrows have different sources")]
    SourceMismatch,
    #[error("arrows disagree on decided degrees at source nodes {0:?}")]
    Incompatible(Vec<usize>),
    #[error("column data: {0}")]
    Column(String),
    #[error("{0}")]
    Variant(String),
    #[error("parse error at byte {0}")]
    Parse(usize),
    #[error("internal: {0}")]
    Internal(String),
}

/// A tree in nested form, used for building and for the text encoding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Nested {
    pub dspl: Option<u32>,
    pub children: Vec<Nested>,
}

impl Nested {
    pub fn leaf(dspl: Option<u32>) -> Self {
        Nested { dspl, children: Vec::new() }
    }
    pub fn node(children: Vec<Nested>) -> Self {
        Nested { dspl: None, children }
    }
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Nested::size).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexTree {
    m: Vec<u32>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    dspl: Vec<Option<u32>>,
    depth: Vec<usize>,
    end: Vec<usize>,
}

fn check_m(m: &[u32]) -> Result<Vec<u32>, TreeError> {
    let set: BTreeSet<u32> = m.iter().copied().collect();
    if set.is_empty() {
        return Err(TreeError::EmptyM);
    }
    if set.contains(&0) {
        return Err(TreeError::ZeroInM);
    }
    Ok(set.into_iter().collect())
}

impl LexTree {
    pub fn empty(m: &[u32]) -> Result<Self, TreeError> {
        Ok(LexTree::build(check_m(m)?, None::<usize>, |_| Vec::new(), |_| None).0)
    }

    pub fn single(m: &[u32], dspl: Option<u32>) -> Result<Self, TreeError> {
        Self::from_nested(m, Some(&Nested::leaf(dspl)))
    }

    /// A chain of `n` nodes (needs `1 ∈ M` for `n >= 2`).
    pub fn chain(m: &[u32], n: usize) -> Result<Self, TreeError> {
        let mut t: Option<Nested> = None;
        for _ in 0..n {
            t = Some(match t {
                None => Nested::leaf(None),
                Some(c) => Nested::node(vec![c]),
            });
        }
        Self::from_nested(m, t.as_ref())
    }

    /// The balanced tree of the given height in which every non-top node has
    /// `width` successors.
    pub fn full(m: &[u32], width: u32, height: usize) -> Result<Self, TreeError> {
        fn go(width: u32, h: usize) -> Nested {
            if h == 1 {
                Nested::leaf(None)
            } else {
                Nested::node((0..width).map(|_| go(width, h - 1)).collect())
            }
        }
        let t = (height > 0).then(|| go(width, height));
        Self::from_nested(m, t.as_ref())
    }

    pub fn from_nested(m: &[u32], t: Option<&Nested>) -> Result<Self, TreeError> {
        let m = check_m(m)?;
        let mut flat: Vec<&Nested> = Vec::new();
        let mut kids: Vec<Vec<usize>> = Vec::new();
        if let Some(t) = t {
            let mut stack = vec![(t, usize::MAX)];
            while let Some((n, p)) = stack.pop() {
                let id = flat.len();
                flat.push(n);
                kids.push(Vec::new());
                if p != usize::MAX {
                    kids[p].push(id);
                }
                for c in n.children.iter().rev() {
                    stack.push((c, id));
                }
            }
        }
        let tree = LexTree::build(m, (!flat.is_empty()).then_some(0), |i| kids[i].clone(), |i| flat[i].dspl).0;
        tree.check_degrees(|i| i as u64)?;
        Ok(tree.normalized())
    }

    /// Build the canonical tree reachable from `root`. Returns the tree and
    /// the position of every key. No validation.
    pub(crate) fn build<K: Copy + Eq + Hash>(
        m: Vec<u32>,
        root: Option<K>,
        children: impl Fn(K) -> Vec<K>,
        label: impl Fn(K) -> Option<u32>,
    ) -> (LexTree, HashMap<K, usize>) {
        let mut pos = HashMap::new();
        let mut t = LexTree { m, parent: vec![], children: vec![], dspl: vec![], depth: vec![], end: vec![] };
        let Some(r) = root else { return (t, pos) };
        let mut stack = vec![(r, None::<usize>)];
        let mut keys = Vec::new();
        while let Some((k, p)) = stack.pop() {
            let id = keys.len();
            keys.push(k);
            pos.insert(k, id);
            t.parent.push(p);
            t.children.push(Vec::new());
            t.depth.push(p.map_or(0, |p| t.depth[p] + 1));
            if let Some(p) = p {
                t.children[p].push(id);
            }
            for c in children(k).into_iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        t.dspl = keys.iter().map(|&k| label(k)).collect();
        t.end = vec![0; keys.len()];
        for i in (0..keys.len()).rev() {
            t.end[i] = t.children[i].last().map_or(i + 1, |&c| t.end[c]);
        }
        (t, pos)
    }

    fn check_degrees(&self, name: impl Fn(usize) -> u64) -> Result<(), TreeError> {
        for i in 0..self.len() {
            let k = self.children[i].len();
            if k > 0 && !self.allows(k as u32) {
                return Err(TreeError::Splitting { node: name(i), children: k });
            }
            if let Some(d) = self.dspl[i] {
                if !self.allows(d) {
                    return Err(TreeError::LabelNotInM { node: name(i), dspl: d });
                }
                if k > 0 && d as usize != k {
                    return Err(TreeError::LabelMismatch { node: name(i), dspl: d, spl: k });
                }
            }
        }
        Ok(())
    }

    // labels of non-terminal nodes are implied by their degree
    fn normalized(mut self) -> Self {
        for i in 0..self.len() {
            if !self.children[i].is_empty() {
                self.dspl[i] = None;
            }
        }
        self
    }

    /// Re-check every invariant.
    pub fn validate(&self) -> Result<(), TreeError> {
        check_m(&self.m)?;
        self.check_degrees(|i| i as u64)
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }
    pub fn allows(&self, k: u32) -> bool {
        self.m.binary_search(&k).is_ok()
    }
    pub fn min_m(&self) -> u32 {
        self.m[0]
    }
    /// Least allowed degree that is at least 2.
    pub fn min_branching(&self) -> Option<u32> {
        self.m.iter().copied().find(|&k| k >= 2)
    }
    pub fn len(&self) -> usize {
        self.parent.len()
    }
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
    pub fn root(&self) -> Option<usize> {
        (!self.is_empty()).then_some(0)
    }
    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }
    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }
    pub fn spl(&self, t: usize) -> usize {
        self.children[t].len()
    }
    pub fn is_terminal(&self, t: usize) -> bool {
        self.children[t].is_empty()
    }
    /// Stored label; only terminal nodes carry one.
    pub fn dspl(&self, t: usize) -> Option<u32> {
        self.dspl[t]
    }
    /// The decided degree: the degree of a non-terminal node, the label of a
    /// terminal one.
    pub fn decided(&self, t: usize) -> Option<u32> {
        if self.is_terminal(t) {
            self.dspl[t]
        } else {
            Some(self.spl(t) as u32)
        }
    }
    pub fn depth(&self, t: usize) -> usize {
        self.depth[t]
    }
    pub fn height(&self) -> usize {
        self.depth.iter().max().map_or(0, |d| d + 1)
    }
    pub fn level(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.depth[t] == d).collect()
    }
    /// One past the last node of the cone above `t`.
    pub fn cone_end(&self, t: usize) -> usize {
        self.end[t]
    }
    /// `a ≤ b` in the tree order.
    pub fn le(&self, a: usize, b: usize) -> bool {
        a <= b && b < self.end[a]
    }
    pub fn meet(&self, mut a: usize, b: usize) -> usize {
        while !self.le(a, b) {
            a = self.parent[a].expect("nodes of one tree share the root");
        }
        a
    }
    /// Index of the successor of `u` below or at `v`.
    pub fn child_toward(&self, u: usize, v: usize) -> Option<usize> {
        self.children[u].iter().position(|&c| self.le(c, v))
    }
    pub fn terminals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.is_terminal(t)).collect()
    }
    pub fn is_fully_decided(&self) -> bool {
        (0..self.len()).all(|t| self.decided(t).is_some())
    }
    pub fn has_labels(&self) -> bool {
        self.dspl.iter().any(Option::is_some)
    }
    pub fn is_balanced(&self) -> bool {
        let h = self.height();
        self.terminals().iter().all(|&t| self.depth[t] + 1 == h)
    }

    /// The subtree above `t`, canonicalized.
    pub fn cone(&self, t: usize) -> LexTree {
        LexTree::build(self.m.clone(), Some(t), |x| self.children[x].clone(), |x| self.dspl[x]).0
    }

    /// Same tree with one terminal label replaced.
    pub fn with_label(&self, t: usize, d: Option<u32>) -> LexTree {
        let mut out = self.clone();
        out.dspl[t] = d;
        out
    }

    pub fn without_labels(&self) -> LexTree {
        let mut out = self.clone();
        out.dspl.iter_mut().for_each(|d| *d = None);
        out
    }

    pub fn to_nested(&self) -> Option<Nested> {
        fn go(t: &LexTree, i: usize) -> Nested {
            Nested { dspl: t.dspl[i], children: t.children[i].iter().map(|&c| go(t, c)).collect() }
        }
        self.root().map(|r| go(self, r))
    }

    /// Text encoding: a node is `(`, its label as `d<m>` if it has one, its
    /// successors in lex order, then `)`. The empty tree encodes as ``.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        let mut stack: Vec<(usize, bool)> = self.root().map(|r| (r, false)).into_iter().collect();
        while let Some((t, closing)) = stack.pop() {
            if closing {
                s.push(')');
                continue;
            }
            s.push('(');
            if let Some(d) = self.dspl[t] {
                s.push('d');
                s.push_str(&d.to_string());
            }
            stack.push((t, true));
            for &c in self.children[t].iter().rev() {
                stack.push((c, false));
            }
        }
        s
    }

    pub fn parse(m: &[u32], text: &str) -> Result<Self, TreeError> {
        let b = text.as_bytes();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < b.len() && b[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        fn node(b: &[u8], i: &mut usize) -> Result<Nested, TreeError> {
            if b.get(*i) != Some(&b'(') {
                return Err(TreeError::Parse(*i));
            }
            *i += 1;
            let mut n = Nested::default();
            if b.get(*i) == Some(&b'd') {
                *i += 1;
                let start = *i;
                while *i < b.len() && b[*i].is_ascii_digit() {
                    *i += 1;
                }
                let d = std::str::from_utf8(&b[start..*i]).ok().and_then(|s| s.parse().ok());
                n.dspl = Some(d.ok_or(TreeError::Parse(start))?);
            }
            while b.get(*i) == Some(&b'(') {
                n.children.push(node(b, i)?);
            }
            if b.get(*i) != Some(&b')') {
                return Err(TreeError::Parse(*i));
            }
            *i += 1;
            Ok(n)
        }
        skip(&mut i);
        if i == b.len() {
            return Self::empty(m);
        }
        let n = node(b, &mut i)?;
        skip(&mut i);
        if i != b.len() {
            return Err(TreeError::Parse(i));
        }
        Self::from_nested(m, Some(&n))
    }

    /// Read the JSON node list, returning the canonical tree and the position
    /// of every input id.
    pub fn from_data(d: &TreeData) -> Result<(Self, HashMap<u64, usize>), TreeError> {
        let m = check_m(&d.m)?;
        let mut index = HashMap::new();
        for (i, n) in d.nodes.iter().enumerate() {
            if index.insert(n.id, i).is_some() {
                return Err(TreeError::DuplicateId(n.id));
            }
        }
        let look = |node: u64, other: u64| index.get(&other).copied().ok_or(TreeError::UnknownId { node, other });
        let mut roots = Vec::new();
        for (i, n) in d.nodes.iter().enumerate() {
            match n.parent {
                None => roots.push(i),
                Some(p) => {
                    let p = look(n.id, p)?;
                    if !d.nodes[p].children.contains(&n.id) {
                        return Err(TreeError::ParentMismatch(n.id));
                    }
                }
            }
            for &c in &n.children {
                let c = look(n.id, c)?;
                if d.nodes[c].parent != Some(n.id) {
                    return Err(TreeError::ParentMismatch(d.nodes[c].id));
                }
            }
            if n.children.iter().collect::<BTreeSet<_>>().len() != n.children.len() {
                return Err(TreeError::ParentMismatch(n.id));
            }
        }
        if !d.nodes.is_empty() && roots.len() != 1 {
            return Err(TreeError::Roots(roots.len()));
        }
        let kids: Vec<Vec<usize>> =
            d.nodes.iter().map(|n| n.children.iter().map(|c| index[c]).collect()).collect();
        let (tree, pos) = LexTree::build(m, roots.first().copied(), |i| kids[i].clone(), |i| d.nodes[i].dspl);
        if let Some(n) = d.nodes.iter().enumerate().find(|(i, _)| !pos.contains_key(i)) {
            return Err(TreeError::Unreachable(n.1.id));
        }
        let ids: Vec<u64> = {
            let mut v = vec![0; tree.len()];
            for (&i, &p) in &pos {
                v[p] = d.nodes[i].id;
            }
            v
        };
        tree.check_degrees(|p| ids[p])?;
        let map = pos.into_iter().map(|(i, p)| (d.nodes[i].id, p)).collect();
        Ok((tree.normalized(), map))
    }

    pub fn to_data(&self) -> TreeData {
        TreeData {
            m: self.m.clone(),
            nodes: (0..self.len())
                .map(|i| NodeData {
                    id: i as u64,
                    parent: self.parent[i].map(|p| p as u64),
                    children: self.children[i].iter().map(|&c| c as u64).collect(),
                    dspl: self.dspl[i],
                })
                .collect(),
        }
    }
}

impl std::fmt::Display for LexTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m: Vec<String> = self.m.iter().map(u32::to_string).collect();
        write!(f, "M{{{}}}:{}", m.join(","), self.encode())
    }
}

/// JSON form of a tree: `{"M": [...], "nodes": [{"id", "parent", "children", "dspl"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeData {
    #[serde(rename = "M")]
    pub m: Vec<u32>,
    pub nodes: Vec<NodeData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeData {
    pub id: u64,
    #[serde(default)]
    pub parent: Option<u64>,
    #[serde(default)]
    pub children: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dspl: Option<u32>,
}

impl Serialize for LexTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_data().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LexTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let data = TreeData::deserialize(d)?;
        LexTree::from_data(&data).map(|(t, _)| t).map_err(serde::de::Error::custom)
    }
}

/// Which structure a tree morphism has to respect besides order, meets,
/// splitting and decided degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphismFlags {
    /// Induce an order embedding of the level sets.
    pub levels: bool,
    /// Send the i-th successor class to the i-th one.
    pub lex: bool,
}

impl MorphismFlags {
    pub const STRONG: MorphismFlags = MorphismFlags { levels: true, lex: true };
    pub const LEVELESS: MorphismFlags = MorphismFlags { levels: false, lex: true };
}

/// A node map `dom → cod`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeArrow {
    pub dom: Arc<LexTree>,
    pub cod: Arc<LexTree>,
    pub map: Vec<usize>,
}

impl TreeArrow {
    pub fn new(dom: Arc<LexTree>, cod: Arc<LexTree>, map: Vec<usize>, flags: MorphismFlags) -> Result<Self, TreeError> {
        let f = TreeArrow { dom, cod, map };
        f.validate(flags)?;
        Ok(f)
    }

    pub fn identity(t: Arc<LexTree>) -> Self {
        let n = t.len();
        TreeArrow { dom: t.clone(), cod: t, map: (0..n).collect() }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &TreeArrow) -> TreeArrow {
        TreeArrow { dom: self.dom.clone(), cod: g.cod.clone(), map: self.map.iter().map(|&x| g.map[x]).collect() }
    }

    pub fn validate(&self, flags: MorphismFlags) -> Result<(), TreeError> {
        let (s, t) = (&*self.dom, &*self.cod);
        if s.m != t.m {
            return Err(TreeError::MDiffers);
        }
        if self.map.len() != s.len() {
            return Err(TreeError::MapLength { got: self.map.len(), want: s.len() });
        }
        if let Some(i) = self.map.iter().position(|&v| v >= t.len()) {
            return Err(TreeError::NodeRange(i));
        }
        let f = &self.map;
        for x in 0..s.len() {
            let kids = s.children(x);
            if !kids.is_empty() {
                if t.spl(f[x]) != kids.len() {
                    return Err(TreeError::SplitNotPreserved { node: x, got: t.spl(f[x]), want: kids.len() });
                }
                let mut used = vec![false; kids.len()];
                for (i, &c) in kids.iter().enumerate() {
                    let j = t.child_toward(f[x], f[c]).filter(|_| f[c] != f[x]).ok_or(TreeError::Order(c))?;
                    if used[j] || (flags.lex && j != i) {
                        return Err(TreeError::Lex(x));
                    }
                    used[j] = true;
                }
            } else if let Some(d) = s.dspl(x) {
                if t.decided(f[x]) != Some(d) {
                    return Err(TreeError::Label(x));
                }
            }
        }
        if flags.levels {
            let mut at: Vec<Option<(usize, usize)>> = vec![None; s.height()];
            for x in 0..s.len() {
                match at[s.depth(x)] {
                    None => at[s.depth(x)] = Some((x, t.depth(f[x]))),
                    Some((y, d)) if d != t.depth(f[x]) => return Err(TreeError::Levels(y, x)),
                    _ => {}
                }
            }
            for w in at.windows(2) {
                if let [Some((a, da)), Some((b, db))] = w {
                    if da >= db {
                        return Err(TreeError::Levels(*a, *b));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, flags: MorphismFlags) -> bool {
        self.validate(flags).is_ok()
    }
}

#[cfg(test)]
mod tests;

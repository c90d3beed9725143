use super::{LexTree, MorphismFlags, TreeArrow, TreeError, Variant};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PKey {
    Old(usize),
    New(usize),
}

/// Plant `p` on the terminal node `at` of `s`: the root of `p` is identified
/// with `at`. A one-node `p` with a label decides `at`.
pub fn terminal_plant(s: &Arc<LexTree>, at: usize, p: &LexTree) -> Result<TreeArrow, TreeError> {
    if s.is_empty() || p.is_empty() {
        return Err(TreeError::Empty);
    }
    if s.m() != p.m() {
        return Err(TreeError::MDiffers);
    }
    if at >= s.len() {
        return Err(TreeError::NodeRange(at));
    }
    if !s.is_terminal(at) {
        return Err(TreeError::NotTerminal(at));
    }
    let top = p.decided(0);
    if let (Some(d), Some(e)) = (s.dspl(at), top) {
        if d != e {
            return Err(TreeError::PlantLabel(at));
        }
    }
    let label_at = if p.len() == 1 { s.dspl(at).or(top) } else { None };
    let (tree, pos) = LexTree::build(
        s.m().to_vec(),
        Some(PKey::Old(0)),
        |k| match k {
            PKey::Old(x) if x == at => p.children(0).iter().map(|&c| PKey::New(c)).collect(),
            PKey::Old(x) => s.children(x).iter().map(|&c| PKey::Old(c)).collect(),
            PKey::New(y) => p.children(y).iter().map(|&c| PKey::New(c)).collect(),
        },
        |k| match k {
            PKey::Old(x) if x == at => label_at,
            PKey::Old(x) => s.dspl(x),
            PKey::New(y) => p.dspl(y),
        },
    );
    let map = (0..s.len()).map(|x| pos[&PKey::Old(x)]).collect();
    Ok(TreeArrow { dom: s.clone(), cod: Arc::new(tree), map })
}

/// One bush of a column: `width` successors, the one at `point` carries the
/// rest of the column; the others are new terminal nodes with `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BushLayer {
    pub width: u32,
    pub point: usize,
    /// Labels of the side nodes in lex order; empty means all undecided.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Option<u32>>,
}

/// Bushes stacked along their points, lowest first. A column of `n` bushes
/// has height `n + 1` and inserts `n` levels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BushColumn {
    pub layers: Vec<BushLayer>,
}

impl BushColumn {
    pub fn height(&self) -> usize {
        self.layers.len() + 1
    }
    /// A column of `n` bushes of width `w`, pointed at the first successor.
    pub fn plain(w: u32, n: usize) -> Self {
        BushColumn { layers: vec![BushLayer { width: w, point: 0, labels: Vec::new() }; n] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum SKey {
    Old(usize),
    Spine(usize, usize),
    Side(usize, usize, usize),
}

/// Splice the column `columns[s]` between every node `s` on level `level` and
/// its predecessor; the top point of each column is `s` itself.
pub fn tree_surgery(
    s: &Arc<LexTree>,
    level: usize,
    columns: &BTreeMap<usize, BushColumn>,
) -> Result<TreeArrow, TreeError> {
    if s.is_empty() {
        return Err(TreeError::Empty);
    }
    if level >= s.height() {
        return Err(TreeError::Column(format!("level {level} does not exist")));
    }
    let nodes = s.level(level);
    let mut height = None;
    for &x in &nodes {
        let c = columns.get(&x).ok_or_else(|| TreeError::Column(format!("no column for node {x}")))?;
        if *height.get_or_insert(c.height()) != c.height() {
            return Err(TreeError::Column(format!("column at node {x} has a different height")));
        }
        for l in &c.layers {
            if !s.allows(l.width) || l.point >= l.width as usize {
                return Err(TreeError::Column(format!("bad bush at node {x}")));
            }
            if !(l.labels.is_empty() || l.labels.len() + 1 == l.width as usize)
                || l.labels.iter().flatten().any(|&d| !s.allows(d))
            {
                return Err(TreeError::Column(format!("bad labels at node {x}")));
            }
        }
    }
    if let Some(x) = columns.keys().find(|x| !nodes.contains(x)) {
        return Err(TreeError::Column(format!("node {x} is not on level {level}")));
    }
    let lift = |x: usize| if s.depth(x) == level && !columns[&x].layers.is_empty() { SKey::Spine(x, 0) } else { SKey::Old(x) };
    let (tree, pos) = LexTree::build(
        s.m().to_vec(),
        Some(lift(0)),
        |k| match k {
            SKey::Old(x) => s.children(x).iter().map(|&c| lift(c)).collect(),
            SKey::Spine(x, i) => {
                let c = &columns[&x];
                let l = &c.layers[i];
                (0..l.width as usize)
                    .map(|j| {
                        if j != l.point {
                            SKey::Side(x, i, j)
                        } else if i + 1 < c.layers.len() {
                            SKey::Spine(x, i + 1)
                        } else {
                            SKey::Old(x)
                        }
                    })
                    .collect()
            }
            SKey::Side(..) => Vec::new(),
        },
        |k| match k {
            SKey::Old(x) => s.dspl(x),
            SKey::Spine(..) => None,
            SKey::Side(x, i, j) => {
                let l = &columns[&x].layers[i];
                let idx = if j < l.point { j } else { j - 1 };
                l.labels.get(idx).copied().flatten()
            }
        },
    );
    let map = (0..s.len()).map(|x| pos[&SKey::Old(x)]).collect();
    Ok(TreeArrow { dom: s.clone(), cod: Arc::new(tree), map })
}

fn image_set(f: &TreeArrow) -> BTreeSet<usize> {
    f.map.iter().copied().collect()
}

// the lower closure of the image, plus the successors of its new nodes
fn middle(f: &TreeArrow) -> BTreeSet<usize> {
    let t = &*f.cod;
    let img = image_set(f);
    let mut lower = BTreeSet::new();
    for &x in &img {
        let mut y = Some(x);
        while let Some(z) = y {
            if !lower.insert(z) {
                break;
            }
            y = t.parent(z);
        }
    }
    let mut out = lower.clone();
    for &z in lower.iter().filter(|z| !img.contains(z)) {
        out.extend(t.children(z).iter().copied());
    }
    out
}

/// First target node outside the image that is not above a terminal image;
/// `None` if the extension is terminal.
pub fn terminal_violation(f: &TreeArrow) -> Option<usize> {
    if f.dom.is_empty() {
        return f.cod.root();
    }
    let img = image_set(f);
    let mid = middle(f);
    (0..f.cod.len()).find(|x| mid.contains(x) && !img.contains(x))
}

/// First target node that the non-terminal criterion rejects; `None` if the
/// extension is non-terminal.
pub fn nonterminal_violation(f: &TreeArrow) -> Option<usize> {
    let mid = middle(f);
    (0..f.cod.len()).find(|x| !mid.contains(x))
}

/// `S ⊆ T'` non-terminal followed by `T' ⊆ T` terminal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub lower: TreeArrow,
    pub upper: TreeArrow,
}

/// Split a strong extension into its non-terminal and terminal parts.
///
/// Label decisions on nodes of `S` are left to the terminal part.
pub fn decompose_extension(f: &TreeArrow) -> Result<Decomposition, TreeError> {
    f.validate(MorphismFlags::STRONG)?;
    let t = &*f.cod;
    let mid = middle(f);
    let pre: BTreeMap<usize, usize> = f.map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let root = t.root().filter(|r| mid.contains(r));
    let (tp, pos) = LexTree::build(
        t.m().to_vec(),
        root,
        |x| t.children(x).iter().copied().filter(|c| mid.contains(c)).collect(),
        |x| {
            if t.children(x).iter().any(|c| mid.contains(c)) {
                None
            } else if let Some(&s) = pre.get(&x) {
                f.dom.dspl(s)
            } else if t.is_terminal(x) {
                t.dspl(x)
            } else {
                None
            }
        },
    );
    let tp = Arc::new(tp);
    let mut upper_map = vec![0; tp.len()];
    for (&x, &p) in &pos {
        upper_map[p] = x;
    }
    let lower = TreeArrow { dom: f.dom.clone(), cod: tp.clone(), map: f.map.iter().map(|x| pos[x]).collect() };
    let upper = TreeArrow { dom: tp, cod: f.cod.clone(), map: upper_map };
    Ok(Decomposition { lower, upper })
}

/// A tree planted on a terminal node of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planting {
    pub at: usize,
    pub tree: LexTree,
}

/// `T = S ◁_{a∈A} T_a` for a terminal extension, listing only the nodes
/// where something is planted or decided.
pub fn canonical_terminal_form(f: &TreeArrow) -> Result<Vec<Planting>, TreeError> {
    f.validate(MorphismFlags::STRONG)?;
    if let Some(x) = terminal_violation(f) {
        return Err(TreeError::NotTerminalExtension(x));
    }
    let (s, t) = (&*f.dom, &*f.cod);
    Ok(s.terminals()
        .into_iter()
        .filter(|&a| !t.is_terminal(f.map[a]) || t.dspl(f.map[a]) != s.dspl(a))
        .map(|a| Planting { at: a, tree: t.cone(f.map[a]) })
        .collect())
}

/// Plant each tree in turn; the result is independent of the order.
pub fn recompose_terminal(s: &Arc<LexTree>, plantings: &[Planting]) -> Result<TreeArrow, TreeError> {
    let mut acc = TreeArrow::identity(s.clone());
    for p in plantings {
        let at = *acc.map.get(p.at).ok_or(TreeError::NodeRange(p.at))?;
        let step = terminal_plant(&acc.cod, at, &p.tree)?;
        acc = acc.then(&step);
    }
    Ok(acc)
}

/// The columns inserted below one level of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSurgery {
    pub level: usize,
    pub columns: BTreeMap<usize, BushColumn>,
}

/// `T = S ▷_{α∈A} (C_s)` for a non-terminal extension, one entry per level
/// of `S` below which new levels were inserted.
pub fn canonical_nonterminal_form(f: &TreeArrow) -> Result<Vec<LevelSurgery>, TreeError> {
    f.validate(MorphismFlags::STRONG)?;
    if let Some(x) = nonterminal_violation(f) {
        return Err(TreeError::NotNonTerminalExtension(x));
    }
    let (s, t) = (&*f.dom, &*f.cod);
    let mut out = Vec::new();
    for level in 0..s.height() {
        let mut columns = BTreeMap::new();
        for x in s.level(level) {
            let stop = s.parent(x).map(|p| f.map[p]);
            let mut spine = Vec::new();
            let mut y = t.parent(f.map[x]);
            while y.is_some() && y != stop {
                spine.push(y.unwrap());
                y = t.parent(y.unwrap());
            }
            spine.reverse();
            let layers = spine
                .iter()
                .map(|&c| {
                    let point = t.child_toward(c, f.map[x]).unwrap();
                    let labels: Vec<Option<u32>> = t
                        .children(c)
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != point)
                        .map(|(_, &y)| t.dspl(y))
                        .collect();
                    let labels = if labels.iter().all(Option::is_none) { Vec::new() } else { labels };
                    BushLayer { width: t.spl(c) as u32, point, labels }
                })
                .collect();
            columns.insert(x, BushColumn { layers });
        }
        if columns.values().any(|c| !c.layers.is_empty()) {
            out.push(LevelSurgery { level, columns });
        }
    }
    Ok(out)
}

/// Apply the surgeries from the highest level down, so that level numbers of
/// `S` stay valid.
pub fn recompose_nonterminal(s: &Arc<LexTree>, surgeries: &[LevelSurgery]) -> Result<TreeArrow, TreeError> {
    let mut acc = TreeArrow::identity(s.clone());
    let mut order: Vec<&LevelSurgery> = surgeries.iter().collect();
    order.sort_by_key(|l| std::cmp::Reverse(l.level));
    for ls in order {
        let cols = ls
            .columns
            .iter()
            .map(|(&x, c)| acc.map.get(x).map(|&y| (y, c.clone())).ok_or(TreeError::NodeRange(x)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        let first = *s.level(ls.level).first().ok_or(TreeError::Column(format!("level {} does not exist", ls.level)))?;
        let at = acc.cod.depth(acc.map[first]);
        let step = tree_surgery(&acc.cod, at, &cols)?;
        acc = acc.then(&step);
    }
    Ok(acc)
}

/// Undecided terminal source nodes whose two images carry different decided
/// degrees.
pub fn nodes_of_incompatibility(f1: &TreeArrow, f2: &TreeArrow) -> Result<Vec<usize>, TreeError> {
    if f1.dom != f2.dom {
        return Err(TreeError::SourceMismatch);
    }
    let s = &*f1.dom;
    Ok((0..s.len())
        .filter(|&x| s.is_terminal(x) && s.dspl(x).is_none())
        .filter(|&x| match (f1.cod.decided(f1.map[x]), f2.cod.decided(f2.map[x])) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
        .collect())
}

/// Closed form for amalgamable arrows: with a single allowed degree, or for
/// fully decided trees, always; otherwise exactly when every terminal node
/// of the source lands on a decided node.
pub fn is_amalgamable_tree_arrow(f: &TreeArrow, variant: Variant) -> Result<bool, TreeError> {
    f.validate(variant.flags())?;
    for t in [&f.dom, &f.cod] {
        if !variant.admits(t) {
            return Err(TreeError::Variant(format!("{} is not an object of {variant:?}", t)));
        }
    }
    if variant == Variant::Ta || f.dom.m().len() == 1 {
        return Ok(true);
    }
    Ok(f.dom.terminals().iter().all(|&x| f.cod.decided(f.map[x]).is_some()))
}

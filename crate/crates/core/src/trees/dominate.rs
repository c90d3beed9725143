use super::{LexTree, MorphismFlags, TreeArrow, TreeError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `T ⊆ T̂` together with the now level-preserving `S ⊆ T̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domination {
    pub tree: Arc<LexTree>,
    /// `T → T̂`; preserves everything but levels.
    pub outer: TreeArrow,
    /// `S → T̂`; strong.
    pub inner: TreeArrow,
    /// Number of nodes added.
    pub padding: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Old(usize),
    Spine(usize, usize),
    Side(usize, usize, usize),
}

// insert `heights[x]` new nodes right below each x, each with `width - 1`
// new terminal successors
fn pad(t: &LexTree, heights: &BTreeMap<usize, usize>, width: u32, label: Option<u32>) -> (LexTree, Vec<usize>) {
    let lift = |x: usize| if heights.get(&x).is_some_and(|&h| h > 0) { Key::Spine(x, 0) } else { Key::Old(x) };
    let (tree, pos) = LexTree::build(
        t.m().to_vec(),
        t.root().map(lift),
        |k| match k {
            Key::Old(x) => t.children(x).iter().map(|&c| lift(c)).collect(),
            Key::Spine(x, i) => {
                let up = if i + 1 < heights[&x] { Key::Spine(x, i + 1) } else { Key::Old(x) };
                std::iter::once(up).chain((1..width as usize).map(|j| Key::Side(x, i, j))).collect()
            }
            Key::Side(..) => Vec::new(),
        },
        |k| match k {
            Key::Old(x) => t.dspl(x),
            Key::Spine(..) => None,
            Key::Side(..) => label,
        },
    );
    (tree, (0..t.len()).map(|x| pos[&Key::Old(x)]).collect())
}

/// Pad a leveless extension `S ⊆ T` below the images of `S`, level by level,
/// until every level of `S` lands on a single level. Every added node has
/// the least allowed degree; its side successors are decided when `T` is.
pub fn level_dominate(f: &TreeArrow) -> Result<Domination, TreeError> {
    f.validate(MorphismFlags::LEVELESS)?;
    let (s, t) = (&*f.dom, &*f.cod);
    let width = t.min_m();
    let label = t.is_fully_decided().then_some(width);
    let mut cur = t.clone();
    let mut outer: Vec<usize> = (0..t.len()).collect();
    for level in 0..s.height() {
        let images: Vec<usize> = s.level(level).iter().map(|&x| outer[f.map[x]]).collect();
        let top = images.iter().map(|&y| cur.depth(y)).max().unwrap_or(0);
        let heights: BTreeMap<usize, usize> =
            images.iter().map(|&y| (y, top - cur.depth(y))).filter(|&(_, h)| h > 0).collect();
        if heights.is_empty() {
            continue;
        }
        let (next, step) = pad(&cur, &heights, width, label);
        outer = outer.iter().map(|&y| step[y]).collect();
        cur = next;
    }
    let tree = Arc::new(cur);
    let padding = tree.len() - t.len();
    let outer = TreeArrow { dom: f.cod.clone(), cod: tree.clone(), map: outer };
    let inner = f.then(&outer);
    inner.validate(MorphismFlags::STRONG).map_err(|e| TreeError::Internal(format!("padding: {e}")))?;
    outer.validate(MorphismFlags::LEVELESS).map_err(|e| TreeError::Internal(format!("padding: {e}")))?;
    Ok(Domination { tree, outer, inner, padding })
}

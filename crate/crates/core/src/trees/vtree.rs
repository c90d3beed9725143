use super::{LexTree, TreeError};
use serde::{Deserialize, Serialize};

/// A tree of finite sequences: the node at position `i` is the map
/// `nodes[i]` from an initial segment of `Y` into `S = {0, .., s-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VTree {
    pub tree: LexTree,
    pub nodes: Vec<Vec<usize>>,
}

/// `Σ_{i<y} s^i`, the number of maps from proper initial segments of `y`
/// into `s`.
pub fn v_size(s: usize, y: usize) -> usize {
    (0..y).map(|i| s.pow(i as u32)).sum()
}

fn grow(y: usize, m: Vec<u32>, color: &dyn Fn(&[usize]) -> Result<Vec<usize>, TreeError>) -> Result<VTree, TreeError> {
    if y == 0 {
        return Ok(VTree { tree: LexTree::empty(&m)?, nodes: Vec::new() });
    }
    // preorder: successors of a sequence are its one-point extensions in
    // increasing order of the new value
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut kids: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![(Vec::new(), None::<usize>)];
    while let Some((seq, p)) = stack.pop() {
        let id = nodes.len();
        if let Some(p) = p {
            kids[p].push(id);
        }
        let next = if seq.len() + 1 < y { color(&seq)? } else { Vec::new() };
        for &v in next.iter().rev() {
            let mut c = seq.clone();
            c.push(v);
            stack.push((c, Some(id)));
        }
        nodes.push(seq);
        kids.push(Vec::new());
    }
    let (tree, _) = LexTree::build(m.clone(), Some(0usize), |i| kids[i].clone(), |_| None);
    tree.validate().map_err(|e| TreeError::Column(format!("pruned tree: {e}")))?;
    Ok(VTree { tree, nodes })
}

/// All sequences of length below `y` with values below `s`; as a tree it
/// is the full `s`-branching tree of height `y`.
pub fn build_v(s: usize, y: usize) -> Result<VTree, TreeError> {
    if s == 0 {
        return Err(TreeError::Column("the value set must contain 0".into()));
    }
    let all: Vec<usize> = (0..s).collect();
    grow(y, vec![s as u32], &|_| Ok(all.clone()))
}

/// The sequences `t` with `t(k) ∈ phi(t restricted to k)` for every `k`. The
/// color of a node is the set of values its successors may take; it has to
/// contain 0 and have a size in `m`.
pub fn prune_v(s: usize, y: usize, m: &[u32], phi: impl Fn(&[usize]) -> Vec<usize>) -> Result<VTree, TreeError> {
    if s == 0 {
        return Err(TreeError::Column("the value set must contain 0".into()));
    }
    LexTree::empty(m)?;
    let mut ms: Vec<u32> = m.to_vec();
    ms.sort_unstable();
    ms.dedup();
    let color = |seq: &[usize]| {
        let mut c = phi(seq);
        c.sort_unstable();
        c.dedup();
        if c.first() != Some(&0) {
            return Err(TreeError::Column(format!("color at {seq:?} does not contain 0")));
        }
        if c.iter().any(|&v| v >= s) {
            return Err(TreeError::Column(format!("color at {seq:?} has a value outside 0..{s}")));
        }
        if !ms.contains(&(c.len() as u32)) {
            return Err(TreeError::Column(format!("color at {seq:?} has size {}", c.len())));
        }
        Ok(c)
    };
    grow(y, ms.clone(), &color)
}

use super::{enumerate_embeddings, LexTree, MorphismFlags};
use crate::category::coloring::{find_bad_coloring, ColoringOutcome, Hypergraph};
use std::collections::HashMap;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum MillikenError {
    #[error("parameters out of range: {0}")]
    Parameters(String),
    #[error("coloring search for height {height} stopped after {nodes} nodes")]
    Exhausted { height: usize, nodes: u64 },
}

/// The copies of the height-`b` tree inside the height-`n` one, each given
/// as the set of height-`a` copies it contains.
pub fn subtree_hypergraph(m: u32, a: usize, b: usize, n: usize) -> Hypergraph {
    let full = |h: usize| LexTree::full(&[m], m, h).expect("m is positive");
    let (ta, tb, tn) = (full(a), full(b), full(n));
    let small = enumerate_embeddings(&ta, &tn, MorphismFlags::STRONG);
    let index: HashMap<&[usize], usize> = small.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let inner = enumerate_embeddings(&ta, &tb, MorphismFlags::STRONG);
    let edges = enumerate_embeddings(&tb, &tn, MorphismFlags::STRONG)
        .into_iter()
        .map(|big| {
            let mut e: Vec<usize> = inner
                .iter()
                .map(|f| index[f.iter().map(|&x| big[x]).collect::<Vec<_>>().as_slice()])
                .collect();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();
    Hypergraph::new(small.len(), edges)
}

/// Least `n` in `b..=n_max` such that every `k`-coloring of the balanced
/// height-`a` strong subtrees of the full `m`-branching tree of height `n`
/// has a height-`b` strong subtree all of whose height-`a` subtrees share a
/// color. `Ok(None)` if no `n` up to `n_max` works.
pub fn milliken_witness_search(
    m: u32,
    a: usize,
    b: usize,
    k: usize,
    n_max: usize,
    max_nodes: u64,
    parallel: bool,
) -> Result<Option<usize>, MillikenError> {
    if m == 0 || a == 0 || k == 0 {
        return Err(MillikenError::Parameters("m, a and k must be positive".into()));
    }
    if a > b {
        return Err(MillikenError::Parameters(format!("a = {a} exceeds b = {b}")));
    }
    for n in b..=n_max {
        let h = subtree_hypergraph(m, a, b, n);
        if k == 1 {
            if !h.edges.is_empty() {
                return Ok(Some(n));
            }
            continue;
        }
        match find_bad_coloring(&h, k, max_nodes, parallel) {
            ColoringOutcome::NoneExists => return Ok(Some(n)),
            ColoringOutcome::Found(_) => {}
            ColoringOutcome::Exhausted { nodes } => return Err(MillikenError::Exhausted { height: n, nodes }),
        }
    }
    Ok(None)
}

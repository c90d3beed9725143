//! Colorings of hypergraph vertices that leave no edge monochromatic.
//!
//! Vertices are `0..n`; an edge is a set of vertices. A coloring is *bad* for
//! the Ramsey searches when no edge is monochromatic, so this module looks for
//! exactly those colorings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringOutcome {
    /// A coloring with no monochromatic edge, indexed by vertex.
    Found(Vec<usize>),
    /// Every coloring has a monochromatic edge.
    NoneExists,
    /// The node cap was reached first.
    Exhausted { nodes: u64 },
}

impl Hypergraph {
    pub fn new(vertices: usize, edges: Vec<Vec<usize>>) -> Self {
        Hypergraph { vertices, edges }
    }

    /// True if no edge of `colors` is monochromatic. Empty and singleton edges
    /// always count as monochromatic.
    pub fn is_bad_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertices
            && self.edges.iter().all(|e| {
                let mut it = e.iter().map(|&v| colors[v]);
                match it.next() {
                    None => false,
                    Some(c) => it.any(|d| d != c),
                }
            })
    }
}

struct Prepared {
    n: usize,
    // edges indexed by their largest vertex
    closing: Vec<Vec<Vec<usize>>>,
}

fn prepare(h: &Hypergraph) -> Result<Prepared, ()> {
    let mut edges: Vec<Vec<usize>> = h
        .edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();
    edges.sort();
    edges.dedup();
    if edges.iter().any(|e| e.len() <= 1) {
        return Err(());
    }
    let mut closing = vec![Vec::new(); h.vertices];
    for e in edges {
        let last = *e.last().unwrap();
        closing[last].push(e);
    }
    Ok(Prepared { n: h.vertices, closing })
}

fn conflict(p: &Prepared, colors: &[usize], v: usize) -> bool {
    p.closing[v]
        .iter()
        .any(|e| e.iter().all(|&u| colors[u] == colors[v]))
}

struct Search<'a> {
    p: &'a Prepared,
    k: usize,
    cap: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Search<'_> {
    // Depth-first from vertex `v` with colors[..v] fixed; `used` colors so far.
    fn run(&self, colors: &mut Vec<usize>, v: usize, used: usize) -> Option<Result<(), ()>> {
        if v == self.p.n {
            return Some(Ok(()));
        }
        if self.stop.load(Ordering::Relaxed) {
            return None;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.cap {
            return None;
        }
        let top = (used + 1).min(self.k);
        for c in 0..top {
            colors[v] = c;
            if conflict(self.p, colors, v) {
                continue;
            }
            match self.run(colors, v + 1, used.max(c + 1)) {
                Some(Ok(())) => return Some(Ok(())),
                Some(Err(())) => {}
                None => return None,
            }
        }
        Some(Err(()))
    }
}

/// Look for a coloring with `k` colors leaving every edge non-monochromatic.
///
/// Colors are interchangeable, so the search only tries a new color when all
/// smaller ones are in use; the coloring returned is the first one in that
/// canonical depth-first order, whatever `parallel` is.
pub fn find_bad_coloring(h: &Hypergraph, k: usize, max_nodes: u64, parallel: bool) -> ColoringOutcome {
    let p = match prepare(h) {
        Ok(p) => p,
        Err(()) => return ColoringOutcome::NoneExists,
    };
    if p.n == 0 {
        return ColoringOutcome::Found(Vec::new());
    }
    if k == 0 {
        return ColoringOutcome::NoneExists;
    }
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let search = Search { p: &p, k, cap: max_nodes, nodes: &nodes, stop: &stop };

    if !parallel {
        let mut colors = vec![0; p.n];
        return match search.run(&mut colors, 0, 0) {
            Some(Ok(())) => ColoringOutcome::Found(colors),
            Some(Err(())) => ColoringOutcome::NoneExists,
            None => ColoringOutcome::Exhausted { nodes: nodes.load(Ordering::Relaxed) },
        };
    }

    // Split on prefixes of the first few vertices, kept in depth-first order.
    let depth = p.n.min(12);
    let mut prefixes: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    for v in 0..depth {
        let mut next = Vec::new();
        for (pre, used) in prefixes {
            let top = (used + 1).min(k);
            for c in 0..top {
                let mut colors = pre.clone();
                colors.push(c);
                let mut full = colors.clone();
                full.resize(p.n, 0);
                if conflict(&p, &full, v) {
                    continue;
                }
                next.push((colors, used.max(c + 1)));
            }
        }
        prefixes = next;
    }
    if prefixes.is_empty() {
        return ColoringOutcome::NoneExists;
    }
    let exhausted = AtomicBool::new(false);
    let found = prefixes.par_iter().find_map_first(|(pre, used)| {
        let mut colors = pre.clone();
        colors.resize(p.n, 0);
        match search.run(&mut colors, depth, *used) {
            Some(Ok(())) => Some(colors),
            Some(Err(())) => None,
            None => {
                exhausted.store(true, Ordering::Relaxed);
                None
            }
        }
    });
    match found {
        Some(c) => ColoringOutcome::Found(c),
        None if exhausted.load(Ordering::Relaxed) => {
            ColoringOutcome::Exhausted { nodes: nodes.load(Ordering::Relaxed) }
        }
        None => ColoringOutcome::NoneExists,
    }
}

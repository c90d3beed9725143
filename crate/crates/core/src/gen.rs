//! Seeded random instances for tests and the command line.

use crate::monoids::FiniteMonoid;
use crate::trees::{
    nodes_of_incompatibility, terminal_plant, tree_surgery, BushColumn, BushLayer, LexTree, Nested, TreeArrow, Variant,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random associative table on `0..order` with unit 0, by
/// rejection.
pub fn random_monoid(order: usize, rng: &mut impl Rng) -> FiniteMonoid {
    assert!(order > 0);
    loop {
        let mut t = vec![vec![0; order]; order];
        for (x, row) in t.iter_mut().enumerate() {
            for (y, v) in row.iter_mut().enumerate() {
                *v = if x == 0 { y } else if y == 0 { x } else { rng.gen_range(0..order) };
            }
        }
        if let Ok(m) = FiniteMonoid::new(order, 0, t) {
            return m;
        }
    }
}

fn label(variant: Variant, m: &[u32], rng: &mut impl Rng) -> Option<u32> {
    match variant {
        Variant::Tw => None,
        Variant::Ta => Some(*m.choose(rng).unwrap()),
        Variant::Tc | Variant::Leveless => {
            if rng.gen_bool(0.5) {
                None
            } else {
                Some(*m.choose(rng).unwrap())
            }
        }
    }
}

/// A random tree with at most `max_nodes` nodes whose labels suit `variant`.
pub fn random_tree(m: &[u32], max_nodes: usize, variant: Variant, rng: &mut impl Rng) -> LexTree {
    assert!(max_nodes > 0);
    let target = rng.gen_range(1..=max_nodes);
    let mut root = Nested::leaf(None);
    let mut size = 1;
    for _ in 0..4 * max_nodes {
        if size >= target {
            break;
        }
        let k = *m.choose(rng).unwrap() as usize;
        if size + k > max_nodes {
            continue;
        }
        let pick = rng.gen_range(0..count_leaves(&root));
        grow_leaf(&mut root, pick, k);
        size += k;
    }
    let mut labels = |n: &mut Nested| {
        if n.children.is_empty() {
            n.dspl = label(variant, m, rng);
        }
    };
    visit(&mut root, &mut labels);
    LexTree::from_nested(m, Some(&root)).expect("degrees come from m")
}

fn count_leaves(n: &Nested) -> usize {
    if n.children.is_empty() {
        1
    } else {
        n.children.iter().map(count_leaves).sum()
    }
}

fn grow_leaf(n: &mut Nested, pick: usize, k: usize) {
    fn go(n: &mut Nested, pick: usize, seen: &mut usize, k: usize) -> bool {
        if n.children.is_empty() {
            if *seen == pick {
                n.children = vec![Nested::leaf(None); k];
                return true;
            }
            *seen += 1;
            return false;
        }
        n.children.iter_mut().any(|c| go(c, pick, seen, k))
    }
    go(n, pick, &mut 0, k);
}

fn visit(n: &mut Nested, f: &mut dyn FnMut(&mut Nested)) {
    f(n);
    for c in &mut n.children {
        visit(c, f);
    }
}

// one random planting, surgery or decision on top of `f`
fn step(f: &TreeArrow, max_nodes: usize, variant: Variant, rng: &mut impl Rng) -> Option<TreeArrow> {
    let t = &f.cod;
    let m = t.m().to_vec();
    match rng.gen_range(0..3) {
        0 => {
            let free: Vec<usize> = t.terminals();
            let &x = free.choose(rng)?;
            let w = t.dspl(x).unwrap_or(*m.choose(rng).unwrap());
            if t.len() + w as usize > max_nodes {
                return None;
            }
            let bush = Nested::node((0..w).map(|_| Nested::leaf(label(variant, &m, rng))).collect());
            let p = LexTree::from_nested(&m, Some(&bush)).ok()?;
            Some(f.then(&terminal_plant(t, x, &p).ok()?))
        }
        1 => {
            let level = rng.gen_range(0..t.height());
            let layers = rng.gen_range(1..=2);
            let mut cols = BTreeMap::new();
            let mut added = 0;
            for x in t.level(level) {
                let col = BushColumn {
                    layers: (0..layers)
                        .map(|_| {
                            let w = *m.choose(rng).unwrap();
                            added += w as usize;
                            BushLayer {
                                width: w,
                                point: rng.gen_range(0..w as usize),
                                labels: (1..w).map(|_| label(variant, &m, rng)).collect(),
                            }
                        })
                        .collect(),
                };
                cols.insert(x, col);
            }
            if t.len() + added > max_nodes {
                return None;
            }
            Some(f.then(&tree_surgery(t, level, &cols).ok()?))
        }
        _ => {
            if variant != Variant::Tc && variant != Variant::Leveless {
                return None;
            }
            let open: Vec<usize> = t.terminals().into_iter().filter(|&x| t.dspl(x).is_none()).collect();
            let &x = open.choose(rng)?;
            let d = *m.choose(rng).unwrap();
            let u = Arc::new(t.with_label(x, Some(d)));
            Some(TreeArrow { dom: f.dom.clone(), cod: u, map: f.map.clone() })
        }
    }
}

/// A random strong extension of `s` with at most `max_nodes` nodes in the
/// target, built from a few plantings, surgeries and decisions.
pub fn random_extension(s: &Arc<LexTree>, max_nodes: usize, variant: Variant, rng: &mut impl Rng) -> TreeArrow {
    if s.is_empty() {
        let t = random_tree(s.m(), max_nodes.max(1), variant, rng);
        return TreeArrow { dom: s.clone(), cod: Arc::new(t), map: Vec::new() };
    }
    let mut f = TreeArrow::identity(s.clone());
    let steps = rng.gen_range(0..=3);
    for _ in 0..steps {
        // a few tries, since a step may not fit under max_nodes
        if let Some(g) = (0..4).find_map(|_| step(&f, max_nodes, variant, rng)) {
            f = g;
        }
    }
    f
}

/// Two extensions of a common random tree that agree on decided degrees.
pub fn random_compatible_pair(
    m: &[u32],
    max_nodes: usize,
    variant: Variant,
    rng: &mut impl Rng,
) -> (TreeArrow, TreeArrow) {
    loop {
        let s = if rng.gen_bool(0.08) {
            LexTree::empty(m).unwrap()
        } else {
            random_tree(m, (max_nodes / 2).max(1), variant, rng)
        };
        let s = Arc::new(s);
        let f1 = random_extension(&s, max_nodes, variant, rng);
        let f2 = random_extension(&s, max_nodes, variant, rng);
        if nodes_of_incompatibility(&f1, &f2).is_ok_and(|b| b.is_empty()) {
            return (f1, f2);
        }
    }
}

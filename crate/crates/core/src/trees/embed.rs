use super::{LexTree, MorphismFlags, TreeArrow};
use rayon::prelude::*;
use std::sync::Arc;

struct Search<'a> {
    s: &'a LexTree,
    t: &'a LexTree,
    flags: MorphismFlags,
    fixed: &'a [Option<usize>],
    map: Vec<usize>,
    level: Vec<Option<usize>>,
}

impl Search<'_> {
    fn admissible(&self, x: usize, v: usize) -> bool {
        if self.fixed.get(x).copied().flatten().is_some_and(|w| w != v) {
            return false;
        }
        let (s, t) = (self.s, self.t);
        if !s.is_terminal(x) {
            if t.spl(v) != s.spl(x) {
                return false;
            }
        } else if let Some(d) = s.dspl(x) {
            if t.decided(v) != Some(d) {
                return false;
            }
        }
        if self.flags.levels {
            let (dx, dv) = (s.depth(x), t.depth(v));
            if let Some(l) = self.level[dx] {
                return l == dv;
            }
            let below = self.level[..dx].iter().flatten().all(|&l| l < dv);
            let above = self.level[dx + 1..].iter().flatten().all(|&l| l > dv);
            return below && above;
        }
        true
    }

    // candidate images for node x, given the images of earlier nodes
    fn candidates(&self, x: usize) -> Vec<usize> {
        let (s, t) = (self.s, self.t);
        let Some(p) = s.parent(x) else { return (0..t.len()).collect() };
        let u = self.map[p];
        let sibs = s.children(p);
        let i = sibs.iter().position(|&c| c == x).unwrap();
        let cones: Vec<usize> = if self.flags.lex {
            vec![t.children(u)[i]]
        } else {
            let used: Vec<usize> = sibs[..i].iter().filter_map(|&c| t.child_toward(u, self.map[c])).collect();
            t.children(u).iter().enumerate().filter(|(j, _)| !used.contains(j)).map(|(_, &c)| c).collect()
        };
        cones.into_iter().flat_map(|c| c..t.cone_end(c)).collect()
    }

    fn run(&mut self, x: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if x == self.s.len() {
            return visit(&self.map);
        }
        for v in self.candidates(x) {
            if !self.admissible(x, v) {
                continue;
            }
            let d = self.s.depth(x);
            let fresh_level = self.flags.levels && self.level[d].is_none();
            if fresh_level {
                self.level[d] = Some(self.t.depth(v));
            }
            self.map.push(v);
            let go_on = self.run(x + 1, visit);
            self.map.pop();
            if fresh_level {
                self.level[d] = None;
            }
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn search<'a>(s: &'a LexTree, t: &'a LexTree, flags: MorphismFlags, fixed: &'a [Option<usize>]) -> Search<'a> {
    Search { s, t, flags, fixed, map: Vec::with_capacity(s.len()), level: vec![None; s.height()] }
}

/// All node maps `s → t` valid under `flags`, in lexicographic order of the
/// maps. The empty tree has exactly one embedding into every tree.
pub fn enumerate_embeddings(s: &LexTree, t: &LexTree, flags: MorphismFlags) -> Vec<Vec<usize>> {
    if s.m() != t.m() || s.len() > t.len() {
        return Vec::new();
    }
    if s.is_empty() {
        return vec![Vec::new()];
    }
    let run_from = |root: usize| {
        let mut out = Vec::new();
        let fixed = vec![Some(root)];
        let mut st = search(s, t, flags, &fixed);
        st.run(0, &mut |m| {
            out.push(m.to_vec());
            true
        });
        out
    };
    if t.len() >= 24 {
        (0..t.len()).into_par_iter().map(run_from).collect::<Vec<_>>().concat()
    } else {
        (0..t.len()).flat_map(run_from).collect()
    }
}

/// The embeddings as arrows.
pub fn embeddings(s: &Arc<LexTree>, t: &Arc<LexTree>, flags: MorphismFlags) -> Vec<TreeArrow> {
    enumerate_embeddings(s, t, flags)
        .into_iter()
        .map(|map| TreeArrow { dom: s.clone(), cod: t.clone(), map })
        .collect()
}

/// First embedding (in lexicographic order) that agrees with `fixed` where
/// it is set.
pub fn find_embedding(s: &LexTree, t: &LexTree, flags: MorphismFlags, fixed: &[Option<usize>]) -> Option<Vec<usize>> {
    if s.m() != t.m() || s.len() > t.len() {
        return None;
    }
    let mut found = None;
    let mut st = search(s, t, flags, fixed);
    st.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

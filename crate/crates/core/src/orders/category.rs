use super::{AloArrow, AlmostLinearOrder};
use crate::category::EnumerableCategory;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Glue `x` and `y` along `p: z → x` and `q: z → y`, take the union of the
/// two strict orders and sort it topologically (smallest index first).
///
/// Returns the maps of `x` and `y` into the resulting chain, or a pair
/// `(u, v)` of glued elements lying on a cycle.
pub fn glue_orders(p: &AloArrow, q: &AloArrow) -> Result<(Vec<usize>, Vec<usize>, usize), (usize, usize)> {
    let (x, y) = (p.cod, q.cod);
    let (nx, ny) = (x.size(), y.size());
    let mut y_node = vec![usize::MAX; ny];
    for (i, &qi) in q.map.iter().enumerate() {
        y_node[qi] = p.map[i];
    }
    let mut next = nx;
    for slot in y_node.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let total = next;
    let mut succ = vec![Vec::new(); total];
    let mut indeg = vec![0usize; total];
    let mut edge = |a: usize, b: usize, succ: &mut Vec<Vec<usize>>| {
        succ[a].push(b);
        indeg[b] += 1;
    };
    for a in 0..nx {
        for b in 0..nx {
            if x.less(a, b) {
                edge(a, b, &mut succ);
            }
        }
    }
    for a in 0..ny {
        for b in 0..ny {
            if y.less(a, b) {
                edge(y_node[a], y_node[b], &mut succ);
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..total).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut rank = vec![usize::MAX; total];
    let mut r = 0;
    while let Some(Reverse(v)) = heap.pop() {
        rank[v] = r;
        r += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if r < total {
        // two glued elements ordered differently on the two sides
        for i in 0..p.map.len() {
            for j in 0..p.map.len() {
                if x.less(p.map[i], p.map[j]) && y.less(q.map[j], q.map[i]) {
                    return Err((i, j));
                }
            }
        }
        return Err((usize::MAX, usize::MAX));
    }
    let fx = (0..nx).map(|a| rank[a]).collect();
    let fy = (0..ny).map(|a| rank[y_node[a]]).collect();
    Ok((fx, fy, total))
}

// depth-first over maps respecting `fixed`; stops when `visit` says so
fn search_homs(
    dom: AlmostLinearOrder,
    cod: AlmostLinearOrder,
    fixed: &[Option<usize>],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    struct Search<'a> {
        dom: AlmostLinearOrder,
        cod: AlmostLinearOrder,
        fixed: &'a [Option<usize>],
        // points strictly above and below each point
        dom_up: Vec<usize>,
        dom_down: Vec<usize>,
        cod_up: Vec<usize>,
        cod_down: Vec<usize>,
    }
    fn go(s: &Search, map: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = map.len();
        if i == s.dom.size() {
            return visit(map);
        }
        let pinned = s.fixed.get(i).copied().flatten();
        for v in 0..s.cod.size() {
            if pinned.is_some_and(|p| p != v) || (pinned.is_none() && used[v]) {
                continue;
            }
            if s.cod_up[v] < s.dom_up[i] || s.cod_down[v] < s.dom_down[i] {
                continue;
            }
            let ok = (0..i).all(|j| {
                map[j] != v
                    && (!s.dom.less(j, i) || s.cod.less(map[j], v))
                    && (!s.dom.less(i, j) || s.cod.less(v, map[j]))
            });
            if ok {
                let was = used[v];
                used[v] = true;
                map.push(v);
                let go_on = go(s, map, used, visit);
                map.pop();
                used[v] = was;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    if dom.size() > cod.size() {
        return;
    }
    // values pinned for later points are off limits for the others
    let mut used = vec![false; cod.size()];
    for &v in fixed.iter().flatten() {
        if v >= cod.size() {
            return;
        }
        used[v] = true;
    }
    let count = |x: AlmostLinearOrder, up: bool| -> Vec<usize> {
        (0..x.size()).map(|a| (0..x.size()).filter(|&b| if up { x.less(a, b) } else { x.less(b, a) }).count()).collect()
    };
    let s = Search {
        dom,
        cod,
        fixed,
        dom_up: count(dom, true),
        dom_down: count(dom, false),
        cod_up: count(cod, true),
        cod_down: count(cod, false),
    };
    go(&s, &mut Vec::with_capacity(dom.size()), &mut used, visit);
}

fn enumerate_homs(dom: AlmostLinearOrder, cod: AlmostLinearOrder) -> Vec<AloArrow> {
    let mut out = Vec::new();
    search_homs(dom, cod, &[], &mut |m| {
        out.push(AloArrow { dom, cod, map: m.to_vec() });
        true
    });
    out
}

fn factor(along: &AloArrow, target: &AloArrow) -> Option<AloArrow> {
    if along.dom != target.dom {
        return None;
    }
    let mut fixed = vec![None; along.cod.size()];
    for (x, &y) in along.map.iter().enumerate() {
        fixed[y] = Some(target.map[x]);
    }
    let mut found = None;
    search_homs(along.cod, target.cod, &fixed, &mut |m| {
        found = Some(AloArrow { dom: along.cod, cod: target.cod, map: m.to_vec() });
        false
    });
    found
}

fn arrow_ok(f: &AloArrow) -> bool {
    f.validate().is_ok()
}

fn compose_arrows(g: &AloArrow, f: &AloArrow) -> AloArrow {
    f.then(g)
}

fn amalgamate_linear(p: &AloArrow, q: &AloArrow) -> Option<(AloArrow, AloArrow)> {
    let (fx, fy, total) = glue_orders(p, q).ok()?;
    let w = AlmostLinearOrder::linear(total);
    Some((AloArrow { dom: p.cod, cod: w, map: fx }, AloArrow { dom: q.cod, cod: w, map: fy }))
}

/// Finite almost linear orders with one-to-one homomorphisms; grade = size.
#[derive(Clone, Copy, Debug, Default)]
pub struct AlmostLinearOrders;

impl EnumerableCategory for AlmostLinearOrders {
    type Obj = AlmostLinearOrder;
    type Arr = AloArrow;

    fn grade(&self, a: &AlmostLinearOrder) -> usize {
        a.size()
    }
    fn objects_of_grade(&self, g: usize) -> Vec<AlmostLinearOrder> {
        AlmostLinearOrder::of_size(g)
    }
    fn hom(&self, a: &AlmostLinearOrder, b: &AlmostLinearOrder) -> Vec<AloArrow> {
        enumerate_homs(*a, *b)
    }
    fn dom(&self, f: &AloArrow) -> AlmostLinearOrder {
        f.dom
    }
    fn cod(&self, f: &AloArrow) -> AlmostLinearOrder {
        f.cod
    }
    fn compose(&self, g: &AloArrow, f: &AloArrow) -> AloArrow {
        compose_arrows(g, f)
    }
    fn identity(&self, a: &AlmostLinearOrder) -> AloArrow {
        AloArrow::identity(*a)
    }
    fn is_object(&self, _a: &AlmostLinearOrder) -> bool {
        true
    }
    fn is_arrow(&self, f: &AloArrow) -> bool {
        arrow_ok(f)
    }
    fn amalgamate(&self, p: &AloArrow, q: &AloArrow) -> Option<(AloArrow, AloArrow)> {
        amalgamate_linear(p, q)
    }
    fn factor_through(&self, along: &AloArrow, target: &AloArrow) -> Option<AloArrow> {
        factor(along, target)
    }
    fn obstruction(&self, p: &AloArrow, q: &AloArrow) -> Option<String> {
        match glue_orders(p, q) {
            Err((i, j)) if i != usize::MAX => Some(format!(
                "source points {i} and {j} are ordered one way in the first target and the other way in the second"
            )),
            Err(_) => Some("the union of the two orders has a cycle".into()),
            Ok(_) => None,
        }
    }
    fn initial_object(&self) -> Option<AlmostLinearOrder> {
        Some(AlmostLinearOrder::linear(0))
    }
    fn arrows_raise_grade(&self) -> bool {
        true
    }
}

/// Finite linear orders with increasing injections.
#[derive(Clone, Copy, Debug, Default)]
pub struct LinearOrders;

impl EnumerableCategory for LinearOrders {
    type Obj = AlmostLinearOrder;
    type Arr = AloArrow;

    fn grade(&self, a: &AlmostLinearOrder) -> usize {
        a.size()
    }
    fn objects_of_grade(&self, g: usize) -> Vec<AlmostLinearOrder> {
        vec![AlmostLinearOrder::linear(g)]
    }
    fn hom(&self, a: &AlmostLinearOrder, b: &AlmostLinearOrder) -> Vec<AloArrow> {
        if a.is_linear() && b.is_linear() {
            enumerate_homs(*a, *b)
        } else {
            Vec::new()
        }
    }
    fn dom(&self, f: &AloArrow) -> AlmostLinearOrder {
        f.dom
    }
    fn cod(&self, f: &AloArrow) -> AlmostLinearOrder {
        f.cod
    }
    fn compose(&self, g: &AloArrow, f: &AloArrow) -> AloArrow {
        compose_arrows(g, f)
    }
    fn identity(&self, a: &AlmostLinearOrder) -> AloArrow {
        AloArrow::identity(*a)
    }
    fn is_object(&self, a: &AlmostLinearOrder) -> bool {
        a.is_linear()
    }
    fn is_arrow(&self, f: &AloArrow) -> bool {
        f.dom.is_linear() && f.cod.is_linear() && arrow_ok(f)
    }
    fn amalgamate(&self, p: &AloArrow, q: &AloArrow) -> Option<(AloArrow, AloArrow)> {
        amalgamate_linear(p, q)
    }
    fn factor_through(&self, along: &AloArrow, target: &AloArrow) -> Option<AloArrow> {
        factor(along, target).filter(|h| h.dom.is_linear() && h.cod.is_linear())
    }
    fn initial_object(&self) -> Option<AlmostLinearOrder> {
        Some(AlmostLinearOrder::linear(0))
    }
    fn arrows_raise_grade(&self) -> bool {
        true
    }
}

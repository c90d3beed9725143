use super::*;
use crate::orders::{AloArrow, AlmostLinearOrder, LinearOrders};
use crate::trees::{LexTree, TreeArrow, TreeCategory, Variant};
use std::sync::Arc;

fn chain(n: usize) -> AlmostLinearOrder {
    AlmostLinearOrder::linear(n)
}

// chains of the given lengths, each included as an initial segment
fn chains(lengths: &[usize]) -> SequencePrefix<AlmostLinearOrder, AloArrow> {
    let objects: Vec<_> = lengths.iter().map(|&n| chain(n)).collect();
    let arrows = lengths
        .windows(2)
        .map(|w| AloArrow::new(chain(w[0]), chain(w[1]), (0..w[0]).collect()).unwrap())
        .collect();
    SequencePrefix::new(&LinearOrders, objects, arrows).unwrap()
}

// empty tree, then full binary trees of heights 1..=top with decided leaves
fn binary_tower(c: &TreeCategory, top: usize) -> SequencePrefix<Arc<LexTree>, TreeArrow> {
    let mut objects = vec![c.initial_object().unwrap()];
    for h in 1..=top {
        let mut t = LexTree::full(&[2], 2, h).unwrap();
        for x in t.terminals() {
            t = t.with_label(x, Some(2));
        }
        objects.push(Arc::new(t));
    }
    let arrows = objects.windows(2).map(|w| c.hom(&w[0], &w[1]).remove(0)).collect();
    SequencePrefix::new(c, objects, arrows).unwrap()
}

// 0, 1, 3, 7, ...: each step puts a new point into every gap
fn doubling_chains(len: usize) -> SequencePrefix<AlmostLinearOrder, AloArrow> {
    let sizes: Vec<usize> = (0..len).map(|i| (1 << i) - 1).collect();
    let objects: Vec<_> = sizes.iter().map(|&n| chain(n)).collect();
    let arrows = sizes
        .windows(2)
        .map(|w| AloArrow::new(chain(w[0]), chain(w[1]), (0..w[0]).map(|i| 2 * i + 1).collect()).unwrap())
        .collect();
    SequencePrefix::new(&LinearOrders, objects, arrows).unwrap()
}

#[test]
fn composites_are_functorial() {
    let s = chains(&[0, 1, 3, 4, 7]);
    assert_eq!(s.functoriality_failure(&LinearOrders), None);
    assert_eq!(s.composite(&LinearOrders, 2, 2).unwrap(), AloArrow::identity(chain(3)));
    assert_eq!(s.composite(&LinearOrders, 1, 4).unwrap().map, vec![0]);
    assert_eq!(s.composite(&LinearOrders, 3, 2), Err(FraisseError::Index(3)));
    assert_eq!(s.composite(&LinearOrders, 0, 5), Err(FraisseError::Index(5)));
}

#[test]
fn prefix_rejects_mismatched_arrows() {
    let bad = AloArrow::new(chain(1), chain(2), vec![1]).unwrap();
    assert_eq!(
        SequencePrefix::new(&LinearOrders, vec![chain(1), chain(3)], vec![bad]).err(),
        Some(FraisseError::Broken(0))
    );
    assert!(SequencePrefix::new(&LinearOrders, vec![chain(1)], vec![]).is_ok());
    assert!(SequencePrefix::<AlmostLinearOrder, AloArrow>::new(&LinearOrders, vec![], vec![]).is_err());
}

#[test]
fn cofinality_of_growing_chains() {
    let s = chains(&[1, 2, 3, 4, 5, 6]);
    let v = verify_w0(&LinearOrders, &s, 5);
    let w = v.witness().expect("every chain up to 5 maps in");
    assert_eq!(w.arrows.len(), 6);
    for (x, n, f) in &w.arrows {
        assert!(LinearOrders.is_arrow(f));
        assert_eq!((&f.dom, &f.cod), (x, &s.objects[*n]));
    }
    assert!(verify_w0(&LinearOrders, &s, 7).is_no());
}

#[test]
fn constant_singleton_is_not_cofinal() {
    let s = SequencePrefix::constant(&LinearOrders, chain(1), 4);
    assert_eq!(verify_w0(&LinearOrders, &s, 2).certificate(), Some(&chain(2)));
    assert!(verify_w0(&LinearOrders, &s, 1).is_yes());
}

#[test]
fn chains_absorb_at_once() {
    let s = doubling_chains(5);
    let budget = SearchBudget::default();
    for n in 0..s.len() - 1 {
        let v = verify_w1_step(&LinearOrders, &s, n, 1, &budget).unwrap();
        let w = v.witness().expect("absorbed");
        assert_eq!(w.m, n);
        for a in &w.absorbed {
            let unm = s.composite(&LinearOrders, n, w.m).unwrap();
            let unl = s.composite(&LinearOrders, n, a.l).unwrap();
            assert_eq!(unm.then(&a.f).then(&a.g), unl);
        }
    }
    // nothing after the last index can take the arrows back
    let last = verify_w1_step(&LinearOrders, &s, s.len() - 1, 1, &budget).unwrap();
    assert!(last.is_unknown());
    // a point added only at the top cannot take back one added at the bottom
    let tall = chains(&[0, 1, 2, 3, 4]);
    assert!(verify_w1_step(&LinearOrders, &tall, 1, 1, &budget).unwrap().is_unknown());
    assert_eq!(verify_w1_step(&LinearOrders, &s, s.len(), 1, &budget), Err(FraisseError::Index(s.len())));
}

#[test]
fn constant_amalgamable_object_uses_m_equal_n() {
    let s = SequencePrefix::constant(&LinearOrders, chain(2), 3);
    for n in 0..3 {
        let v = verify_w1_step(&LinearOrders, &s, n, 0, &SearchBudget::default()).unwrap();
        assert_eq!(v.witness().map(|w| w.m), Some(n));
    }
}

#[test]
fn undecided_terminals_delay_absorption() {
    let c = TreeCategory::new(&[1, 2], Variant::Tw).unwrap();
    let s = build_weak_fraisse_prefix(&c, 4, &BuildOptions::default()).unwrap();
    let budget = SearchBudget::default();
    let mut later = 0;
    for n in 0..s.len() - 1 {
        let m = verify_w1_step(&c, &s, n, 1, &budget).unwrap().witness().map(|w| w.m).expect("some m works");
        if m > n {
            later += 1;
            // u_n^n itself is not amalgamable: u_n has terminal nodes
            let id = c.identity(&s.objects[n]);
            let local = SearchBudget { max_size: c.grade(&s.objects[n]) + 2, ..budget.clone() };
            assert!(!crate::category::is_amalgamable_arrow(&c, &id, &local).unwrap().is_yes());
        }
    }
    assert!(later > 0);
}

#[test]
fn chain_builder() {
    let s = build_weak_fraisse_prefix(&LinearOrders, 6, &BuildOptions::default()).unwrap();
    let sizes: Vec<usize> = s.objects.iter().map(|o| o.size()).collect();
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    assert_eq!(s.bounds.w0, Some(3));
    assert_eq!(s.bounds.w1[..5], [Some(0), Some(1), Some(2), Some(3), Some(4)]);
    assert_eq!(s.functoriality_failure(&LinearOrders), None);
    let again = build_weak_fraisse_prefix(&LinearOrders, 6, &BuildOptions::default()).unwrap();
    assert_eq!(s, again);
}

#[test]
fn decided_tree_builder() {
    let c = TreeCategory::new(&[1, 2], Variant::Ta).unwrap();
    let s = build_weak_fraisse_prefix(&c, 5, &BuildOptions::default()).unwrap();
    assert_eq!(s.bounds.w0, Some(3));
    assert!(verify_w0(&c, &s, 3).is_yes());
    for n in 0..s.len() - 1 {
        assert_eq!(s.bounds.w1[n], Some(n));
    }
    assert!(s.objects.iter().all(|t| c.is_object(t)));
}

#[test]
fn binary_prefix_is_cofinal_to_four() {
    let c = TreeCategory::new(&[2], Variant::Ta).unwrap();
    let s = build_weak_fraisse_prefix(&c, 5, &BuildOptions::default()).unwrap();
    assert!(verify_w0(&c, &s, 4).is_yes());
}

#[test]
fn length_one_prefix() {
    let s = build_weak_fraisse_prefix(&LinearOrders, 1, &BuildOptions::default()).unwrap();
    assert_eq!(s.objects, vec![chain(0)]);
    assert!(s.arrows.is_empty());
    let s0 = build_weak_fraisse_prefix(&LinearOrders, 0, &BuildOptions::default()).unwrap();
    assert_eq!(s, s0);
}

#[test]
fn zigzag_between_chain_families() {
    let u = chains(&[1, 2, 3, 4, 5, 6, 7]);
    let v = chains(&[2, 4, 6, 8]);
    let z = back_and_forth(&LinearOrders, &u, &v, 3).unwrap();
    assert!(z.check(&LinearOrders, &u, &v));
    assert_eq!(z.k.len(), 4);
    assert!(z.k.windows(2).all(|w| w[0] < w[1]));
    assert!(z.l.windows(2).all(|w| w[0] < w[1]));
    // a too short prefix cannot close the square
    let short = chains(&[1, 2]);
    assert_eq!(back_and_forth(&LinearOrders, &short, &v, 3), Err(FraisseError::Open { step: 1 }));
}

#[test]
fn zigzag_against_itself() {
    let u = chains(&[0, 1, 3, 7]);
    let z = back_and_forth(&LinearOrders, &u, &u, 2).unwrap();
    assert!(z.check(&LinearOrders, &u, &u));
    assert_eq!(z.f[0], AloArrow::identity(chain(0)));
    assert_eq!(z.l, vec![0, 1]);
}

#[test]
fn zigzag_between_binary_prefixes() {
    let c = TreeCategory::new(&[2], Variant::Ta).unwrap();
    let u = build_weak_fraisse_prefix(&c, 5, &BuildOptions::default()).unwrap();
    let v = binary_tower(&c, 3);
    let z = back_and_forth(&c, &u, &v, 2).unwrap();
    assert!(z.check(&c, &u, &v));
    let z = back_and_forth(&c, &v, &u, 2).unwrap();
    assert!(z.check(&c, &v, &u));
}

#[test]
fn zigzag_check_catches_tampering() {
    let u = chains(&[1, 3, 5, 7]);
    let v = chains(&[2, 4, 6, 8]);
    let mut z = back_and_forth(&LinearOrders, &u, &v, 2).unwrap();
    let (i, other) = (0..z.g.len())
        .find_map(|i| LinearOrders.hom(&z.g[i].dom, &z.g[i].cod).into_iter().find(|h| *h != z.g[i]).map(|h| (i, h)))
        .unwrap();
    z.g[i] = other;
    assert!(!z.check(&LinearOrders, &u, &v));
}

// every gap between points of earlier rounds holds every color
fn gaps_filled(ch: &ColoredChain, colors: usize, before: usize) -> bool {
    let old: Vec<usize> = (0..ch.colors.len()).filter(|&i| ch.round[i] <= before).collect();
    let mut bounds = vec![None];
    bounds.extend(old.iter().map(|&i| Some(i)));
    bounds.push(None);
    bounds.windows(2).all(|w| {
        let lo = w[0].map_or(0, |i| i + 1);
        let hi = w[1].unwrap_or(ch.colors.len());
        (0..colors).all(|c| (lo..hi).any(|i| ch.colors[i] == c))
    })
}

#[test]
fn generic_coloring_gaps() {
    let ch = generic_coloring_prefix(2, 2);
    assert_eq!(ch.colors.len(), 2 + 3 * 2);
    let r1: Vec<usize> = (0..ch.colors.len()).filter(|&i| ch.round[i] == 1).collect();
    for w in r1.windows(2) {
        let between = &ch.colors[w[0] + 1..w[1]];
        assert!(between.contains(&0) && between.contains(&1));
    }
    for colors in 1..4 {
        for rounds in 2..5 {
            let ch = generic_coloring_prefix(colors, rounds);
            assert!(gaps_filled(&ch, colors, rounds - 1), "{colors} {rounds}");
        }
    }
}

#[test]
fn generic_coloring_one_color_and_monotone() {
    let one = generic_coloring_prefix(1, 4);
    assert!(one.colors.iter().all(|&c| c == 0));
    assert_eq!(one.colors.len(), 15);
    for rounds in 1..5 {
        let small = generic_coloring_prefix(3, rounds);
        let big = generic_coloring_prefix(3, rounds + 1);
        let kept: Vec<(usize, usize)> = big
            .colors
            .iter()
            .zip(&big.round)
            .filter(|p| *p.1 <= rounds)
            .map(|(&c, &r)| (c, r))
            .collect();
        let small: Vec<(usize, usize)> = small.colors.into_iter().zip(small.round).collect();
        assert_eq!(kept, small);
    }
    assert!(generic_coloring_prefix(0, 3).colors.is_empty());
}

#[test]
fn prefix_json_round_trip() {
    let s = build_weak_fraisse_prefix(&LinearOrders, 4, &BuildOptions::default()).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: SequencePrefix<AlmostLinearOrder, AloArrow> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
}

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use wfr_core::category::{
    check_bad_coloring, find_bad_coloring, is_amalgamable_arrow, objects_up_to, search_ramsey_witness, ArrowExtension,
    Fragment, WitnessSearch,
};
use wfr_core::fraisse::{back_and_forth, build_weak_fraisse_prefix, verify_w0, verify_w1_step, BuildOptions};
use wfr_core::gen;
use wfr_core::monoids::{enumerate_monoids, FiniteMonoid};
use wfr_core::orders::{
    brute_force_ternary, is_amalgamable_alo_arrow, AloArrow, AlmostLinearOrder, AlmostLinearOrders, LinearOrders,
    TernaryStructure,
};
use wfr_core::trees::{
    amalgamate, build_v, canonical_nonterminal_form, canonical_terminal_form, decompose_extension, enumerate_embeddings,
    is_amalgamable_tree_arrow, milliken_witness_search, recompose_nonterminal, recompose_terminal, LexTree,
    MorphismFlags, TreeArrow, TreeCategory, Variant,
};
use wfr_core::{EnumerableCategory, SearchBudget};

#[global_allocator]
static ALLOC: mimalloc::MiMalloc = mimalloc::MiMalloc;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// left zeros read straight off the table
fn has_left_zero(m: &FiniteMonoid) -> bool {
    (0..m.order()).any(|z| (0..m.order()).all(|x| m.table()[z][x] == z))
}

fn monoid_sweep() {
    let mut seen = 0;
    for n in 1..=3 {
        for m in enumerate_monoids(n).unwrap() {
            assert_eq!(m.has_ramsey_property(), has_left_zero(&m), "{m:?}");
            seen += 1;
        }
    }
    assert_eq!(seen, 1 + 2 + 7);
    let mut rng = gen::rng(2024);
    for _ in 0..1000 {
        let m = gen::random_monoid(4, &mut rng);
        assert_eq!(m.has_ramsey_property(), has_left_zero(&m), "{m:?}");
    }
}

fn le_agreement() {
    let mut idempotent = 0;
    for n in 1..=3 {
        for m in enumerate_monoids(n).unwrap() {
            let idem = m.classify().idempotent;
            idempotent += idem as usize;
            for a in m.elements() {
                let ramsey = m.is_ramsey_element(a).unwrap();
                let le = m.satisfies_le(a).unwrap();
                assert_eq!(ramsey.decided(), Some(le), "{m:?} at {a}");
                if idem {
                    let amalg = is_amalgamable_arrow(&m, &a, &SearchBudget::default()).unwrap();
                    assert_eq!(amalg.decided(), Some(le), "{m:?} at {a}");
                }
            }
        }
    }
    assert!(idempotent > 0);
}

fn linear_order_witness() {
    let lin = AlmostLinearOrder::linear;
    let alpha = AloArrow::identity(lin(2));
    let budget = SearchBudget { max_candidates: 16, ..SearchBudget::default() };
    match search_ramsey_witness(&LinearOrders, &alpha, &lin(3), None, 2, &budget).unwrap() {
        WitnessSearch::Found(v) => assert_eq!(v, lin(6)),
        _ => panic!("no witness found"),
    }
    let bad = find_bad_coloring(&LinearOrders, &alpha, &lin(5), &lin(3), None, 2).unwrap().expect("a bad coloring");
    assert_eq!(bad.arrows.len(), 10);
    assert!(check_bad_coloring(&LinearOrders, &alpha, &lin(5), &lin(3), None, 2, &bad));
}

fn tree_amalgamation_suite() {
    const MS: [&[u32]; 7] = [&[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]];
    let mut rng = gen::rng(7);
    let mut round_trips = 0;
    for i in 0..500 {
        let variant = [Variant::Tw, Variant::Tc, Variant::Ta][i % 3];
        let (f1, f2) = gen::random_compatible_pair(MS[i % MS.len()], 10, variant, &mut rng);
        let a = amalgamate(&f1, &f2).unwrap();
        assert!(a.left.is_valid(MorphismFlags::STRONG) && a.right.is_valid(MorphismFlags::STRONG));
        assert!(variant.admits(&a.tree));
        let over = f1.then(&a.left);
        assert_eq!(over, f2.then(&a.right));
        let i1: BTreeSet<usize> = a.left.map.iter().copied().collect();
        let i2: BTreeSet<usize> = a.right.map.iter().copied().collect();
        let common: BTreeSet<usize> = over.map.into_iter().collect();
        assert_eq!(i1.intersection(&i2).copied().collect::<BTreeSet<_>>(), common);
        for f in [&f1, &f2] {
            if f.dom.is_empty() {
                continue;
            }
            let d = decompose_extension(f).unwrap();
            let low = recompose_nonterminal(&f.dom, &canonical_nonterminal_form(&d.lower).unwrap()).unwrap();
            let up = recompose_terminal(&low.cod, &canonical_terminal_form(&d.upper).unwrap()).unwrap();
            assert_eq!(&low.then(&up), f);
            round_trips += 1;
        }
    }
    assert!(round_trips > 800);
}

fn all_arrows<C: EnumerableCategory>(c: &C, top: usize) -> Vec<C::Arr> {
    let objs = objects_up_to(c, top);
    objs.iter().flat_map(|a| objs.iter().flat_map(move |b| c.hom(a, b))).collect()
}

fn closed_forms_match_search() {
    for (variant, extra) in [(Variant::Tw, 2), (Variant::Tc, 1), (Variant::Ta, 1)] {
        let c = TreeCategory::new(&[1, 2], variant).unwrap();
        let arrows: Vec<TreeArrow> = all_arrows(&c, 6);
        assert!(!arrows.is_empty());
        for f in &arrows {
            let budget = SearchBudget::with_size(c.grade(&f.cod) + extra);
            let generic = is_amalgamable_arrow(&c, f, &budget).unwrap();
            assert_eq!(generic.decided(), Some(is_amalgamable_tree_arrow(f, variant).unwrap()), "{variant:?} {f:?}");
        }
    }
    let c = AlmostLinearOrders;
    for f in all_arrows(&c, 6) {
        let generic = is_amalgamable_arrow(&c, &f, &SearchBudget::with_size(f.cod.size() + 2)).unwrap();
        assert_eq!(generic.decided(), Some(is_amalgamable_alo_arrow(&f).unwrap()), "{f:?}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn functor_round_trips() {
    for n in 0..=4 {
        let found: BTreeSet<TernaryStructure> = brute_force_ternary(n).into_iter().collect();
        let images: BTreeSet<TernaryStructure> = AlmostLinearOrder::of_size(n)
            .iter()
            .flat_map(|x| permutations(n).into_iter().map(move |p| TernaryStructure::from_order_along(x, &p)))
            .collect();
        assert_eq!(found, images, "size {n}");
        for t in &found {
            let (x, map) = t.to_order().unwrap();
            assert_eq!(&TernaryStructure::from_order_along(&x, &map), t);
        }
    }
    for n in 0..=6 {
        for x in AlmostLinearOrder::of_size(n) {
            let (back, _) = TernaryStructure::from_order(&x).to_order().unwrap();
            assert_eq!(back, x.forget_top());
        }
    }
}

fn v_construction() {
    for s in 1usize..=3 {
        for y in 0..=4 {
            let want: usize = (0..y).map(|d| s.pow(d as u32)).sum();
            assert_eq!(build_v(s, y).unwrap().tree.len(), want, "s {s} y {y}");
        }
    }
    assert_eq!(build_v(2, 3).unwrap().tree, LexTree::full(&[2], 2, 3).unwrap());
    for y in 0..=4 {
        assert_eq!(build_v(1, y).unwrap().tree, LexTree::chain(&[1], y).unwrap());
    }
}

// Least height n such that every 2-coloring of the nodes of the full binary
// tree of height n has a node x and two nodes on one level, one above each
// successor of x, all of one color. Nodes are binary words, stored as
// (length, bits).
fn binary_pairs_oracle(n_max: usize) -> Option<usize> {
    (2..=n_max).find(|&n| {
        let nodes: Vec<(usize, u32)> = (0..n).flat_map(|d| (0..1u32 << d).map(move |b| (d, b))).collect();
        let index = |d: usize, b: u32| (1usize << d) - 1 + b as usize;
        let mut triples = Vec::new();
        for &(d, b) in &nodes {
            for e in d + 1..n {
                let free = e - d - 1;
                for u in 0..1u32 << free {
                    for w in 0..1u32 << free {
                        let left = ((b << 1) << free) | u;
                        let right = (((b << 1) | 1) << free) | w;
                        triples.push([index(d, b), index(e, left), index(e, right)]);
                    }
                }
            }
        }
        (0u64..1 << nodes.len()).all(|col| {
            let c = |i: usize| (col >> i) & 1;
            triples.iter().any(|t| c(t[0]) == c(t[1]) && c(t[1]) == c(t[2]))
        })
    })
}

fn micro_milliken() {
    assert_eq!(milliken_witness_search(1, 2, 3, 2, 8, 50_000_000, true), Ok(Some(6)));
    let oracle = binary_pairs_oracle(4);
    assert_eq!(oracle, Some(4));
    for _ in 0..3 {
        for parallel in [true, false] {
            assert_eq!(milliken_witness_search(2, 1, 2, 2, 6, 200_000_000, parallel), Ok(oracle));
        }
    }
}

fn arrow_extension_matches<C: EnumerableCategory>(c: &C, top: usize) {
    let f = Fragment::new(c, top);
    let up = ArrowExtension::new(&f);
    let budget = SearchBudget { max_size: top, max_candidates: usize::MAX / 4, ..SearchBudget::default() };
    let up_budget = SearchBudget { max_size: 2 * top, ..budget.clone() };
    let arrows = all_arrows(&f, top);
    assert!(!arrows.is_empty());
    for a in &arrows {
        let x = is_amalgamable_arrow(&f, a, &budget).unwrap().decided();
        let y = is_amalgamable_arrow(&up, &up.identity(a), &up_budget).unwrap().decided();
        assert!(x.is_some(), "undecided {a:?}");
        assert_eq!(x, y, "{a:?}");
    }
}

fn arrow_extension_correspondence() {
    arrow_extension_matches(&LinearOrders, 5);
    arrow_extension_matches(&TreeCategory::new(&[1, 2], Variant::Tc).unwrap(), 5);
}

fn check_prefix<C: EnumerableCategory>(c: &C, length: usize) {
    let opts = BuildOptions::default();
    let s = build_weak_fraisse_prefix(c, length, &opts).unwrap();
    assert_eq!(s.len(), length);
    assert_eq!(s.functoriality_failure(c), None);
    assert!(verify_w0(c, &s, 3).is_yes());
    // the last object has no later connector to absorb into
    for n in 0..length - 1 {
        let v = verify_w1_step(c, &s, n, opts.headroom, &opts.budget).unwrap();
        assert!(v.is_yes(), "index {n}: {v:?}");
    }
}

fn fraisse_prefixes() {
    check_prefix(&LinearOrders, 6);
    let c = TreeCategory::new(&[1, 2], Variant::Ta).unwrap();
    check_prefix(&c, 5);
    let u = build_weak_fraisse_prefix(&c, 5, &BuildOptions::default()).unwrap();
    let v = build_weak_fraisse_prefix(&c, 5, &BuildOptions { w0_bound: 2, ..BuildOptions::default() }).unwrap();
    for (p, q) in [(&u, &v), (&v, &u)] {
        let z = back_and_forth(&c, p, q, 2).unwrap();
        assert_eq!(z.g.len(), 2);
        assert!(z.check(&c, p, q));
    }
}

fn rigidity() {
    let mut rng = gen::rng(11);
    for i in 0..200 {
        let m: &[u32] = [&[1, 2][..], &[2], &[1, 2, 3], &[2, 3]][i % 4];
        let variant = [Variant::Tw, Variant::Tc, Variant::Ta][i % 3];
        let t = Arc::new(gen::random_tree(m, 8, variant, &mut rng));
        let id: Vec<usize> = (0..t.len()).collect();
        assert_eq!(enumerate_embeddings(&t, &t, MorphismFlags::STRONG), vec![id], "{t}");
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn()); 11] = [
        ("monoid Ramsey property iff left zero", secs(30), monoid_sweep),
        ("left equalization agrees with Ramsey elements", secs(60), le_agreement),
        ("linear order Ramsey witness is 6", secs(5), linear_order_witness),
        ("tree amalgamation suite", secs(120), tree_amalgamation_suite),
        ("closed forms agree with generic search", secs(120), closed_forms_match_search),
        ("ternary functor round trips", secs(30), functor_round_trips),
        ("V-construction sizes and shapes", secs(5), v_construction),
        ("micro Milliken values", secs(600), micro_milliken),
        ("arrow extension correspondence", secs(60), arrow_extension_correspondence),
        ("Fraisse prefixes and zig-zag", secs(60), fraisse_prefixes),
        ("rigidity of random trees", secs(10), rigidity),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let ok = outcome.is_ok() && took < *limit;
        let note = match (&outcome, took < *limit) {
            (Err(_), _) => " (assertion failed)",
            (Ok(()), false) => " (over time)",
            _ => "",
        };
        // straight to the handle so the lines show without --nocapture
        let _ = writeln!(
            std::io::stdout().lock(),
            "[{}] {:>2} {name}: {:.2}s of {}s{note}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

use super::*;
use crate::category::{is_amalgamable_arrow, EnumerableCategory};
use crate::gen;
use crate::verdict::SearchBudget;
use std::collections::{BTreeMap, BTreeSet};

fn tree(m: &[u32], s: &str) -> Arc<LexTree> {
    Arc::new(LexTree::parse(m, s).unwrap())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// every injective map checked by the validator
fn brute_embeddings(s: &LexTree, t: &LexTree, flags: MorphismFlags) -> usize {
    fn go(s: &LexTree, t: &LexTree, flags: MorphismFlags, map: &mut Vec<usize>, n: &mut usize) {
        if map.len() == s.len() {
            let f = TreeArrow { dom: Arc::new(s.clone()), cod: Arc::new(t.clone()), map: map.clone() };
            if f.is_valid(flags) {
                *n += 1;
            }
            return;
        }
        for v in 0..t.len() {
            if !map.contains(&v) {
                map.push(v);
                go(s, t, flags, map, n);
                map.pop();
            }
        }
    }
    let mut n = 0;
    go(s, t, flags, &mut Vec::new(), &mut n);
    n
}

#[test]
fn validation_examples() {
    assert!(LexTree::empty(&[1, 2]).unwrap().validate().is_ok());
    assert!(matches!(LexTree::parse(&[1, 2], "(()()())"), Err(TreeError::Splitting { node: 0, children: 3 })));
    let t = LexTree::parse(&[1, 2], "((d2))").unwrap();
    assert_eq!(t.decided(1), Some(2));
    assert!(LexTree::parse(&[1, 2], "(d2()())").is_ok());
    assert_eq!(LexTree::parse(&[1, 2], "(d1()())").unwrap_err(), TreeError::LabelMismatch { node: 0, dspl: 1, spl: 2 });
    assert!(matches!(LexTree::parse(&[1, 2], "((d3))"), Err(TreeError::LabelNotInM { node: 1, dspl: 3 })));
    assert_eq!(LexTree::parse(&[2], "((").unwrap_err(), TreeError::Parse(2));
}

#[test]
fn encoding_round_trips() {
    let t = LexTree::full(&[2], 2, 3).unwrap();
    assert_eq!(t.encode(), "((()())(()()))");
    assert_eq!(t.to_string(), "M{2}:((()())(()()))");
    let u = LexTree::parse(&[1, 2], "((d1)((d2)()))").unwrap();
    assert_eq!(LexTree::parse(&[1, 2], &u.encode()).unwrap(), u);
    let json = serde_json::to_string(&u).unwrap();
    assert_eq!(serde_json::from_str::<LexTree>(&json).unwrap(), u);
}

#[test]
fn json_errors_name_nodes() {
    let bad = r#"{"M":[2],"nodes":[{"id":7,"children":[9]},{"id":8,"parent":7}]}"#;
    let d: TreeData = serde_json::from_str(bad).unwrap();
    assert_eq!(LexTree::from_data(&d).unwrap_err(), TreeError::UnknownId { node: 7, other: 9 });
    let bad = r#"{"M":[2],"nodes":[{"id":7,"children":[8]},{"id":8,"parent":9}]}"#;
    let d: TreeData = serde_json::from_str(bad).unwrap();
    assert_eq!(LexTree::from_data(&d).unwrap_err(), TreeError::ParentMismatch(8));
    let split = r#"{"M":[2],"nodes":[{"id":4,"children":[5]},{"id":5,"parent":4}]}"#;
    let d: TreeData = serde_json::from_str(split).unwrap();
    assert_eq!(LexTree::from_data(&d).unwrap_err(), TreeError::Splitting { node: 4, children: 1 });
}

#[test]
fn embedding_counts() {
    let t = LexTree::full(&[2], 2, 3).unwrap();
    let single = LexTree::single(&[2], None).unwrap();
    assert_eq!(enumerate_embeddings(&single, &t, MorphismFlags::STRONG).len(), t.len());
    let bush = LexTree::full(&[2], 2, 2).unwrap();
    let got = enumerate_embeddings(&bush, &t, MorphismFlags::STRONG).len();
    assert_eq!(got, brute_embeddings(&bush, &t, MorphismFlags::STRONG));
    for n in 0..7 {
        let two = LexTree::chain(&[1], 2).unwrap();
        let c = LexTree::chain(&[1], n).unwrap();
        assert_eq!(enumerate_embeddings(&two, &c, MorphismFlags::STRONG).len(), binom(n, 2));
    }
}

#[test]
fn embeddings_match_brute_force_on_random_trees() {
    let mut rng = gen::rng(11);
    for _ in 0..60 {
        for flags in [MorphismFlags::STRONG, MorphismFlags::LEVELESS, MorphismFlags { levels: true, lex: false }] {
            let s = gen::random_tree(&[1, 2], 4, Variant::Tc, &mut rng);
            let t = gen::random_tree(&[1, 2], 7, Variant::Tc, &mut rng);
            assert_eq!(enumerate_embeddings(&s, &t, flags).len(), brute_embeddings(&s, &t, flags), "{s} {t}");
        }
    }
}

#[test]
fn planting_examples() {
    let s = tree(&[2], "()");
    let bush = LexTree::parse(&[2], "(()())").unwrap();
    let f = terminal_plant(&s, 0, &bush).unwrap();
    assert_eq!(*f.cod, bush);
    let s = tree(&[2], "(()())");
    let (a, b) = (LexTree::parse(&[2], "(()())").unwrap(), LexTree::parse(&[2], "((()())())").unwrap());
    let one = terminal_plant(&terminal_plant(&s, 1, &a).unwrap().cod, 4, &b).unwrap();
    let other = terminal_plant(&terminal_plant(&s, 2, &b).unwrap().cod, 1, &a).unwrap();
    assert_eq!(one.cod, other.cod);
    assert_eq!(one.cod.len(), s.len() + a.len() - 1 + b.len() - 1);
    assert_eq!(terminal_plant(&s, 0, &a).unwrap_err(), TreeError::NotTerminal(0));
    let d = tree(&[1, 2], "(d1)");
    let clash = LexTree::parse(&[1, 2], "(()())").unwrap();
    assert_eq!(terminal_plant(&d, 0, &clash).unwrap_err(), TreeError::PlantLabel(0));
}

#[test]
fn surgery_examples() {
    // a single pointed bush below the root is planting the old tree on the point
    let s = tree(&[2], "(()())");
    let col = BushColumn { layers: vec![BushLayer { width: 2, point: 1, labels: vec![] }] };
    let f = tree_surgery(&s, 0, &BTreeMap::from([(0, col)])).unwrap();
    let b = tree(&[2], "(()())");
    let planted = terminal_plant(&b, 2, &s).unwrap();
    assert_eq!(f.cod, planted.cod);

    let one = tree(&[1], "()");
    let f = tree_surgery(&one, 0, &BTreeMap::from([(0, BushColumn::plain(1, 1))])).unwrap();
    assert_eq!(f.cod.encode(), "(())");
    assert_eq!(f.cod.height(), one.height() + 1);

    let err = tree_surgery(&s, 1, &BTreeMap::from([(1, BushColumn::plain(2, 1))])).unwrap_err();
    assert!(matches!(err, TreeError::Column(_)));
}

#[test]
fn decomposition_examples() {
    let s = tree(&[1], "()");
    let t = tree(&[1], "(())");
    // the single node at the top of the chain: the root is added below it
    let f = TreeArrow::new(s.clone(), t.clone(), vec![1], MorphismFlags::STRONG).unwrap();
    assert_eq!(nonterminal_violation(&f), None);
    assert_eq!(decompose_extension(&f).unwrap().lower.cod, t);

    let bush = tree(&[2], "(()())");
    let f = TreeArrow::new(tree(&[2], "()"), bush.clone(), vec![0], MorphismFlags::STRONG).unwrap();
    let d = decompose_extension(&f).unwrap();
    assert_eq!(*d.lower.cod, *f.dom);
    let forms = canonical_terminal_form(&f).unwrap();
    assert_eq!(forms, vec![Planting { at: 0, tree: (*bush).clone() }]);

    let g = tree_surgery(&bush, 1, &BTreeMap::from([(1, BushColumn::plain(2, 1)), (2, BushColumn::plain(2, 1))])).unwrap();
    let d = decompose_extension(&g).unwrap();
    assert_eq!(d.lower.cod, g.cod);
    let forms = canonical_nonterminal_form(&g).unwrap();
    assert_eq!(forms.len(), 1);
    assert_eq!(recompose_nonterminal(&bush, &forms).unwrap(), g);
    assert_eq!(canonical_terminal_form(&g).unwrap_err(), TreeError::NotTerminalExtension(1));
}

#[test]
fn decomposition_round_trips_on_random_extensions() {
    let mut rng = gen::rng(5);
    for i in 0..300 {
        let m: &[u32] = [&[1, 2][..], &[2], &[1, 2, 3], &[2, 3]][i % 4];
        let variant = [Variant::Tw, Variant::Tc, Variant::Ta][i % 3];
        let s = Arc::new(gen::random_tree(m, 5, variant, &mut rng));
        let f = gen::random_extension(&s, 10, variant, &mut rng);
        let d = decompose_extension(&f).unwrap();
        assert_eq!(d.lower.then(&d.upper), f);
        let low = canonical_nonterminal_form(&d.lower).unwrap();
        let up = canonical_terminal_form(&d.upper).unwrap();
        let rebuilt_low = recompose_nonterminal(&s, &low).unwrap();
        assert_eq!(rebuilt_low, d.lower, "{f:?}");
        let rebuilt = recompose_terminal(&rebuilt_low.cod, &up).unwrap();
        assert_eq!(rebuilt.cod, f.cod);
        assert_eq!(rebuilt_low.then(&rebuilt), f);
    }
}

#[test]
fn incompatibility_examples() {
    let s = tree(&[1, 2], "(()())");
    let f1 = TreeArrow::identity(s.clone());
    assert!(nodes_of_incompatibility(&f1, &f1).unwrap().is_empty());
    let t1 = tree(&[1, 2], "((d1)())");
    let t2 = tree(&[1, 2], "((d2)())");
    let g1 = TreeArrow::new(s.clone(), t1, vec![0, 1, 2], MorphismFlags::STRONG).unwrap();
    let g2 = TreeArrow::new(s.clone(), t2, vec![0, 1, 2], MorphismFlags::STRONG).unwrap();
    assert_eq!(nodes_of_incompatibility(&g1, &g2).unwrap(), vec![1]);
    assert_eq!(amalgamate(&g1, &g2).unwrap_err(), TreeError::Incompatible(vec![1]));
    let decided = tree(&[1, 2], "((d1)(d2))");
    let id = TreeArrow::identity(decided.clone());
    assert!(nodes_of_incompatibility(&id, &id).unwrap().is_empty());
    assert_eq!(nodes_of_incompatibility(&g1, &id).unwrap_err(), TreeError::SourceMismatch);
}

#[test]
fn paired_bushes() {
    let s = tree(&[2], "()");
    let bush = tree(&[2], "(()())");
    let f = TreeArrow::new(s.clone(), bush.clone(), vec![0], MorphismFlags::STRONG).unwrap();
    let a = amalgamate(&f, &f).unwrap();
    assert_eq!(a.case, Case::I);
    assert_eq!(a.tree.encode(), "((()())(()()))");
    // each new column root carries one leaf from either side, in lex order
    assert_eq!(a.left.map, vec![0, 2, 5]);
    assert_eq!(a.right.map, vec![0, 3, 6]);
    assert!(!a.free);
}

#[test]
fn disjoint_plantings_are_free() {
    let s = tree(&[2], "(()())");
    let bush = LexTree::parse(&[2], "(()())").unwrap();
    let f1 = terminal_plant(&s, 1, &bush).unwrap();
    let f2 = terminal_plant(&s, 2, &bush).unwrap();
    let a = amalgamate(&f1, &f2).unwrap();
    assert!(a.free);
    assert_eq!(a.case, Case::III);
    assert_eq!(a.tree.len(), f1.cod.len() + f2.cod.len() - s.len());
}

#[test]
fn trivial_amalgamation() {
    let s = tree(&[1, 2], "((d1)())");
    let id = TreeArrow::identity(s.clone());
    let a = amalgamate(&id, &id).unwrap();
    assert_eq!(a.tree, s);
    assert_eq!(a.left, id);
    assert_eq!(a.right, id);
    assert!(a.free);
}

#[test]
fn chains_merge() {
    let s = tree(&[1], "(())");
    let f1 = TreeArrow::new(s.clone(), tree(&[1], "((()))"), vec![0, 1], MorphismFlags::STRONG).unwrap();
    let f2 = TreeArrow::new(s.clone(), tree(&[1], "((()))"), vec![1, 2], MorphismFlags::STRONG).unwrap();
    let a = amalgamate(&f1, &f2).unwrap();
    assert_eq!(a.case, Case::Linear);
    assert_eq!(a.tree.len(), 4);
}

#[test]
fn mixed_extensions_swap_kinds() {
    // terminal input ends up non-terminal in the amalgam and the other way round
    let s = tree(&[2], "(()())");
    let bush = LexTree::parse(&[2], "(()())").unwrap();
    let term = terminal_plant(&s, 1, &bush).unwrap();
    let cols = BTreeMap::from([(1, BushColumn::plain(2, 1)), (2, BushColumn::plain(2, 1))]);
    let non = tree_surgery(&s, 1, &cols).unwrap();
    let a = amalgamate(&term, &non).unwrap();
    assert_eq!(a.case, Case::IV);
    assert_eq!(terminal_violation(&a.right), None);
    assert_eq!(nonterminal_violation(&a.left), None);
    let b = amalgamate(&non, &term).unwrap();
    assert_eq!(b.tree, a.tree);
}

fn check_amalgam(f1: &TreeArrow, f2: &TreeArrow, variant: Variant) -> Case {
    let a = amalgamate(f1, f2).unwrap_or_else(|e| panic!("{e}: {} {} {}", f1.dom, f1.cod, f2.cod));
    a.left.validate(MorphismFlags::STRONG).unwrap();
    a.right.validate(MorphismFlags::STRONG).unwrap();
    assert_eq!(f1.then(&a.left), f2.then(&a.right));
    assert!(variant.admits(&a.tree), "{variant:?} {}", a.tree);
    let i1: BTreeSet<usize> = a.left.map.iter().copied().collect();
    let i2: BTreeSet<usize> = a.right.map.iter().copied().collect();
    let common: BTreeSet<usize> = f1.then(&a.left).map.into_iter().collect();
    assert_eq!(i1.intersection(&i2).copied().collect::<BTreeSet<_>>(), common);
    if a.free {
        assert_eq!(a.tree.len() + f1.dom.len(), f1.cod.len() + f2.cod.len());
    }
    a.case
}

#[test]
fn random_amalgamations() {
    let mut rng = gen::rng(1);
    let mut seen = BTreeMap::new();
    for i in 0..600 {
        let m: &[u32] = [&[1, 2][..], &[2], &[1, 2, 3], &[1], &[3], &[2, 3]][i % 6];
        let variant = [Variant::Tw, Variant::Tc, Variant::Ta][i % 3];
        let (f1, f2) = gen::random_compatible_pair(m, 10, variant, &mut rng);
        *seen.entry(format!("{:?}", check_amalgam(&f1, &f2, variant))).or_insert(0) += 1;
    }
    assert_eq!(seen.len(), 10, "{seen:?}");
}

#[test]
fn leveless_amalgamation() {
    let mut rng = gen::rng(3);
    for _ in 0..100 {
        let s = Arc::new(gen::random_tree(&[1, 2], 4, Variant::Tc, &mut rng));
        let f1 = gen::random_extension(&s, 9, Variant::Tc, &mut rng);
        let f2 = gen::random_extension(&s, 9, Variant::Tc, &mut rng);
        if !nodes_of_incompatibility(&f1, &f2).unwrap().is_empty() {
            continue;
        }
        let a = amalgamate_leveless(&f1, &f2).unwrap();
        a.left.validate(MorphismFlags::LEVELESS).unwrap();
        a.right.validate(MorphismFlags::LEVELESS).unwrap();
        assert_eq!(f1.then(&a.left), f2.then(&a.right));
    }
    // the single node at the top of a chain
    let s = tree(&[1, 2], "()");
    let f = TreeArrow::new(s.clone(), tree(&[1, 2], "(())"), vec![1], MorphismFlags::LEVELESS).unwrap();
    let g = TreeArrow::identity(s);
    let a = amalgamate_leveless(&f, &g).unwrap();
    assert_eq!(f.then(&a.left), g.then(&a.right));
}

#[test]
fn closed_form_examples() {
    let s = tree(&[1, 2], "(()())");
    assert!(!is_amalgamable_tree_arrow(&TreeArrow::identity(s.clone()), Variant::Tc).unwrap());
    let t = tree(&[2], "(()())");
    assert!(is_amalgamable_tree_arrow(&TreeArrow::identity(t), Variant::Tc).unwrap());
    let u = tree(&[1, 2], "((())(()()))");
    let f = TreeArrow::new(s, u, vec![0, 1, 3], MorphismFlags::STRONG).unwrap();
    assert!(is_amalgamable_tree_arrow(&f, Variant::Tw).unwrap());
    let bad = TreeArrow::identity(tree(&[1, 2], "((d1)())"));
    assert!(is_amalgamable_tree_arrow(&bad, Variant::Tw).is_err());
}

#[test]
fn domination_examples() {
    let s = tree(&[2], "(()())");
    let id = TreeArrow::identity(s.clone());
    let d = level_dominate(&id).unwrap();
    assert_eq!(d.tree, s);
    assert_eq!(d.padding, 0);

    // the two successors of the root at depths 1 and 3
    let t = tree(&[2], "(()((()())()))");
    let f = TreeArrow::new(s.clone(), t.clone(), vec![0, 1, 4], MorphismFlags::LEVELESS).unwrap();
    assert!(!f.is_valid(MorphismFlags::STRONG));
    let d = level_dominate(&f).unwrap();
    d.inner.validate(MorphismFlags::STRONG).unwrap();
    assert_eq!(d.padding, 2 * 2);
    assert_eq!(d.tree.len(), t.len() + 4);
}

#[test]
fn v_trees() {
    let v = build_v(2, 3).unwrap();
    assert_eq!(v.tree, LexTree::full(&[2], 2, 3).unwrap());
    for y in 0..5 {
        assert_eq!(build_v(1, y).unwrap().tree, LexTree::chain(&[1], y).unwrap());
    }
    for s in 1..4 {
        for y in 0..5 {
            let v = build_v(s, y).unwrap();
            // one node per map from a proper initial segment into s
            let direct: usize = (0..y).map(|k| (0..k).fold(1, |acc, _| acc * s)).sum();
            assert_eq!(v.tree.len(), direct);
            assert_eq!(v_size(s, y), direct);
            assert_eq!(v.nodes.len(), direct);
        }
    }
    let p = prune_v(3, 3, &[1, 2], |t| if t.is_empty() { vec![0, 2] } else { vec![0] }).unwrap();
    assert_eq!(p.nodes, vec![vec![], vec![0], vec![0, 0], vec![2], vec![2, 0]]);
    assert!(prune_v(3, 3, &[1, 2], |_| vec![1, 2]).is_err());
    assert!(prune_v(3, 3, &[1], |_| vec![0, 1]).is_err());
}

#[test]
fn rigid_self_embeddings() {
    let mut rng = gen::rng(9);
    for _ in 0..100 {
        let t = Arc::new(gen::random_tree(&[1, 2, 3], 8, Variant::Tc, &mut rng));
        let all = embeddings(&t, &t, MorphismFlags::STRONG);
        assert_eq!(all, vec![TreeArrow::identity(t.clone())]);
    }
}

#[test]
fn milliken_small_values() {
    assert_eq!(milliken_witness_search(2, 2, 2, 1, 4, 1000, false), Ok(Some(2)));
    assert_eq!(milliken_witness_search(1, 1, 2, 2, 4, 1000, false), Ok(Some(3)));
    assert!(milliken_witness_search(1, 3, 2, 2, 4, 1000, false).is_err());
}

#[test]
fn category_objects() {
    let c = TreeCategory::new(&[1, 2], Variant::Tw).unwrap();
    // shapes with splitting 1 or 2: Motzkin numbers
    let counts: Vec<usize> = (0..7).map(|g| c.objects_of_grade(g).len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 4, 9, 21]);
    let ta = TreeCategory::new(&[2], Variant::Ta).unwrap();
    assert_eq!(ta.objects_of_grade(3).len(), 1);
    let ta = TreeCategory::new(&[1, 2], Variant::Ta).unwrap();
    assert_eq!(ta.objects_of_grade(3).len(), 2 + 4);
    for g in 0..6 {
        for t in c.objects_of_grade(g) {
            assert!(c.is_object(&t));
        }
    }
}

#[test]
fn category_targets_cover_one_step_arrows() {
    for variant in [Variant::Tw, Variant::Tc, Variant::Leveless] {
        let c = TreeCategory::new(&[1, 2], variant).unwrap();
        for g in 0..5 {
            for a in c.objects_of_grade(g) {
                for h in [g, g + 1] {
                    let listed: BTreeSet<Arc<LexTree>> = c.targets(&a, h).into_iter().collect();
                    for b in c.objects_of_grade(h) {
                        if !c.hom(&a, &b).is_empty() {
                            assert!(listed.contains(&b), "{variant:?} {a} -> {b}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn category_amalgamability_small() {
    let c = TreeCategory::new(&[1, 2], Variant::Tc).unwrap();
    let b = SearchBudget::with_size(4);
    let s = tree(&[1, 2], "((d1)(d2))");
    let v = is_amalgamable_arrow(&c, &TreeArrow::identity(s), &b).unwrap();
    assert!(v.is_yes());
    let s = tree(&[1, 2], "()");
    let v = is_amalgamable_arrow(&c, &TreeArrow::identity(s), &b).unwrap();
    assert!(v.is_no());
}

#[test]
fn factor_through_fixed_images() {
    let c = TreeCategory::new(&[2], Variant::Tc).unwrap();
    let s = tree(&[2], "()");
    let t = tree(&[2], "(()())");
    let u = tree(&[2], "((()())(()()))");
    let along = TreeArrow::new(s.clone(), t.clone(), vec![0], MorphismFlags::STRONG).unwrap();
    let target = TreeArrow::new(s, u.clone(), vec![1], MorphismFlags::STRONG).unwrap();
    let h = c.factor_through(&along, &target).unwrap();
    assert_eq!(h.map, vec![1, 2, 3]);
    assert_eq!(along.then(&h), target);
}

use super::*;
use crate::category::is_amalgamable_arrow;
use crate::verdict::SearchBudget;

#[test]
fn zeros_of_small_examples() {
    let lz = FiniteMonoid::left_zero(1);
    assert_eq!(lz.left_zeros(), vec![1]);
    let mx = FiniteMonoid::truncated_max(3);
    assert_eq!(mx.left_zeros(), vec![2]);
    assert_eq!(mx.right_zeros(), vec![2]);
    let z3 = FiniteMonoid::cyclic_group(3);
    assert!(z3.left_zeros().is_empty() && z3.right_zeros().is_empty());
}

#[test]
fn le_examples() {
    let rz = FiniteMonoid::right_zero(1);
    assert!(rz.satisfies_le(1).unwrap());
    assert!(FiniteMonoid::truncated_max(3).satisfies_le(0).unwrap());
    assert!(!FiniteMonoid::cyclic_group(2).satisfies_le(0).unwrap());
    assert_eq!(rz.satisfies_le(7), Err(MonoidError::Element(7)));
}

#[test]
fn ramsey_elements_of_right_zero_monoid() {
    let m = FiniteMonoid::right_zero(2);
    let v = m.is_ramsey_element(1).unwrap();
    assert!(v.witness().unwrap().check(&m, 1));
    let v = m.is_ramsey_element(0).unwrap();
    let cert = v.certificate().unwrap();
    assert!(cert.check(&m, 0));
    assert_eq!(cert.pair, Some((1, 2)));
    assert!(FiniteMonoid::trivial().is_ramsey_element(0).unwrap().is_yes());
    assert_eq!(m.has_weak_ramsey_property(), Verdict::Yes(1));
}

#[test]
fn ramsey_property_examples() {
    assert!(FiniteMonoid::truncated_max(3).has_ramsey_property());
    assert!(!FiniteMonoid::cyclic_group(2).has_ramsey_property());
    assert!(FiniteMonoid::left_zero(1).has_ramsey_property());
    assert!(FiniteMonoid::trivial().has_weak_ramsey_property().is_yes());
}

#[test]
fn flags() {
    let f = FiniteMonoid::truncated_max(3).classify();
    assert!(f.idempotent && f.commutative && f.semilattice);
    assert!(!f.left_zero && !f.right_zero && !f.left_cancellative);
    let f = FiniteMonoid::right_zero(2).classify();
    assert!(f.idempotent && f.right_zero && !f.commutative && !f.left_zero && !f.left_cancellative);
    let f = FiniteMonoid::cyclic_group(2).classify();
    assert!(f.commutative && f.left_cancellative && !f.idempotent && !f.semilattice);
}

#[test]
fn absorption_has_unit_minimum() {
    for m in enumerate_monoids(3).unwrap() {
        let r = m.absorption_relation();
        assert!(r.is_transitive());
        assert_eq!(r.minima(), vec![m.unit()]);
    }
}

#[test]
fn small_counts() {
    assert_eq!(enumerate_monoids(1).unwrap().len(), 1);
    assert_eq!(enumerate_monoids(2).unwrap().len(), 2);
    assert_eq!(enumerate_monoids(5), Err(EnumerateError::Order(5)));
    assert_eq!(enumerate_monoids(0), Err(EnumerateError::Order(0)));
}

#[test]
fn canonical_form_is_invariant() {
    let m = FiniteMonoid::right_zero(2);
    let moved = m.relabel(&[2, 0, 1]);
    assert_eq!(moved.unit(), 2);
    assert_eq!(canonical_form(&m), canonical_form(&moved));
}

#[test]
fn bad_tables_rejected() {
    assert_eq!(FiniteMonoid::new(0, 0, vec![]), Err(MonoidError::Empty));
    assert_eq!(FiniteMonoid::new(2, 0, vec![vec![0, 1], vec![1, 1, 1]]), Err(MonoidError::Shape(2)));
    assert!(matches!(FiniteMonoid::new(2, 1, vec![vec![0, 1], vec![1, 0]]), Err(MonoidError::Unit(_))));
    // x·y = y+1 capped: not associative with unit? build a known failure
    let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
    assert!(matches!(FiniteMonoid::new(3, 0, t), Err(MonoidError::Associativity(..))));
}

#[test]
fn json_round_trip() {
    let m = FiniteMonoid::truncated_max(3);
    let s = serde_json::to_string(&m).unwrap();
    assert_eq!(s, r#"{"order":3,"unit":0,"table":[[0,1,2],[1,1,2],[2,2,2]]}"#);
    let back: FiniteMonoid = serde_json::from_str(&s).unwrap();
    assert_eq!(back, m);
    assert!(serde_json::from_str::<FiniteMonoid>(r#"{"order":2,"unit":0,"table":[[0,1],[1,1],[0,0]]}"#).is_err());
}

#[test]
fn idempotent_amalgamability_matches_le() {
    for n in 1..=3 {
        for m in enumerate_monoids(n).unwrap() {
            if !m.classify().idempotent {
                continue;
            }
            for a in m.elements() {
                let amalg = is_amalgamable_arrow(&m, &a, &SearchBudget::default()).unwrap();
                assert_eq!(amalg.decided(), Some(m.satisfies_le(a).unwrap()), "{m:?} {a}");
            }
        }
    }
}

#[test]
fn word_monoid_closed_forms() {
    let free = WordMonoid::free(1);
    let x = Word::letters(&[0]);
    assert!(!free.satisfies_le(&x));
    let v = free.is_ramsey_element(&x);
    assert!(v.certificate().unwrap().check(&free, &x, 6));
    assert!(free.has_weak_ramsey_property().is_no());

    let with_zero = WordMonoid::new(vec!["x".into()], true);
    assert!(with_zero.satisfies_le(&Word::zero()));
    assert!(with_zero.is_ramsey_element(&Word::zero()).is_yes());
    assert!(with_zero.has_weak_ramsey_property().is_yes());
    assert!(with_zero.is_ramsey_element(&x).certificate().unwrap().check(&with_zero, &x, 5));

    let empty = WordMonoid::new(vec![], false);
    assert!(empty.is_ramsey_element(&Word::unit()).is_yes());
}

#[test]
fn word_multiplication_discards_left_of_zero() {
    let m = WordMonoid::new(vec!["x".into(), "y".into()], true);
    let u = Word::letters(&[0, 1]);
    let z = Word { zero: true, letters: vec![1] };
    assert_eq!(m.mul(&u, &z), z);
    assert_eq!(m.mul(&z, &u), Word { zero: true, letters: vec![1, 0, 1] });
    let els = m.elements_up_to(2);
    assert_eq!(els.len(), 14);
    for a in &els {
        for b in &els {
            for c in &els {
                assert_eq!(m.mul(&m.mul(a, b), c), m.mul(a, &m.mul(b, c)));
            }
        }
    }
}

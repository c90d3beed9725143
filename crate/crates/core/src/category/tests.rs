use super::*;
use crate::monoids::FiniteMonoid;

// Two objects 0, 1 and a single non-identity arrow 2: 0 → 1.
fn arrow_category() -> FiniteCategory {
    FiniteCategory::new(2, &[(0, 0), (1, 1), (0, 1)], &[0, 1], &[(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2)]).unwrap()
}

// A span 1 ← 0 → 2 with nothing closing it.
fn span() -> FiniteCategory {
    FiniteCategory::new(
        3,
        &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)],
        &[0, 1, 2],
        &[(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 0, 3), (1, 3, 3), (4, 0, 4), (2, 4, 4)],
    )
    .unwrap()
}

#[test]
fn trivial_category_is_amalgamable_and_ramsey() {
    let c = FiniteCategory::trivial();
    let b = SearchBudget::default();
    assert!(is_amalgamable_arrow(&c, &0, &b).unwrap().is_yes());
    assert!(is_ramsey_arrow(&c, &0, &b).unwrap().is_yes());
    assert!(is_directed(&c, &b).is_yes());
}

#[test]
fn invalid_arrow_is_an_error() {
    let c = FiniteCategory::trivial();
    assert!(matches!(
        is_amalgamable_arrow(&c, &5, &SearchBudget::default()),
        Err(CategoryError::InvalidArrow(_))
    ));
}

#[test]
fn discrete_two_objects_not_directed() {
    let v = is_directed(&FiniteCategory::discrete(2), &SearchBudget::default());
    assert_eq!(v.certificate(), Some(&DirectedCertificate { x: 0, y: 1 }));
}

#[test]
fn span_is_not_amalgamable() {
    let c = span();
    let v = is_amalgamable_arrow(&c, &0, &SearchBudget::default()).unwrap();
    let cert = v.certificate().unwrap();
    assert_eq!((cert.f, cert.g), (3, 4));
    // but the leaves are fine
    assert!(is_amalgamable_arrow(&c, &1, &SearchBudget::default()).unwrap().is_yes());
}

#[test]
fn amalgamation_witness_rechecks() {
    let c = arrow_category();
    let v = is_amalgamable_arrow(&c, &0, &SearchBudget::default()).unwrap();
    assert!(check_amalgamation_witness(&c, &0, v.witness().unwrap()));
}

#[test]
fn bad_table_rejected() {
    assert!(FiniteCategory::new(1, &[(0, 0), (0, 0)], &[0], &[(0, 0, 0), (1, 0, 1), (0, 1, 1)]).is_err());
    assert_eq!(FiniteCategory::new(1, &[(0, 3)], &[0], &[]).unwrap_err(), finite::FiniteCategoryError::Endpoint(0));
}

#[test]
fn one_colour_never_bad() {
    let m = FiniteMonoid::cyclic_group(3);
    for v in 0..3 {
        assert_eq!(find_bad_coloring(&m, &v, &(), &(), None, 1).unwrap(), None);
    }
    // zero colours: vacuous as soon as C(α, v) is nonempty
    assert_eq!(find_bad_coloring(&m, &0, &(), &(), None, 0).unwrap(), None);
}

#[test]
fn family_outside_orbit_rejected() {
    let m = FiniteMonoid::right_zero(2);
    assert!(matches!(
        find_bad_coloring(&m, &1, &(), &(), Some(&[0]), 2),
        Err(CategoryError::NotOverAlpha(_))
    ));
}

#[test]
fn ramsey_in_monoid_categories() {
    let m = FiniteMonoid::right_zero(1);
    let b = SearchBudget::default();
    assert!(is_ramsey_arrow(&m, &1, &b).unwrap().is_yes());
    let g = FiniteMonoid::cyclic_group(2);
    let v = is_ramsey_arrow(&g, &0, &b).unwrap();
    let cert = v.certificate().unwrap();
    for (obj, bc) in &cert.bad_colorings {
        assert!(check_bad_coloring(&g, &0, obj, &(), None, 2, bc));
    }
}

#[test]
fn arrow_extension_of_trivial_category() {
    let c = FiniteCategory::trivial();
    let up = ArrowExtension::new(&c);
    assert_eq!(objects_up_to(&up, 3), vec![0]);
    assert_eq!(up.hom(&0, &0).len(), 1);
}

#[test]
fn arrow_extension_keeps_amalgamability() {
    let c = span();
    let up = ArrowExtension::new(&c);
    let b = SearchBudget::default();
    for alpha in 0..c.arrow_count() {
        let down = is_amalgamable_arrow(&c, &alpha, &b).unwrap().decided();
        let lifted = is_amalgamable_arrow(&up, &up.identity(&alpha), &b).unwrap().decided();
        assert_eq!(down, lifted, "arrow {alpha}");
    }
}

#[test]
fn equal_category_is_an_amalgamation_extension() {
    let c = arrow_category();
    let sub = FullSubcategory::new(&c, |_| true);
    assert!(verify_amalgamation_extension(&sub, &SearchBudget::default()).unwrap().is_yes());
}

use shak_core::DEFAULT_SOLVER_CAP;
use shak_structures::synthetic::{corrupt_morphism, gauge_pair, truncated_line_structure};
use shak_structures::{
    check_morphism, check_square_zero, compose, MorphismData, StructureKind, StructuresError,
};

#[test]
fn identity_morphism_passes() {
    let s = truncated_line_structure(3);
    let id = MorphismData::identity(&s);
    let report = check_morphism(&id, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "identity fails:\n{}",
        report.render(s.base(), s.base())
    );
}

#[test]
fn gauge_twisted_morphism_passes_and_its_source_squares_to_zero() {
    let s = truncated_line_structure(4);
    let (phi, twisted) = gauge_pair(&s, 11, 4).unwrap();

    let report = check_square_zero(&twisted, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "twisted structure fails:\n{}",
        report.render(twisted.base(), twisted.base())
    );

    let report = check_morphism(&phi, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "gauge morphism fails:\n{}",
        report.render(phi.source().base(), phi.target().base())
    );
}

#[test]
fn corrupted_morphism_is_detected() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 5, 3).unwrap();
    assert!(check_morphism(&phi, 3, DEFAULT_SOLVER_CAP).unwrap().is_empty());

    let bad = corrupt_morphism(&phi);
    let report = check_morphism(&bad, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(!report.is_empty());
}

#[test]
fn composition_with_identity_is_identity() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 7, 3).unwrap();

    let left = compose(&phi, &MorphismData::identity(phi.source()), 3).unwrap();
    assert_eq!(left.components(), phi.components());

    let right = compose(&MorphismData::identity(phi.target()), &phi, 3).unwrap();
    assert_eq!(right.components(), phi.components());
}

#[test]
fn composition_of_passing_morphisms_passes() {
    let s = truncated_line_structure(3);
    let (phi, t1) = gauge_pair(&s, 21, 3).unwrap();
    let (psi, _) = gauge_pair(&t1, 22, 3).unwrap();

    assert!(check_morphism(&phi, 3, DEFAULT_SOLVER_CAP).unwrap().is_empty());
    assert!(check_morphism(&psi, 3, DEFAULT_SOLVER_CAP).unwrap().is_empty());

    let both = compose(&phi, &psi, 3).unwrap();
    let report = check_morphism(&both, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "composition fails:\n{}",
        report.render(both.source().base(), both.target().base())
    );
}

// With identity letter parts the weight-two component of a composition is
// the sum of the two weight-two components; checked against the
// table-composition result.
#[test]
fn weight_two_composition_formula() {
    let s = truncated_line_structure(3);
    let (phi, t1) = gauge_pair(&s, 31, 3).unwrap();
    let (psi, _) = gauge_pair(&t1, 32, 3).unwrap();
    let both = compose(&phi, &psi, 2).unwrap();

    let ctx = s.ctx();
    for w in ctx.wedge_words(&s.letters(), 2).unwrap() {
        let expect = psi
            .components()
            .get(&w)
            .add(&phi.components().get(&w));
        assert_eq!(both.components().get(&w), expect, "at {}", w.pretty(s.base()));
    }
}

#[test]
fn composition_rejects_mismatched_endpoints() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 41, 3).unwrap();
    let (other, _) = gauge_pair(&s, 42, 3).unwrap();
    // other's source is a different twist, not phi's target.
    assert!(matches!(
        compose(&other, &phi, 3),
        Err(StructuresError::Malformed(_))
    ));
}

// The pure-wedge sector is closed under everything in sight, so a passing
// morphism restricts to a passing morphism of the bracket parts.
#[test]
fn linfty_restriction_of_a_passing_morphism_passes() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 51, 3).unwrap();
    let l = phi.restrict(StructureKind::Linfty).unwrap();
    assert_eq!(l.kind(), StructureKind::Linfty);
    let report = check_morphism(&l, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "restricted morphism fails:\n{}",
        report.render(l.source().base(), l.target().base())
    );
}

#[test]
fn cinfty_restriction_of_a_passing_morphism_passes() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 61, 3).unwrap();
    let c = phi.restrict(StructureKind::Cinfty).unwrap();
    let report = check_morphism(&c, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "restricted morphism fails:\n{}",
        report.render(c.source().base(), c.target().base())
    );
}

#[test]
fn morphism_kind_must_match_endpoints() {
    let s = truncated_line_structure(3);
    let id = MorphismData::identity(&s);
    assert!(matches!(
        MorphismData::new(
            StructureKind::Linfty,
            s.clone(),
            s.clone(),
            id.components().clone(),
            3
        ),
        Err(StructuresError::Malformed(_))
    ));
}

#[test]
fn morphism_check_refuses_to_exceed_bounds() {
    let s = truncated_line_structure(3);
    let (phi, _) = gauge_pair(&s, 71, 2).unwrap();
    assert!(matches!(
        check_morphism(&phi, 3, DEFAULT_SOLVER_CAP),
        Err(StructuresError::BeyondBound {
            asked: 3,
            declared: 2
        })
    ));
}

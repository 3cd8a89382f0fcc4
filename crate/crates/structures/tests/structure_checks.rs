use shak_core::DEFAULT_SOLVER_CAP;
use shak_coalgebra::{extend, ExtendMode};
use shak_structures::synthetic::{
    corrupt_structure, interval_dgla_structure, truncated_line_structure,
};
use shak_structures::{check_square_zero, StructureKind, StructuresError};

#[test]
fn truncated_line_squares_to_zero() {
    let s = truncated_line_structure(4);
    let report = check_square_zero(&s, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "unexpected violations:\n{}",
        report.render(s.base(), s.base())
    );
}

#[test]
fn interval_dgla_squares_to_zero() {
    let s = interval_dgla_structure(4);
    let report = check_square_zero(&s, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "unexpected violations:\n{}",
        report.render(s.base(), s.base())
    );
}

// Vanishing letter parts force the whole square to vanish by cofreeness;
// this cross-checks that claim on the full extension tables.
#[test]
fn empty_report_means_the_full_square_vanishes() {
    let s = truncated_line_structure(3);
    assert!(check_square_zero(&s, 3, DEFAULT_SOLVER_CAP)
        .unwrap()
        .is_empty());
    let ctx = s.ctx();
    let words = ctx.wedge_words_up_to(&s.letters(), 3).unwrap();
    let d = extend(
        &ctx,
        &ctx,
        s.symbol(),
        ExtendMode::Coderivation { degree: 1 },
        &words,
    )
    .unwrap();
    for w in &words {
        let dw = d.get(w).unwrap();
        let ddw = d.apply(dw).unwrap();
        assert!(ddw.is_zero(), "square nonzero at {}", w.pretty(s.base()));
    }
}

#[test]
fn corrupted_bracket_is_detected_at_the_lowest_weight() {
    let s = corrupt_structure(&truncated_line_structure(4));
    let report = check_square_zero(&s, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(!report.is_empty());
    // Weight-two symbols can only fail on weight-three words, and the
    // report is sorted by weight.
    assert_eq!(report.first().unwrap().weight, 3);
    for v in report.iter() {
        assert!(!v.residual.is_zero());
    }
}

// Scaling any single constant of this tiny algebra happens to stay
// consistent; what its axioms do pin is the absence of a bracket between
// the two closed letters. Adding one breaks the derivation rule over the
// differential, which surfaces already at weight two.
#[test]
fn spurious_dgla_bracket_is_detected_at_weight_two() {
    let mut model = shak_structures::synthetic::interval_dgla_model();
    let one = model.base.id_of("one").unwrap();
    let dt = model.base.id_of("dt").unwrap();
    let t = model.base.id_of("t").unwrap();
    model.bracket.insert(
        (one, dt),
        shak_core::Element::term(t, shak_core::Scalar::one()),
    );
    let s = shak_structures::synthetic::pair_structure(&model, StructureKind::Linfty, 3).unwrap();
    let report = check_square_zero(&s, 3, DEFAULT_SOLVER_CAP).unwrap();
    assert!(!report.is_empty());
    assert_eq!(report.first().unwrap().weight, 2);
}

#[test]
fn restriction_keeps_the_admitted_signatures() {
    let g = truncated_line_structure(4);

    let l = g.restrict(StructureKind::Linfty).unwrap();
    assert_eq!(l.kind(), StructureKind::Linfty);
    // Only the wedge-pair bracket survives.
    assert!(l
        .symbol()
        .iter()
        .all(|(w, _)| w.factors.iter().all(|t| t.letters.len() == 1)));
    assert!(!l.symbol().is_zero());

    let c = g.restrict(StructureKind::Cinfty).unwrap();
    assert_eq!(c.kind(), StructureKind::Cinfty);
    // Only the single-factor product survives.
    assert!(c.symbol().iter().all(|(w, _)| w.factor_count() == 1));
    assert!(!c.symbol().is_zero());

    // Together they carve up the whole symbol for this structure.
    assert_eq!(l.symbol().len() + c.symbol().len(), g.symbol().len());

    // Same-kind restriction is the identity.
    assert_eq!(g.restrict(StructureKind::Ginfty).unwrap(), g);

    // Restricting away from the universal kind is refused.
    assert!(matches!(
        l.restrict(StructureKind::Cinfty),
        Err(StructuresError::Malformed(_))
    ));
}

// The pure-wedge part of a passing structure passes its own check: the
// bracket sector closes on itself.
#[test]
fn linfty_restriction_of_a_passing_structure_passes() {
    let g = truncated_line_structure(4);
    let l = g.restrict(StructureKind::Linfty).unwrap();
    let report = check_square_zero(&l, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "bracket sector fails:\n{}",
        report.render(l.base(), l.base())
    );
}

#[test]
fn cinfty_restriction_of_a_passing_structure_passes() {
    let g = truncated_line_structure(4);
    let c = g.restrict(StructureKind::Cinfty).unwrap();
    let report = check_square_zero(&c, 4, DEFAULT_SOLVER_CAP).unwrap();
    assert!(
        report.is_empty(),
        "product sector fails:\n{}",
        report.render(c.base(), c.base())
    );
}

#[test]
fn weight_decomposition_partitions_the_symbol() {
    let s = interval_dgla_structure(3);
    let parts = s.weight_decompose();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
    // The weight-one part is the differential, the weight-two part the
    // bracket; together they are the whole symbol.
    let total: usize = parts.values().map(|p| p.symbol().len()).sum();
    assert_eq!(total, s.symbol().len());
    for (n, part) in &parts {
        assert!(part.symbol().iter().all(|(w, _)| w.weight() == *n));
    }

    let g = truncated_line_structure(3);
    let parts = g.weight_decompose();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![2]);

    let empty = shak_structures::HomotopyStructure::new(
        s.base().clone(),
        StructureKind::Linfty,
        shak_coalgebra::Symbol::new(),
        3,
    )
    .unwrap();
    assert!(empty.weight_decompose().is_empty());
}

#[test]
fn checks_refuse_to_exceed_the_declared_bound() {
    let s = truncated_line_structure(3);
    assert!(matches!(
        check_square_zero(&s, 5, DEFAULT_SOLVER_CAP),
        Err(StructuresError::BeyondBound {
            asked: 5,
            declared: 3
        })
    ));
}

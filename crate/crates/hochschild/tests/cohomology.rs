//! Cohomology of truncated windows of the Hochschild complex, pinned
//! against independently computed ranks, with HKR classes exhibited as
//! explicit representative bases in low arity.

use std::collections::BTreeMap;

use shak_core::{CoreError, FactoredSystem, SparseVec};
use shak_hochschild::{
    parse_op, HochschildError, MultiVector, PolyDiffOp, Polynomial, TruncationBox,
};

fn op(text: &str, vars: usize) -> PolyDiffOp {
    parse_op(text, vars).unwrap()
}

/// Rank of a family of operators, with coordinates indexed on the fly.
fn rank_of(ops: &[PolyDiffOp]) -> usize {
    let mut cols: BTreeMap<(Vec<Vec<u32>>, Vec<u32>), u32> = BTreeMap::new();
    let mut rows = Vec::new();
    for o in ops {
        let mut pairs = Vec::new();
        for (key, poly) in o.iter() {
            for (exps, c) in poly.iter() {
                let next = cols.len() as u32;
                let col = *cols.entry((key.clone(), exps.clone())).or_insert(next);
                pairs.push((col, c.clone()));
            }
        }
        rows.push(SparseVec::from_pairs(pairs));
    }
    let ncols = cols.len() as u32;
    FactoredSystem::new(rows, ncols, 1 << 20).unwrap().rank()
}

fn check_window(
    bx: &TruncationBox,
    k: usize,
    dims: (usize, usize, usize, usize),
) -> Vec<PolyDiffOp> {
    let (dimension, space, cocycles, boundaries) = dims;
    let report = bx.truncated_cohomology(k, 1 << 20).unwrap();
    assert_eq!(report.dimension, dimension, "H at arity {k}");
    assert_eq!(report.space_dimension, space, "V({k})");
    assert_eq!(report.cocycle_rank, cocycles, "ker b at arity {k}");
    assert_eq!(report.boundary_rank, boundaries, "im b into arity {k}");
    assert_eq!(report.representatives.len(), dimension);
    for rep in &report.representatives {
        assert!(rep.hochschild_b().is_zero(), "non-cocycle representative");
        assert!(bx.contains(rep));
        if k > 0 {
            assert!(
                bx.b_preimage(k - 1, rep, 1 << 20).unwrap().is_none(),
                "representative at arity {k} is a boundary"
            );
        }
    }
    report.representatives
}

#[test]
fn one_variable_window_ranks_are_pinned() {
    // First-order slots, coefficients of degree <= 2: the window sees the
    // functions, the vector fields, and echoes of both in every arity.
    let bx = TruncationBox::new(1, 3, 1, 2).unwrap();
    check_window(&bx, 0, (3, 3, 3, 0));
    check_window(&bx, 1, (3, 6, 3, 0));
    check_window(&bx, 2, (3, 12, 6, 3));
    check_window(&bx, 3, (3, 24, 9, 6));
}

#[test]
fn two_variable_and_low_degree_windows() {
    // Constant coefficients over two variables.
    let bx = TruncationBox::new(2, 2, 1, 0).unwrap();
    check_window(&bx, 0, (1, 1, 1, 0));
    check_window(&bx, 1, (2, 3, 2, 0));
    check_window(&bx, 2, (4, 9, 5, 1));

    // One variable, coefficients of degree <= 1.
    let bx = TruncationBox::new(1, 2, 1, 1).unwrap();
    check_window(&bx, 0, (2, 2, 2, 0));
    check_window(&bx, 1, (2, 4, 2, 0));
    check_window(&bx, 2, (2, 8, 4, 2));
}

#[test]
fn hkr_classes_are_representative_bases_in_low_arity() {
    let bx = TruncationBox::new(1, 3, 1, 2).unwrap();

    // Arity 0: the functions themselves.
    let h0: Vec<PolyDiffOp> = (0..3u32)
        .map(|d| {
            MultiVector::from_polynomial(
                Polynomial::monomial(1, vec![d], shak_core::Scalar::one()).unwrap(),
            )
            .hkr()
        })
        .collect();
    // Arity 1: the vector fields f d/dx with monomial f.
    let h1: Vec<PolyDiffOp> = ["1 d1", "1 x1 d1", "1 x1^2 d1"]
        .iter()
        .map(|t| op(t, 1))
        .collect();

    for (k, classes) in [(0usize, &h0), (1, &h1)] {
        let report = bx.truncated_cohomology(k, 1 << 20).unwrap();
        for class in classes {
            assert!(class.hochschild_b().is_zero());
            assert!(bx.contains(class));
        }
        // No boundaries in these arities, so a basis of H is an
        // independent spanning family of the cocycle space.
        assert_eq!(report.boundary_rank, 0);
        assert_eq!(rank_of(classes), report.dimension);
        assert_eq!(rank_of(classes), report.cocycle_rank);
        // The classes span the same space as the reported representatives.
        let mut joint = classes.clone();
        joint.extend(report.representatives.iter().cloned());
        assert_eq!(rank_of(&joint), report.dimension);
    }
}

#[test]
fn boundary_preimages_round_trip() {
    let bx = TruncationBox::new(1, 3, 1, 2).unwrap();

    // b(x^2 id) = x^2 m is exact with a witness inside the window.
    let target = op("1 x1^2 -", 1).hochschild_b();
    assert_eq!(target, op("1 x1^2 -|-", 1));
    let w = bx.b_preimage(1, &target, 1 << 20).unwrap().unwrap();
    assert!(bx.contains(&w));
    assert_eq!(w.hochschild_b(), target);

    // b(d^2) = -2 d|d is exact in the full complex, but its only
    // witnesses have second-order slots: invisible to this window.
    let artifact = op("1 d1.d1", 1).hochschild_b();
    assert_eq!(artifact, op("-2 d1|d1", 1));
    assert!(bx.b_preimage(1, &artifact, 1 << 20).unwrap().is_none());

    // A vector field is a cocycle with a nonzero class: never exact.
    assert!(bx.b_preimage(0, &op("1 x1 d1", 1), 1 << 20).unwrap().is_none());

    // Arity bookkeeping is validated, not silently absorbed.
    assert!(bx.b_preimage(0, &op("1 d1|d1", 1), 1 << 20).is_err());
}

#[test]
fn tiny_capacity_is_reported_not_truncated() {
    let bx = TruncationBox::new(1, 3, 1, 2).unwrap();
    let err = bx.truncated_cohomology(2, 3).unwrap_err();
    assert!(matches!(
        err,
        HochschildError::Core(CoreError::CapacityExceeded(_))
    ));

    // Arity beyond the box is an input error, not a capacity problem.
    assert!(matches!(
        bx.truncated_cohomology(4, 1 << 20),
        Err(HochschildError::Malformed(_))
    ));
}

//! Brace, bracket, and differential identities for polydifferential
//! operators, pinned against independently computed values and checked
//! by evaluation on monomial arguments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shak_core::Scalar;
use shak_hochschild::{parse_op, PolyDiffOp, Polynomial, TruncationBox};

fn op(text: &str, vars: usize) -> PolyDiffOp {
    parse_op(text, vars).unwrap()
}

/// Random element of the box span with small integer coefficients.
fn random_box_op(bx: &TruncationBox, arity: usize, rng: &mut ChaCha8Rng) -> PolyDiffOp {
    let basis = bx.basis(arity).unwrap();
    let mut out = PolyDiffOp::zero(bx.vars, arity);
    for _ in 0..3 {
        let pick = rng.gen_range(0..basis.len());
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        out = out.add(&basis[pick].scale(&c));
    }
    out
}

/// The brace evaluated argument-side: insert the value of `e`, never
/// normalizing to an operator. Independent of the Leibniz expansion that
/// `insert` performs.
fn brace_eval(d: &PolyDiffOp, e: &PolyDiffOp, args: &[Polynomial]) -> Polynomial {
    let vars = d.vars();
    let mut out = Polynomial::zero(vars);
    let e_arity = e.arity();
    for i in 0..d.arity() {
        let inner = e.apply(&args[i..i + e_arity]).unwrap();
        let mut outer_args: Vec<Polynomial> = Vec::with_capacity(d.arity());
        outer_args.extend_from_slice(&args[..i]);
        outer_args.push(inner);
        outer_args.extend_from_slice(&args[i + e_arity..]);
        let sign = Scalar::neg_one_pow((e_arity as i64 - 1) * i as i64);
        out = out.add(&d.apply(&outer_args).unwrap().scale(&sign));
    }
    out
}

#[test]
fn brace_pins_on_the_line() {
    let xd = op("1 x1 d1", 1);
    let d = op("1 d1", 1);
    assert_eq!(xd.insert(&d), op("1 x1 d1.d1", 1));
    assert_eq!(d.insert(&xd), op("1 d1 + 1 x1 d1.d1", 1));
    assert_eq!(xd.gerstenhaber(&d), op("-1 d1", 1));
}

#[test]
fn brace_of_arity_two_against_arity_one() {
    // D(f,g) = f'g', E = x d/dx: three signed insertions.
    let d2 = op("1 d1|d1", 1);
    let e = op("1 x1 d1", 1);
    let got = d2.insert(&e);
    assert_eq!(got, op("2 d1|d1 + 1 x1 d1.d1|d1 + 1 x1 d1|d1.d1", 1));

    // Cross-check per argument pair, evaluation side.
    for (a, b) in [(1u32, 1u32), (2, 1), (2, 3), (0, 2)] {
        let f = Polynomial::monomial(1, vec![a], Scalar::one()).unwrap();
        let g = Polynomial::monomial(1, vec![b], Scalar::one()).unwrap();
        let args = [f, g];
        assert_eq!(got.apply(&args).unwrap(), brace_eval(&d2, &e, &args));
    }
}

#[test]
fn multiplication_is_associative_and_central() {
    let m = PolyDiffOp::multiplication(2);
    assert!(m.insert(&m).is_zero());
    assert!(m.gerstenhaber(&m).is_zero());
}

#[test]
fn differential_pins() {
    // Derivations and arity-0 operators are cocycles.
    assert!(op("1 d1", 1).hochschild_b().is_zero());
    assert!(op("1 x1 d1", 1).hochschild_b().is_zero());
    assert!(op("3 x1^2", 1).hochschild_b().is_zero());

    // Second-order operators are not: b(d^2)(f,g) = -2 f'g'.
    assert_eq!(op("1 d1.d1", 1).hochschild_b(), op("-2 d1|d1", 1));

    // b never touches coefficients, so it is linear over monomials.
    assert_eq!(
        op("1 x1^2 d1.d1", 1).hochschild_b(),
        op("-2 x1^2 d1|d1", 1)
    );
}

#[test]
fn b_squares_to_zero_across_whole_boxes() {
    for n in 1..=2usize {
        let bx = TruncationBox::new(n, 3, 2, 2).unwrap();
        for k in 0..=3usize {
            for e in bx.basis(k).unwrap() {
                let bb = e.hochschild_b().hochschild_b();
                assert!(bb.is_zero(), "b^2 != 0 on {e}");
            }
        }
    }
}

#[test]
fn box_windows_are_closed_under_b() {
    for n in 1..=2usize {
        let bx = TruncationBox::new(n, 3, 2, 2).unwrap();
        for k in 0..=3usize {
            for e in bx.basis(k).unwrap() {
                let b = e.hochschild_b();
                assert!(bx.admits(&b), "b({e}) leaves the box");
                assert_eq!(b.arity(), k + 1);
            }
        }
    }
}

#[test]
fn bracket_is_graded_antisymmetric_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let bx = TruncationBox::new(2, 2, 2, 2).unwrap();
    for trial in 0..60 {
        let (ka, kb, kc) = (
            rng.gen_range(0..=2usize),
            rng.gen_range(0..=2usize),
            rng.gen_range(0..=2usize),
        );
        let a = random_box_op(&bx, ka, &mut rng);
        let b = random_box_op(&bx, kb, &mut rng);
        let c = random_box_op(&bx, kc, &mut rng);

        let anti = a
            .gerstenhaber(&b)
            .add(&b.gerstenhaber(&a).scale(&Scalar::neg_one_pow(a.degree() * b.degree())));
        assert!(anti.is_zero(), "antisymmetry failed at trial {trial}");

        // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        let lhs = a.gerstenhaber(&b.gerstenhaber(&c));
        let rhs = a
            .gerstenhaber(&b)
            .gerstenhaber(&c)
            .add(
                &b.gerstenhaber(&a.gerstenhaber(&c))
                    .scale(&Scalar::neg_one_pow(a.degree() * b.degree())),
            );
        assert_eq!(lhs, rhs, "Jacobi failed at trial {trial}");
    }
}

#[test]
fn bracket_agrees_with_argument_side_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let bx = TruncationBox::new(2, 2, 2, 2).unwrap();
    for _ in 0..25 {
        let (ka, kb) = (rng.gen_range(1..=2usize), rng.gen_range(1..=2usize));
        let d = random_box_op(&bx, ka, &mut rng);
        let e = random_box_op(&bx, kb, &mut rng);
        let res_arity = ka + kb - 1;
        let args: Vec<Polynomial> = (0..res_arity)
            .map(|_| {
                Polynomial::monomial(
                    2,
                    vec![rng.gen_range(0..=2), rng.gen_range(0..=2)],
                    Scalar::from_int(rng.gen_range(1..=3)),
                )
                .unwrap()
            })
            .collect();

        let normal_form = d.gerstenhaber(&e).apply(&args).unwrap();
        let sign = Scalar::neg_one_pow(d.degree() * e.degree());
        let by_eval = brace_eval(&d, &e, &args)
            .sub(&brace_eval(&e, &d, &args).scale(&sign));
        assert_eq!(normal_form, by_eval);
    }
}

#[test]
fn cup_product_is_associative_and_unital() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bx = TruncationBox::new(2, 2, 1, 1).unwrap();
    let unit = PolyDiffOp::from_polynomial(Polynomial::one(2));
    for _ in 0..20 {
        let a = random_box_op(&bx, rng.gen_range(0..=2usize), &mut rng);
        let b = random_box_op(&bx, rng.gen_range(0..=2usize), &mut rng);
        let c = random_box_op(&bx, rng.gen_range(0..=2usize), &mut rng);
        assert_eq!(a.cup(&b).cup(&c), a.cup(&b.cup(&c)));
        assert_eq!(unit.cup(&a), a);
        assert_eq!(a.cup(&unit), a);
    }
}

#[test]
fn insert_respects_arity_bookkeeping() {
    // Arity-0 right argument eats one slot: inserting f = x^2 into
    // D(g,h) = g'h gives D(f,h) - D(h,f) = 2x h - x^2 h'.
    let d = op("1 d1|-", 1);
    let f = op("1 x1^2", 1);
    let got = d.insert(&f);
    assert_eq!(got.arity(), 1);
    assert_eq!(got, op("2 x1 - + -1 x1^2 d1", 1));

    // On the symmetric D(g,h) = g'h' the two insertions cancel.
    assert!(op("1 d1|d1", 1).insert(&f).is_zero());

    // Arity-0 left argument: no slots, the brace vanishes.
    assert!(f.insert(&d).is_zero());
}

//! Coherence audit between the cobracket and the unshuffle coproduct:
//! the cobracket is a coderivation over the coproduct in each leg.

use shak_coalgebra::{CoalgebraCtx, LinComb, TensorWord, WedgeWord};
use shak_core::{GradedBasis, Scalar};

type Triple = LinComb<(WedgeWord, WedgeWord, WedgeWord)>;

fn tw(letters: &[u32]) -> TensorWord {
    TensorWord::new(letters.to_vec())
}

fn ww(factors: &[&[u32]]) -> WedgeWord {
    WedgeWord::new(factors.iter().map(|f| tw(f)).collect())
}

/// (1 x coproduct) cobracket = (cobracket x 1) coproduct
///                           + swap_12 (1 x cobracket) coproduct
/// where the swap carries the shifted Koszul sign (-1)^{(d(p)+1) d(a)}
/// for the cobracket leg p passing the coproduct leg a.
#[test]
fn cobracket_is_a_coderivation_over_the_coproduct() {
    // Mostly even letter degrees so factor degrees come out odd and the
    // Koszul crossings actually bite.
    let c = CoalgebraCtx::with_default_conventions(
        GradedBasis::from_pairs(&[("x", 0), ("y", 2), ("z", 4), ("w", 1), ("v", 3)]).unwrap(),
    );
    let gb = c.alphabet();
    let words = [
        ww(&[&[0], &[1, 2]]),
        ww(&[&[0, 1], &[2]]),
        ww(&[&[3], &[0, 1]]),
        ww(&[&[0], &[1], &[2]]),
        ww(&[&[0], &[3], &[1, 2]]),
        ww(&[&[1], &[2], &[0, 3]]),
        ww(&[&[0, 3], &[1, 2]]),
        ww(&[&[0, 1], &[2, 4]]),
        ww(&[&[0], &[1], &[2], &[4]]),
        ww(&[&[0, 1, 2], &[4]]),
        ww(&[&[3], &[4], &[0, 2]]),
        ww(&[&[0], &[0, 1]]),
        // Repeated factor is fine when its degree is even.
        ww(&[&[3], &[3], &[0, 2]]),
    ];

    for w in &words {
        let mut diff: Triple = LinComb::zero();
        for ((u, v), s) in c.cobracket(w).unwrap().iter() {
            for ((v1, v2), s2) in c.reduced_coproduct(v).iter() {
                diff.add_term((u.clone(), v1.clone(), v2.clone()), s * s2);
            }
        }
        for ((a, b), t) in c.reduced_coproduct(w).iter() {
            for ((p, q), s2) in c.cobracket(a).unwrap().iter() {
                diff.add_term((p.clone(), q.clone(), b.clone()), -(t * s2));
            }
            for ((p, q), s2) in c.cobracket(b).unwrap().iter() {
                let swap = Scalar::neg_one_pow((p.degree(gb) + 1) * a.degree(gb));
                diff.add_term((p.clone(), a.clone(), q.clone()), -(&(t * s2) * &swap));
            }
        }
        assert!(diff.is_zero(), "mixed co-Leibniz fails on {w}");
    }
}

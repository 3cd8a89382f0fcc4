use shak_core::Scalar;

use crate::ctx::{CoalgebraCtx, PairElement};
use crate::error::CoalgebraError;
use crate::word::{TensorWord, WedgeWord};

impl CoalgebraCtx {
    /// Cogenerator-level cobracket on a single tensor word: sum over
    /// proper splits, symmetrized, legs reduced to the shuffle basis.
    ///
    /// Degrees entering the split signs are the shuffle-sign degrees; the
    /// symmetrization makes the result graded symmetric for the factor
    /// degrees, which the test suite pins down.
    pub fn cobracket_tensor(&self, t: &TensorWord) -> Result<PairElement, CoalgebraError> {
        let mut out = PairElement::zero();
        let n = t.len();
        for k in 1..n {
            let (u, v) = (&t.letters[..k], &t.letters[k..]);
            let lu: i64 = u.iter().map(|&l| self.shuffle_degree(l)).sum();
            let lv: i64 = v.iter().map(|&l| self.shuffle_degree(l)).sum();
            let nu = self.normalize_tensor(&TensorWord::new(u.to_vec()))?;
            let nv = self.normalize_tensor(&TensorWord::new(v.to_vec()))?;
            let s1 = Scalar::neg_one_pow(lu);
            let s2 = -Scalar::neg_one_pow(lu * lv + lv);
            for (uw, uc) in nu.iter() {
                for (vw, vc) in nv.iter() {
                    let base = uc * vc;
                    out.add_term(
                        (WedgeWord::single(uw.clone()), WedgeWord::single(vw.clone())),
                        &base * &s1,
                    );
                    out.add_term(
                        (WedgeWord::single(vw.clone()), WedgeWord::single(uw.clone())),
                        &base * &s2,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Cobracket on a full wedge word: the cogenerator cobracket applied
    /// to each factor, remaining factors distributed over the two legs
    /// with Koszul signs in the factor degrees.
    pub fn cobracket(&self, w: &WedgeWord) -> Result<PairElement, CoalgebraError> {
        let gb = self.alphabet();
        let q = w.factors.len();
        let cdeg: Vec<i64> = w.factors.iter().map(|t| t.factor_degree(gb)).collect();
        let mut out = PairElement::zero();
        for i in 0..q {
            // Extract factor i to the front past the earlier factors.
            let pref: i64 = cdeg[i] * cdeg[..i].iter().sum::<i64>();
            let inner = self.cobracket_tensor(&w.factors[i])?;
            if inner.is_zero() {
                continue;
            }
            let rest: Vec<usize> = (0..q).filter(|&j| j != i).collect();
            for mask in 0..(1u32 << rest.len()) {
                let a: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect();
                let b: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 0)
                    .map(|(_, &j)| j)
                    .collect();
                // Unshuffle sign among the bystanders: every left-leg
                // factor jumps the earlier right-leg ones.
                let mut split_exp = 0i64;
                for &k in &a {
                    split_exp +=
                        cdeg[k] * b.iter().filter(|&&j| j < k).map(|&j| cdeg[j]).sum::<i64>();
                }
                let a_total: i64 = a.iter().map(|&j| cdeg[j]).sum();
                for ((uleg, vleg), s) in inner.iter() {
                    let u = &uleg.factors[0];
                    let v = &vleg.factors[0];
                    let cv = v.factor_degree(gb);
                    // Middle swap: v passes the whole left-leg bystander
                    // block on its way to the right leg.
                    let exp = pref + split_exp + cv * a_total;

                    let mut lf = vec![u.clone()];
                    lf.extend(a.iter().map(|&j| w.factors[j].clone()));
                    let mut rf = vec![v.clone()];
                    rf.extend(b.iter().map(|&j| w.factors[j].clone()));
                    let Some((lw, ls)) = self.sort_factors(lf) else { continue };
                    let Some((rw, rs)) = self.sort_factors(rf) else { continue };
                    out.add_term((lw, rw), s * &(ls * rs * Scalar::neg_one_pow(exp)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced unshuffle coproduct: both legs nonempty, factors keep
    /// relative order, Koszul signs in the factor degrees.
    pub fn reduced_coproduct(&self, w: &WedgeWord) -> PairElement {
        let gb = self.alphabet();
        let q = w.factors.len();
        let cdeg: Vec<i64> = w.factors.iter().map(|t| t.factor_degree(gb)).collect();
        let mut out = PairElement::zero();
        for mask in 1..((1u32 << q) - 1) {
            let mut exp = 0i64;
            let mut left = Vec::new();
            let mut right = Vec::new();
            // Sign: every right-leg factor jumped by a later left-leg one.
            let mut right_deg_so_far = 0i64;
            for j in 0..q {
                if mask >> j & 1 == 1 {
                    exp += cdeg[j] * right_deg_so_far;
                    left.push(w.factors[j].clone());
                } else {
                    right_deg_so_far += cdeg[j];
                    right.push(w.factors[j].clone());
                }
            }
            out.add_term(
                (WedgeWord::new(left), WedgeWord::new(right)),
                Scalar::neg_one_pow(exp),
            );
        }
        out
    }

    /// Swaps the two legs of every pair with the Koszul sign in the word
    /// degrees.
    pub fn pair_swap(&self, p: &PairElement) -> PairElement {
        let gb = self.alphabet();
        let mut out = PairElement::zero();
        for ((a, b), c) in p.iter() {
            let s = Scalar::neg_one_pow(a.degree(gb) * b.degree(gb));
            out.add_term((b.clone(), a.clone()), c * &s);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use shak_core::GradedBasis;

    fn ctx(pairs: &[(&str, i64)]) -> CoalgebraCtx {
        CoalgebraCtx::with_default_conventions(GradedBasis::from_pairs(pairs).unwrap())
    }

    fn tw(letters: &[u32]) -> TensorWord {
        TensorWord::new(letters.to_vec())
    }

    fn ww(factors: &[&[u32]]) -> WedgeWord {
        WedgeWord::new(factors.iter().map(|f| tw(f)).collect())
    }

    #[test]
    fn cobracket_on_two_even_letters() {
        let c = ctx(&[("x", 0), ("y", 0)]);
        let d = c.cobracket_tensor(&tw(&[0, 1])).unwrap();
        // Splits: (x, y) with +1 and the swap with -(-1)^{0+0} = -1.
        assert_eq!(d.coeff(&(ww(&[&[0]]), ww(&[&[1]]))), Scalar::one());
        assert_eq!(d.coeff(&(ww(&[&[1]]), ww(&[&[0]]))), -Scalar::one());
    }

    #[test]
    fn cobracket_is_symmetric_in_factor_degrees() {
        let c = ctx(&[("x", 0), ("y", 1), ("z", 2), ("w", 1)]);
        for letters in [vec![0, 1], vec![1, 2], vec![0, 1, 2], vec![3, 1, 0], vec![2, 2, 1]] {
            let ms = {
                let mut m = letters.clone();
                m.sort_unstable();
                m
            };
            for t in c.sections_of(&ms).unwrap() {
                let d = c.cobracket_tensor(&t).unwrap();
                let mut swapped = c.pair_swap(&d);
                swapped.sub(&d);
                assert!(swapped.is_zero(), "cobracket of {t} not symmetric");
            }
        }
    }

    #[test]
    fn reduced_coproduct_counts_multiplicity() {
        // x has letter degree 1, so factor degree 0: x^x survives and
        // unshuffles with multiplicity 2.
        let c = ctx(&[("x", 1)]);
        let w = ww(&[&[0], &[0]]);
        let d = c.reduced_coproduct(&w);
        assert_eq!(d.coeff(&(ww(&[&[0]]), ww(&[&[0]]))), Scalar::from_int(2));
    }

    #[test]
    fn reduced_coproduct_signs_on_odd_factors() {
        // Both letters have even degree, factor degrees are odd.
        let c = ctx(&[("x", 0), ("y", 2)]);
        let w = ww(&[&[0], &[1]]);
        let d = c.reduced_coproduct(&w);
        assert_eq!(d.coeff(&(ww(&[&[0]]), ww(&[&[1]]))), Scalar::one());
        // Picking y first crosses x: (-1)^{(-1)(1)} = -1.
        assert_eq!(d.coeff(&(ww(&[&[1]]), ww(&[&[0]]))), -Scalar::one());
    }

    #[test]
    fn coproduct_is_coassociative() {
        let c = ctx(&[("x", 0), ("y", 1), ("z", 2), ("w", 3)]);
        let gb = c.alphabet();
        for w in [ww(&[&[0], &[1], &[2]]), ww(&[&[0], &[1], &[2], &[3]]), ww(&[&[1], &[1], &[3]])] {
            // Both associations into triples must agree.
            let d = c.reduced_coproduct(&w);
            let mut lhs: LinCombT = LinComb::zero();
            let mut rhs: LinCombT = LinComb::zero();
            for ((a, b), s) in d.iter() {
                for ((a1, a2), s2) in c.reduced_coproduct(a).iter() {
                    lhs.add_term((a1.clone(), a2.clone(), b.clone()), s * s2);
                }
                for ((b1, b2), s2) in c.reduced_coproduct(b).iter() {
                    // id x delta: the coproduct passes the even leg a.
                    let _ = gb;
                    rhs.add_term((a.clone(), b1.clone(), b2.clone()), s * s2);
                }
            }
            let mut diff = lhs.clone();
            diff.sub(&rhs);
            assert!(diff.is_zero(), "coassociativity fails on {w}");
        }
    }

    type LinCombT = LinComb<(WedgeWord, WedgeWord, WedgeWord)>;
    use crate::lincomb::LinComb;

    #[test]
    fn wedge_cobracket_restricts_to_tensor_cobracket() {
        let c = ctx(&[("x", 0), ("y", 1), ("z", 2)]);
        for t in [tw(&[0, 1]), tw(&[0, 1, 2]), tw(&[2, 1])] {
            let nt = c.normalize_tensor(&t).unwrap();
            let mut expect = PairElement::zero();
            for (wrd, coeff) in nt.iter() {
                expect.add_scaled(&c.cobracket_tensor(wrd).unwrap(), coeff);
            }
            let mut got = PairElement::zero();
            for (wrd, coeff) in nt.iter() {
                got.add_scaled(&c.cobracket(&WedgeWord::single(wrd.clone())).unwrap(), coeff);
            }
            let mut diff = got;
            diff.sub(&expect);
            assert!(diff.is_zero());
        }
    }

    #[test]
    fn wedge_cobracket_is_symmetric() {
        let c = ctx(&[("x", 0), ("y", 1), ("z", 2)]);
        for w in [
            ww(&[&[0], &[1]]),
            ww(&[&[0, 1], &[2]]),
            ww(&[&[1], &[1], &[2]]),
            ww(&[&[0, 2], &[1, 1]]),
        ] {
            let d = c.cobracket(&w).unwrap();
            let mut diff = c.pair_swap(&d);
            diff.sub(&d);
            assert!(diff.is_zero(), "wedge cobracket of {w} not symmetric");
        }
    }

    #[test]
    fn cobracket_co_jacobi() {
        // (1 + rot + rot^2) (delta x 1) delta = 0 with Koszul signs in
        // the word degrees.
        let c = ctx(&[("x", 0), ("y", 1), ("z", 2), ("w", 1)]);
        let gb = c.alphabet();
        let words = [
            ww(&[&[0, 1]]),
            ww(&[&[0, 1, 2]]),
            ww(&[&[0], &[1, 2]]),
            ww(&[&[0, 3], &[1]]),
            ww(&[&[1], &[2], &[0]]),
            ww(&[&[0, 1, 2, 3]]),
        ];
        for w in words {
            let d = c.cobracket(&w).unwrap();
            let mut triple: LinCombT = LinComb::zero();
            for ((a, b), s) in d.iter() {
                for ((a1, a2), s2) in c.cobracket(a).unwrap().iter() {
                    triple.add_term((a1.clone(), a2.clone(), b.clone()), s * s2);
                }
            }
            let mut total: LinCombT = LinComb::zero();
            for ((a, b, cc), s) in triple.iter() {
                let (da, db, dc) = (a.degree(gb), b.degree(gb), cc.degree(gb));
                total.add_term((a.clone(), b.clone(), cc.clone()), s.clone());
                // Rotate left: (b, c, a) with a passing b and c.
                total.add_term(
                    (b.clone(), cc.clone(), a.clone()),
                    s * &Scalar::neg_one_pow(da * (db + dc)),
                );
                // Rotate right: (c, a, b) with c passing a and b.
                total.add_term(
                    (cc.clone(), a.clone(), b.clone()),
                    s * &Scalar::neg_one_pow(dc * (da + db)),
                );
            }
            assert!(total.is_zero(), "co-Jacobi fails on {w}");
        }
    }
}

//! Multivector fields with polynomial coefficients: wedge product,
//! Schouten bracket, and the HKR embedding into polydifferential
//! operators.
//!
//! An arity-k multivector is a sum of terms f * d_{i_1} ^ ... ^ d_{i_k}
//! with strictly increasing indices; antisymmetry is normalized away at
//! construction time. The shifted degree is arity - 1, matching the
//! operator side so that HKR is degree-preserving.

use std::collections::BTreeMap;
use std::fmt;

use shak_core::{sort_by_key_with_sign, Scalar};

use crate::error::HochschildError;
use crate::ops::PolyDiffOp;
use crate::poly::{format_monomial, Polynomial};

#[derive(Clone, Debug)]
pub struct MultiVector {
    vars: usize,
    arity: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

// Zeros of every arity coincide, matching the operator side: a bracket
// that cancels completely may carry a saturated arity tag.
impl PartialEq for MultiVector {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.terms == other.terms
            && (self.terms.is_empty() || self.arity == other.arity)
    }
}

impl Eq for MultiVector {}

impl MultiVector {
    pub fn zero(vars: usize, arity: usize) -> Self {
        MultiVector {
            vars,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Arity-0 multivector: a function.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let mut mv = MultiVector::zero(p.vars(), 0);
        mv.add_to(Vec::new(), p);
        mv
    }

    /// `poly * d_{indices}`, normalized: indices are sorted with the
    /// permutation sign, repeated indices collapse the term to zero.
    pub fn term(
        vars: usize,
        mut indices: Vec<usize>,
        poly: Polynomial,
    ) -> Result<Self, HochschildError> {
        if poly.vars() != vars {
            return Err(HochschildError::Malformed(format!(
                "coefficient in {} variables for a multivector in {}",
                poly.vars(),
                vars
            )));
        }
        for &i in &indices {
            if i >= vars {
                return Err(HochschildError::Malformed(format!(
                    "field index {i} out of range for {vars} variables"
                )));
            }
        }
        let arity = indices.len();
        let mut mv = MultiVector::zero(vars, arity);
        let sign = sort_by_key_with_sign(&mut indices, |&i| i, |_| 1);
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Ok(mv);
        }
        mv.add_to(indices, poly.scale(&sign));
        Ok(mv)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Shifted degree: arity minus one.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_to(&mut self, indices: Vec<usize>, poly: Polynomial) {
        debug_assert_eq!(indices.len(), self.arity);
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        if poly.is_zero() {
            return;
        }
        match self.terms.get_mut(&indices) {
            Some(existing) => {
                *existing = existing.add(&poly);
                if existing.is_zero() {
                    self.terms.remove(&indices);
                }
            }
            None => {
                self.terms.insert(indices, poly);
            }
        }
    }

    pub fn add(&self, other: &MultiVector) -> MultiVector {
        debug_assert_eq!(self.vars, other.vars);
        // Zero operands are arity-agnostic, see PartialEq.
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (i, p) in other.iter() {
            out.add_to(i.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiVector) -> MultiVector {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> MultiVector {
        let mut out = MultiVector::zero(self.vars, self.arity);
        if s.is_zero() {
            return out;
        }
        for (i, p) in self.iter() {
            out.add_to(i.clone(), p.scale(s));
        }
        out
    }

    /// Exterior product. Coefficients are even, so the only sign is the
    /// permutation sorting the concatenated index tuple.
    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = MultiVector::zero(self.vars, self.arity + other.arity);
        for (ia, fa) in self.iter() {
            for (ib, fb) in other.iter() {
                let mut indices: Vec<usize> = ia.iter().chain(ib.iter()).copied().collect();
                let sign = sort_by_key_with_sign(&mut indices, |&i| i, |_| 1);
                if indices.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                out.add_to(indices, fa.mul(fb).scale(&sign));
            }
        }
        out
    }

    /// Schouten bracket, the degree-0 graded Lie bracket on shifted
    /// multivectors extending the Lie bracket of vector fields and the
    /// derivation action on functions.
    pub fn schouten(&self, other: &MultiVector) -> MultiVector {
        debug_assert_eq!(self.vars, other.vars);
        let res_arity = (self.arity + other.arity).saturating_sub(1);
        let mut out = MultiVector::zero(self.vars, res_arity);
        for (ia, fa) in self.iter() {
            for (ib, fb) in other.iter() {
                out = out.add(&schouten_terms(self.vars, ia, fa, ib, fb));
            }
        }
        out
    }

    /// HKR embedding: each wedge of coordinate fields becomes the
    /// antisymmetrized first-order operator, determinant-normalized
    /// (no 1/k! factor), so an arity-k term produces k! signed keys.
    pub fn hkr(&self) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.vars, self.arity);
        for (indices, f) in self.iter() {
            for (perm, sign) in permutations(indices.len()) {
                let key: Vec<Vec<u32>> = perm
                    .iter()
                    .map(|&s| {
                        let mut slot = vec![0; self.vars];
                        slot[indices[s]] = 1;
                        slot
                    })
                    .collect();
                let term = PolyDiffOp::term(self.vars, key, f.scale(&Scalar::from_int(sign)))
                    .expect("permuted key is well formed");
                out = out.add(&term);
            }
        }
        out
    }
}

/// Bracket of two single terms. The recursion peels one field off the
/// right argument with the biderivation rule
///   [a, b1 ^ b2] = [a, b1] ^ b2 + (-1)^{(|a|) * arity(b1)} b1 ^ [a, b2]
/// (|a| the shifted degree), flips higher-arity left arguments by graded
/// antisymmetry, and bottoms out in the vector-field/function cases.
fn schouten_terms(
    vars: usize,
    ia: &[usize],
    fa: &Polynomial,
    ib: &[usize],
    fb: &Polynomial,
) -> MultiVector {
    let (a, b) = (ia.len(), ib.len());
    match (a, b) {
        (0, 0) => MultiVector::zero(vars, 0),
        (1, 0) => MultiVector::from_polynomial(fa.mul(&fb.diff(ia[0]))),
        (0, 1) => MultiVector::from_polynomial(fb.mul(&fa.diff(ib[0])).scale(&Scalar::from_int(-1))),
        (1, 1) => {
            let lead = MultiVector::term(vars, ib.to_vec(), fa.mul(&fb.diff(ia[0])))
                .expect("indices validated by the caller");
            let trail = MultiVector::term(vars, ia.to_vec(), fb.mul(&fa.diff(ib[0])))
                .expect("indices validated by the caller");
            lead.sub(&trail)
        }
        _ if b >= 2 => {
            // Split off the right argument's first field: b1 carries the
            // coefficient, b2 is a constant wedge.
            let b1 = MultiVector::term(vars, vec![ib[0]], fb.clone())
                .expect("indices validated by the caller");
            let b2 = MultiVector::term(vars, ib[1..].to_vec(), Polynomial::one(vars))
                .expect("indices validated by the caller");
            let one = Polynomial::one(vars);
            let lead = schouten_terms(vars, ia, fa, &[ib[0]], fb).wedge(&b2);
            let mut trail = MultiVector::zero(vars, (a + b).saturating_sub(1));
            for (ic, fc) in schouten_terms(vars, ia, fa, &ib[1..], &one).iter() {
                trail = trail.add(
                    &b1.wedge(
                        &MultiVector::term(vars, ic.clone(), fc.clone())
                            .expect("recursion output is normalized"),
                    ),
                );
            }
            let sign = Scalar::neg_one_pow(a as i64 - 1);
            lead.add(&trail.scale(&sign))
        }
        _ => {
            // a >= 2, b <= 1: graded antisymmetry on shifted degrees.
            let sign = Scalar::neg_one_pow((a as i64 - 1) * (b as i64 - 1) + 1);
            schouten_terms(vars, ib, fb, ia, fa).scale(&sign)
        }
    }
}

/// All permutations of 0..k with their signs, in a deterministic order.
fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    build_permutations(k, &mut current, &mut used, 1, &mut out);
    out
}

fn build_permutations(
    k: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    sign: i64,
    out: &mut Vec<(Vec<usize>, i64)>,
) {
    if current.len() == k {
        out.push((current.clone(), sign));
        return;
    }
    for v in 0..k {
        if used[v] {
            continue;
        }
        // Placing v here crosses every smaller unused value.
        let crossings = (0..v).filter(|&u| !used[u]).count();
        let s = if crossings % 2 == 0 { sign } else { -sign };
        used[v] = true;
        current.push(v);
        build_permutations(k, current, used, s, out);
        current.pop();
        used[v] = false;
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (indices, poly) in self.iter() {
            for (exps, c) in poly.iter() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{c}")?;
                let m = format_monomial(exps);
                if !m.is_empty() {
                    write!(f, " {m}")?;
                }
                if !indices.is_empty() {
                    let fields: Vec<String> =
                        indices.iter().map(|i| format!("d{}", i + 1)).collect();
                    write!(f, " {}", fields.join("."))?;
                }
            }
        }
        Ok(())
    }
}

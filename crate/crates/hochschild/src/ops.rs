//! Polydifferential operators on polynomial algebras: the brace insertion,
//! the Gerstenhaber bracket, the Hochschild differential b = [m,-], and the
//! cup product.
//!
//! An arity-k operator is a finite sum of terms
//!     f(x) * d^{a_1} (x) ... (x) d^{a_k}
//! acting on k polynomial arguments by differentiating the s-th argument
//! with the multi-index a_s and multiplying the results by f. The key of a
//! term is the tuple (a_1, ..., a_k); everything is normalized to this form
//! immediately, there are no lazy composites.

use std::collections::BTreeMap;

use shak_core::Scalar;

use crate::error::HochschildError;
use crate::poly::{Exponents, Polynomial};

/// One derivative multi-index per argument slot.
pub type OpKey = Vec<Exponents>;

#[derive(Clone, Debug)]
pub struct PolyDiffOp {
    vars: usize,
    arity: usize,
    terms: BTreeMap<OpKey, Polynomial>,
}

// The zero operator is shared between all arities: brackets that vanish
// identically may carry a saturated arity tag, and those zeros must still
// compare equal to the zero of the expected arity.
impl PartialEq for PolyDiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.terms == other.terms
            && (self.terms.is_empty() || self.arity == other.arity)
    }
}

impl Eq for PolyDiffOp {}

impl PolyDiffOp {
    pub fn zero(vars: usize, arity: usize) -> Self {
        PolyDiffOp {
            vars,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `poly * d^{key}`.
    pub fn term(vars: usize, key: OpKey, poly: Polynomial) -> Result<Self, HochschildError> {
        if poly.vars() != vars {
            return Err(HochschildError::Malformed(format!(
                "coefficient in {} variables for an operator in {}",
                poly.vars(),
                vars
            )));
        }
        for slot in &key {
            if slot.len() != vars {
                return Err(HochschildError::Malformed(format!(
                    "slot multi-index of length {} in {} variables",
                    slot.len(),
                    vars
                )));
            }
        }
        let arity = key.len();
        let mut op = PolyDiffOp::zero(vars, arity);
        op.add_to(key, poly);
        Ok(op)
    }

    /// Arity-0 operator: the polynomial itself.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let mut op = PolyDiffOp::zero(p.vars(), 0);
        op.add_to(Vec::new(), p);
        op
    }

    /// The commutative multiplication m(f, g) = fg.
    pub fn multiplication(vars: usize) -> Self {
        PolyDiffOp::term(
            vars,
            vec![vec![0; vars], vec![0; vars]],
            Polynomial::one(vars),
        )
        .expect("constant key is well formed")
    }

    /// The identity cochain f -> f.
    pub fn identity(vars: usize) -> Self {
        PolyDiffOp::term(vars, vec![vec![0; vars]], Polynomial::one(vars))
            .expect("constant key is well formed")
    }

    /// The coordinate vector field d_i as an arity-1 operator.
    pub fn partial(vars: usize, i: usize) -> Result<Self, HochschildError> {
        if i >= vars {
            return Err(HochschildError::Malformed(format!(
                "variable index {i} out of range for {vars} variables"
            )));
        }
        let mut slot = vec![0; vars];
        slot[i] = 1;
        PolyDiffOp::term(vars, vec![slot], Polynomial::one(vars))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Shifted degree: arity minus one, so that b has degree +1.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OpKey, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_to(&mut self, key: OpKey, poly: Polynomial) {
        debug_assert_eq!(key.len(), self.arity);
        if poly.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = existing.add(&poly);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, poly);
            }
        }
    }

    pub fn add(&self, other: &PolyDiffOp) -> PolyDiffOp {
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
        for (k, p) in other.iter() {
            out.add_to(k.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyDiffOp) -> PolyDiffOp {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> PolyDiffOp {
        let mut out = PolyDiffOp::zero(self.vars, self.arity);
        if s.is_zero() {
            return out;
        }
        for (k, p) in self.iter() {
            out.add_to(k.clone(), p.scale(s));
        }
        out
    }

    /// Evaluates the operator on polynomial arguments.
    pub fn apply(&self, args: &[Polynomial]) -> Result<Polynomial, HochschildError> {
        if args.len() != self.arity {
            return Err(HochschildError::Malformed(format!(
                "{} arguments for an arity-{} operator",
                args.len(),
                self.arity
            )));
        }
        let mut out = Polynomial::zero(self.vars);
        for (key, coeff) in self.iter() {
            let mut prod = coeff.clone();
            for (slot, arg) in key.iter().zip(args.iter()) {
                if prod.is_zero() {
                    break;
                }
                prod = prod.mul(&arg.diff_multi(slot));
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Largest total derivative order of any single slot, 0 for constants.
    pub fn max_slot_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|key| key.iter().map(|slot| slot.iter().sum()))
            .max()
            .unwrap_or(0)
    }

    /// Largest total degree of any coefficient monomial.
    pub fn max_coeff_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// The brace {self | e}: sum over insertions of `e` into one argument
    /// slot, with the sign (-1)^{|e| * i} for i arguments in front. The
    /// composite is expanded to normal form on the spot by the Leibniz
    /// rule: the slot's multi-index splits between the coefficient of `e`
    /// and the slots of `e`, with multinomial multiplicities.
    pub fn insert(&self, e: &PolyDiffOp) -> PolyDiffOp {
        debug_assert_eq!(self.vars, e.vars);
        let d = self.arity;
        let res_arity = (d + e.arity).saturating_sub(1);
        let mut out = PolyDiffOp::zero(self.vars, res_arity);
        let e_degree = e.arity as i64 - 1;

        for (dkey, dcoeff) in self.iter() {
            for i in 0..d {
                let sign = Scalar::neg_one_pow(e_degree * i as i64);
                let alpha = &dkey[i];
                for (ekey, ecoeff) in e.iter() {
                    for split in multi_splits(alpha, e.arity + 1) {
                        let inner = ecoeff.diff_multi(&split.parts[0]);
                        if inner.is_zero() {
                            continue;
                        }
                        let mut key: OpKey = Vec::with_capacity(res_arity);
                        key.extend_from_slice(&dkey[..i]);
                        for (s, eslot) in ekey.iter().enumerate() {
                            let merged: Exponents = eslot
                                .iter()
                                .zip(split.parts[s + 1].iter())
                                .map(|(a, b)| a + b)
                                .collect();
                            key.push(merged);
                        }
                        key.extend_from_slice(&dkey[i + 1..]);
                        let c = &sign * &Scalar::from_int(split.multiplicity);
                        out.add_to(key, dcoeff.mul(&inner).scale(&c));
                    }
                }
            }
        }
        out
    }

    /// [self, e]_G = {self|e} - (-1)^{|self||e|} {e|self}.
    pub fn gerstenhaber(&self, e: &PolyDiffOp) -> PolyDiffOp {
        let sign = Scalar::neg_one_pow(self.degree() * e.degree());
        self.insert(e).sub(&e.insert(self).scale(&sign))
    }

    /// Hochschild differential b = [m, -]_G.
    pub fn hochschild_b(&self) -> PolyDiffOp {
        PolyDiffOp::multiplication(self.vars).gerstenhaber(self)
    }

    /// Cup product: (D u E)(x_1..x_{d+e}) = D(x_1..x_d) E(x_{d+1}..).
    pub fn cup(&self, e: &PolyDiffOp) -> PolyDiffOp {
        debug_assert_eq!(self.vars, e.vars);
        let mut out = PolyDiffOp::zero(self.vars, self.arity + e.arity);
        for (dkey, dcoeff) in self.iter() {
            for (ekey, ecoeff) in e.iter() {
                let mut key = dkey.clone();
                key.extend_from_slice(ekey);
                out.add_to(key, dcoeff.mul(ecoeff));
            }
        }
        out
    }
}

/// One way of splitting a multi-index into ordered parts, with the product
/// of per-variable multinomial coefficients.
struct Split {
    parts: Vec<Exponents>,
    multiplicity: i64,
}

/// All decompositions of `alpha` into `parts` ordered summands, per
/// variable independently, each with its Leibniz multiplicity.
fn multi_splits(alpha: &Exponents, parts: usize) -> Vec<Split> {
    let vars = alpha.len();
    // Per-variable compositions; the odometer below takes their product.
    let per_var: Vec<Vec<Vec<u32>>> = alpha.iter().map(|&a| compositions(a, parts)).collect();
    let mut idx = vec![0usize; vars];
    let mut out = Vec::new();
    loop {
        let mut split = Split {
            parts: vec![vec![0; vars]; parts],
            multiplicity: 1,
        };
        for v in 0..vars {
            let comp = &per_var[v][idx[v]];
            for (s, &c) in comp.iter().enumerate() {
                split.parts[s][v] = c;
            }
            split.multiplicity *= multinomial(comp);
        }
        out.push(split);

        let mut v = 0;
        loop {
            if v == vars {
                return out;
            }
            idx[v] += 1;
            if idx[v] < per_var[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Ordered decompositions of `total` into `parts` nonnegative summands.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// (sum a_i)! / prod (a_i!), exact in i64 at the orders that occur here.
fn multinomial(parts: &[u32]) -> i64 {
    let mut result: i64 = 1;
    let mut seen: u32 = 0;
    for &p in parts {
        for j in 1..=p {
            seen += 1;
            result = result * seen as i64 / j as i64;
        }
    }
    result
}

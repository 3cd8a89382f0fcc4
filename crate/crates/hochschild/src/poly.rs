//! Sparse polynomials over the rationals in a fixed number of variables.
//!
//! Everything downstream (operators, multivectors, the truncation boxes)
//! stores its coefficients in this form, so canonicalization lives here:
//! no zero terms, exponent vectors always of length `vars`.

use std::collections::BTreeMap;
use std::fmt;

use shak_core::Scalar;

use crate::error::HochschildError;

/// Exponent multi-index, one entry per variable.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Polynomial::constant(vars, Scalar::one())
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// Single monomial `c * x^exps`.
    pub fn monomial(vars: usize, exps: Exponents, c: Scalar) -> Result<Self, HochschildError> {
        if exps.len() != vars {
            return Err(HochschildError::Malformed(format!(
                "exponent vector of length {} in {} variables",
                exps.len(),
                vars
            )));
        }
        let mut p = Polynomial::zero(vars);
        p.add_term(exps, c);
        Ok(p)
    }

    /// The variable `x_i` (zero-based).
    pub fn variable(vars: usize, i: usize) -> Result<Self, HochschildError> {
        if i >= vars {
            return Err(HochschildError::Malformed(format!(
                "variable index {i} out of range for {vars} variables"
            )));
        }
        let mut exps = vec![0; vars];
        exps[i] = 1;
        Polynomial::monomial(vars, exps, Scalar::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * x^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: Scalar) {
        debug_assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.vars);
        }
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in self.iter() {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Polynomial::zero(self.vars);
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                let e: Exponents = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Polynomial {
        debug_assert!(i < self.vars);
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in self.iter() {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * &Scalar::from_int(e[i] as i64));
        }
        out
    }

    /// Iterated partials, one order per variable: `d^a = prod_i d_i^{a_i}`.
    pub fn diff_multi(&self, orders: &[u32]) -> Polynomial {
        debug_assert_eq!(orders.len(), self.vars);
        let mut out = self.clone();
        for (i, &a) in orders.iter().enumerate() {
            for _ in 0..a {
                if out.is_zero() {
                    return out;
                }
                out = out.diff(i);
            }
        }
        out
    }

    /// Largest total degree in the support, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

/// Renders the exponent vector as `x1^2*x3`, or nothing for the constant
/// monomial. Shared with the operator literal syntax.
pub fn format_monomial(exps: &[u32]) -> String {
    let mut factors = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            factors.push(format!("x{}", i + 1));
        } else {
            factors.push(format!("x{}^{}", i + 1, e));
        }
    }
    factors.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let m = format_monomial(e);
            if m.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} {m}")?;
            }
        }
        Ok(())
    }
}

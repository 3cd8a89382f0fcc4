use std::collections::BTreeMap;

use crate::{BasisId, CoreError, GradedBasis, Scalar};

/// Sparse rational vector over a [`GradedBasis`].
///
/// Zero coefficients are never stored, so `terms` is a canonical
/// representation and equality of elements is equality of maps.
/// `homogeneous_degree` is an optional certificate: when set, every stored
/// term has exactly that degree (enforced by the constructors that are given
/// a basis).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<BasisId, Scalar>,
    homogeneous_degree: Option<i64>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn term(id: BasisId, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(id, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisId, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (id, c) in terms {
            e.add_term(id, c);
        }
        e
    }

    /// Builds a homogeneous element, checking every term against `basis`.
    pub fn homogeneous(
        basis: &GradedBasis,
        degree: i64,
        terms: impl IntoIterator<Item = (BasisId, Scalar)>,
    ) -> Result<Self, CoreError> {
        let mut e = Element::from_terms(terms);
        for (&id, _) in &e.terms {
            let d = basis.degree(id);
            if d != degree {
                return Err(CoreError::MalformedInput(format!(
                    "term {} has degree {d}, expected {degree}",
                    basis.name(id)
                )));
            }
        }
        e.homogeneous_degree = Some(degree);
        Ok(e)
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        self.homogeneous_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, id: BasisId) -> Scalar {
        self.terms.get(&id).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisId, &Scalar)> {
        self.terms.iter().map(|(&id, c)| (id, c))
    }

    pub fn add_term(&mut self, id: BasisId, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(id).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.homogeneous_degree = match (self.homogeneous_degree, other.homogeneous_degree) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        if other.is_zero() {
            out.homogeneous_degree = self.homogeneous_degree;
        }
        for (id, c) in other.iter() {
            out.add_term(id, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        out.homogeneous_degree = self.homogeneous_degree;
        for (id, c) in self.iter() {
            out.terms.insert(id, c * s);
        }
        out
    }

    /// Pretty form like `2*x - 1/3*y`, in basis order.
    pub fn display(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (id, c)) in self.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(basis.name(id));
        }
        out
    }
}

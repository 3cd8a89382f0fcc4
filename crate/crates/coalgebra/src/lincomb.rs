use std::collections::BTreeMap;
use std::fmt;

use shak_core::Scalar;

/// Formal linear combination of ordered keys with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<K: Ord + Clone>(BTreeMap<K, Scalar>);

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut m = Self::zero();
        m.add_term(key, coeff);
        m
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.0.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let e = self.0.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += coeff;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c * s);
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn sub(&mut self, other: &Self) {
        self.add_scaled(other, &-Scalar::one());
    }

    pub fn scale(&mut self, s: &Scalar) {
        if s.is_zero() {
            self.0.clear();
            return;
        }
        for c in self.0.values_mut() {
            *c = &*c * s;
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scale(&-Scalar::one());
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn into_iter(self) -> impl Iterator<Item = (K, Scalar)> {
        self.0.into_iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Substitutes each key by a combination and sums with coefficients.
    pub fn bind<L: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            let (sign, mag) = if c.to_string().starts_with('-') {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{mag}*{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_cancel_and_display() {
        let mut c: LinComb<&'static str> = LinComb::zero();
        c.add_term("x", Scalar::from_int(2));
        c.add_term("y", Scalar::from_int(-1));
        assert_eq!(c.to_string(), "2*x - y");
        c.add_term("x", Scalar::from_int(-2));
        assert_eq!(c.to_string(), "-y");
        c.add_term("y", Scalar::one());
        assert!(c.is_zero());
    }
}

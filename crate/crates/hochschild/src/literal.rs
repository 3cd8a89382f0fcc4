//! Plain-text operator literals, used by the command line and fixtures.
//!
//! A term is whitespace-separated fields: a rational coefficient, an
//! optional monomial, and for arity >= 1 a slot list:
//!
//! ```text
//! 2/3 x1^2 d1.d2|d1      (2/3) x1^2 * (d1 d2 (x) d1)
//! 1 -|-                  the multiplication (both slots order 0)
//! -1 x2 -                the arity-1 operator f -> -x2 f
//! 5                      the arity-0 operator (constant 5)
//! ```
//!
//! Monomial factors are joined by `*` with `^` powers; slot factors by
//! `.` with repetition meaning higher order; `-` is an order-0 slot.
//! Terms are joined by `+`; signs live on coefficients. The zero
//! operator is `0`, and a zero-coefficient term such as `0 -|-` pins
//! the arity without contributing.

use std::fmt;
use std::str::FromStr;

use shak_core::Scalar;

use crate::error::HochschildError;
use crate::ops::{OpKey, PolyDiffOp};
use crate::poly::{format_monomial, Polynomial};

/// Parses an operator literal over `vars` variables.
pub fn parse_op(text: &str, vars: usize) -> Result<PolyDiffOp, HochschildError> {
    let bad = |m: String| HochschildError::Malformed(m);
    let mut arity: Option<usize> = None;
    let mut terms: Vec<(OpKey, Polynomial)> = Vec::new();

    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(bad("empty operator literal".into()));
    }
    if trimmed == "0" {
        return Ok(PolyDiffOp::zero(vars, 0));
    }

    for chunk in trimmed.split('+') {
        let fields: Vec<&str> = chunk.split_whitespace().collect();
        if fields.is_empty() {
            return Err(bad(format!("empty term in operator literal {trimmed:?}")));
        }
        if fields.len() > 3 {
            return Err(bad(format!(
                "term {:?} has more than coefficient, monomial, and slots",
                chunk.trim()
            )));
        }
        let coeff = Scalar::from_str(fields[0])?;

        let mut exps = vec![0u32; vars];
        let mut saw_monomial = false;
        let mut key: Option<OpKey> = None;
        for &field in &fields[1..] {
            if field.starts_with('x') {
                if key.is_some() {
                    return Err(bad(format!("monomial {field:?} after the slot list")));
                }
                if saw_monomial {
                    return Err(bad(format!("second monomial field {field:?} in one term")));
                }
                saw_monomial = true;
                parse_monomial(field, vars, &mut exps)?;
            } else if field.starts_with('d') || field.starts_with('-') {
                if key.is_some() {
                    return Err(bad(format!("second slot list {field:?} in one term")));
                }
                key = Some(parse_slots(field, vars)?);
            } else {
                return Err(bad(format!("unreadable field {field:?}")));
            }
        }

        let key = key.unwrap_or_default();
        match arity {
            None => arity = Some(key.len()),
            Some(a) if a != key.len() => {
                return Err(bad(format!(
                    "terms of arity {a} and {} in one literal",
                    key.len()
                )));
            }
            Some(_) => {}
        }
        terms.push((key, Polynomial::monomial(vars, exps, coeff)?));
    }

    let arity = arity.expect("at least one term was parsed");
    let mut op = PolyDiffOp::zero(vars, arity);
    for (key, poly) in terms {
        op = op.add(&PolyDiffOp::term(vars, key, poly)?);
    }
    Ok(op)
}

/// `x1^2*x3` into exponents, accumulating repeated factors.
fn parse_monomial(field: &str, vars: usize, exps: &mut [u32]) -> Result<(), HochschildError> {
    for factor in field.split('*') {
        let (idx, exp) = match factor.split_once('^') {
            Some((base, pow)) => {
                let e: u32 = pow.parse().map_err(|_| {
                    HochschildError::Malformed(format!("unreadable exponent in {factor:?}"))
                })?;
                if e == 0 {
                    return Err(HochschildError::Malformed(format!(
                        "exponent 0 in {factor:?}; drop the factor instead"
                    )));
                }
                (base, e)
            }
            None => (factor, 1),
        };
        let i = parse_index(idx, 'x', vars)?;
        exps[i] += exp;
    }
    Ok(())
}

/// `d1.d1.d2|-|d3` into per-slot multi-indices.
fn parse_slots(field: &str, vars: usize) -> Result<OpKey, HochschildError> {
    let mut key = Vec::new();
    for slot in field.split('|') {
        let mut orders = vec![0u32; vars];
        if slot != "-" {
            for factor in slot.split('.') {
                let i = parse_index(factor, 'd', vars)?;
                orders[i] += 1;
            }
        }
        key.push(orders);
    }
    Ok(key)
}

/// `x3` or `d3` into a zero-based index, bounds-checked.
fn parse_index(token: &str, prefix: char, vars: usize) -> Result<usize, HochschildError> {
    let bad = || HochschildError::Malformed(format!("unreadable factor {token:?}"));
    let rest = token.strip_prefix(prefix).ok_or_else(bad)?;
    let i: usize = rest.parse().map_err(|_| bad())?;
    if i == 0 || i > vars {
        return Err(HochschildError::Malformed(format!(
            "index {i} out of range 1..={vars} in {token:?}"
        )));
    }
    Ok(i - 1)
}

fn format_slots(key: &OpKey) -> String {
    let slots: Vec<String> = key
        .iter()
        .map(|orders| {
            let mut factors = Vec::new();
            for (i, &a) in orders.iter().enumerate() {
                for _ in 0..a {
                    factors.push(format!("d{}", i + 1));
                }
            }
            if factors.is_empty() {
                "-".into()
            } else {
                factors.join(".")
            }
        })
        .collect();
    slots.join("|")
}

impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, poly) in self.iter() {
            let slots = format_slots(key);
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
                if !slots.is_empty() {
                    write!(f, " {slots}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for (text, vars) in [
            ("2/3 x1^2 d1.d2|d1", 2),
            ("1 -|-", 1),
            ("-1 x2 -", 2),
            ("5", 1),
            ("0", 3),
            ("1 d1.d1 + -1 x1 d2", 2),
        ] {
            let op = parse_op(text, vars).unwrap();
            let rendered = op.to_string();
            let back = parse_op(&rendered, vars).unwrap();
            assert_eq!(op, back, "round trip through {rendered:?}");
        }
        assert_eq!(
            parse_op("1 -|-", 2).unwrap(),
            PolyDiffOp::multiplication(2)
        );
    }

    #[test]
    fn zero_coefficient_terms_pin_the_arity() {
        let op = parse_op("0 -|-", 2).unwrap();
        assert!(op.is_zero());
        assert_eq!(op.arity(), 2);
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for (text, vars) in [
            ("", 1),
            ("x1", 1),             // missing coefficient
            ("1 d1 + 1 d1|d1", 1), // mixed arities
            ("1 x3 -", 2),         // variable out of range
            ("1 d0", 1),           // indices are one-based
            ("1/0 -", 1),          // zero denominator
            ("1 x1^0 -", 1),       // exponent zero
            ("1 y2 -", 2),         // unknown factor name
            ("1 x1 x2", 2),        // two monomial fields
            ("1 x1 x1 -", 1),      // too many fields
        ] {
            assert!(parse_op(text, vars).is_err(), "accepted {text:?}");
        }
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::CoreError;

/// Arbitrary-precision rational number in canonical reduced form.
///
/// The denominator is always positive; `0` is stored as `0/1`. These
/// invariants are maintained by `BigRational` itself, so every `Scalar`
/// observable through this API is canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` with `q != 0`. The stored value is reduced and the sign moved
    /// to the numerator.
    pub fn from_ratio(p: i64, q: i64) -> Result<Self, CoreError> {
        if q == 0 {
            return Err(CoreError::MalformedInput("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Sign flip raised to `exp`: `(-1)^exp`.
    pub fn neg_one_pow(exp: i64) -> Self {
        if exp.rem_euclid(2) == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn inv(&self) -> Result<Self, CoreError> {
        if self.is_zero() {
            return Err(CoreError::MalformedInput("division by zero".into()));
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }
}

impl fmt::Display for Scalar {
    /// Prints `p` for integers and `p/q` otherwise, `q > 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Scalar {
    type Err = CoreError;

    /// Accepts `p` or `p/q` with optional leading sign; `q` must be positive
    /// in the source text so that inputs are already near-canonical.
    fn from_str(s: &str) -> Result<Self, CoreError> {
        let bad = |m: &str| CoreError::MalformedInput(format!("bad rational {s:?}: {m}"));
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let p: BigInt = num.parse().map_err(|_| bad("unreadable numerator"))?;
        let q: BigInt = match den {
            Some(q) => q.parse().map_err(|_| bad("unreadable denominator"))?,
            None => BigInt::one(),
        };
        if q.is_zero() {
            return Err(bad("zero denominator"));
        }
        if q.is_negative() {
            return Err(bad("denominator must be positive"));
        }
        Ok(Scalar(BigRational::new(p, q)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

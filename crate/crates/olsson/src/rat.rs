//! Exact rational scalars.
//!
//! `Q` wraps an arbitrary-precision rational kept in reduced form with a
//! positive denominator. It is the coefficient domain for every linear form
//! and polynomial in the crate, and serializes as a `"p/q"` string so that
//! emitted JSON is stable and diff-friendly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Q(BigRational::one())
    }

    pub fn from_big(r: BigRational) -> Self {
        Q(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        Q(self.0.recip())
    }

    /// Integer value if the rational is an integer fitting in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Nearest f64, robust against numerator/denominator overflowing f64 range.
    pub fn to_f64(&self) -> f64 {
        let n = self.0.numer();
        let d = self.0.denom();
        if let (Some(nf), Some(df)) = (n.to_f64(), d.to_f64()) {
            if nf.is_finite() && df.is_finite() {
                return nf / df;
            }
        }
        // keep ~53 significant bits of each side and track the binary exponent
        let sn = (n.bits() as i64 - 53).max(0) as u64;
        let sd = (d.bits() as i64 - 53).max(0) as u64;
        let nf = (n >> sn).to_f64().unwrap_or(0.0);
        let df = (d >> sd).to_f64().unwrap_or(1.0);
        (nf / df) * 2f64.powi((sn as i64 - sd as i64) as i32)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let d: BigInt = d.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q(BigRational::new(n, d)))
        } else {
            let n: BigInt = s.parse().map_err(|e| format!("bad integer: {e}"))?;
            Ok(Q(BigRational::from_integer(n)))
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q((self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, rhs: &'a Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(&self.0 / &rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl<'a> Neg for &'a Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, rhs: Q) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Q {
    fn sub_assign(&mut self, rhs: Q) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Q {
    fn mul_assign(&mut self, rhs: Q) {
        self.0 *= rhs.0;
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::int(n)
    }
}

/// Shorthand constructor used throughout tests and builders.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let x = Q::new(4, -6);
        assert_eq!(x.to_string(), "-2/3");
        assert!(x.denom() > &BigInt::from(0));
    }

    #[test]
    fn string_round_trip() {
        for s in ["0", "-7", "89/30", "-13/2"] {
            let x: Q = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn huge_to_f64_is_finite() {
        let mut x = Q::one();
        for k in 1..400 {
            x = x * Q::int(k);
        }
        // 399! overflows f64; the ratio (399!)/(399! - ish) path must stay finite
        let y = x.clone() / (x + Q::one());
        assert!((y.to_f64() - 1.0).abs() < 1e-12);
    }
}

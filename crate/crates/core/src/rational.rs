//! Exact rationals in canonical reduced form.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// An exact rational number `numerator / denominator`.
///
/// The fraction is always reduced with a positive denominator, so two
/// values are equal exactly when their representations are equal. Hashing
/// is therefore safe for exact state tracking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QRational(BigRational);

impl QRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        QRational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        QRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        QRational(BigRational::zero())
    }

    pub fn one() -> Self {
        QRational(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        QRational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        QRational(self.0.recip())
    }

    /// Real floor.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Real ceiling.
    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp >= 0 {
            QRational(num_traits::pow(self.0.clone(), exp as usize))
        } else {
            QRational(num_traits::pow(self.0.recip(), exp.unsigned_abs() as usize))
        }
    }

    /// Nearest `f64`; used only for diagnostics and numeric fallbacks.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // scale down huge operands before dividing
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
                let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for QRational {
    fn from(r: BigRational) -> Self {
        QRational(r)
    }
}

impl From<BigInt> for QRational {
    fn from(n: BigInt) -> Self {
        QRational::from_integer(n)
    }
}

impl From<i64> for QRational {
    fn from(n: i64) -> Self {
        QRational::from_integer(n)
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QRational {
    type Err = ParseError;

    /// Accepts `a`, `a/b`, with an optional leading `-` (or `+`) and
    /// surrounding whitespace. The unicode minus sign is accepted too.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().replace('\u{2212}', "-");
        let bad = || ParseError::Rational(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t.as_str(), "1"),
        };
        let valid = |x: &str, signed: bool| {
            let digits = if signed {
                x.strip_prefix(['-', '+']).unwrap_or(x)
            } else {
                x
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num, true) || !valid(den, false) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(QRational::new(n, d))
    }
}

/// Parses a comma separated list of rationals, e.g. `"-1/2, 3, 5/7"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<QRational>, ParseError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $op:tt) => {
        impl $Trait<QRational> for QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                QRational(self.0 $op rhs.0)
            }
        }
        impl<'a> $Trait<&'a QRational> for QRational {
            type Output = QRational;
            fn $method(self, rhs: &'a QRational) -> QRational {
                QRational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $Trait<QRational> for &'a QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                QRational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $Trait<&'b QRational> for &'a QRational {
            type Output = QRational;
            fn $method(self, rhs: &'b QRational) -> QRational {
                QRational(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Div, div, /);

impl AddAssign<&QRational> for QRational {
    fn add_assign(&mut self, rhs: &QRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&QRational> for QRational {
    fn sub_assign(&mut self, rhs: &QRational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&QRational> for QRational {
    fn mul_assign(&mut self, rhs: &QRational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational(-self.0)
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational(-&self.0)
    }
}

impl Sum for QRational {
    fn sum<I: Iterator<Item = QRational>>(iter: I) -> Self {
        iter.fold(QRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a QRational> for QRational {
    fn sum<I: Iterator<Item = &'a QRational>>(iter: I) -> Self {
        iter.fold(QRational::zero(), |acc, x| acc + x)
    }
}

impl Product for QRational {
    fn product<I: Iterator<Item = QRational>>(iter: I) -> Self {
        iter.fold(QRational::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for QRational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for QRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

/// Shorthand for building rationals in tests and examples.
pub fn q(numer: i64, denom: i64) -> QRational {
    QRational::new(numer, denom)
}

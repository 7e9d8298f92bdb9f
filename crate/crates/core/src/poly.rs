//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::QRational;

/// Coefficients in increasing degree; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<QRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<QRational>) -> Self {
        while coeffs.last().is_some_and(QRational::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: QRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(c: QRational, k: usize) -> Self {
        let mut coeffs = vec![QRational::zero(); k + 1];
        coeffs[k] = c;
        RatPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| QRational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[QRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> QRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> QRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &QRational) -> QRational {
        self.coeffs
            .iter()
            .rev()
            .fold(QRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &QRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![QRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![QRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * QRational::from(i as i64))
                .collect(),
        )
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Rescales to an integer polynomial with coprime coefficients and
    /// positive leading coefficient. Keeps intermediate sizes in check.
    pub fn primitive_rational(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let ints = self.integer_model();
        RatPoly::new(ints.into_iter().map(QRational::from).collect())
    }

    /// The primitive integer model: coefficients scaled to coprime
    /// integers with positive leading coefficient.
    pub fn integer_model(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// `x^n f(1/x)` with `n = deg f`.
    pub fn reversed(&self) -> RatPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        RatPoly::new(c)
    }

    /// `f(c x)`.
    pub fn compose_scale(&self, c: &QRational) -> RatPoly {
        let mut pow = QRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = pow * c;
        }
        RatPoly::new(out)
    }

    /// Number of sign changes in the Sturm sequence at `x`.
    fn sturm_variations(seq: &[RatPoly], x: &QRational) -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|f| f.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| if v.is_negative() { -1 } else { 1 })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&QRational::from(-1)));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &QRational, hi: &QRational) -> usize {
        self.root_counter().count(lo, hi)
    }

    /// A reusable Sturm sequence for repeated root counts.
    pub fn root_counter(&self) -> RootCounter {
        let seq = if self.degree().unwrap_or(0) == 0 { Vec::new() } else { self.sturm_sequence() };
        RootCounter { seq }
    }

    /// Squarefree part `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }
}

pub struct RootCounter {
    seq: Vec<RatPoly>,
}

impl RootCounter {
    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &QRational, hi: &QRational) -> usize {
        if self.seq.is_empty() {
            return 0;
        }
        RatPoly::sturm_variations(&self.seq, lo) - RatPoly::sturm_variations(&self.seq, hi)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || mag != 1;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn division_identity() {
        let f = RatPoly::from_i64(&[-1, 0, 0, 2, 5]);
        let g = RatPoly::new(vec![q(1, 2), q(0, 1), q(3, 1)]);
        let (qu, r) = f.div_rem(&g);
        assert_eq!(qu.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x - 1)(x + 2) and (x - 1)(2x - 3)
        let a = RatPoly::from_i64(&[-2, 1, 1]);
        let b = RatPoly::from_i64(&[3, -5, 2]);
        assert_eq!(a.gcd(&b), RatPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (x - 1)(x + 1)(x - 3)
        let f = RatPoly::from_i64(&[3, -1, -3, 1]);
        assert_eq!(f.count_real_roots(&q(-2, 1), &q(4, 1)), 3);
        assert_eq!(f.count_real_roots(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(f.count_real_roots(&q(1, 1), &q(2, 1)), 0);
        assert_eq!(RatPoly::from_i64(&[1, 0, 1]).count_real_roots(&q(-9, 1), &q(9, 1)), 0);
    }

    #[test]
    fn display() {
        let f = RatPoly::new(vec![q(1, 2), q(1, 2), q(1, 1)]);
        assert_eq!(f.to_string(), "x^2 + 1/2*x + 1/2");
        assert_eq!(RatPoly::from_i64(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn integer_model_is_primitive() {
        let f = RatPoly::new(vec![q(-1, 2), q(1, 3), q(-1, 1)]);
        let m = f.integer_model();
        assert_eq!(m, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(6)]);
    }
}

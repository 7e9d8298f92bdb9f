//! p-adic valuation, absolute value, Artin decomposition and digit windows
//! of rational numbers.
//!
//! Every rational lies in `Q_p`; the routines here are exact and never
//! leave the rationals. A truncated p-adic number is always carried as the
//! exact rational it approximates plus an explicit precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::QRational;

/// A validated prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^k` for `k >= 0`.
    pub fn pow(self, k: u32) -> BigInt {
        num_traits::pow(self.big(), k as usize)
    }

    /// `p^k` as a rational for any integer `k`.
    pub fn qpow(self, k: i64) -> QRational {
        let m = self.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            QRational::from_integer(m)
        } else {
            QRational::new(1, m)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `ν_p`: an integer, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    /// Unwraps a finite valuation; panics on infinity.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("valuation of zero is infinite")
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// The p-adic absolute value `|x|_p = p^exponent`, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadicNorm {
    Zero,
    Power(i64),
}

/// Multiplicity of `p` in a nonzero integer, by repeated exact division.
pub fn multiplicity(n: &BigInt, p: Prime) -> u64 {
    assert!(!n.is_zero());
    let pb = p.big();
    let mut count = 0;
    let mut m = n.clone();
    loop {
        let (quot, rem) = m.div_rem(&pb);
        if !rem.is_zero() {
            return count;
        }
        m = quot;
        count += 1;
    }
}

/// Splits a nonzero integer as `p^k * u` with `p ∤ u`.
fn split_p(n: &BigInt, p: Prime) -> (u64, BigInt) {
    let pb = p.big();
    let mut count = 0;
    let mut m = n.clone();
    loop {
        let (quot, rem) = m.div_rem(&pb);
        if !rem.is_zero() {
            return (count, m);
        }
        m = quot;
        count += 1;
    }
}

/// The p-adic valuation of a rational.
pub fn vp(x: &QRational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let up = multiplicity(x.numer(), p) as i64;
    let down = multiplicity(x.denom(), p) as i64;
    Valuation::Finite(up - down)
}

/// Exponent of the p-adic absolute value: `|x|_p = p^(-ν_p(x))`.
pub fn padic_abs_exponent(x: &QRational, p: Prime) -> PadicNorm {
    match vp(x, p) {
        Valuation::Infinity => PadicNorm::Zero,
        Valuation::Finite(v) => PadicNorm::Power(-v),
    }
}

/// Whether `x` lies in `A_p = Z[1/p]`, i.e. its denominator is a power of `p`.
pub fn in_ap(x: &QRational, p: Prime) -> bool {
    let (_, rest) = split_p(x.denom(), p);
    rest.is_one()
}

/// Inverse of `a` modulo `m` (`gcd(a, m) = 1`), in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let ext = a.mod_floor(m).extended_gcd(m);
    assert!(ext.gcd.is_one(), "{a} is not invertible modulo {m}");
    ext.x.mod_floor(m)
}

/// For `x ∈ Z_p` (ν_p(x) ≥ 0), the residue of `x` modulo `p^k` as an
/// integer in `[0, p^k)`.
pub fn residue_mod_pk(x: &QRational, p: Prime, k: u32) -> BigInt {
    debug_assert!(vp(x, p) >= 0);
    let modulus = p.pow(k);
    if k == 0 {
        return BigInt::zero();
    }
    let inv = mod_inverse(x.denom(), &modulus);
    (x.numer() * inv).mod_floor(&modulus)
}

/// Artin decomposition `x = ⌊x⌋_p + {x}_p`, returned as
/// `(integer_part, fractional_part)`.
///
/// The fractional part lies in `A_p ∩ [0, 1)` with denominator `p^k`,
/// `k = max(0, -ν_p(x))`; the integer part is a p-adic integer.
pub fn artin_decompose(x: &QRational, p: Prime) -> (QRational, QRational) {
    let frac = padic_frac(x, p);
    (x - &frac, frac)
}

/// `{x}_p`, the fractional part of the Artin decomposition.
pub fn padic_frac(x: &QRational, p: Prime) -> QRational {
    if x.is_zero() {
        return QRational::zero();
    }
    let (k, b) = split_p(x.denom(), p);
    if k == 0 {
        return QRational::zero();
    }
    // x = a / (b p^k) with p ∤ b
    let pk = p.pow(k as u32);
    let top = (x.numer() * mod_inverse(&b, &pk)).mod_floor(&pk);
    QRational::new(top, pk)
}

/// `⌊x⌋_p`, the p-adic integer part.
pub fn padic_floor(x: &QRational, p: Prime) -> QRational {
    x - padic_frac(x, p)
}

/// The canonical `A_p` truncation of `x` at precision `prec`: the unique
/// `y ∈ A_p ∩ [0, p^prec)` with `ν_p(x - y) ≥ prec` whose digits below
/// position `ν_p(x)` vanish. Requires `prec` larger than `ν_p(x)` for a
/// nonzero answer; otherwise returns 0.
pub fn truncate(x: &QRational, p: Prime, prec: i64) -> QRational {
    if x.is_zero() {
        return QRational::zero();
    }
    // shift so that the window becomes [0, prec - lo)
    let v = vp(x, p).expect_finite();
    let lo = v.min(0);
    if prec <= lo {
        return QRational::zero();
    }
    let shifted = x * p.qpow(-lo);
    let width = (prec - lo) as u32;
    let r = residue_mod_pk(&shifted, p, width);
    QRational::from_integer(r) * p.qpow(lo)
}

/// p-adic digits `x_n` for `n ∈ [lo, hi]` of the canonical expansion
/// `x = Σ x_n p^n`, returned in increasing position order.
pub fn padic_digits(x: &QRational, p: Prime, lo: i64, hi: i64) -> Result<Vec<u32>> {
    if lo > hi {
        return Err(Error::Window { lo, hi });
    }
    let width = (hi - lo + 1) as usize;
    if x.is_zero() {
        return Ok(vec![0; width]);
    }
    // digits of y = x p^(-lo) at positions 0..width
    let y = x * p.qpow(-lo);
    let int_part = padic_floor(&y, p);
    let mut r = residue_mod_pk(&int_part, p, width as u32);
    let pb = p.big();
    let mut out = Vec::with_capacity(width);
    for _ in 0..width {
        let (quot, rem) = r.div_rem(&pb);
        out.push(rem.to_u32().expect("digit below p"));
        r = quot;
    }
    Ok(out)
}

/// Renders a digit window (increasing position order starting at `lo`)
/// most-significant-left, with `•` at the radix point and a leading `…`
/// when `leading_ellipsis` is set.
pub fn format_digit_window(digits: &[u32], lo: i64, leading_ellipsis: bool) -> String {
    let mut s = String::new();
    if leading_ellipsis {
        s.push('…');
    }
    let hi = lo + digits.len() as i64 - 1;
    for pos in (lo..=hi).rev() {
        let d = digits[(pos - lo) as usize];
        if d < 10 {
            s.push(char::from(b'0' + d as u8));
        } else {
            s.push_str(&format!("({d})"));
        }
        if pos == 0 && lo < 0 {
            s.push('•');
        }
    }
    if lo == 0 {
        s.push('•');
    }
    s
}

/// Renders an `A_p` value as `m/p^k` (or `m` when integral), with `m`
/// not divisible by `p` unless `k = 0`.
pub fn format_ap(x: &QRational, p: Prime) -> String {
    let k = multiplicity(x.denom(), p);
    if k == 0 {
        format!("{}", x.numer())
    } else {
        format!("{}/{}^{}", x.numer(), p, k)
    }
}

//! Pisot-Chabauty / Salem-Chabauty classification of a monic polynomial
//! over `A_p`, the p-adic digits of its dominant root, and a constructor
//! for Pisot-Chabauty bases.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::newton::{dominant_root_report, ValuatedPolynomial};
use crate::padic::{in_ap, truncate, vp, Prime, Valuation};
use crate::poly::RatPoly;
use crate::rational::QRational;
use crate::stability::{is_self_reciprocal, schur_cohn, Region, StabilityVerdict};

/// `x^n - a_1 x^(n-1) - … - a_n` with every `a_i ∈ A_p` and `a_n ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinPoly {
    p: Prime,
    a: Vec<QRational>,
}

impl MinPoly {
    pub fn new(p: Prime, a: Vec<QRational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::ZeroDegree);
        }
        if let Some(bad) = a.iter().find(|x| !in_ap(x, p)) {
            return Err(Error::NotInAp(bad.to_string()));
        }
        if a.last().is_some_and(QRational::is_zero) {
            return Err(Error::VanishingConstant);
        }
        Ok(MinPoly { p, a })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// `a_1, …, a_n`.
    pub fn a(&self) -> &[QRational] {
        &self.a
    }

    /// `a_j` for `1 ≤ j ≤ n`.
    pub fn coeff(&self, j: usize) -> &QRational {
        &self.a[j - 1]
    }

    /// The polynomial in increasing-degree coefficients.
    pub fn poly(&self) -> RatPoly {
        let n = self.degree();
        let mut c: Vec<QRational> = (0..n).map(|i| -&self.a[n - 1 - i]).collect();
        c.push(QRational::one());
        RatPoly::new(c)
    }

    /// `(-a_n, …, -a_1)`: both the coefficient vector tested against `E_n`
    /// and the shift radix parameter attached to the base.
    pub fn archimedean_vector(&self) -> Vec<QRational> {
        self.a.iter().rev().map(|x| -x).collect()
    }

    pub fn vp_a1(&self) -> Valuation {
        vp(&self.a[0], self.p)
    }

    /// `ν_p(a_1) < 0` and `ν_p(a_1) ≤ ν_p(a_j)` for all `j ≥ 2`: the dominant
    /// root is isolated with `|β|_p = |a_1|_p > 1`.
    pub fn has_dominant_coefficient(&self) -> bool {
        match self.vp_a1() {
            Valuation::Finite(v1) if v1 < 0 => {
                self.a[1..].iter().all(|x| vp(x, self.p) >= v1)
            }
            _ => false,
        }
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over Q_{}", self.poly(), self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseClass {
    PisotChabauty,
    SalemChabauty,
    Neither,
}

impl BaseClass {
    pub fn label(self) -> &'static str {
        match self {
            BaseClass::PisotChabauty => "PC",
            BaseClass::SalemChabauty => "SC",
            BaseClass::Neither => "neither",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcVerdict {
    pub class: BaseClass,
    /// `ν_p(β)` of the dominant root, when one exists.
    pub vp_beta: Option<i64>,
    pub stability: StabilityVerdict,
    pub notes: Vec<String>,
}

impl PcVerdict {
    /// `|β|_p`, the size of the digit set, for PC and SC bases.
    pub fn digit_set_size(&self, p: Prime) -> Option<BigInt> {
        match self.class {
            BaseClass::Neither => None,
            _ => self.vp_beta.map(|v| p.pow((-v) as u32)),
        }
    }
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000;

/// Prime factorisation by trial division below the search limit. The
/// flag reports whether the unfactored cofactor might be composite.
fn factor(n: &BigInt) -> (Vec<(BigInt, u32)>, bool) {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= DIVISOR_SEARCH_LIMIT {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            out.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let dl = BigInt::from(DIVISOR_SEARCH_LIMIT);
    let incomplete = m > &dl * &dl;
    if !m.is_one() {
        out.push((m, 1));
    }
    (out, incomplete)
}

fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let (fs, incomplete) = factor(n);
    let mut ds = vec![BigInt::one()];
    for (q, e) in fs {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut acc = d.clone();
            for _ in 0..=e {
                next.push(acc.clone());
                acc *= &q;
            }
        }
        ds = next;
    }
    (ds, incomplete)
}

/// A rational root of `f` by the rational root test on the primitive
/// integer model, plus whether the divisor search was complete.
pub fn find_rational_root(f: &RatPoly) -> (Option<QRational>, bool) {
    let ints = f.integer_model();
    if ints[0].is_zero() {
        return (Some(QRational::zero()), true);
    }
    let (tops, inc_a) = divisors(&ints[0]);
    let (bottoms, inc_b) = divisors(ints.last().expect("nonzero"));
    let mut seen = BTreeSet::new();
    for u in &tops {
        for v in &bottoms {
            for sign in [1, -1] {
                let cand = QRational::new(u * sign, v.clone());
                if seen.insert(cand.clone()) && f.eval(&cand).is_zero() {
                    return (Some(cand), true);
                }
            }
        }
    }
    (None, !(inc_a || inc_b))
}

/// Cheap reducibility certificates: a rational root, or a repeated factor.
pub fn reducibility_certificate(f: &RatPoly) -> (Option<String>, Vec<String>) {
    let mut notes = Vec::new();
    if f.degree().unwrap_or(0) < 2 {
        return (None, notes);
    }
    let (root, complete) = find_rational_root(f);
    if let Some(r) = root {
        return (Some(format!("rational root {r}")), notes);
    }
    if !complete {
        notes.push("rational root search incomplete (large coefficients)".into());
    }
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return (Some(format!("repeated factor {g}")), notes);
    }
    (None, notes)
}

/// Classifies the dominant root of `m` as Pisot-Chabauty, Salem-Chabauty
/// or neither. Irreducibility is only partially checked: inputs with a
/// rational root or a repeated factor are rejected, anything else is
/// taken as attested by the caller.
pub fn classify(m: &MinPoly) -> Result<PcVerdict> {
    let f = m.poly();
    let (reducible, mut notes) = reducibility_certificate(&f);
    if let Some(why) = reducible {
        return Err(Error::Reducible(why));
    }
    if m.degree() >= 2 {
        notes.push("irreducibility: attested".into());
    }

    let stability = schur_cohn(&m.archimedean_vector());
    let dominant = dominant_root_report(&ValuatedPolynomial::from_poly(m.p, &f)?)?;
    let polygon_vp = dominant
        .valuation
        .as_ref()
        .map(|v| v.numer().to_i64().expect("integral valuation"));

    let valuation_ok = m.has_dominant_coefficient();
    if valuation_ok {
        let v1 = m.vp_a1().expect_finite();
        // the polygon must single out one root of valuation ν_p(a_1)
        assert_eq!(polygon_vp, Some(v1), "Newton polygon disagrees for {m}");
    } else {
        match m.vp_a1() {
            Valuation::Finite(v) if v < 0 => {
                notes.push("some |a_j|_p exceeds |a_1|_p".into())
            }
            _ => notes.push("|a_1|_p ≤ 1: no root with |β|_p > 1".into()),
        }
    }

    let class = match (valuation_ok, stability.region) {
        (true, Region::Interior) => BaseClass::PisotChabauty,
        (true, Region::Boundary) if is_self_reciprocal(&f) => BaseClass::SalemChabauty,
        (true, Region::Boundary) => {
            notes.push("roots on the unit circle but not self-reciprocal".into());
            BaseClass::Neither
        }
        (true, Region::Exterior) => {
            notes.push("an archimedean conjugate lies outside the unit circle".into());
            BaseClass::Neither
        }
        (false, _) => BaseClass::Neither,
    };
    if !stability.certified {
        notes.push("unit-circle verdict from numeric fallback".into());
    }
    Ok(PcVerdict {
        class,
        vp_beta: if valuation_ok { m.vp_a1().finite() } else { polygon_vp },
        stability,
        notes,
    })
}

/// Per-step valuation gain of the fixed-point recurrence:
/// `min_(j ≥ 2) (ν_p(a_j) - j ν_p(a_1))`, `None` in degree one.
pub fn contraction_gain(m: &MinPoly) -> Option<i64> {
    let v1 = m.vp_a1().expect_finite();
    m.a[1..]
        .iter()
        .enumerate()
        .filter_map(|(i, x)| vp(x, m.p).finite().map(|v| v - (i as i64 + 2) * v1))
        .min()
}

/// The iterates `α_0 = a_1`, `α_(k+1) = a_1 + a_2/α_k + … + a_n/α_k^(n-1)`,
/// each truncated to precision `work_prec`, until two consecutive iterates
/// agree to `stop_prec`. The last element is the converged value.
pub(crate) fn recurrence(m: &MinPoly, work_prec: i64, stop_prec: i64) -> Vec<QRational> {
    assert!(m.has_dominant_coefficient(), "recurrence needs |a_1|_p dominant");
    let p = m.p;
    let v1 = m.vp_a1().expect_finite();
    let mut iterates = vec![truncate(&m.a[0], p, work_prec)];
    if m.degree() == 1 {
        return iterates;
    }
    let gain = contraction_gain(m).unwrap_or(i64::MAX);
    assert!(gain >= 1, "recurrence is not contracting");
    let max_steps = (work_prec - v1) / gain + 3;
    for _ in 0..max_steps {
        let alpha = iterates.last().expect("nonempty");
        debug_assert_eq!(vp(alpha, p), v1);
        let inv = alpha.recip();
        let mut pow = inv.clone();
        let mut next = m.a[0].clone();
        for aj in &m.a[1..] {
            next += &(aj * &pow);
            pow = pow * &inv;
        }
        let next = truncate(&next, p, work_prec);
        let done = vp(&(&next - alpha), p) >= stop_prec;
        iterates.push(next);
        if done {
            return iterates;
        }
    }
    panic!("fixed-point recurrence failed to converge for {m}");
}

/// An `A_p` value `β̂ ∈ [0, p^precision)` with `ν_p(β - β̂) ≥ precision`
/// for the dominant root `β`, which only needs the p-adic dominance of
/// `a_1`.
pub(crate) fn dominant_root_approx(m: &MinPoly, precision: i64) -> QRational {
    let e = -m.vp_a1().expect_finite();
    let work = precision + e * m.degree() as i64 + 1;
    let it = recurrence(m, work, precision + e);
    truncate(it.last().expect("nonempty"), m.p, precision)
}

/// The p-adic digits of a Pisot-Chabauty number: `β̂ ∈ A_p ∩ [0, p^M)` with
/// `ν_p(β - β̂) ≥ M`.
pub fn beta_digits(m: &MinPoly, precision: u32) -> Result<QRational> {
    let verdict = classify(m)?;
    if verdict.class != BaseClass::PisotChabauty {
        return Err(Error::UnsupportedBase(format!(
            "{m} is {}, not a Pisot-Chabauty number",
            verdict.class.label()
        )));
    }
    Ok(dominant_root_approx(m, precision as i64))
}

/// Scales `p^k x^n + c_(n-1) x^(n-1) + … + c_0` (given the integer lower
/// coefficients `c_0, …, c_(n-1)`) by the least `k ≥ 0` that puts the
/// normalised coefficient vector inside `E_n`. Returns `k` and the
/// resulting minimal polynomial in `a_1, …, a_n` form.
pub fn construct_pc(lower: &[BigInt], p: Prime) -> Result<(u32, MinPoly)> {
    let n = lower.len();
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if lower[0].is_zero() || lower[n - 1].is_zero() {
        return Err(Error::Precondition(
            "constant and subleading coefficients must be nonzero".into(),
        ));
    }
    let lower_q: Vec<QRational> = lower.iter().cloned().map(QRational::from).collect();
    let v_top = vp(&lower_q[n - 1], p);
    if lower_q.iter().any(|c| vp(c, p) < v_top) {
        return Err(Error::Precondition(format!(
            "ν_{p}(c_(n-1)) must not exceed the valuation of any lower coefficient"
        )));
    }
    let mut k = 0u32;
    loop {
        let scale = p.qpow(-(k as i64));
        let r: Vec<QRational> = lower_q.iter().map(|c| c * &scale).collect();
        if schur_cohn(&r).region == Region::Interior {
            let a = r.iter().rev().map(|c| -c).collect();
            return Ok((k, MinPoly::new(p, a)?));
        }
        // (0, …, 0) is interior, so this terminates
        k += 1;
    }
}

/// Parses `a_1..a_n` and builds the minimal polynomial.
pub fn minpoly_from_str(p: u64, a: &str) -> Result<MinPoly> {
    let p = Prime::new(p)?;
    MinPoly::new(p, crate::rational::parse_rational_list(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{format_digit_window, padic_digits};
    use crate::rational::q;

    fn two() -> Prime {
        Prime::new(2).unwrap()
    }

    fn worked_quadratic() -> MinPoly {
        MinPoly::new(two(), vec![q(-1, 2), q(-1, 2)]).unwrap()
    }

    #[test]
    fn minpoly_encoding() {
        let m = worked_quadratic();
        assert_eq!(m.poly(), RatPoly::new(vec![q(1, 2), q(1, 2), q(1, 1)]));
        assert_eq!(m.archimedean_vector(), vec![q(1, 2), q(1, 2)]);
        assert!(MinPoly::new(two(), vec![q(1, 3)]).is_err());
        assert_eq!(MinPoly::new(two(), vec![q(1, 2), q(0, 1)]), Err(Error::VanishingConstant));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&worked_quadratic()).unwrap();
        assert_eq!(v.class, BaseClass::PisotChabauty);
        assert_eq!(v.vp_beta, Some(-1));
        assert_eq!(v.digit_set_size(two()), Some(BigInt::from(2)));

        let v = classify(&MinPoly::new(two(), vec![q(-1, 2)]).unwrap()).unwrap();
        assert_eq!((v.class, v.vp_beta), (BaseClass::PisotChabauty, Some(-1)));

        let v = classify(&MinPoly::new(two(), vec![q(1, 1), q(1, 1)]).unwrap()).unwrap();
        assert_eq!(v.class, BaseClass::Neither);

        let three = Prime::new(3).unwrap();
        let v = classify(&MinPoly::new(three, vec![q(2, 3)]).unwrap()).unwrap();
        assert_eq!(v.class, BaseClass::PisotChabauty);
    }

    #[test]
    fn salem_chabauty_quadratic() {
        // x^2 - x/2 + 1: |β|_2 = 2, archimedean roots on the unit circle
        let m = MinPoly::new(two(), vec![q(1, 2), q(-1, 1)]).unwrap();
        let v = classify(&m).unwrap();
        assert_eq!(v.class, BaseClass::SalemChabauty);
        assert_eq!(v.vp_beta, Some(-1));
    }

    #[test]
    fn classify_rejects_reducible() {
        // x^2 - 5/2 x + 1 = (x - 2)(x - 1/2)
        let m = MinPoly::new(two(), vec![q(5, 2), q(-1, 1)]).unwrap();
        assert!(matches!(classify(&m), Err(Error::Reducible(_))));
        // (x - 1/2)^2
        let m = MinPoly::new(two(), vec![q(1, 1), q(-1, 4)]).unwrap();
        assert!(matches!(classify(&m), Err(Error::Reducible(_))));
    }

    #[test]
    fn non_dominant_valuation() {
        // x^2 - x/2 - 1/4: |a_2|_2 = 4 > |a_1|_2
        let m = MinPoly::new(two(), vec![q(1, 2), q(1, 4)]).unwrap();
        assert_eq!(classify(&m).unwrap().class, BaseClass::Neither);
        // |a_1|_2 = 1
        let m = MinPoly::new(two(), vec![q(1, 1), q(-1, 2)]).unwrap();
        assert_eq!(classify(&m).unwrap().class, BaseClass::Neither);
    }

    #[test]
    fn worked_example_low_digits() {
        let b = beta_digits(&worked_quadratic(), 6).unwrap();
        assert_eq!(b, q(37, 2));
        let d = padic_digits(&b, two(), -1, 4).unwrap();
        assert_eq!(format_digit_window(&d, -1, false), "10010•1");
    }

    #[test]
    fn iterates_keep_valuation() {
        let m = worked_quadratic();
        let it = recurrence(&m, 40, 38);
        assert!(it.len() > 2);
        assert!(it.iter().all(|x| vp(x, two()) == -1));
    }

    #[test]
    fn degree_one_is_exact() {
        let m = MinPoly::new(two(), vec![q(-1, 2)]).unwrap();
        for prec in [1, 5, 30] {
            assert_eq!(beta_digits(&m, prec).unwrap(), truncate(&q(-1, 2), two(), prec as i64));
        }
        assert_eq!(recurrence(&m, 10, 10), vec![truncate(&q(-1, 2), two(), 10)]);
    }

    #[test]
    fn beta_digits_rejects_non_pc() {
        let m = MinPoly::new(two(), vec![q(1, 2), q(-1, 1)]).unwrap();
        assert!(matches!(beta_digits(&m, 8), Err(Error::UnsupportedBase(_))));
    }

    #[test]
    fn construct_examples() {
        let (k, m) = construct_pc(&[BigInt::from(1), BigInt::from(1)], two()).unwrap();
        assert_eq!(k, 1);
        assert_eq!(m.a(), &[q(-1, 2), q(-1, 2)]);
        assert_eq!(classify(&m).unwrap().class, BaseClass::PisotChabauty);

        let three = Prime::new(3).unwrap();
        let (k, m) = construct_pc(&[BigInt::from(-1)], three).unwrap();
        assert_eq!(k, 1);
        assert_eq!(m.a(), &[q(1, 3)]);
        assert_eq!(classify(&m).unwrap().class, BaseClass::PisotChabauty);

        let (k, m) = construct_pc(&[BigInt::from(1), BigInt::from(3)], two()).unwrap();
        assert_eq!(k, 2);
        assert_eq!(m.a(), &[q(-3, 4), q(-1, 4)]);
    }

    #[test]
    fn construct_rejects_bad_valuations() {
        // ν_2(2) = 1 > ν_2(1) = 0
        let r = construct_pc(&[BigInt::from(1), BigInt::from(2)], two());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}

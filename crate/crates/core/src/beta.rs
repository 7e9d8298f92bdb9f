//! Beta-expansions on `Q(β)` for a base `β ∈ Q_p` with `|β|_p > 1`.
//!
//! Elements are stored exactly in the power basis `1, β, …, β^(n-1)`.
//! The only inexact ingredient is `β` itself, which enters through
//! `A_p` truncations `β̂` whose precision is chosen per call so that
//! fractional parts and valuations come out exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_traits::ToPrimitive;

use crate::classify::{classify, dominant_root_approx, BaseClass, MinPoly, PcVerdict};
use crate::error::{Error, Result};
use crate::padic::{in_ap, padic_frac, vp, Prime, Valuation};
use crate::poly::RatPoly;
use crate::rational::QRational;

/// An element `Σ c_i β^i` of `Q(β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BetaElement {
    coords: Vec<QRational>,
}

impl BetaElement {
    pub fn new(coords: Vec<QRational>) -> Self {
        BetaElement { coords }
    }

    pub fn coords(&self) -> &[QRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QRational::is_zero)
    }

    pub fn add(&self, other: &BetaElement) -> BetaElement {
        BetaElement::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &BetaElement) -> BetaElement {
        BetaElement::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &QRational) -> BetaElement {
        BetaElement::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// `self + c` for a rational `c`.
    pub fn add_scalar(&self, c: &QRational) -> BetaElement {
        let mut coords = self.coords.clone();
        coords[0] += c;
        BetaElement::new(coords)
    }

    /// Coordinates all in `A_p`, i.e. the element lies in `A_p[β]`.
    pub fn in_ap_lattice(&self, p: Prime) -> bool {
        self.coords.iter().all(|c| in_ap(c, p))
    }

    pub fn to_string_list(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `T^length(z) = 0`.
    Finite { length: usize },
    /// The state after `preperiod` steps recurs after `period` more.
    EventuallyPeriodic { preperiod: usize, period: usize },
    BudgetExceeded { steps: usize },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Finite { .. } => "finite",
            Verdict::EventuallyPeriodic { .. } => "eventually_periodic",
            Verdict::BudgetExceeded { .. } => "budget_exceeded",
        }
    }
}

/// Result of expanding one element.
///
/// For an input with `ν_p(z) < 0` the orbit is that of `β^(-scale) z`;
/// its first `scale` digits sit before the radix point and are reported
/// in `prepoint_digits`. `preperiod` and `period` count positions in the
/// full digit sequence (prepoint digits first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub input: BetaElement,
    pub scale: usize,
    pub prepoint_digits: Vec<QRational>,
    pub digits: Vec<QRational>,
    pub verdict: Verdict,
    /// Orbit states `T^0, T^1, …` of the scaled input, as visited.
    pub orbit: Vec<BetaElement>,
}

impl ExpansionRecord {
    pub fn orbit_states_seen(&self) -> usize {
        self.orbit.len()
    }

    /// Every digit produced, prepoint digits first.
    pub fn all_digits(&self) -> Vec<QRational> {
        self.prepoint_digits.iter().chain(&self.digits).cloned().collect()
    }

    /// The `i`-th digit (1-based) of the full sequence, extended by zeros
    /// or periodicity; `None` beyond an exhausted budget.
    pub fn digit(&self, i: usize) -> Option<QRational> {
        assert!(i >= 1);
        let len = self.prepoint_digits.len() + self.digits.len();
        let at = |j: usize| {
            if j < self.prepoint_digits.len() {
                self.prepoint_digits[j].clone()
            } else {
                self.digits[j - self.prepoint_digits.len()].clone()
            }
        };
        if i <= len {
            return Some(at(i - 1));
        }
        match self.verdict {
            Verdict::Finite { .. } => Some(QRational::zero()),
            Verdict::EventuallyPeriodic { preperiod, period } => {
                Some(at(preperiod + (i - 1 - preperiod) % period))
            }
            Verdict::BudgetExceeded { .. } => None,
        }
    }

    /// States of the cycle for eventually periodic records.
    pub fn cycle_states(&self) -> &[BetaElement] {
        match self.verdict {
            Verdict::EventuallyPeriodic { preperiod, period } => {
                &self.orbit[preperiod..preperiod + period]
            }
            _ => &[],
        }
    }
}

/// Where verification of a record against its input failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expansion residual check failed at step {step}")]
pub struct Mismatch {
    pub step: usize,
}

/// A base `β` given by its minimal polynomial, with cached truncations.
#[derive(Debug)]
pub struct BetaContext {
    minpoly: MinPoly,
    verdict: PcVerdict,
    e: i64,
    cache: RwLock<BTreeMap<i64, QRational>>,
}

const MIN_CACHED_PRECISION: i64 = 16;

impl BetaContext {
    /// Builds a context for the dominant root of `m`. Pisot-Chabauty
    /// bases get the full set of guarantees; other bases with a dominant
    /// `a_1` are accepted for best-effort iteration.
    pub fn new(m: MinPoly) -> Result<Self> {
        let verdict = classify(&m)?;
        if !m.has_dominant_coefficient() {
            return Err(Error::UnsupportedBase(format!(
                "{m} has no isolated root with |β|_p > 1"
            )));
        }
        let e = -m.vp_a1().expect_finite();
        Ok(BetaContext { minpoly: m, verdict, e, cache: RwLock::new(BTreeMap::new()) })
    }

    pub fn minpoly(&self) -> &MinPoly {
        &self.minpoly
    }

    pub fn class(&self) -> BaseClass {
        self.verdict.class
    }

    pub fn verdict(&self) -> &PcVerdict {
        &self.verdict
    }

    pub fn p(&self) -> Prime {
        self.minpoly.p()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// `e = -ν_p(β)`, so `|β|_p = p^e`.
    pub fn e(&self) -> i64 {
        self.e
    }

    /// The digit set `{0, 1/p^e, …, (p^e - 1)/p^e}`.
    pub fn digit_set(&self) -> Vec<QRational> {
        let den = self.p().pow(self.e as u32);
        let count = den.to_u64().expect("digit set too large to list");
        (0..count).map(|j| QRational::new(j, den.clone())).collect()
    }

    pub fn is_digit(&self, d: &QRational) -> bool {
        !d.is_negative() && *d < 1 && vp(d, self.p()) >= -self.e && in_ap(d, self.p())
    }

    pub fn zero(&self) -> BetaElement {
        BetaElement::new(vec![QRational::zero(); self.degree()])
    }

    pub fn scalar(&self, c: QRational) -> BetaElement {
        let mut z = self.zero();
        z.coords[0] = c;
        z
    }

    /// The element with the given power-basis coordinates.
    pub fn element(&self, coords: Vec<QRational>) -> Result<BetaElement> {
        if coords.len() != self.degree() {
            return Err(Error::Dimension { expected: self.degree(), got: coords.len() });
        }
        Ok(BetaElement::new(coords))
    }

    /// `β^k` for `k ≥ 0`.
    pub fn beta_power(&self, k: usize) -> BetaElement {
        (0..k).fold(self.scalar(QRational::one()), |z, _| self.mul_by_beta(&z))
    }

    /// Multiplication by `β`, reducing with `β^n = a_1 β^(n-1) + … + a_n`.
    pub fn mul_by_beta(&self, z: &BetaElement) -> BetaElement {
        let n = self.degree();
        let top = &z.coords[n - 1];
        let mut out = Vec::with_capacity(n);
        out.push(top * self.minpoly.coeff(n));
        for j in 1..n {
            out.push(&z.coords[j - 1] + top * self.minpoly.coeff(n - j));
        }
        BetaElement::new(out)
    }

    /// Division by `β`, the inverse of [`Self::mul_by_beta`].
    pub fn div_by_beta(&self, z: &BetaElement) -> BetaElement {
        let n = self.degree();
        let top = &z.coords[0] / self.minpoly.coeff(n);
        let mut out = vec![QRational::zero(); n];
        for j in 1..n {
            out[j - 1] = &z.coords[j] - &top * self.minpoly.coeff(n - j);
        }
        out[n - 1] = top;
        BetaElement::new(out)
    }

    /// Multiplication of two elements.
    pub fn mul(&self, x: &BetaElement, y: &BetaElement) -> BetaElement {
        let mut acc = self.zero();
        let mut pow = y.clone();
        for c in &x.coords {
            acc = acc.add(&pow.scale(c));
            pow = self.mul_by_beta(&pow);
        }
        acc
    }

    /// Reduces a polynomial in `β` to power-basis coordinates.
    pub fn eval_poly(&self, f: &RatPoly) -> BetaElement {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul_by_beta(&acc).add_scalar(c);
        }
        acc
    }

    /// `β̂` with `ν_p(β - β̂) ≥ precision`. Cached at power-of-two
    /// precisions; concurrent callers may both compute an entry, which is
    /// harmless since the value is a function of the key.
    pub fn beta_approx(&self, precision: i64) -> QRational {
        let key = precision.max(MIN_CACHED_PRECISION).next_power_of_two_i64();
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        let v = dominant_root_approx(&self.minpoly, key);
        self.cache.write().expect("cache poisoned").entry(key).or_insert(v).clone()
    }

    /// `Σ c_i β̂^i` with `β̂` at the given precision.
    fn eval_approx(&self, z: &BetaElement, precision: i64) -> QRational {
        let b = self.beta_approx(precision);
        z.coords.iter().rev().fold(QRational::zero(), |acc, c| acc * &b + c)
    }

    /// Lower bound on `ν_p(z - ẑ)` when `ẑ` uses `β̂` of this precision:
    /// `ν_p(β^i - β̂^i) ≥ M - (i-1) e` for `i ≥ 1`.
    fn error_bound(&self, z: &BetaElement, precision: i64) -> Valuation {
        z.coords
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, c)| {
                vp(c, self.p()).finite().map(|v| v + precision - (i as i64 - 1) * self.e)
            })
            .min()
            .map_or(Valuation::Infinity, Valuation::Finite)
    }

    /// Smallest precision making the evaluation error a p-adic integer
    /// with positive valuation.
    fn frac_precision(&self, z: &BetaElement) -> i64 {
        z.coords
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, c)| {
                vp(c, self.p()).finite().map(|v| 1 + (i as i64 - 1) * self.e - v)
            })
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// `{z}_p`, exactly.
    pub fn frac_p_elem(&self, z: &BetaElement) -> QRational {
        let m = self.frac_precision(z);
        padic_frac(&self.eval_approx(z, m), self.p())
    }

    /// `{z}_p` evaluated with `β̂` at an explicit precision, for checking
    /// that the result does not depend on it.
    pub fn frac_p_elem_at(&self, z: &BetaElement, precision: i64) -> QRational {
        assert!(precision >= self.frac_precision(z));
        padic_frac(&self.eval_approx(z, precision), self.p())
    }

    /// `ν_p(z)`, exactly. The zero test is structural.
    pub fn elem_vp(&self, z: &BetaElement) -> Valuation {
        if z.is_zero() {
            return Valuation::Infinity;
        }
        let mut m = self.frac_precision(z).max(MIN_CACHED_PRECISION);
        loop {
            let approx = self.eval_approx(z, m);
            let v = vp(&approx, self.p());
            if v < self.error_bound(z, m) {
                return v;
            }
            m *= 2;
        }
    }

    fn step_unchecked(&self, z: &BetaElement) -> (QRational, BetaElement) {
        let w = self.mul_by_beta(z);
        let d = self.frac_p_elem(&w);
        let next = w.add_scalar(&-&d);
        (d, next)
    }

    /// One step of the beta-transformation: `βz = d + T(z)` with
    /// `d = {βz}_p` and `T(z) = ⌊βz⌋_p`.
    pub fn t_step(&self, z: &BetaElement) -> Result<(QRational, BetaElement)> {
        match self.elem_vp(z) {
            Valuation::Finite(v) if v < 0 => Err(Error::NotPAdicInteger(v)),
            _ => Ok(self.step_unchecked(z)),
        }
    }

    /// `T^k(z)`.
    pub fn t_power(&self, z: &BetaElement, k: usize) -> Result<BetaElement> {
        let mut cur = z.clone();
        for _ in 0..k {
            cur = self.t_step(&cur)?.1;
        }
        Ok(cur)
    }

    /// Least `n₀ ≥ 0` with `ν_p(β^(-n₀) z) ≥ 0`.
    pub fn scaling_exponent(&self, z: &BetaElement) -> usize {
        match self.elem_vp(z) {
            Valuation::Finite(v) if v < 0 => ((-v + self.e - 1) / self.e) as usize,
            _ => 0,
        }
    }

    /// Expands `z`, iterating the beta-transformation with exact state
    /// tracking for at most `max_steps` steps.
    pub fn expand(&self, z: &BetaElement, max_steps: usize) -> ExpansionRecord {
        let scale = self.scaling_exponent(z);
        let mut state = (0..scale).fold(z.clone(), |acc, _| self.div_by_beta(&acc));
        let mut seen: HashMap<BetaElement, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut orbit = Vec::new();
        let verdict = loop {
            let k = orbit.len();
            if state.is_zero() {
                orbit.push(state);
                break Verdict::Finite { length: k };
            }
            if let Some(&j) = seen.get(&state) {
                break Verdict::EventuallyPeriodic { preperiod: j, period: k - j };
            }
            if k == max_steps {
                orbit.push(state);
                break Verdict::BudgetExceeded { steps: k };
            }
            seen.insert(state.clone(), k);
            let (d, next) = self.step_unchecked(&state);
            orbit.push(state);
            digits.push(d);
            state = next;
        };
        let after = digits.split_off(scale.min(digits.len()));
        ExpansionRecord {
            input: z.clone(),
            scale,
            prepoint_digits: digits,
            digits: after,
            verdict,
            orbit,
        }
    }

    /// Checks `β^k (z' - Σ_(i ≤ k) d_i β^(-i))` for `k = 1..=max_k`, where
    /// `z' = β^(-scale) z`: it must be a p-adic integer, must equal the
    /// recorded orbit state where one is recorded, and must vanish once a
    /// finite expansion is exhausted. The residual is assembled from
    /// powers of `β` rather than by replaying the transformation.
    pub fn verify_expansion(
        &self,
        rec: &ExpansionRecord,
        max_k: usize,
    ) -> std::result::Result<(), Mismatch> {
        let start = (0..rec.scale).fold(rec.input.clone(), |acc, _| self.div_by_beta(&acc));
        let mut scaled = start;
        let mut digit_poly: Vec<QRational> = Vec::new();
        for k in 1..=max_k {
            let d = match rec.digit(k) {
                Some(d) => d,
                None => break,
            };
            if !self.is_digit(&d) {
                return Err(Mismatch { step: k });
            }
            scaled = self.mul_by_beta(&scaled);
            // Σ_(i ≤ k) d_i x^(k - i), coefficients in increasing degree
            digit_poly.insert(0, d);
            let residual = scaled.sub(&self.eval_poly(&RatPoly::new(digit_poly.clone())));
            if let Some(state) = rec.orbit.get(k) {
                if *state != residual {
                    return Err(Mismatch { step: k });
                }
            }
            if self.elem_vp(&residual) < 0 {
                return Err(Mismatch { step: k });
            }
            if let Verdict::Finite { length } = rec.verdict {
                if k >= length && !residual.is_zero() {
                    return Err(Mismatch { step: k });
                }
            }
        }
        Ok(())
    }

    /// Compares the expansion of `T^k(z)` with the expansion of `z` shifted
    /// by `k`, on every position both records determine.
    pub fn shift_conjugacy_check(&self, z: &BetaElement, k: usize, budget: usize) -> Result<bool> {
        let shifted = self.t_power(z, k)?;
        let full = self.expand(z, budget);
        let tail = self.expand(&shifted, budget);
        for i in 1..=budget {
            match (full.digit(k + i), tail.digit(i)) {
                (Some(a), Some(b)) if a != b => return Ok(false),
                (Some(_), Some(_)) => {}
                _ => break,
            }
        }
        Ok(true)
    }

    /// The basis `v_j = β^(n-j) - a_1 β^(n-j-1) - … - a_(n-j)`, `j = 1..n`.
    pub fn v_basis(&self) -> Vec<BetaElement> {
        let n = self.degree();
        (1..=n)
            .map(|j| {
                let mut c = vec![QRational::zero(); n];
                c[n - j] = QRational::one();
                for i in 1..=n - j {
                    c[n - j - i] = -self.minpoly.coeff(i);
                }
                BetaElement::new(c)
            })
            .collect()
    }

    /// Checks `β^j v_j = a_(n-j+1) β^(j-1) + … + a_n` for every `j`.
    pub fn v_basis_consistent(&self) -> bool {
        let n = self.degree();
        self.v_basis().iter().enumerate().all(|(idx, v)| {
            let j = idx + 1;
            let lhs = (0..j).fold(v.clone(), |acc, _| self.mul_by_beta(&acc));
            let mut c = vec![QRational::zero(); n];
            for i in 1..=j {
                c[j - i] = self.minpoly.coeff(n - j + i).clone();
            }
            lhs == BetaElement::new(c)
        })
    }

    /// Coordinates with respect to the `v` basis.
    pub fn to_v_coords(&self, z: &BetaElement) -> Vec<QRational> {
        let n = self.degree();
        let basis = self.v_basis();
        let mut rest = z.clone();
        let mut w = vec![QRational::zero(); n];
        // v_j has leading term β^(n-j)
        for d in (0..n).rev() {
            let j = n - d;
            let c = rest.coords[d].clone();
            if !c.is_zero() {
                rest = rest.sub(&basis[j - 1].scale(&c));
            }
            w[j - 1] = c;
        }
        debug_assert!(rest.is_zero());
        w
    }

    pub fn from_v_coords(&self, w: &[QRational]) -> BetaElement {
        self.v_basis()
            .iter()
            .zip(w)
            .fold(self.zero(), |acc, (v, c)| acc.add(&v.scale(c)))
    }

    /// The beta-transformation in `v` coordinates:
    /// `(w_1, …, w_n) ↦ (w_2, …, w_n, U - {U + V}_p)` with
    /// `U = a_n w_1 + … + a_1 w_n` and `V = v_1 w_2 + … + v_(n-1) w_n`.
    pub fn sigma_step(&self, w: &[QRational]) -> Result<(QRational, Vec<QRational>)> {
        let n = self.degree();
        if w.len() != n {
            return Err(Error::Dimension { expected: n, got: w.len() });
        }
        let u: QRational = (0..n).map(|i| self.minpoly.coeff(n - i) * &w[i]).sum();
        let basis = self.v_basis();
        let v = (1..n).fold(self.zero(), |acc, i| acc.add(&basis[i - 1].scale(&w[i])));
        let d = self.frac_p_elem(&v.add_scalar(&u));
        let mut next = w[1..].to_vec();
        next.push(u - &d);
        Ok((d, next))
    }

    /// The polynomial that `β` satisfies by virtue of the expansion of 1:
    /// `x^k - Σ_(i ≤ k) d_i x^(k-i)` for a finite expansion of length `k`,
    /// and `(x^ℓ - 1)(x^k - Σ_(i ≤ k) d_i x^(k-i)) - Σ_(i ≤ ℓ) d_(k+i) x^(ℓ-i)`
    /// for preperiod `k` and period `ℓ`.
    pub fn period_polynomial(&self, rec: &ExpansionRecord) -> Result<RatPoly> {
        if rec.input != self.scalar(QRational::one()) {
            return Err(Error::UnsupportedBase("period polynomial needs the expansion of 1".into()));
        }
        let digits = rec.all_digits();
        let head = |k: usize| {
            let mut c: Vec<QRational> = digits[..k].iter().rev().map(|d| -d).collect();
            c.push(QRational::one());
            RatPoly::new(c)
        };
        match rec.verdict {
            Verdict::Finite { length } => Ok(head(length)),
            Verdict::EventuallyPeriodic { preperiod, period } => {
                let cyc = RatPoly::monomial(QRational::one(), period)
                    .sub(&RatPoly::constant(QRational::one()));
                let tail: Vec<QRational> =
                    digits[preperiod..preperiod + period].iter().rev().cloned().collect();
                Ok(cyc.mul(&head(preperiod)).sub(&RatPoly::new(tail)))
            }
            Verdict::BudgetExceeded { .. } => Err(Error::UnsupportedBase(
                "expansion of 1 not resolved within budget".into(),
            )),
        }
    }

    /// `ν_p(f(β̂))` meets the bound implied by `f(β) = 0` at the given
    /// precision.
    pub fn root_check(&self, f: &RatPoly, precision: i64) -> bool {
        let b = self.beta_approx(precision);
        let value = f.eval(&b);
        let as_elem = BetaElement::new(
            std::iter::once(QRational::zero())
                .chain(f.coeffs().iter().skip(1).cloned())
                .collect(),
        );
        // error bound as for an element with these coordinates, using the
        // cached precision actually served
        let served = precision.max(MIN_CACHED_PRECISION).next_power_of_two_i64();
        vp(&value, self.p()) >= self.error_bound(&as_elem, served)
    }
}

trait NextPow2 {
    fn next_power_of_two_i64(self) -> i64;
}

impl NextPow2 for i64 {
    fn next_power_of_two_i64(self) -> i64 {
        (self.max(1) as u64).next_power_of_two() as i64
    }
}

//! Shift radix systems `τ̃_r(z) = (z_2, …, z_n, -⌊r·z⌋)` on `Z^n`, a
//! decision procedure for the set `D_n^0` of parameters whose orbits all
//! end in `0`, the finiteness certifier built on it, and a rasterizer for
//! the two-dimensional parameter plane.

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::beta::{BetaContext, BetaElement};
use crate::classify::{BaseClass, MinPoly};
use crate::error::{Error, Result};
use crate::padic::vp;
use crate::poly::RatPoly;
use crate::rational::QRational;
use crate::stability::{schur_cohn, Region};

pub type State = Vec<i64>;

/// A rational parameter `r = (r_1, …, r_n)` stored over a common
/// denominator so that `r·z` is an exact integer quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrsParameter {
    r: Vec<QRational>,
    numer: Vec<i64>,
    denom: i64,
}

impl SrsParameter {
    pub fn new(r: Vec<QRational>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let lcm = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let denom = lcm.to_i64().ok_or(Error::Overflow)?;
        let numer = r
            .iter()
            .map(|c| (c.numer() * (&lcm / c.denom())).to_i64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(SrsParameter { r, numer, denom })
    }

    pub fn r(&self) -> &[QRational] {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// `x^n + r_n x^(n-1) + … + r_1`.
    pub fn char_poly(&self) -> RatPoly {
        let mut c = self.r.clone();
        c.push(QRational::one());
        RatPoly::new(c)
    }

    fn check(&self, z: &[i64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: z.len() });
        }
        Ok(())
    }

    /// `(numerator of r·z over denom)`, checked.
    fn dot(&self, z: &[i64]) -> Option<i128> {
        self.numer
            .iter()
            .zip(z)
            .try_fold(0i128, |acc, (&a, &b)| acc.checked_add(a as i128 * b as i128))
    }

    fn shift(z: &[i64], last: i128) -> Option<State> {
        let last = i64::try_from(last).ok()?;
        let mut out = Vec::with_capacity(z.len());
        out.extend_from_slice(&z[1..]);
        out.push(last);
        Some(out)
    }

    fn tilde_raw(&self, z: &[i64]) -> Option<State> {
        let s = self.dot(z)?;
        Self::shift(z, -s.div_euclid(self.denom as i128))
    }

    fn ceil_raw(&self, z: &[i64]) -> Option<State> {
        let s = self.dot(z)?;
        Self::shift(z, s.checked_neg()?.div_euclid(self.denom as i128))
    }

    /// `−τ̃(−z)`, the second generator of the witness closure.
    fn mirrored(&self, z: &[i64]) -> Option<State> {
        let neg: State = z.iter().map(|x| x.checked_neg()).collect::<Option<_>>()?;
        self.tilde_raw(&neg)?.into_iter().map(|x| x.checked_neg()).collect()
    }
}

/// `τ̃_r(z) = (z_2, …, z_n, -⌊r·z⌋)`.
pub fn tau_tilde(r: &SrsParameter, z: &[i64]) -> Result<State> {
    r.check(z)?;
    r.tilde_raw(z).ok_or(Error::Overflow)
}

/// `τ_r(z) = (z_2, …, z_n, -⌈r·z⌉)`.
pub fn tau(r: &SrsParameter, z: &[i64]) -> Result<State> {
    r.check(z)?;
    r.ceil_raw(z).ok_or(Error::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrsMap {
    Tilde,
    Ceil,
}

impl SrsMap {
    pub fn apply(self, r: &SrsParameter, z: &[i64]) -> Result<State> {
        match self {
            SrsMap::Tilde => tau_tilde(r, z),
            SrsMap::Ceil => tau(r, z),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orbit {
    ReachesZero(usize),
    /// The state at step `entry` recurs after `length` steps.
    Cycle { entry: usize, length: usize, states: Vec<State> },
    CapExceeded,
}

/// Iterates `map` from `z` until `0`, a repeated state, or `cap` steps.
pub fn orbit(map: SrsMap, r: &SrsParameter, z: &[i64], cap: usize) -> Result<Orbit> {
    r.check(z)?;
    let mut seen: HashMap<State, usize> = HashMap::new();
    let mut path: Vec<State> = Vec::new();
    let mut cur = z.to_vec();
    for k in 0..=cap {
        if cur.iter().all(|&x| x == 0) {
            return Ok(Orbit::ReachesZero(k));
        }
        if let Some(&entry) = seen.get(&cur) {
            return Ok(Orbit::Cycle { entry, length: k - entry, states: path[entry..].to_vec() });
        }
        if k == cap {
            break;
        }
        seen.insert(cur.clone(), k);
        let next = map.apply(r, &cur)?;
        path.push(std::mem::replace(&mut cur, next));
    }
    Ok(Orbit::CapExceeded)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SrsStatus {
    Member,
    NonMember,
    Unknown,
}

impl SrsStatus {
    pub fn label(self) -> &'static str {
        match self {
            SrsStatus::Member => "member",
            SrsStatus::NonMember => "non_member",
            SrsStatus::Unknown => "unknown",
        }
    }

    /// Grey level in the rasterized picture.
    pub fn pixel(self) -> u8 {
        match self {
            SrsStatus::Member => 0,
            SrsStatus::NonMember => 255,
            SrsStatus::Unknown => 128,
        }
    }
}

/// Why a parameter is not in `D_n^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `start` runs into a cycle of `τ̃_r` that avoids `0`.
    Cycle { start: State, cycle: Vec<State> },
    /// The orbit of `start` reaches `state` after `steps` steps, where the
    /// linear form attached to a real eigenvalue `|λ| > 1` exceeds
    /// `1/(|λ| - 1)` in absolute value; from there it grows without bound.
    Divergent { start: State, steps: usize, state: State },
}

impl Witness {
    pub fn start(&self) -> &State {
        match self {
            Witness::Cycle { start, .. } | Witness::Divergent { start, .. } => start,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SrsStats {
    pub witness_set_size: usize,
    pub max_orbit_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrsVerdict {
    pub status: SrsStatus,
    pub witness: Option<Witness>,
    pub stats: SrsStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrsCaps {
    pub witness: usize,
    pub orbit: usize,
}

impl Default for SrsCaps {
    fn default() -> Self {
        SrsCaps { witness: 1_000_000, orbit: 100_000 }
    }
}

fn unit_vectors(n: usize) -> Vec<State> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![0; n];
            e[i] = s;
            out.push(e);
        }
    }
    out
}

/// Decides `r ∈ D_n^0` by the witness-set method: the smallest set `V`
/// containing `±e_i` and closed under `τ̃_r` and `z ↦ -τ̃_r(-z)`. If `V` is
/// finite and every element reaches `0`, all of `Z^n` does. A cycle
/// avoiding `0` or a certified divergent orbit refutes membership. Caps
/// only ever turn an answer into `Unknown`.
pub fn d0_test(r: &SrsParameter, witness_cap: usize, orbit_cap: usize) -> SrsVerdict {
    let n = r.dim();
    let mut stats = SrsStats::default();

    // cheap refutation: a cycle in the orbit of some ±e_i
    for e in unit_vectors(n) {
        if let Ok(Orbit::Cycle { states, entry, length }) =
            orbit(SrsMap::Tilde, r, &e, orbit_cap.min(witness_cap))
        {
            stats.max_orbit_length = stats.max_orbit_length.max(entry + length);
            return SrsVerdict {
                status: SrsStatus::NonMember,
                witness: Some(Witness::Cycle { start: e, cycle: states }),
                stats,
            };
        }
    }

    // a root outside the unit circle only counts once an orbit is seen to
    // escape; the certificate itself is dynamical
    if let Some(witness) = divergence_witness(r, orbit_cap) {
        return SrsVerdict { status: SrsStatus::NonMember, witness: Some(witness), stats };
    }

    match closure(r, witness_cap) {
        Some(v) => decide_on_closure(r, v, orbit_cap, stats),
        None => {
            stats.witness_set_size = witness_cap;
            SrsVerdict { status: SrsStatus::Unknown, witness: None, stats }
        }
    }
}

/// Breadth-first closure of `±e_i`; `None` past the cap or on overflow.
fn closure(r: &SrsParameter, cap: usize) -> Option<Vec<State>> {
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut nodes: Vec<State> = Vec::new();
    for e in unit_vectors(r.dim()) {
        index.insert(e.clone(), nodes.len());
        nodes.push(e);
    }
    let mut head = 0;
    while head < nodes.len() {
        let z = nodes[head].clone();
        head += 1;
        for next in [r.tilde_raw(&z)?, r.mirrored(&z)?] {
            if !index.contains_key(&next) {
                if nodes.len() >= cap {
                    return None;
                }
                index.insert(next.clone(), nodes.len());
                nodes.push(next);
            }
        }
    }
    Some(nodes)
}

fn decide_on_closure(
    r: &SrsParameter,
    nodes: Vec<State>,
    orbit_cap: usize,
    mut stats: SrsStats,
) -> SrsVerdict {
    stats.witness_set_size = nodes.len();
    let index: HashMap<&State, usize> = nodes.iter().enumerate().map(|(i, z)| (z, i)).collect();
    // V is closed under τ̃, so every successor is in the index
    let succ: Vec<usize> = nodes
        .iter()
        .map(|z| index[&r.tilde_raw(z).expect("closure computed without overflow")])
        .collect();
    let zero = nodes.iter().position(|z| z.iter().all(|&x| x == 0));

    // depth[i] = steps to reach 0, filled by walking each unresolved path
    const UNSEEN: usize = usize::MAX;
    const ON_PATH: usize = usize::MAX - 1;
    let mut depth = vec![UNSEEN; nodes.len()];
    if let Some(z0) = zero {
        depth[z0] = 0;
    }
    for start in 0..nodes.len() {
        let mut path = Vec::new();
        let mut cur = start;
        while depth[cur] == UNSEEN {
            depth[cur] = ON_PATH;
            path.push(cur);
            cur = succ[cur];
        }
        if depth[cur] == ON_PATH {
            let pos = path.iter().position(|&i| i == cur).expect("cycle on current path");
            return SrsVerdict {
                status: SrsStatus::NonMember,
                witness: Some(Witness::Cycle {
                    start: nodes[start].clone(),
                    cycle: path[pos..].iter().map(|&i| nodes[i].clone()).collect(),
                }),
                stats,
            };
        }
        let mut d = depth[cur];
        for &i in path.iter().rev() {
            d += 1;
            depth[i] = d;
        }
        stats.max_orbit_length = stats.max_orbit_length.max(d);
    }
    let status = if stats.max_orbit_length > orbit_cap { SrsStatus::Unknown } else { SrsStatus::Member };
    SrsVerdict { status, witness: None, stats }
}

/// Closed rational interval.
#[derive(Clone, Debug)]
struct Interval {
    lo: QRational,
    hi: QRational,
}

impl Interval {
    fn point(x: QRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn sub_point(&self, x: &QRational) -> Self {
        Interval { lo: &self.lo - x, hi: &self.hi - x }
    }

    fn add(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn scale(&self, k: i64) -> Self {
        let (a, b) = (&self.lo * QRational::from(k), &self.hi * QRational::from(k));
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Division by an interval not containing zero.
    fn div(&self, d: &Interval) -> Self {
        let cands = [
            &self.lo / &d.lo,
            &self.lo / &d.hi,
            &self.hi / &d.lo,
            &self.hi / &d.hi,
        ];
        Interval {
            lo: cands.iter().min().expect("nonempty").clone(),
            hi: cands.iter().max().expect("nonempty").clone(),
        }
    }

    /// Smallest absolute value over the interval.
    fn min_abs(&self) -> QRational {
        if self.lo.is_negative() && !self.hi.is_negative() && !self.hi.is_zero() {
            QRational::zero()
        } else if self.hi <= 0 {
            self.hi.abs()
        } else {
            self.lo.abs()
        }
    }
}

/// An isolating interval for a real root `λ` of `f` with `|λ| > 1` and
/// the largest modulus among real roots, refined to width `2^-bits`.
fn dominant_real_root(f: &RatPoly, bits: u32) -> Option<Interval> {
    let f = f.squarefree_part();
    let bound = QRational::one()
        + f.coeffs().iter().map(QRational::abs).max().expect("nonzero") / f.leading().abs();
    let one = QRational::one();
    let sturm = f.root_counter();
    let isolate = |mut lo: QRational, mut hi: QRational| -> Option<(QRational, QRational)> {
        // keep the outermost root: shrink towards the end away from 0
        let positive = lo >= 0;
        if sturm.count(&lo, &hi) == 0 {
            return None;
        }
        loop {
            if sturm.count(&lo, &hi) == 1 {
                return Some((lo, hi));
            }
            let mid = (&lo + &hi) * QRational::new(1, 2);
            let outer = if positive { (mid.clone(), hi.clone()) } else { (lo.clone(), mid.clone()) };
            if sturm.count(&outer.0, &outer.1) > 0 {
                (lo, hi) = outer;
            } else if positive {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    };
    let pos = isolate(one.clone(), bound.clone());
    let neg = isolate(-bound, -one.clone());
    let (mut lo, mut hi) = match (pos, neg) {
        (Some(p), Some(n)) => {
            if p.1.abs() >= n.0.abs() {
                p
            } else {
                n
            }
        }
        (Some(p), None) => p,
        (None, Some(n)) => n,
        (None, None) => return None,
    };
    // (lo, hi] holds exactly one root; the right end may be the root itself
    if f.eval(&hi).is_zero() {
        return (hi.abs() > one).then(|| Interval::point(hi));
    }
    let width = QRational::new(1, BigInt::one() << bits);
    let sign_hi = f.eval(&hi).is_negative();
    while &hi - &lo > width {
        let mid = (&lo + &hi) * QRational::new(1, 2);
        let v = f.eval(&mid);
        if v.is_zero() {
            return (mid.abs() > one).then(|| Interval::point(mid));
        }
        if v.is_negative() == sign_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let iv = Interval { lo, hi };
    (iv.min_abs() > one).then_some(iv)
}

/// Searches the orbits of `±e_i` for a point past which the orbit
/// provably diverges. With `w` the left eigenvector of the companion map
/// for a real eigenvalue `λ` (normalized by `w_n = 1`),
/// `L(τ̃(z)) = λ L(z) + ε` with `ε ∈ [0, 1)`, so `|L(z)| > 1/(|λ| - 1)`
/// forces `|L|` to grow geometrically and the orbit never meets `0`.
fn divergence_witness(r: &SrsParameter, orbit_cap: usize) -> Option<Witness> {
    if schur_cohn(r.r()).region != Region::Exterior {
        return None;
    }
    let lambda = dominant_real_root(&r.char_poly(), 32)?;
    let n = r.dim();
    let mut w = vec![Interval::point(QRational::zero()); n];
    w[n - 1] = Interval::point(QRational::one());
    // λ w_1 = -r_1, λ w_j = w_(j-1) - r_j
    let mut prev = Interval::point(QRational::zero());
    for j in 0..n - 1 {
        w[j] = prev.sub_point(&r.r()[j]).div(&lambda);
        prev = w[j].clone();
    }
    let abs_lo = lambda.min_abs();
    let threshold = (abs_lo - QRational::one()).recip();

    for e in unit_vectors(n) {
        let mut z = e.clone();
        for step in 0..=orbit_cap {
            if z.iter().all(|&x| x == 0) {
                break;
            }
            let l = w
                .iter()
                .zip(&z)
                .fold(Interval::point(QRational::zero()), |acc, (wi, &zi)| acc.add(&wi.scale(zi)));
            if l.min_abs() > threshold {
                return Some(Witness::Divergent { start: e, steps: step, state: z });
            }
            match r.tilde_raw(&z) {
                Some(next) => z = next,
                None => break,
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinFailure {
    NotPc(BaseClass),
    /// Some `|a_i|_p` with `i ≥ 2` is not strictly below `|a_1|_p`.
    Valuation { index: usize },
    /// `-a ∉ D_n^0`. `element` has an infinite expansion: its
    /// `v`-coordinates are the negated SRS witness start.
    Srs { witness: Witness, element: BetaElement },
}

impl FinFailure {
    pub fn label(&self) -> &'static str {
        match self {
            FinFailure::NotPc(_) => "not_pc",
            FinFailure::Valuation { .. } => "valuation",
            FinFailure::Srs { .. } => "srs",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinVerdict {
    Holds,
    Fails(FinFailure),
    Unknown(SrsVerdict),
}

impl FinVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FinVerdict::Holds => "F_holds",
            FinVerdict::Fails(_) => "F_fails",
            FinVerdict::Unknown(_) => "unknown",
        }
    }
}

/// Certifies the finiteness property `Fin(β) = A_p[β^-1] ∩ Z_p` from a
/// Pisot-Chabauty base, the strict dominance `|a_i|_p < |a_1|_p` for
/// `i ≥ 2`, and `-a = (-a_n, …, -a_1) ∈ D_n^0`.
pub fn fin_certify(m: &MinPoly, caps: SrsCaps) -> Result<FinVerdict> {
    let ctx = BetaContext::new(m.clone());
    let ctx = match ctx {
        Ok(c) if c.class() == BaseClass::PisotChabauty => c,
        Ok(c) => return Ok(FinVerdict::Fails(FinFailure::NotPc(c.class()))),
        Err(Error::UnsupportedBase(_)) => {
            return Ok(FinVerdict::Fails(FinFailure::NotPc(BaseClass::Neither)))
        }
        Err(e) => return Err(e),
    };
    let v1 = m.vp_a1();
    if let Some(index) = (2..=m.degree()).find(|&i| vp(m.coeff(i), m.p()) <= v1) {
        return Ok(FinVerdict::Fails(FinFailure::Valuation { index }));
    }
    let r = SrsParameter::new(m.archimedean_vector())?;
    let verdict = d0_test(&r, caps.witness, caps.orbit);
    Ok(match verdict.status {
        SrsStatus::Member => FinVerdict::Holds,
        SrsStatus::NonMember => {
            let witness = verdict.witness.expect("non-member carries a witness");
            let coords: Vec<QRational> =
                witness.start().iter().map(|&x| QRational::from(-x)).collect();
            let element = ctx.from_v_coords(&coords);
            FinVerdict::Fails(FinFailure::Srs { witness, element })
        }
        SrsStatus::Unknown => FinVerdict::Unknown(verdict),
    })
}

/// A rectangle `[x0, x1] × [y0, y1]` of the `(r_1, r_2)` plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterBox {
    pub x0: QRational,
    pub x1: QRational,
    pub y0: QRational,
    pub y1: QRational,
}

impl Default for RasterBox {
    fn default() -> Self {
        RasterBox {
            x0: QRational::from(-1),
            x1: QRational::from(1),
            y0: QRational::from(-2),
            y1: QRational::from(2),
        }
    }
}

impl RasterBox {
    /// Center of column `i` of `width` (left to right).
    pub fn x_center(&self, i: usize, width: usize) -> QRational {
        &self.x0 + (&self.x1 - &self.x0) * QRational::new(2 * i as i64 + 1, 2 * width as i64)
    }

    /// Center of row `j` of `height`; row 0 is the top (largest `r_2`).
    pub fn y_center(&self, j: usize, height: usize) -> QRational {
        &self.y1 - (&self.y1 - &self.y0) * QRational::new(2 * j as i64 + 1, 2 * height as i64)
    }
}

/// `D_2^0` membership on the pixel centers of a `width × height` grid,
/// rows top to bottom. Rows are evaluated in parallel; each pixel is a
/// pure function of its center, so the grid is deterministic.
pub fn raster_d20(
    bx: &RasterBox,
    width: usize,
    height: usize,
    caps: SrsCaps,
) -> Result<Vec<Vec<SrsStatus>>> {
    if width == 0 || height == 0 {
        return Err(Error::Precondition("raster dimensions must be positive".into()));
    }
    (0..height)
        .into_par_iter()
        .map(|j| {
            let y = bx.y_center(j, height);
            (0..width)
                .map(|i| {
                    let r = SrsParameter::new(vec![bx.x_center(i, width), y.clone()])?;
                    Ok(d0_test(&r, caps.witness, caps.orbit).status)
                })
                .collect()
        })
        .collect()
}

/// Writes a binary greymap (P5).
pub fn write_pgm<W: Write>(out: &mut W, grid: &[Vec<SrsStatus>]) -> io::Result<()> {
    let height = grid.len();
    let width = grid.first().map_or(0, Vec::len);
    write!(out, "P5\n{width} {height}\n255\n")?;
    let bytes: Vec<u8> = grid.iter().flatten().map(|s| s.pixel()).collect();
    out.write_all(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Prime;
    use crate::rational::q;

    fn par(r: &[QRational]) -> SrsParameter {
        SrsParameter::new(r.to_vec()).unwrap()
    }

    #[test]
    fn single_maps() {
        assert_eq!(tau_tilde(&par(&[q(1, 2)]), &[1]).unwrap(), vec![0]);
        assert_eq!(tau(&par(&[q(1, 2)]), &[1]).unwrap(), vec![-1]);
        assert_eq!(tau_tilde(&par(&[q(0, 1), q(1, 1)]), &[1, -1]).unwrap(), vec![-1, 1]);
        assert_eq!(tau_tilde(&par(&[q(3, 7), q(-5, 3)]), &[0, 0]).unwrap(), vec![0, 0]);
        assert!(matches!(
            tau_tilde(&par(&[q(1, 2)]), &[1, 2]),
            Err(Error::Dimension { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit(SrsMap::Tilde, &par(&[q(1, 2)]), &[-1], 10).unwrap(), Orbit::ReachesZero(2));
        assert_eq!(
            orbit(SrsMap::Tilde, &par(&[q(-1, 2)]), &[1], 10).unwrap(),
            Orbit::Cycle { entry: 0, length: 1, states: vec![vec![1]] }
        );
        assert_eq!(
            orbit(SrsMap::Tilde, &par(&[q(0, 1), q(1, 1)]), &[1, 1], 10).unwrap(),
            Orbit::Cycle { entry: 1, length: 2, states: vec![vec![1, -1], vec![-1, 1]] }
        );
        assert_eq!(
            orbit(SrsMap::Tilde, &par(&[q(3, 2)]), &[1], 5).unwrap(),
            Orbit::CapExceeded
        );
    }

    #[test]
    fn d0_examples() {
        let v = d0_test(&par(&[q(1, 2)]), 1000, 1000);
        assert_eq!(v.status, SrsStatus::Member);
        let v = d0_test(&par(&[q(1, 1)]), 1000, 1000);
        assert_eq!(v.status, SrsStatus::NonMember);
        assert_eq!(
            v.witness,
            Some(Witness::Cycle { start: vec![1], cycle: vec![vec![1], vec![-1]] })
        );
        assert_eq!(d0_test(&par(&[q(0, 1), q(0, 1)]), 1000, 1000).status, SrsStatus::Member);
        let v = d0_test(&par(&[q(0, 1), q(1, 1)]), 1000, 1000);
        assert_eq!(v.status, SrsStatus::NonMember);
        match v.witness.unwrap() {
            Witness::Cycle { cycle, .. } => assert!(cycle.contains(&vec![1, -1])),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn divergence_is_certified() {
        let v = d0_test(&par(&[q(3, 2)]), 100, 1000);
        assert_eq!(v.status, SrsStatus::NonMember);
        assert!(matches!(v.witness, Some(Witness::Divergent { .. })));
        let v = d0_test(&par(&[q(0, 1), q(19, 10)]), 100, 1000);
        assert_eq!(v.status, SrsStatus::NonMember);
    }

    #[test]
    fn fin_examples() {
        let p = Prime::new(2).unwrap();
        let caps = SrsCaps { witness: 10_000, orbit: 10_000 };
        let m = MinPoly::new(p, vec![q(-1, 2)]).unwrap();
        assert_eq!(fin_certify(&m, caps).unwrap(), FinVerdict::Holds);

        let m = MinPoly::new(p, vec![q(1, 2)]).unwrap();
        match fin_certify(&m, caps).unwrap() {
            FinVerdict::Fails(FinFailure::Srs { element, .. }) => {
                assert_eq!(element, BetaElement::new(vec![q(-1, 1)]))
            }
            v => panic!("unexpected {v:?}"),
        }

        let m = MinPoly::new(p, vec![q(-1, 2), q(-1, 2)]).unwrap();
        assert_eq!(
            fin_certify(&m, caps).unwrap(),
            FinVerdict::Fails(FinFailure::Valuation { index: 2 })
        );
    }

    #[test]
    fn raster_spot_pixels() {
        let bx = RasterBox::default();
        let caps = SrsCaps { witness: 10_000, orbit: 10_000 };
        let grid = raster_d20(&bx, 5, 5, caps).unwrap();
        // center pixel is (0, 0); the top-centre pixel (0, 8/5) is outside
        assert_eq!(bx.x_center(2, 5), q(0, 1));
        assert_eq!(bx.y_center(2, 5), q(0, 1));
        assert_eq!(grid[2][2], SrsStatus::Member);
        assert_eq!(bx.y_center(0, 5), q(8, 5));
        assert_eq!(grid[0][2], SrsStatus::NonMember);

        let mut buf = Vec::new();
        write_pgm(&mut buf, &grid).unwrap();
        assert!(buf.starts_with(b"P5\n5 5\n255\n"));
        assert_eq!(buf.len(), 11 + 25);
    }
}

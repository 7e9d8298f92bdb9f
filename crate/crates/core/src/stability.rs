//! Location of complex roots relative to the unit circle, decided exactly
//! over the rationals.
//!
//! The workhorse is the Schur–Cohn transform
//! `T f = (c_n f - c_0 f*) / x` with `f*(x) = x^n f(1/x)`. When
//! `c_n^2 ≠ c_0^2` at every step, the transform chain counts the roots
//! strictly inside the unit disk and proves that none lie on the circle.
//! Singular chains are resolved by rescaling `x ↦ (1 ± ε) x` (annulus
//! certificates) and by splitting off `gcd(f, f*)`, which carries every
//! root on the circle and is checked with a Sturm sequence in `x + 1/x`.

use crate::poly::RatPoly;
use crate::rational::QRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// All roots strictly inside the unit circle.
    Interior,
    /// No root outside, at least one on the circle.
    Boundary,
    /// Some root strictly outside.
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilityVerdict {
    pub region: Region,
    /// False when the verdict came from the floating-point fallback.
    pub certified: bool,
}

impl StabilityVerdict {
    fn exact(region: Region) -> Self {
        StabilityVerdict { region, certified: true }
    }
}

/// Stability of `x^n + r_n x^(n-1) + … + r_1` given `r = (r_1, …, r_n)`.
pub fn schur_cohn(r: &[QRational]) -> StabilityVerdict {
    let mut coeffs = r.to_vec();
    coeffs.push(QRational::one());
    stability(&RatPoly::new(coeffs))
}

/// Number of roots strictly inside the unit disk, or `None` if the
/// Schur–Cohn chain is singular. A regular chain also certifies that no
/// root lies on the unit circle.
pub fn roots_inside(f: &RatPoly) -> Option<usize> {
    let n = f.degree().expect("nonzero polynomial");
    if n == 0 {
        return Some(0);
    }
    let c: Vec<QRational> = (0..=n).map(|i| f.coeff(i)).collect();
    let (c0, cn) = (&c[0], &c[n]);
    let delta = cn * cn - c0 * c0;
    if delta.is_zero() {
        return None;
    }
    // h_i = c_n c_i - c_0 c_(n-i); h_0 = 0 and h_n = delta
    let reduced: Vec<QRational> = (1..=n).map(|i| cn * &c[i] - c0 * &c[n - i]).collect();
    let inner = roots_inside(&RatPoly::new(reduced).primitive_rational())?;
    if delta.is_negative() {
        Some(n - 1 - inner)
    } else {
        Some(inner + 1)
    }
}

const EPS_STEPS: u32 = 48;

fn radius(k: u32, outward: bool) -> QRational {
    let eps = QRational::new(1, num_bigint::BigInt::from(1u8) << k);
    if outward {
        QRational::one() + eps
    } else {
        QRational::one() - eps
    }
}

/// Tries to certify that all roots of `f` are strictly inside the unit
/// disk (`Some(true)`) or that some root is strictly outside
/// (`Some(false)`). `f` must not vanish on the unit circle for a `true`
/// answer to be reachable.
fn annulus_certificate(f: &RatPoly) -> Option<bool> {
    let n = f.degree().expect("nonzero polynomial");
    match roots_inside(f) {
        Some(z) if z == n => return Some(true),
        Some(_) => return Some(false),
        None => {}
    }
    for k in 1..=EPS_STEPS {
        // roots of f(r x) are z / r
        if roots_inside(&f.compose_scale(&radius(k, true))).is_some_and(|z| z < n) {
            return Some(false);
        }
        if roots_inside(&f.compose_scale(&radius(k, false))) == Some(n) {
            return Some(true);
        }
    }
    None
}

/// Exact division by `x - root` as many times as it divides.
fn strip_root(mut f: RatPoly, root: i64) -> RatPoly {
    let lin = RatPoly::from_i64(&[-root, 1]);
    while f.degree().unwrap_or(0) > 0 && f.eval(&QRational::from(root)).is_zero() {
        f = f.div_rem(&lin).0;
    }
    f
}

/// For a polynomial with no roots at `±1`: are all its roots on the unit
/// circle? Decided through `y = x + 1/x` and a Sturm count on `(-2, 2)`.
fn all_on_circle(g: &RatPoly) -> bool {
    let d = g.degree().expect("nonzero polynomial");
    if d == 0 {
        return true;
    }
    if d % 2 == 1 {
        return false;
    }
    let c = g.coeffs();
    if (0..=d).any(|i| c[i] != c[d - i]) {
        return false;
    }
    // x^(-m) g(x) = c_m + Σ_k c_(m+k) D_k(x + 1/x), D_k(x + 1/x) = x^k + x^-k
    let m = d / 2;
    let y = RatPoly::from_i64(&[0, 1]);
    let mut prev = RatPoly::from_i64(&[2]);
    let mut cur = y.clone();
    let mut r = RatPoly::constant(c[m].clone());
    for k in 1..=m {
        r = r.add(&cur.scale(&c[m + k]));
        let next = y.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    let s = r.squarefree_part();
    let two = QRational::from(2);
    // ±2 are excluded since x = ±1 are not roots
    s.count_real_roots(&-&two, &two) == s.degree().unwrap_or(0)
}

/// Region of the roots of a nonzero polynomial of degree ≥ 1 relative to
/// the unit circle.
pub fn stability(f: &RatPoly) -> StabilityVerdict {
    let n = f.degree().expect("nonzero polynomial");
    assert!(n >= 1, "constant polynomial has no roots");
    match roots_inside(f) {
        Some(z) if z == n => return StabilityVerdict::exact(Region::Interior),
        Some(_) => return StabilityVerdict::exact(Region::Exterior),
        None => {}
    }

    // every root on the circle is a root of gcd(f, f*) with full multiplicity
    let reciprocal = RatPoly::new(
        (0..=n).rev().map(|i| f.coeff(i)).collect(),
    );
    let g = f.gcd(&reciprocal);
    if g.degree().unwrap_or(0) == 0 {
        // No roots on the circle. A polynomial with every root inside has a
        // regular chain, so a singular chain leaves only the exterior.
        return StabilityVerdict::exact(Region::Exterior);
    }
    let rest_of_g = strip_root(strip_root(g.clone(), 1), -1);
    if !all_on_circle(&rest_of_g) {
        // an off-circle root w of gcd(f, f*) comes with 1/w; one is outside
        return StabilityVerdict::exact(Region::Exterior);
    }
    let h = f.div_rem(&g).0;
    if h.degree().unwrap_or(0) == 0 {
        return StabilityVerdict::exact(Region::Boundary);
    }
    match annulus_certificate(&h) {
        Some(true) => StabilityVerdict::exact(Region::Boundary),
        Some(false) => StabilityVerdict::exact(Region::Exterior),
        None => numeric_fallback(f),
    }
}

/// Self-reciprocal up to sign: `f(x) = ±x^n f(1/x)`.
pub fn is_self_reciprocal(f: &RatPoly) -> bool {
    let n = match f.degree() {
        Some(n) => n,
        None => return false,
    };
    let c = f.coeffs();
    let plus = (0..=n).all(|i| c[i] == c[n - i]);
    let minus = (0..=n).all(|i| c[i] == -&c[n - i]);
    plus || minus
}

fn numeric_fallback(f: &RatPoly) -> StabilityVerdict {
    let roots = numeric_roots(f);
    let max = roots.iter().map(|&(re, im)| re.hypot(im)).fold(0.0, f64::max);
    let region = if max > 1.0 + 1e-9 {
        Region::Exterior
    } else if max < 1.0 - 1e-9 {
        Region::Interior
    } else {
        Region::Boundary
    };
    StabilityVerdict { region, certified: false }
}

/// Durand–Kerner iteration on the monic normalisation of `f`.
pub fn numeric_roots(f: &RatPoly) -> Vec<(f64, f64)> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = f.leading().to_f64();
    let c: Vec<f64> = (0..=n).map(|i| f.coeff(i).to_f64() / lead).collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let eval = |z: (f64, f64)| {
        c.iter().rev().fold((0.0, 0.0), |acc, &ci| {
            let m = mul(acc, z);
            (m.0 + ci, m.1)
        })
    };
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (0.5 * bound * t.cos(), 0.5 * bound * t.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = div(eval(z[i]), den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            delta = delta.max(step.0.hypot(step.1));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn verdict(c: &[QRational]) -> StabilityVerdict {
        stability(&RatPoly::new(c.to_vec()))
    }

    #[test]
    fn worked_examples() {
        // x^2 + x/2 + 1/2 has roots of modulus 1/sqrt(2)
        assert_eq!(
            schur_cohn(&[q(1, 2), q(1, 2)]),
            StabilityVerdict::exact(Region::Interior)
        );
        assert_eq!(schur_cohn(&[q(-1, 1)]), StabilityVerdict::exact(Region::Boundary));
        assert_eq!(
            schur_cohn(&[q(-1, 1), q(-1, 1)]),
            StabilityVerdict::exact(Region::Exterior)
        );
    }

    #[test]
    fn jury_hand_checks() {
        // x^2 + 3/2 x + 1/2 = (x + 1)(x + 1/2)
        assert_eq!(schur_cohn(&[q(1, 2), q(3, 2)]).region, Region::Boundary);
        // x^2 + 3/4 x + 1/4 satisfies the Jury inequalities
        assert_eq!(schur_cohn(&[q(1, 4), q(3, 4)]).region, Region::Interior);
        assert_eq!(schur_cohn(&[q(0, 1), q(0, 1)]).region, Region::Interior);
    }

    #[test]
    fn singular_chains() {
        // (x - 2)(x - 1/2): reciprocal pair, nothing on the circle
        assert_eq!(
            verdict(&[q(1, 1), q(-5, 2), q(1, 1)]),
            StabilityVerdict::exact(Region::Exterior)
        );
        // (x - 2)(x + 1/2) = x^2 - 3/2 x - 1
        assert_eq!(
            verdict(&[q(-1, 1), q(-3, 2), q(1, 1)]),
            StabilityVerdict::exact(Region::Exterior)
        );
        // x^2 + 1 and the cyclotomic x^2 + x + 1 lie on the circle
        assert_eq!(verdict(&[q(1, 1), q(0, 1), q(1, 1)]), StabilityVerdict::exact(Region::Boundary));
        assert_eq!(verdict(&[q(1, 1), q(1, 1), q(1, 1)]), StabilityVerdict::exact(Region::Boundary));
        // (x^2 + 1)(x - 1/3)
        let f = RatPoly::from_i64(&[1, 0, 1]).mul(&RatPoly::new(vec![q(-1, 3), q(1, 1)]));
        assert_eq!(stability(&f), StabilityVerdict::exact(Region::Boundary));
        // (x^2 + 1)(x - 3)
        let f = RatPoly::from_i64(&[1, 0, 1]).mul(&RatPoly::from_i64(&[-3, 1]));
        assert_eq!(stability(&f), StabilityVerdict::exact(Region::Exterior));
        // (x - 1)^2 (x + 1/2)
        let f = RatPoly::from_i64(&[1, -2, 1]).mul(&RatPoly::new(vec![q(1, 2), q(1, 1)]));
        assert_eq!(stability(&f), StabilityVerdict::exact(Region::Boundary));
        // x^2 - x/2 + 1: Salem-type quadratic on the circle
        assert_eq!(verdict(&[q(1, 1), q(-1, 2), q(1, 1)]), StabilityVerdict::exact(Region::Boundary));
        // x^2 - 3x + 1: real reciprocal pair
        assert_eq!(verdict(&[q(1, 1), q(-3, 1), q(1, 1)]), StabilityVerdict::exact(Region::Exterior));
    }

    #[test]
    fn root_counts() {
        // (x - 1/2)(x - 3)(x + 1/5)
        let f = RatPoly::new(vec![q(-1, 2), q(1, 1)])
            .mul(&RatPoly::from_i64(&[-3, 1]))
            .mul(&RatPoly::new(vec![q(1, 5), q(1, 1)]));
        assert_eq!(roots_inside(&f), Some(2));
        assert_eq!(roots_inside(&RatPoly::from_i64(&[0, 1])), Some(1));
    }

    #[test]
    fn self_reciprocal() {
        assert!(is_self_reciprocal(&RatPoly::from_i64(&[1, -3, 1])));
        assert!(is_self_reciprocal(&RatPoly::from_i64(&[-1, 0, 1])));
        assert!(!is_self_reciprocal(&RatPoly::new(vec![q(1, 2), q(1, 2), q(1, 1)])));
    }

    #[test]
    fn numeric_roots_of_quadratic() {
        let mut r = numeric_roots(&RatPoly::from_i64(&[-2, 1, 1]));
        r.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert!((r[0].0 + 2.0).abs() < 1e-12 && (r[1].0 - 1.0).abs() < 1e-12);
    }
}

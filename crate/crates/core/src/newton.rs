//! Newton polygons of rational polynomials and the valuations of their
//! roots in an algebraic closure of `Q_p`.

use crate::error::{Error, Result};
use crate::padic::{vp, Prime};
use crate::poly::RatPoly;
use crate::rational::QRational;

/// A polynomial `c_0 + c_1 x + … + c_m x^m` together with the prime whose
/// valuation is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuatedPolynomial {
    pub p: Prime,
    pub coeffs: Vec<QRational>,
}

impl ValuatedPolynomial {
    pub fn new(p: Prime, coeffs: Vec<QRational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        Ok(ValuatedPolynomial { p, coeffs })
    }

    pub fn from_poly(p: Prime, f: &RatPoly) -> Result<Self> {
        Self::new(p, f.coeffs().to_vec())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Algebraic integer over `A_p`: the leading coefficient is `±p^k`.
    pub fn is_algebraic_integer_form(&self) -> bool {
        let lead = self.coeffs.last().expect("nonempty");
        if lead.is_zero() {
            return false;
        }
        let v = vp(lead, self.p).expect_finite();
        lead.abs() == self.p.qpow(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: QRational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices `(i, ν_p(c_i))`, left to right.
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

/// Lower convex hull of the points `(i, ν_p(c_i))` over nonzero `c_i`.
pub fn newton_polygon(f: &ValuatedPolynomial) -> Result<NewtonPolygon> {
    let m = f.degree();
    if f.coeffs[0].is_zero() || f.coeffs[m].is_zero() {
        return Err(Error::ZeroEndpoint);
    }
    let points: Vec<(i64, i64)> = f
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| vp(c, f.p).finite().map(|v| (i as i64, v)))
        .collect();

    // monotone chain; points are already sorted by abscissa
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &pt in &points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) as i128 * (pt.1 - o.1) as i128
                - (a.1 - o.1) as i128 * (pt.0 - o.0) as i128;
            // drop `a` unless it turns strictly counter-clockwise
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let segments = hull
        .windows(2)
        .map(|w| Segment {
            slope: QRational::new(w[1].1 - w[0].1, w[1].0 - w[0].0),
            length: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull.iter().map(|&(i, v)| (i as usize, v)).collect(),
        segments,
    })
}

/// Root valuations with multiplicity: a segment of slope `s` and length
/// `L` contributes `L` roots of valuation `-s`. Emitted in segment order,
/// i.e. decreasing valuation.
pub fn root_valuations(f: &ValuatedPolynomial) -> Result<Vec<(QRational, usize)>> {
    Ok(newton_polygon(f)?
        .segments
        .into_iter()
        .map(|s| (-s.slope, s.length))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantRoot {
    /// Exactly one root, counted with multiplicity, has negative valuation.
    pub unique: bool,
    pub valuation: Option<QRational>,
}

/// Whether `f` has exactly one root of negative valuation. Such a root is
/// isolated and therefore lies in `Q_p`.
pub fn dominant_root_report(f: &ValuatedPolynomial) -> Result<DominantRoot> {
    let negative: Vec<(QRational, usize)> = root_valuations(f)?
        .into_iter()
        .filter(|(v, _)| v.is_negative())
        .collect();
    let total: usize = negative.iter().map(|(_, l)| l).sum();
    if total == 1 && negative[0].0.is_integer() {
        Ok(DominantRoot {
            unique: true,
            valuation: Some(negative[0].0.clone()),
        })
    } else {
        Ok(DominantRoot {
            unique: false,
            valuation: None,
        })
    }
}

#![allow(dead_code)]

use padic_beta::beta::{BetaContext, BetaElement};
use padic_beta::classify::MinPoly;
use padic_beta::rational::q;
use padic_beta::{Prime, QRational};
use proptest::prelude::*;
use proptest::sample::select;

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

pub fn context(p: u64, a: &[QRational]) -> BetaContext {
    BetaContext::new(MinPoly::new(prime(p), a.to_vec()).unwrap()).unwrap()
}

/// `x^2 + x/2 + 1/2` over `Q_2`.
pub fn worked_quadratic() -> BetaContext {
    context(2, &[q(-1, 2), q(-1, 2)])
}

pub fn small_prime() -> impl Strategy<Value = Prime> {
    select(vec![2u64, 3, 5, 7]).prop_map(prime)
}

/// Arbitrary rationals of modest height.
pub fn rational() -> impl Strategy<Value = QRational> {
    (-500i64..=500, 1i64..=360).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = QRational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

/// Elements of `A_p` with denominators up to `p^4`.
pub fn ap_value(p: Prime) -> impl Strategy<Value = QRational> {
    (-400i64..=400, 0i64..=4).prop_map(move |(n, k)| QRational::from(n) * p.qpow(-k))
}

/// `A_2` coordinates for the worked quadratic.
pub fn dyadic() -> impl Strategy<Value = QRational> {
    ap_value(prime(2))
}

pub fn element(ctx: &BetaContext, coords: Vec<QRational>) -> BetaElement {
    ctx.element(coords).unwrap()
}

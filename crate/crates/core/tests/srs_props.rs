mod common;

use common::{context, prime};
use padic_beta::beta::Verdict;
use padic_beta::classify::MinPoly;
use padic_beta::rational::q;
use padic_beta::srs::{
    d0_test, fin_certify, orbit, raster_d20, tau, tau_tilde, FinFailure, FinVerdict, Orbit,
    RasterBox, SrsCaps, SrsMap, SrsParameter, SrsStatus, Witness,
};
use padic_beta::QRational;
use proptest::collection::vec;
use proptest::prelude::*;

fn param(r: Vec<QRational>) -> SrsParameter {
    SrsParameter::new(r).unwrap()
}

fn small_param(n: usize) -> impl Strategy<Value = Vec<QRational>> {
    vec((-30i64..=30, 1i64..=12).prop_map(|(a, b)| q(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ceil_map_is_mirrored_floor_map(
        (r, z) in (1usize..=4).prop_flat_map(|n| (small_param(n), vec(-1000i64..=1000, n))),
        k in 1usize..=50,
    ) {
        let r = param(r);
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<i64>>();
        let mut a = z.clone();
        let mut b = neg(&z);
        for _ in 0..k {
            a = tau(&r, &a).unwrap();
            b = tau_tilde(&r, &b).unwrap();
            // stop before values leave the comfortable range
            if a.iter().any(|x| x.abs() > 1 << 40) {
                break;
            }
        }
        prop_assert_eq!(a, neg(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn larger_caps_never_change_a_decision(r in small_param(2)) {
        let r = param(r);
        let small = d0_test(&r, 200, 200);
        let large = d0_test(&r, 20_000, 20_000);
        if small.status != SrsStatus::Unknown {
            prop_assert_eq!(small.status, large.status);
        }
    }

    #[test]
    fn witnesses_are_genuine(r in small_param(2)) {
        let r = param(r);
        let v = d0_test(&r, 20_000, 20_000);
        match v.witness {
            Some(Witness::Cycle { start, cycle }) => {
                let o = orbit(SrsMap::Tilde, &r, &start, 100_000).unwrap();
                let is_cycle = matches!(o, Orbit::Cycle { .. });
                prop_assert!(is_cycle);
                let mut s = cycle[0].clone();
                for _ in 0..cycle.len() {
                    s = tau_tilde(&r, &s).unwrap();
                }
                prop_assert_eq!(&s, &cycle[0]);
            }
            Some(Witness::Divergent { start, steps, state }) => {
                let mut s = start.clone();
                for _ in 0..steps {
                    s = tau_tilde(&r, &s).unwrap();
                }
                prop_assert_eq!(s, state);
            }
            None => {}
        }
    }
}

#[test]
fn members_send_every_small_vector_to_zero() {
    let members: Vec<SrsParameter> = [
        vec![q(1, 2)],
        vec![q(0, 1), q(0, 1)],
        vec![q(1, 4), q(1, 2)],
        vec![q(1, 2), q(9, 10)],
        vec![q(1, 2), q(-1, 4)],
        vec![q(1, 3), q(1, 3), q(0, 1)],
    ]
    .into_iter()
    .map(param)
    .collect();
    for r in &members {
        assert_eq!(d0_test(r, 100_000, 100_000).status, SrsStatus::Member, "{:?}", r.r());
        let n = r.dim();
        let total = 11usize.pow(n as u32);
        for code in 0..total {
            let z: Vec<i64> = (0..n).map(|i| (code / 11usize.pow(i as u32) % 11) as i64 - 5).collect();
            let o = orbit(SrsMap::Tilde, r, &z, 100_000).unwrap();
            assert!(matches!(o, Orbit::ReachesZero(_)), "{:?} from {:?}", r.r(), z);
        }
    }
}

#[test]
fn one_dimensional_sweep() {
    for k in 0..=199 {
        let r = q(-3, 2) + q(3 * k, 199);
        let expect = if r >= q(0, 1) && r < q(1, 1) { SrsStatus::Member } else { SrsStatus::NonMember };
        let got = d0_test(&param(vec![r.clone()]), 100_000, 100_000).status;
        assert_eq!(got, expect, "r = {r}");
    }
}

/// Bases whose finiteness property is certified, checked empirically.
#[test]
fn certified_bases_expand_finitely() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (p, a) in [
        (2u64, vec![q(-1, 2)]),
        (3, vec![q(-1, 3)]),
        (5, vec![q(-2, 5)]),
        (2, vec![q(-1, 4), q(-1, 2)]),
    ] {
        let m = MinPoly::new(prime(p), a.clone()).unwrap();
        assert_eq!(fin_certify(&m, SrsCaps::default()).unwrap(), FinVerdict::Holds, "{m}");
        let ctx = context(p, &a);
        for _ in 0..200 {
            // Σ c_i β^(-i) with c_i ∈ A_p, moved into Z_p by the prescale
            let mut z = ctx.zero();
            let mut pow = ctx.scalar(QRational::one());
            for _ in 0..3 {
                let c = QRational::from(rng.gen_range(-300i64..=300))
                    * prime(p).qpow(-rng.gen_range(0i64..=3));
                z = z.add(&pow.scale(&c));
                pow = ctx.div_by_beta(&pow);
            }
            let rec = ctx.expand(&z, 10_000);
            assert!(matches!(rec.verdict, Verdict::Finite { .. }), "{m}: {z:?} -> {:?}", rec.verdict);
            assert!(ctx.verify_expansion(&rec, 60).is_ok());
        }
    }
}

#[test]
fn fin_certify_failures() {
    let m = |p: u64, a: Vec<QRational>| MinPoly::new(prime(p), a).unwrap();
    let v = fin_certify(&m(2, vec![q(1, 2)]), SrsCaps::default()).unwrap();
    let FinVerdict::Fails(FinFailure::Srs { element, .. }) = v else { panic!("{v:?}") };
    let ctx = context(2, &[q(1, 2)]);
    let rec = ctx.expand(&element, 1000);
    assert!(matches!(rec.verdict, Verdict::EventuallyPeriodic { .. }));

    let v = fin_certify(&m(2, vec![q(-1, 2), q(-1, 2)]), SrsCaps::default()).unwrap();
    assert_eq!(v, FinVerdict::Fails(FinFailure::Valuation { index: 2 }));

    let v = fin_certify(&m(2, vec![q(1, 2), q(-1, 1)]), SrsCaps::default()).unwrap();
    assert!(matches!(v, FinVerdict::Fails(FinFailure::NotPc(_))));
}

#[test]
fn raster_is_deterministic_and_pixelwise() {
    let bx = RasterBox::default();
    let caps = SrsCaps { witness: 5_000, orbit: 5_000 };
    let a = raster_d20(&bx, 15, 13, caps).unwrap();
    let b = raster_d20(&bx, 15, 13, caps).unwrap();
    assert_eq!(a, b);
    for (j, row) in a.iter().enumerate() {
        for (i, &s) in row.iter().enumerate() {
            let r = param(vec![bx.x_center(i, 15), bx.y_center(j, 13)]);
            assert_eq!(d0_test(&r, caps.witness, caps.orbit).status, s);
        }
    }
}

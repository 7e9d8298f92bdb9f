mod common;

use common::{context, dyadic, element, prime, worked_quadratic};
use num_bigint::BigInt;
use padic_beta::beta::{BetaContext, BetaElement, Verdict};
use padic_beta::classify::construct_pc;
use padic_beta::padic::in_ap;
use padic_beta::rational::q;
use padic_beta::srs::{tau, SrsParameter};
use padic_beta::QRational;
use proptest::collection::vec;
use proptest::prelude::*;

/// A few Pisot-Chabauty bases of different shapes.
fn pc_bases() -> Vec<BetaContext> {
    let cubic = construct_pc(&[2, -1, 1].map(BigInt::from), prime(3)).unwrap().1;
    vec![
        worked_quadratic(),
        context(2, &[q(-1, 2)]),
        context(5, &[q(-2, 5)]),
        context(3, &[q(-1, 3), q(-2, 3)]),
        context(2, &[q(-1, 4), q(-1, 2)]),
        BetaContext::new(cubic).unwrap(),
    ]
}

/// Moves `z` into `Z_p` by dividing by powers of `β`.
fn into_zp(ctx: &BetaContext, z: BetaElement) -> BetaElement {
    let k = ctx.scaling_exponent(&z);
    (0..k).fold(z, |acc, _| ctx.div_by_beta(&acc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sigma_is_conjugate_to_t(c in vec(dyadic(), 2)) {
        let ctx = worked_quadratic();
        let z = into_zp(&ctx, element(&ctx, c));
        let (d, next) = ctx.t_step(&z).unwrap();
        let (d_sigma, w_next) = ctx.sigma_step(&ctx.to_v_coords(&z)).unwrap();
        prop_assert_eq!(&d_sigma, &d);
        prop_assert_eq!(w_next, ctx.to_v_coords(&next));
    }

    #[test]
    fn sigma_collapses_to_tau_on_integers(idx in 0usize..6, seed in vec(-60i64..=60, 3)) {
        let bases = pc_bases();
        let ctx = &bases[idx];
        let n = ctx.degree();
        let w: Vec<i64> = seed[..n].to_vec();
        let wq: Vec<QRational> = w.iter().map(|&x| QRational::from(x)).collect();
        let (_, next) = ctx.sigma_step(&wq).unwrap();
        let r = SrsParameter::new(ctx.minpoly().archimedean_vector()).unwrap();
        let expected: Vec<QRational> = tau(&r, &w).unwrap().into_iter().map(QRational::from).collect();
        prop_assert_eq!(next, expected);
    }

    #[test]
    fn expansions_verify(idx in 0usize..6, seed in vec((-100i64..=100, 0usize..4), 3)) {
        let bases = pc_bases();
        let ctx = &bases[idx];
        let coords: Vec<QRational> = seed[..ctx.degree()]
            .iter()
            .map(|&(n, d)| q(n, [1, 3, 5, 7][d]))
            .collect();
        let z = element(ctx, coords);
        let rec = ctx.expand(&z, 10_000);
        let resolved = !matches!(rec.verdict, Verdict::BudgetExceeded { .. });
        prop_assert!(resolved, "{:?}", z);
        prop_assert!(ctx.verify_expansion(&rec, 40).is_ok());
        prop_assert!(rec.all_digits().iter().all(|d| ctx.is_digit(d)));
    }

    #[test]
    fn shifting_commutes_with_t(c in vec(dyadic(), 2), k in 0usize..6) {
        let ctx = worked_quadratic();
        let z = into_zp(&ctx, element(&ctx, c));
        prop_assert!(ctx.shift_conjugacy_check(&z, k, 300).unwrap());
    }

    #[test]
    fn cycles_lie_in_the_ap_lattice(
        pos in vec(ap3(), 2),
        neg in vec(ap3(), 2),
    ) {
        // z = Σ c_i β^i + Σ c'_j β^(-j) over a base whose β^(-1) has
        // coordinates outside A_3
        let ctx = context(3, &[q(-1, 3), q(-2, 3)]);
        let mut z = element(&ctx, pos);
        let mut inv = ctx.scalar(QRational::one());
        for c in &neg {
            inv = ctx.div_by_beta(&inv);
            z = z.add(&inv.scale(c));
        }
        let rec = ctx.expand(&z, 10_000);
        let resolved = !matches!(rec.verdict, Verdict::BudgetExceeded { .. });
        prop_assert!(resolved);
        for state in rec.cycle_states() {
            prop_assert!(state.in_ap_lattice(ctx.p()), "{:?}", state);
        }
    }

    #[test]
    fn fractional_part_is_precision_independent(c in vec(dyadic(), 2), extra in 0i64..40) {
        let ctx = worked_quadratic();
        let z = element(&ctx, c);
        let base = ctx.frac_p_elem(&z);
        // coordinates have valuation ≥ -4, so precision 6 already suffices
        prop_assert_eq!(ctx.frac_p_elem_at(&z, 6 + extra), base);
    }
}

fn ap3() -> impl Strategy<Value = QRational> {
    common::ap_value(prime(3))
}

#[test]
fn period_polynomials_are_multiples_of_the_minimal_polynomial() {
    for ctx in pc_bases() {
        let one = ctx.scalar(QRational::one());
        let rec = ctx.expand(&one, 10_000);
        let f = ctx.period_polynomial(&rec).unwrap();
        let (_, rem) = f.div_rem(&ctx.minpoly().poly());
        assert!(rem.is_zero(), "{} for {}", f, ctx.minpoly());
        assert!(ctx.root_check(&f, 64));
        assert!(ctx.eval_poly(&f).is_zero());
    }
}

#[test]
fn v_basis_alternate_form_holds() {
    for ctx in pc_bases() {
        assert!(ctx.v_basis_consistent(), "{}", ctx.minpoly());
        let z = element(&ctx, (0..ctx.degree()).map(|i| q(2 * i as i64 - 3, 7)).collect());
        assert_eq!(ctx.from_v_coords(&ctx.to_v_coords(&z)), z);
    }
}

#[test]
fn worked_quadratic_single_values() {
    let ctx = worked_quadratic();
    let beta = element(&ctx, vec![q(0, 1), q(1, 1)]);
    assert_eq!(ctx.frac_p_elem(&beta), q(1, 2));
    let z = element(&ctx, vec![q(-1, 2), q(-1, 1)]);
    assert_eq!(ctx.frac_p_elem(&z), q(0, 1));
    assert_eq!(ctx.mul_by_beta(&beta), element(&ctx, vec![q(-1, 2), q(-1, 2)]));
    let (d, next) = ctx.t_step(&ctx.scalar(q(1, 1))).unwrap();
    assert_eq!(d, q(1, 2));
    assert_eq!(next, element(&ctx, vec![q(-1, 2), q(1, 1)]));
    assert!(ctx.elem_vp(&next) >= 0);
}

#[test]
fn cycle_states_are_fixed_by_the_period() {
    let ctx = worked_quadratic();
    for (a, b) in [(1, 3), (2, 5), (-4, 7)] {
        let z = element(&ctx, vec![q(a, b), q(1, 1)]);
        let rec = ctx.expand(&into_zp(&ctx, z), 10_000);
        if let Verdict::EventuallyPeriodic { period, .. } = rec.verdict {
            let first = &rec.cycle_states()[0];
            assert_eq!(&ctx.t_power(first, period).unwrap(), first);
        }
    }
}

#[test]
fn hash_lookups_see_equal_states() {
    // states equal as elements must collide in the cycle table
    let ctx = worked_quadratic();
    let a = element(&ctx, vec![q(2, 4), q(3, 6)]);
    let b = element(&ctx, vec![q(1, 2), q(1, 2)]);
    assert_eq!(a, b);
    assert!(in_ap(&a.coords()[0], ctx.p()));
}

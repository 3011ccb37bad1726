use proptest::prelude::*;
use ring_core::{difference_quotient, FieldSpec, Mono, RingCtx, Scalar, TruncatedSeries};

fn series_strategy(n: usize, max_deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -5i64..=5),
        0..6,
    )
}

fn build(ctx: &RingCtx, t: &[(Vec<u16>, i64)]) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        ctx,
        t.iter().map(|(e, c)| (Mono::from_exps(e), Scalar::from_i64(ctx.field(), *c))),
    )
}

fn ctxs() -> Vec<RingCtx> {
    vec![
        RingCtx::rational(&["x", "y"]),
        RingCtx::from_spec("x,y;rational;trunc=4").unwrap(),
        RingCtx::from_spec("x,y;prime=7;trunc=5").unwrap(),
    ]
}

proptest! {
    #[test]
    fn ring_axioms(a in series_strategy(2, 3), b in series_strategy(2, 3), c in series_strategy(2, 3)) {
        for ctx in ctxs() {
            let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }
    }

    #[test]
    fn split_reconstructs(a in series_strategy(3, 3), i in 0usize..3) {
        let ctx = RingCtx::rational(&["x", "y", "z"]);
        let a = build(&ctx, &a);
        let (q, r) = a.split_by_variable(i).unwrap();
        prop_assert_eq!(&(&TruncatedSeries::var(&ctx, i) * &q) + &r, a);
        prop_assert_eq!(r.set_var_zero(i), r);
    }

    #[test]
    fn telescoping_difference_quotients(a in series_strategy(3, 3)) {
        let ctx = RingCtx::rational(&["x", "y", "z"]);
        let w = build(&ctx, &a);
        let d = ctx.doubled();
        let mut sum = TruncatedSeries::zero(&d);
        for i in 0..3 {
            let delta = TruncatedSeries::var(&d, i) - TruncatedSeries::var(&d, 3 + i);
            sum = sum + delta * difference_quotient(&w, i, &d).unwrap();
        }
        let wx = w.rename_into(&d, &[0, 1, 2]).unwrap();
        let wy = w.rename_into(&d, &[3, 4, 5]).unwrap();
        prop_assert_eq!(sum, wx - wy);
    }

    #[test]
    fn partials_commute(a in series_strategy(3, 4), i in 0usize..3, j in 0usize..3) {
        let ctx = RingCtx::from_spec("x,y,z;rational;trunc=6").unwrap();
        let a = build(&ctx, &a);
        prop_assert_eq!(
            a.partial_derivative(i).unwrap().partial_derivative(j).unwrap(),
            a.partial_derivative(j).unwrap().partial_derivative(i).unwrap()
        );
    }

    #[test]
    fn residue_is_a_ring_map(a in series_strategy(2, 2), b in series_strategy(2, 2)) {
        for ctx in ctxs() {
            let (a, b) = (build(&ctx, &a), build(&ctx, &b));
            prop_assert_eq!((&a * &b).residue(), a.residue().mul_ref(&b.residue()));
            prop_assert_eq!((&a + &b).residue(), a.residue().add_ref(&b.residue()));
        }
        let one = TruncatedSeries::one(&RingCtx::rational(&["x"]));
        prop_assert!(one.residue().is_one());
    }

    #[test]
    fn scalars_are_exact(n1 in -50i64..50, d1 in 1i64..20, n2 in -50i64..50, d2 in 1i64..20) {
        let f = FieldSpec::Rational;
        let a = Scalar::parse(f, &format!("{n1}/{d1}")).unwrap();
        let b = Scalar::parse(f, &format!("{n2}/{d2}")).unwrap();
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        }
    }
}

#[test]
fn truncation_drops_overflow() {
    let ctx = RingCtx::from_spec("x;rational;trunc=3").unwrap();
    let x = TruncatedSeries::var(&ctx, 0);
    assert!(x.pow(4).is_zero());
    assert_eq!(x.pow(3).degree(), Some(3));
}

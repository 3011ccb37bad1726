use ainfinity::*;
use proptest::prelude::*;
use ring_core::{parse_series, FieldSpec, Mono, RingCtx, Scalar, TruncatedSeries};

type Mat = Vec<Vec<i64>>;

/// θᵢ and ∂ᵢ acting on the exterior algebra, basis indexed by bitmask.
fn generator(n: usize, theta: bool, i: usize) -> Mat {
    let dim = 1 << n;
    let mut g = vec![vec![0; dim]; dim];
    for u in 0..dim {
        let sign = if (u & ((1 << i) - 1)).count_ones() % 2 == 1 { -1 } else { 1 };
        let has = u >> i & 1 == 1;
        if theta && !has {
            g[u | 1 << i][u] = sign;
        }
        if !theta && has {
            g[u & !(1 << i)][u] = sign;
        }
    }
    g
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn monomial_matrix(n: usize, s: u32, t: u32) -> Mat {
    let mut m: Mat = (0..1 << n).map(|i| (0..1 << n).map(|j| (i == j) as i64).collect()).collect();
    for i in (0..n).filter(|i| s >> i & 1 == 1) {
        m = matmul(&m, &generator(n, true, i));
    }
    for i in (0..n).filter(|i| t >> i & 1 == 1) {
        m = matmul(&m, &generator(n, false, i));
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_matches_exterior_action(s in 0u32..8, t in 0u32..8, u in 0u32..8, v in 0u32..8) {
        let n = 3;
        let want = matmul(&monomial_matrix(n, s, t), &monomial_matrix(n, u, v));
        let dim = 1 << n;
        let mut got = vec![vec![0i64; dim]; dim];
        for (a, b, c) in clifford_product((s, t), (u, v)) {
            let m = monomial_matrix(n, a, b);
            for i in 0..dim {
                for j in 0..dim {
                    got[i][j] += c as i64 * m[i][j];
                }
            }
        }
        prop_assert_eq!(got, want);
    }
}

fn ctx2() -> RingCtx {
    RingCtx::rational(&["x", "y"])
}

fn element() -> impl Strategy<Value = SuperOp> {
    prop::collection::vec((0u32..4, 0u32..4, 0u16..3, 0u16..3, -3i64..=3), 1..5).prop_map(|terms| {
        let c = ctx2();
        let mut a = SuperOp::zero(&c);
        for (s, t, i, j, k) in terms {
            a.add_term(OpKey::new(s, t, Mono::from_exps(&[i, j])), Scalar::from_i64(FieldSpec::Rational, k));
        }
        a
    })
}

fn homogeneous() -> impl Strategy<Value = SuperOp> {
    element().prop_map(|a| {
        let (e, o) = a.split_parity();
        if e.is_zero() {
            o
        } else {
            e
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn differential_is_a_derivation(a in homogeneous(), b in element()) {
        let alg = DgAlgebra::new(&parse_series(&ctx2(), "x^2*y + y^3").unwrap()).unwrap();
        let lhs = alg.d(&a.mul(&b));
        let da_b = alg.d(&a).mul(&b);
        let a_db = a.mul(&alg.d(&b));
        let rhs = if a.parity() == Some(1) { da_b.sub(&a_db) } else { da_b.add(&a_db) };
        prop_assert_eq!(lhs, rhs);
        prop_assert!(alg.d(&alg.d(&b)).is_zero());
    }
}

const CORPUS: &[(&[&str], &str)] = &[
    (&["x"], "x^2"),
    (&["x"], "x^3"),
    (&["x"], "x^4"),
    (&["x"], "x^5"),
    (&["x"], "x^6"),
    (&["x"], "x^7"),
    (&["x", "y"], "x^2 + y^2"),
    (&["x", "y"], "3*x^2 - 2*y^2"),
    (&["x", "y"], "x^3 + y^3"),
    (&["x", "y"], "x^2*y + y^3"),
    (&["x", "y", "z"], "x^2 + y^2 + z^2"),
];

fn series(names: &[&str], w: &str) -> TruncatedSeries {
    parse_series(&RingCtx::rational(names), w).unwrap()
}

#[test]
fn homotopy_identity_on_corpus() {
    for (names, w) in CORPUS {
        let c = build_contraction(&series(names, w)).unwrap();
        let deg = if names.len() == 3 { 2 } else { 4 };
        for a in c.spanning_set(deg) {
            assert!(c.homotopy_defect(&a).is_zero(), "{w}: {a}");
            assert!(c.h(&c.h(&a)).is_zero(), "{w}: h² at {a}");
        }
        for i in 0..c.dim() {
            assert!(c.h(c.iota(i)).is_zero(), "{w}");
            assert!(c.algebra().d(c.iota(i)).is_zero(), "{w}");
        }
    }
}

#[test]
fn stasheff_on_corpus() {
    for (names, w) in CORPUS {
        let k = if names.len() == 3 { 4 } else { 5 };
        let s = transfer_minimal_model(&series(names, w), k).unwrap();
        assert!(s.is_minimal(), "{w}");
        assert!(stasheff_violations(&s, k + 1).unwrap().is_empty(), "{w}");
    }
}

#[test]
fn one_variable_coefficients() {
    let s = transfer_minimal_model(&series(&["x"], "x^2 + x^3 + x^5"), 5).unwrap();
    let q = |v| Scalar::from_i64(FieldSpec::Rational, v);
    let unit_part = |k: usize| s.product(&vec![1; k]).unwrap()[0].clone();
    assert_eq!(unit_part(2), q(-1));
    assert_eq!(unit_part(3), q(1));
    assert_eq!(unit_part(4), q(0));
    assert_eq!(unit_part(5), q(-1));
}

#[test]
fn two_variable_signs_are_stable() {
    let s = transfer_minimal_model(&series(&["x", "y"], "x^2*y + y^3"), 3).unwrap();
    let one = Scalar::one(FieldSpec::Rational);
    assert_eq!(s.product_sparse(&[1, 1, 2]).unwrap(), [(0, one.clone())]);
    assert_eq!(s.product_sparse(&[2, 2, 2]).unwrap(), [(0, one.clone())]);
    assert!(s.product_sparse(&[1, 2, 1]).unwrap().is_empty());
    assert_eq!(s.product_sparse(&[1, 2]).unwrap(), [(3, one)]);
}

fn potential(n: usize, max_deg: u16) -> impl Strategy<Value = TruncatedSeries> {
    let names: Vec<String> = RingCtx::default_names(n);
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1i64..30), 1..6).prop_map(move |terms| {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let c = RingCtx::rational(&refs);
        let mut w = TruncatedSeries::zero(&c);
        for (e, k) in terms {
            let d: u16 = e.iter().sum();
            if (2..=max_deg).contains(&d) {
                w.add_term(Mono::from_exps(&e), Scalar::from_i64(FieldSpec::Rational, k));
            }
        }
        w
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multi_index_formula_in_two_variables(w in potential(2, 4)) {
        prop_assume!(!w.is_zero());
        let s = transfer_minimal_model(&w, 4).unwrap();
        prop_assert!(coefficient_mismatches(&s, &w).unwrap().is_empty());
    }

    #[test]
    fn multi_index_formula_in_three_variables(w in potential(3, 3)) {
        prop_assume!(!w.is_zero());
        let s = transfer_minimal_model(&w, 3).unwrap();
        prop_assert!(coefficient_mismatches(&s, &w).unwrap().is_empty());
    }

    #[test]
    fn one_variable_recovery(r in prop::collection::vec(-9i64..=9, 5)) {
        let c = RingCtx::rational(&["x"]);
        let w = TruncatedSeries::from_terms(&c, r.iter().enumerate().map(|(i, &k)| {
            (Mono::from_exps(&[i as u16 + 2]), Scalar::from_i64(FieldSpec::Rational, k))
        }));
        prop_assume!(!w.is_zero());
        let s = transfer_minimal_model(&w, 6).unwrap();
        for (i, &k) in r.iter().enumerate() {
            let v = s.product(&vec![1; i + 2]).unwrap();
            prop_assert_eq!(v[0].abs(), Scalar::from_i64(FieldSpec::Rational, k.abs()));
            prop_assert!(v[1].is_zero());
        }
    }
}

#[test]
fn quadratic_formality() {
    for (names, w) in [(&["x"][..], "x^2"), (&["x", "y"][..], "3*x^2 - 2*y^2"), (&["x", "y", "z"][..], "x^2 + y^2 + z^2")] {
        assert!(clifford_check(&series(names, w), 4).unwrap(), "{w}");
    }
}

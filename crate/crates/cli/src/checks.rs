//! The acceptance criteria as executable checks over a corpus. Each returns one
//! `Outcome` with the number of cases tried and an itemized list of failures.

use ainfinity::{build_contraction, clifford_check, stasheff_violations, transfer_minimal_model};
use hochschild::{
    calabi_yau_parity_check, diagonal_endomorphism_dims, hochschild_cohomology_with, hochschild_homology_with,
    jacobian_report_with,
};
use mf_core::{
    annihilates, cohomology_mod_k, cohomology_over_r_with, hom_complex, integral_transform, is_quasi_iso, Dims,
    MFMorphism, MatrixFactorization, RMatrix, StabilizationConfig, Z2Complex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ring_core::{parse_series, Mono, RingCtx, Scalar, TruncatedSeries};
use stabilize::{make_koszul_mf, stabilize_residue_field, stabilized_diagonal, KoszulData};

use crate::corpus::{elliptic_3x3, CorpusEntry, Quantity};
use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: String,
    pub title: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(id: impl Into<String>, title: &str) -> Self {
        Outcome { id: id.into(), title: title.into(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one case; an error counts as a failure.
    fn case(&mut self, label: impl FnOnce() -> String, r: Result<bool, CliError>) {
        self.cases += 1;
        match r {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }
}

/// Number of seeded random Koszul data in the soundness check.
pub const RANDOM_INPUTS: u64 = 200;

fn k_dims(x: &MatrixFactorization) -> Result<Dims, CliError> {
    Ok(cohomology_mod_k(&Z2Complex::from_mf(x))?)
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &RingCtx, min_deg: u32, max_deg: u32) -> TruncatedSeries {
    let n = ctx.n_vars();
    let monos = ring_core::monomial_basis(n, max_deg);
    let mut terms = Vec::new();
    for m in monos.into_iter().filter(|m| m.degree() >= min_deg) {
        if rng.gen_bool(0.5) {
            terms.push((m, Scalar::from_i64(ctx.field(), rng.gen_range(-3..=3))));
        }
    }
    TruncatedSeries::from_terms(ctx, terms)
}

/// A regular sequence xᵢ^{aᵢ} + (higher terms), with random witnesses in 𝔪.
pub fn random_koszul(seed: u64) -> Result<KoszulData, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=2);
    let ctx = RingCtx::new(&RingCtx::default_names(n), ring_core::FieldSpec::Rational, None)?;
    let m = if n == 2 { rng.gen_range(1..=2) } else { 1 };
    loop {
        let mut gens = Vec::with_capacity(m);
        let mut wits = Vec::with_capacity(m);
        for i in 0..m {
            let a = rng.gen_range(1..=2u16);
            let mut e = vec![0; n];
            e[i] = a;
            let lead = TruncatedSeries::monomial(&ctx, Mono::from_exps(&e), Scalar::one(ctx.field()));
            gens.push(&lead + &random_poly(&mut rng, &ctx, a as u32 + 1, a as u32 + 1));
            let mut wi = random_poly(&mut rng, &ctx, 1, 2);
            while wi.is_zero() {
                wi = random_poly(&mut rng, &ctx, 1, 2);
            }
            wits.push(wi);
        }
        let mut w = TruncatedSeries::zero(&ctx);
        for (f, g) in gens.iter().zip(&wits) {
            w = &w + &(f * g);
        }
        if !w.is_zero() {
            return Ok(KoszulData::new(&w, gens, wits)?);
        }
    }
}

/// Every constructor applied to X, each result checked against its potential.
fn constructions(x: &MatrixFactorization, with_transform: bool) -> Result<Vec<(&'static str, MatrixFactorization)>, CliError> {
    let w = x.potential();
    let u = RingCtx::rational(&["u"]);
    let y = MatrixFactorization::new(
        parse_series(&u, "u^3")?,
        RMatrix::scalar_diag(&u, 1, &parse_series(&u, "u")?),
        RMatrix::scalar_diag(&u, 1, &parse_series(&u, "u^2")?),
    )?;
    let g = TruncatedSeries::var(x.ctx(), 0);
    let mut out = vec![
        ("X", x.clone()),
        ("dual", x.dual()),
        ("shift", x.shift()),
        ("cone(id)", MFMorphism::identity(x).cone()?),
        ("cone(x1)", MFMorphism::scalar(x, &g).cone()?),
        ("sum", x.direct_sum(&MatrixFactorization::trivial(w))?),
        ("tensor", x.external_tensor(&y)?),
    ];
    if with_transform {
        out.push(("transform", integral_transform(x, &stabilized_diagonal(w)?)?.mf));
    }
    Ok(out)
}

/// 1. Constructor outputs satisfy φψ = ψφ = w·id, on seeded random Koszul data and the corpus.
pub fn factorization_soundness(corpus: &[CorpusEntry], random: bool) -> Outcome {
    let mut o = Outcome::new("1", "factorization soundness");
    if random {
        for seed in 0..RANDOM_INPUTS {
            let r = random_koszul(seed).and_then(|kd| {
                let x = make_koszul_mf(&kd)?;
                let mut all = constructions(&x, true)?;
                all.push(("k^stab", stabilize_residue_field(kd.potential())?));
                all.push(("diagonal", stabilized_diagonal(kd.potential())?));
                Ok(all.into_iter().filter(|(_, y)| !y.verify()).map(|(n, _)| n).collect::<Vec<_>>())
            });
            o.case(|| format!("seed {seed}"), r.map(|bad| bad.is_empty()));
        }
    }
    for e in corpus {
        let objects = match e.objects() {
            Ok(v) => v,
            Err(err) => {
                o.case(|| e.name.clone(), Err(err));
                continue;
            }
        };
        for (name, x) in objects {
            let transform = e.n_vars() <= 2;
            let r = constructions(&x, transform).map(|all| all.iter().all(|(_, y)| y.verify()));
            o.case(|| format!("{} {name}", e.name), r);
        }
        o.case(|| format!("{} diagonal", e.name), stabilized_diagonal(&e.potential).map(|d| d.verify()).map_err(Into::into));
    }
    o
}

/// 2. The rank-3 factorization of x³+y³+z³−3xyz verifies, with det φ = w.
pub fn elliptic_example() -> Outcome {
    let mut o = Outcome::new("2", "elliptic rank-3 example");
    let r = elliptic_3x3().and_then(|x| Ok(x.verify() && &x.phi().determinant()? == x.potential()));
    o.case(|| "phi at (1, 1, 1), psi = adjugate".into(), r);
    o
}

/// 3. H(hom(k^stab, X)) over R has the dimensions of H(k⊗X), parity-shifted by n.
pub fn parity_shift_duality(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("3", "parity-shift duality");
    for e in corpus {
        let r = e.objects().and_then(|objs| {
            let k = stabilize_residue_field(&e.potential)?;
            let mut bad = Vec::new();
            for (name, x) in objs {
                let lhs = cohomology_over_r_with(&hom_complex(&k, &x)?, cfg)?.dims;
                let rhs = k_dims(&x)?.shifted(e.n_vars());
                if lhs != rhs {
                    bad.push(format!("{name}: {lhs} vs {rhs}"));
                }
            }
            Ok(bad)
        });
        match r {
            Ok(bad) if !bad.is_empty() => o.case(|| format!("{}: {}", e.name, bad.join("; ")), Ok(false)),
            r => o.case(|| e.name.clone(), r.map(|_| true)),
        }
    }
    o
}

/// 4. Each ∂ₖw acts as zero on H(hom(X, X)) over R, for n ≤ 2.
pub fn jacobian_annihilation(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("4", "Jacobian annihilation");
    for e in corpus.iter().filter(|e| e.n_vars() <= 2) {
        let objs = match e.objects() {
            Ok(v) => v,
            Err(err) => {
                o.case(|| e.name.clone(), Err(err));
                continue;
            }
        };
        for (name, x) in objs {
            for i in 0..e.n_vars() {
                let r = (|| {
                    let h = hom_complex(&x, &x)?;
                    let g = x.potential().partial_derivative(i)?;
                    Ok(annihilates(&h, &g, cfg)?)
                })();
                o.case(|| format!("{} {name} d{}w", e.name, i + 1), r);
            }
        }
    }
    o
}

fn corpus_milnor(e: &CorpusEntry) -> Option<usize> {
    e.known.iter().find_map(|k| match k.quantity {
        Quantity::Milnor(mu) => Some(mu),
        _ => None,
    })
}

/// Isolated entries in at most two variables, with their expected Milnor number.
fn hh_cases(corpus: &[CorpusEntry]) -> impl Iterator<Item = (&CorpusEntry, usize)> {
    corpus.iter().filter(|e| e.isolated && e.n_vars() <= 2).filter_map(|e| corpus_milnor(e).map(|mu| (e, mu)))
}

/// 5. HH^* from the Koszul complex of the partials and from End(Δ^stab) both equal (μ, 0).
pub fn hh_is_jacobian(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("5", "HH^* equals the Jacobian algebra");
    for (e, mu) in hh_cases(corpus) {
        let r = (|| {
            let want = Dims::new(mu, 0);
            let koszul = hochschild_cohomology_with(&e.potential, cfg)?;
            let diagonal = diagonal_endomorphism_dims(&e.potential, cfg)?;
            let jac = jacobian_report_with(&e.potential, cfg)?.milnor_number;
            Ok(koszul == want && diagonal == want && jac == mu)
        })();
        o.case(|| format!("{} (mu = {mu})", e.name), r);
    }
    o
}

/// 6. HH_* has total dimension μ, all in parity n mod 2.
pub fn hh_homology_parity(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("6", "HH_* parity");
    for (e, mu) in hh_cases(corpus) {
        let r = hochschild_homology_with(&e.potential, cfg)
            .map(|d| d == Dims::new(mu, 0).shifted(e.n_vars()))
            .map_err(Into::into);
        o.case(|| e.name.clone(), r);
    }
    o
}

fn unit_multiple(v: &[Scalar], r: i64) -> bool {
    let f = v[0].field();
    v[0].eq_up_to_sign(&Scalar::from_i64(f, r)) && v[1..].iter().all(Scalar::is_zero)
}

/// 7. m_i(∂̄, …, ∂̄) = ±r_i for w = x² + x³ + x⁵, and |m₃(∂̄₁, ∂̄₁, ∂̄₂)| = 1 for x²y + y³.
pub fn coefficient_recovery() -> Outcome {
    let mut o = Outcome::new("7", "A-infinity coefficient recovery");
    let c = RingCtx::rational(&["x"]);
    let r = parse_series(&c, "x^2 + x^3 + x^5").map_err(CliError::from).and_then(|w| Ok(transfer_minimal_model(&w, 5)?));
    match r {
        Ok(s) => {
            for (i, ri) in [(2, 1), (3, 1), (4, 0), (5, 1)] {
                o.case(|| format!("x^2 + x^3 + x^5: m_{i}"), s.product(&vec![1; i]).map(|v| unit_multiple(&v, ri)).map_err(Into::into));
            }
        }
        Err(e) => o.case(|| "x^2 + x^3 + x^5".into(), Err(e)),
    }
    let c2 = RingCtx::rational(&["x", "y"]);
    let r = (|| {
        let s = transfer_minimal_model(&parse_series(&c2, "x^2*y + y^3")?, 3)?;
        Ok(unit_multiple(&s.product(&[1, 1, 2])?, 1))
    })();
    o.case(|| "x^2*y + y^3: m_3(dbar1, dbar1, dbar2)".into(), r);
    o
}

/// Highest arity checked by the Stasheff and formality criteria.
pub const MAX_ARITY: usize = 6;

/// 8. The transferred minimal model has m₁ = 0 and satisfies the Stasheff identities to arity 6.
pub fn stasheff(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new("8", "Stasheff identities to arity 6");
    for e in corpus {
        let r = (|| {
            let s = transfer_minimal_model(&e.potential, MAX_ARITY)?;
            Ok(s.is_minimal() && stasheff_violations(&s, MAX_ARITY)?.is_empty())
        })();
        o.case(|| e.name.clone(), r);
    }
    o
}

/// 9. Diagonal quadratics: m₂ is the Clifford product and m₃ … m₆ vanish.
pub fn quadratic_formality(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new("9", "quadratic formality");
    for e in corpus.iter().filter(|e| e.is_diagonal_quadratic() && e.n_vars() <= 3) {
        o.case(|| e.name.clone(), clifford_check(&e.potential, MAX_ARITY).map_err(Into::into));
    }
    o
}

/// 10. Transforming along Δ^stab preserves dims H(k⊗X), for rank ≤ 2 and n ≤ 2.
pub fn identity_kernel(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("10", "identity kernel");
    for e in corpus.iter().filter(|e| e.n_vars() <= 2) {
        let r = (|| {
            let delta = stabilized_diagonal(&e.potential)?;
            let mut bad = Vec::new();
            for (name, x) in e.objects()?.into_iter().filter(|(_, x)| x.rank() <= 2) {
                let got = integral_transform(&x, &delta)?.k_cohomology(cfg)?;
                if got != k_dims(&x)? {
                    bad.push(name);
                }
            }
            Ok(bad)
        })();
        match r {
            Ok(bad) if !bad.is_empty() => o.case(|| format!("{}: {}", e.name, bad.join(", ")), Ok(false)),
            r => o.case(|| e.name.clone(), r.map(|_| true)),
        }
    }
    o
}

/// 11. k⊗dual(Δ^stab) and k⊗shift^n(Δ^stab) have the same dimensions.
pub fn calabi_yau(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new("11", "Calabi-Yau parity");
    for e in corpus {
        o.case(|| e.name.clone(), calabi_yau_parity_check(&e.potential).map_err(Into::into));
    }
    o
}

/// 12. On k^stab(x³): id and the inclusion into X ⊕ (1, w) are quasi-isomorphisms, 0 is not.
pub fn quasi_iso_tester() -> Outcome {
    let mut o = Outcome::new("12", "quasi-isomorphism tester");
    let setup = (|| {
        let c = RingCtx::rational(&["x"]);
        Ok::<_, CliError>(stabilize_residue_field(&parse_series(&c, "x^3")?)?)
    })();
    let x = match setup {
        Ok(x) => x,
        Err(e) => {
            o.case(|| "k^stab(x^3)".into(), Err(e));
            return o;
        }
    };
    o.case(|| "id".into(), is_quasi_iso(&MFMorphism::identity(&x)).map_err(Into::into));
    let zero = MFMorphism::zero(&x, &x).and_then(|z| is_quasi_iso(&z));
    o.case(|| "0".into(), zero.map(|q| !q).map_err(Into::into));
    let incl = (|| {
        let y = x.direct_sum(&MatrixFactorization::trivial(x.potential()))?;
        let c = x.ctx();
        let one = TruncatedSeries::one(c);
        let col = RMatrix::from_rows(c, vec![vec![one], vec![TruncatedSeries::zero(c)]])?;
        Ok(is_quasi_iso(&MFMorphism::even(&x, &y, &col, &col)?.into_closed()?)?)
    })();
    o.case(|| "inclusion into X + (1, w)".into(), incl);
    o
}

/// 13. dh + hd = id − ιp, h² = 0, hι = 0 and dι = 0 on normal-form monomials
///     up to degree deg(w), or 2 in three variables.
pub fn homotopy_identity(corpus: &[CorpusEntry]) -> Outcome {
    let mut o = Outcome::new("13", "homotopy identity");
    for e in corpus {
        let r = (|| {
            let c = build_contraction(&e.potential)?;
            let deg = if e.n_vars() >= 3 { 2 } else { e.potential.degree().unwrap_or(0) };
            let span_ok = c.spanning_set(deg).iter().all(|a| c.homotopy_defect(a).is_zero() && c.h(&c.h(a)).is_zero());
            let iota_ok = (0..c.dim()).all(|i| c.h(c.iota(i)).is_zero() && c.algebra().d(c.iota(i)).is_zero());
            Ok(span_ok && iota_ok)
        })();
        o.case(|| e.name.clone(), r);
    }
    o
}

/// Compares every expected value stored in the corpus against the library.
pub fn known_values(corpus: &[CorpusEntry], cfg: StabilizationConfig) -> Outcome {
    let mut o = Outcome::new("known", "corpus expected values");
    for e in corpus {
        for k in &e.known {
            let r: Result<bool, CliError> = (|| match k.quantity {
                Quantity::Milnor(mu) => Ok(jacobian_report_with(&e.potential, cfg)?.milnor_number == mu),
                Quantity::Tyurina(tau) => Ok(jacobian_report_with(&e.potential, cfg)?.tyurina_number == tau),
                Quantity::EndomorphismDims(d) => {
                    let k = stabilize_residue_field(&e.potential)?;
                    Ok(cohomology_over_r_with(&hom_complex(&k, &k)?, cfg)?.dims == d)
                }
                Quantity::Verifies => Ok(e.factorizations.iter().all(|(_, x)| x.verify())),
            })();
            o.case(|| format!("{} {:?} [{}]", e.name, k.quantity, k.provenance), r);
        }
    }
    o
}

/// Every criterion over `corpus`. The fixed-input criteria (2, 7, 12) and the random
/// part of criterion 1 run only when `full` is set.
pub fn run_all(corpus: &[CorpusEntry], full: bool, cfg: StabilizationConfig) -> Vec<Outcome> {
    let mut out = vec![known_values(corpus, cfg), factorization_soundness(corpus, full)];
    if full {
        out.push(elliptic_example());
    }
    out.push(parity_shift_duality(corpus, cfg));
    out.push(jacobian_annihilation(corpus, cfg));
    out.push(hh_is_jacobian(corpus, cfg));
    out.push(hh_homology_parity(corpus, cfg));
    if full {
        out.push(coefficient_recovery());
    }
    out.push(stasheff(corpus));
    out.push(quadratic_formality(corpus));
    out.push(identity_kernel(corpus, cfg));
    out.push(calabi_yau(corpus));
    if full {
        out.push(quasi_iso_tester());
    }
    out.push(homotopy_identity(corpus));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{filtered, Known, Provenance};

    fn cfg() -> StabilizationConfig {
        StabilizationConfig::default()
    }

    #[test]
    fn random_inputs_are_deterministic_and_valid() {
        for seed in 0..20 {
            let a = random_koszul(seed).unwrap();
            assert_eq!(a.potential(), random_koszul(seed).unwrap().potential());
            assert!(make_koszul_mf(&a).unwrap().verify());
        }
    }

    #[test]
    fn small_subset_passes() {
        let c = filtered(Some("A_2")).unwrap();
        for o in run_all(&c, false, cfg()) {
            assert!(o.passed(), "{} {:?}", o.title, o.failures);
        }
    }

    #[test]
    fn wrong_milnor_number_is_itemized() {
        let mut c = filtered(Some("A_3")).unwrap();
        c[0].known.push(Known { quantity: Quantity::Milnor(5), provenance: Provenance::Oracle("injected") });
        let o = known_values(&c, cfg());
        assert_eq!(o.failures.len(), 1);
        assert!(o.failures[0].contains("Milnor(5)"), "{:?}", o.failures);
    }
}

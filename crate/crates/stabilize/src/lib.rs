//! Stabilizations of quotients by regular sequences: Koszul factorizations, the
//! stabilized residue field k^stab and the stabilized diagonal Δ^stab.

pub mod error;
pub mod koszul;

use mf_core::{hom_complex, MatrixFactorization, Z2Complex};
use ring_core::{difference_quotient, TruncatedSeries};

pub use error::StabilizeError;
pub use koszul::{exterior_basis, make_koszul_mf, parity_split, KoszulData};

/// Raises a finite truncation to 2·deg(w) so that φψ = w·id is decided exactly.
fn with_floor(w: &TruncatedSeries) -> Result<TruncatedSeries, StabilizeError> {
    let deg = w.degree().unwrap_or(0);
    Ok(w.with_ctx(&w.ctx().with_floor(2 * deg))?)
}

fn require_square(w: &TruncatedSeries) -> Result<(), StabilizeError> {
    match w.order() {
        Some(o) if o >= 2 => Ok(()),
        _ => Err(StabilizeError::NotInSquare(w.to_string())),
    }
}

/// w = Σ xᵢwᵢ with wᵢ the quotient by xᵢ of w|_{x₁=…=x_{i−1}=0}.
pub fn decompose_potential(w: &TruncatedSeries) -> Result<KoszulData, StabilizeError> {
    if !w.residue().is_zero() {
        return Err(StabilizeError::NotInMaximalIdeal(w.to_string()));
    }
    let ctx = w.ctx();
    let mut rest = w.clone();
    let mut gens = Vec::new();
    let mut wits = Vec::new();
    for i in 0..ctx.n_vars() {
        let (q, r) = rest.split_by_variable(i)?;
        gens.push(TruncatedSeries::var(ctx, i));
        wits.push(q);
        rest = r;
    }
    KoszulData::new(w, gens, wits)
}

/// k^stab: the Koszul factorization on (x₁, …, xₙ) with the peeled witnesses.
pub fn stabilize_residue_field(w: &TruncatedSeries) -> Result<MatrixFactorization, StabilizeError> {
    require_square(w)?;
    make_koszul_mf(&decompose_potential(&with_floor(w)?)?)
}

/// Δ^stab over R ⊗ R (variables x, then x′): Koszul on Δᵢ = xᵢ − x′ᵢ with witnesses
/// −w̃ᵢ, a factorization of −w(x) + w(x′).
pub fn stabilized_diagonal(w: &TruncatedSeries) -> Result<MatrixFactorization, StabilizeError> {
    require_square(w)?;
    let w = with_floor(w)?;
    let ctx = w.ctx();
    let n = ctx.n_vars();
    let dctx = ctx.doubled();
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    let tilde = w.rename_into(&dctx, &right)?.try_sub(&w.rename_into(&dctx, &left)?)?;
    let mut gens = Vec::with_capacity(n);
    let mut wits = Vec::with_capacity(n);
    for i in 0..n {
        gens.push(TruncatedSeries::var(&dctx, i).try_sub(&TruncatedSeries::var(&dctx, n + i))?);
        wits.push(difference_quotient(&w, i, &dctx)?.neg());
    }
    make_koszul_mf(&KoszulData::new(&tilde, gens, wits)?)
}

/// k^stab together with its endomorphism complex.
pub fn endomorphism_data(w: &TruncatedSeries) -> Result<(MatrixFactorization, Z2Complex), StabilizeError> {
    let k = stabilize_residue_field(w)?;
    let h = hom_complex(&k, &k)?;
    Ok((k, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mf_core::{cohomology_mod_k, cohomology_over_r_with, Dims, StabilizationConfig};
    use ring_core::{parse_series, RingCtx};

    fn s(ctx: &RingCtx, e: &str) -> TruncatedSeries {
        parse_series(ctx, e).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let c = RingCtx::rational(&["x", "y"]);
        let kd = decompose_potential(&s(&c, "x^2*y + y^3")).unwrap();
        assert_eq!(kd.witnesses(), &[s(&c, "x*y"), s(&c, "y^2")]);
        let kd = decompose_potential(&s(&c, "x^2 + y^2")).unwrap();
        assert_eq!(kd.witnesses(), &[s(&c, "x"), s(&c, "y")]);
        assert!(matches!(decompose_potential(&s(&c, "1 + x^2")), Err(StabilizeError::NotInMaximalIdeal(_))));
    }

    #[test]
    fn residue_field_examples() {
        let c = RingCtx::rational(&["x"]);
        let k = stabilize_residue_field(&s(&c, "x^3")).unwrap();
        assert_eq!((k.phi().get(0, 0), k.psi().get(0, 0)), (&s(&c, "x"), &s(&c, "x^2")));
        let k = stabilize_residue_field(&s(&c, "x^2")).unwrap();
        assert_eq!((k.phi().get(0, 0), k.psi().get(0, 0)), (&s(&c, "x"), &s(&c, "x")));
        let c2 = RingCtx::rational(&["x", "y"]);
        let k = stabilize_residue_field(&s(&c2, "x^2 + y^2")).unwrap();
        assert_eq!(k.rank(), 2);
        assert!(k.verify());
        assert_eq!(cohomology_mod_k(&Z2Complex::from_mf(&k)).unwrap(), Dims::new(2, 2));
        assert!(stabilize_residue_field(&s(&c, "x")).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let c = RingCtx::rational(&["x"]);
        let d = stabilized_diagonal(&s(&c, "x^2")).unwrap();
        let dc = d.ctx().clone();
        assert_eq!(d.phi().get(0, 0), &s(&dc, "x - x'"));
        assert_eq!(d.psi().get(0, 0), &s(&dc, "-x - x'"));
        assert_eq!(d.potential(), &s(&dc, "x'^2 - x^2"));
        assert!(d.verify());
        let d = stabilized_diagonal(&s(&c, "x^3")).unwrap();
        assert_eq!(d.psi().get(0, 0), &s(&d.ctx().clone(), "-(x^2 + x*x' + x'^2)"));
        assert!(matches!(stabilized_diagonal(&s(&c, "x")), Err(StabilizeError::NotInSquare(_))));
    }

    #[test]
    fn endomorphism_examples() {
        let cfg = StabilizationConfig { n_max: 64 };
        let c = RingCtx::rational(&["x"]);
        for (w, dims) in [("x^2", (1, 1)), ("x^3", (1, 1))] {
            let (_, h) = endomorphism_data(&s(&c, w)).unwrap();
            assert_eq!(cohomology_over_r_with(&h, cfg).unwrap().dims.as_pair(), dims, "{w}");
        }
        let c2 = RingCtx::rational(&["x", "y"]);
        let (_, h) = endomorphism_data(&s(&c2, "x^2 + y^2")).unwrap();
        assert_eq!(cohomology_over_r_with(&h, cfg).unwrap().dims.total(), 4);
    }

    #[test]
    fn floor_is_raised_for_truncated_input() {
        let c = RingCtx::from_spec("x;rational;trunc=3").unwrap();
        let k = stabilize_residue_field(&s(&c, "x^3")).unwrap();
        assert_eq!(k.ctx().truncation(), Some(6));
        assert!(k.verify());
    }
}

//! The bundled example corpus. Every expected value records where it comes from:
//! a published worked example, or an independent oracle run in the test suite.

use mf_core::{Dims, MatrixFactorization, RMatrix};
use ring_core::{parse_series, RingCtx, TruncatedSeries};
use stabilize::stabilize_residue_field;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the reference worked examples.
    Reference,
    /// Computed by the named oracle, independently of the library.
    Oracle(&'static str),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Reference => write!(f, "reference"),
            Provenance::Oracle(name) => write!(f, "oracle:{name}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Milnor(usize),
    Tyurina(usize),
    /// Cohomology of End(k^stab) over R.
    EndomorphismDims(Dims),
    /// The entry's explicit factorizations all satisfy φψ = ψφ = w·id.
    Verifies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Known {
    pub quantity: Quantity,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: RingCtx,
    pub potential: TruncatedSeries,
    /// Whether the singularity at the origin is isolated.
    pub isolated: bool,
    pub known: Vec<Known>,
    /// Explicit factorizations beyond the ones every entry gets (see `objects`).
    pub factorizations: Vec<(String, MatrixFactorization)>,
}

const MONOMIAL_REDUCTION: Provenance = Provenance::Oracle("monomial-reduction");
const EXTERIOR_COUNT: Provenance = Provenance::Oracle("exterior-count");

fn rank_one(w: &TruncatedSeries, f: &str, g: &str) -> Result<(String, MatrixFactorization), CliError> {
    let c = w.ctx();
    let x = MatrixFactorization::new(
        w.clone(),
        RMatrix::scalar_diag(c, 1, &parse_series(c, f)?),
        RMatrix::scalar_diag(c, 1, &parse_series(c, g)?),
    )?;
    Ok((format!("({f}, {g})"), x))
}

/// The rank-3 factorization of x³+y³+z³−3xyz at (a, b, c) = (1, 1, 1), with ψ the adjugate.
pub fn elliptic_3x3() -> Result<MatrixFactorization, CliError> {
    let c = RingCtx::rational(&["x", "y", "z"]);
    let w = parse_series(&c, "x^3 + y^3 + z^3 - 3*x*y*z")?;
    let rows = ["x y z", "z x y", "y z x"]
        .iter()
        .map(|r| r.split(' ').map(|e| parse_series(&c, e)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let phi = RMatrix::from_rows(&c, rows)?;
    let psi = phi.adjugate()?;
    Ok(MatrixFactorization::new(w, phi, psi)?)
}

fn entry(
    name: &str,
    vars: &[&str],
    w: &str,
    mu: Option<usize>,
    splits: &[(&str, &str)],
) -> Result<CorpusEntry, CliError> {
    let ring = RingCtx::rational(vars);
    let potential = parse_series(&ring, w)?;
    let half = 1 << (vars.len() - 1);
    let mut known = vec![Known { quantity: Quantity::EndomorphismDims(Dims::new(half, half)), provenance: EXTERIOR_COUNT }];
    if let Some(mu) = mu {
        // all isolated entries are quasi-homogeneous, so τ = μ
        known.push(Known { quantity: Quantity::Milnor(mu), provenance: MONOMIAL_REDUCTION });
        known.push(Known { quantity: Quantity::Tyurina(mu), provenance: MONOMIAL_REDUCTION });
    }
    let factorizations = splits.iter().map(|(f, g)| rank_one(&potential, f, g)).collect::<Result<Vec<_>, _>>()?;
    if !factorizations.is_empty() {
        known.push(Known { quantity: Quantity::Verifies, provenance: Provenance::Oracle("expansion") });
    }
    Ok(CorpusEntry { name: name.into(), ring, potential, isolated: mu.is_some(), known, factorizations })
}

pub fn corpus() -> Result<Vec<CorpusEntry>, CliError> {
    let mut out = Vec::new();
    for n in 1..=6usize {
        let w = format!("x^{}", n + 1);
        let splits: Vec<(String, String)> = (1..=n).map(|a| (format!("x^{a}"), format!("x^{}", n + 1 - a))).collect();
        let splits: Vec<(&str, &str)> = splits.iter().map(|(f, g)| (f.as_str(), g.as_str())).collect();
        out.push(entry(&format!("A_{n}"), &["x"], &w, Some(n), &splits)?);
    }
    out.push(entry("D_4", &["x", "y"], "x^2*y + y^3", Some(4), &[("y", "x^2 + y^2"), ("x^2 + y^2", "y")])?);
    out.push(entry("D_4-fermat", &["x", "y"], "x^3 + y^3", Some(4), &[("x + y", "x^2 - x*y + y^2")])?);
    out.push(entry("quadratic-2", &["x", "y"], "x^2 + y^2", Some(1), &[])?);
    out.push(entry("quadratic-2-weighted", &["x", "y"], "3*x^2 - 2*y^2", Some(1), &[])?);
    out.push(entry("quadratic-3", &["x", "y", "z"], "x^2 + y^2 + z^2", Some(1), &[])?);
    let mut e = entry("elliptic-3x3", &["x", "y", "z"], "x^3 + y^3 + z^3 - 3*x*y*z", None, &[])?;
    e.factorizations.push(("phi_(1,1,1)".into(), elliptic_3x3()?));
    e.known.push(Known { quantity: Quantity::Verifies, provenance: Provenance::Reference });
    out.push(e);
    Ok(out)
}

/// Entries whose name contains `filter`, or all of them.
pub fn filtered(filter: Option<&str>) -> Result<Vec<CorpusEntry>, CliError> {
    Ok(corpus()?.into_iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect())
}

impl CorpusEntry {
    pub fn n_vars(&self) -> usize {
        self.ring.n_vars()
    }

    /// Test objects over w: k^stab, its shift, k^stab ⊕ (1, w), (1, w) itself and the
    /// entry's explicit factorizations.
    pub fn objects(&self) -> Result<Vec<(String, MatrixFactorization)>, CliError> {
        let k = stabilize_residue_field(&self.potential)?;
        let w = k.potential().clone();
        let trivial = MatrixFactorization::trivial(&w);
        let mut out = vec![
            ("k^stab".to_string(), k.clone()),
            ("shift(k^stab)".to_string(), k.shift()),
            ("k^stab + (1, w)".to_string(), k.direct_sum(&trivial)?),
            ("(1, w)".to_string(), trivial),
        ];
        for (name, x) in &self.factorizations {
            out.push((name.clone(), x.with_ctx(k.ctx())?));
        }
        Ok(out)
    }

    /// Whether w = Σ aᵢxᵢ².
    pub fn is_diagonal_quadratic(&self) -> bool {
        ainfinity::diagonal_coefficients(&self.potential).is_ok()
    }
}

//! Cohomology of two-periodic complexes: after reduction to k, and over R via truncations.
//!
//! Over R the complex is expanded on monomial bases of R/𝔪^{N+1}. Boundaries are
//! spanned by the truncated image at level N. Cycles are taken at a finer level
//! N' = 2N + 1 and cut back to degree ≤ N; only ranks of the expanded matrices
//! are needed for the dimensions.

use std::collections::HashMap;

use ring_core::linalg::{kernel, normalize, Echelon, SparseVec};
use ring_core::{monomial_basis, Mono, Scalar, TruncatedSeries};

use crate::complex::Z2Complex;
use crate::error::MfError;
use crate::morphism::{MFMorphism, Parity};

pub const DEFAULT_NMAX: u32 = 64;

/// Cap for the stabilization loop. `MFCAT_NMAX` overrides the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationConfig {
    pub n_max: u32,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        let n_max = std::env::var("MFCAT_NMAX")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_NMAX);
        StabilizationConfig { n_max }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub even: usize,
    pub odd: usize,
}

impl Dims {
    pub fn new(even: usize, odd: usize) -> Self {
        Dims { even, odd }
    }

    pub fn swapped(self) -> Self {
        Dims { even: self.odd, odd: self.even }
    }

    /// Swaps when `eps` is odd.
    pub fn shifted(self, eps: usize) -> Self {
        if eps % 2 == 1 {
            self.swapped()
        } else {
            self
        }
    }

    pub fn total(self) -> usize {
        self.even + self.odd
    }

    pub fn as_pair(self) -> (usize, usize) {
        (self.even, self.odd)
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.even, self.odd)
    }
}

fn dense_columns(m: &[Vec<Scalar>], ncols: usize) -> Vec<SparseVec> {
    ring_core::linalg::columns_of_dense(m, ncols)
}

/// Dimensions of the cohomology of C ⊗_R k.
pub fn cohomology_mod_k(c: &Z2Complex) -> Result<Dims, MfError> {
    let field = c.ctx().field();
    let (e, o) = (c.even_rank(), c.odd_rank());
    let de = c.d_even().residue();
    let dodd = c.d_odd().residue();
    for (a, b, n, m, k) in [(&dodd, &de, e, e, o), (&de, &dodd, o, o, e)] {
        // a: n×k, b: k×m; require a·b = 0
        for row in a.iter().take(n) {
            for j in 0..m {
                let mut acc = Scalar::zero(field);
                for (al, bl) in row.iter().zip(b.iter()).take(k) {
                    acc.add_mul_assign(al, &bl[j]);
                }
                if !acc.is_zero() {
                    return Err(MfError::NotAComplex);
                }
            }
        }
    }
    let re = ring_core::linalg::rank(field, &dense_columns(&de, e));
    let ro = ring_core::linalg::rank(field, &dense_columns(&dodd, o));
    Ok(Dims::new(e - re - ro, o - ro - re))
}

/// Monomials of degree ≤ top with their positions; a lower-degree basis is a prefix.
struct Basis {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    counts: Vec<usize>,
}

impl Basis {
    fn new(n: usize, top: u32) -> Self {
        let monos = monomial_basis(n, top);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut counts = vec![0; top as usize + 1];
        for m in &monos {
            counts[m.degree() as usize] += 1;
        }
        for d in 1..counts.len() {
            counts[d] += counts[d - 1];
        }
        Basis { monos, index, counts }
    }

    /// Number of monomials of degree ≤ d.
    fn up_to(&self, d: u32) -> usize {
        self.counts[d as usize]
    }
}

/// Column (j, m) of the expansion of d on R/𝔪^{top+1}; coordinates are idx(monomial)·rank + component.
fn expanded_column(
    c: &Z2Complex,
    p: Parity,
    j: usize,
    m: &Mono,
    basis: &Basis,
    top: u32,
) -> SparseVec {
    let d = c.d(p);
    let rows = d.rows();
    let mut acc = Vec::new();
    for a in 0..rows {
        for (t, coef) in d.get(a, j).terms() {
            if t.degree() + m.degree() > top {
                continue;
            }
            let prod = m.mul(t);
            acc.push((basis.index[&prod] * rows + a, coef.clone()));
        }
    }
    normalize(acc)
}

/// Rank of the expansion at level `top`, and the rank of its columns of degree > `low`.
fn ranks(c: &Z2Complex, p: Parity, basis: &Basis, top: u32, low: u32) -> (usize, usize) {
    let cols = c.rank(p);
    let mut ech = Echelon::new(c.ctx().field());
    let n_top = basis.up_to(top);
    let n_low = basis.up_to(low).min(n_top);
    for mi in n_low..n_top {
        for j in 0..cols {
            ech.insert(expanded_column(c, p, j, &basis.monos[mi], basis, top));
        }
    }
    let high = ech.rank();
    for mi in 0..n_low {
        for j in 0..cols {
            ech.insert(expanded_column(c, p, j, &basis.monos[mi], basis, top));
        }
    }
    (ech.rank(), high)
}

fn boundary_echelon(c: &Z2Complex, p: Parity, basis: &Basis, n: u32) -> Echelon {
    let mut ech = Echelon::new(c.ctx().field());
    for mi in 0..basis.up_to(n) {
        for j in 0..c.rank(p) {
            ech.insert(expanded_column(c, p, j, &basis.monos[mi], basis, n));
        }
    }
    ech
}

fn untwisted_check(c: &Z2Complex) -> Result<(), MfError> {
    if !c.curvature().is_zero() {
        return Err(MfError::Precondition("cohomology over R needs an untwisted complex".into()));
    }
    Ok(())
}

/// Cohomology dimensions seen at truncation level N.
pub fn dims_at(c: &Z2Complex, n: u32) -> Result<Dims, MfError> {
    untwisted_check(c)?;
    let top = 2 * n + 1;
    let basis = Basis::new(c.ctx().n_vars(), top);
    let low = basis.up_to(n);
    let mut out = [0usize; 2];
    for (k, p) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
        let (all, high) = ranks(c, p, &basis, top, n);
        let cycles = c.rank(p) * low + high - all;
        let bounds = boundary_echelon(c, p.flip(), &basis, n).rank();
        out[k] = cycles - bounds;
    }
    Ok(Dims::new(out[0], out[1]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub dims: Dims,
    pub stabilized_at: u32,
}

fn start_level(c: &Z2Complex) -> u32 {
    let deg = c.d_even().max_degree().max(c.d_odd().max_degree());
    (2 * deg).max(1)
}

/// k-dimensions of the cohomology of an untwisted complex of free R-modules, in the
/// local ring at the origin. Stops at the first N (starting from twice the largest
/// entry degree, then doubling) with dims(N) = dims(N + 1).
pub fn cohomology_over_r_with(c: &Z2Complex, cfg: StabilizationConfig) -> Result<CohomologyReport, MfError> {
    untwisted_check(c)?;
    let mut n = start_level(c);
    while n < cfg.n_max {
        let a = dims_at(c, n)?;
        if a == dims_at(c, n + 1)? {
            return Ok(CohomologyReport { dims: a, stabilized_at: n });
        }
        n *= 2;
    }
    Err(MfError::Stabilization { cap: cfg.n_max })
}

pub fn cohomology_over_r(c: &Z2Complex) -> Result<Dims, MfError> {
    Ok(cohomology_over_r_with(c, StabilizationConfig::default())?.dims)
}

/// Whether multiplication by g induces zero on the cohomology over R.
///
/// At the stabilized level N, every cycle (an exact kernel vector at level 2N + 1
/// cut back to degree ≤ N) times g must be a truncated boundary.
pub fn annihilates(c: &Z2Complex, g: &TruncatedSeries, cfg: StabilizationConfig) -> Result<bool, MfError> {
    c.ctx().check_same(g.ctx())?;
    let n = cohomology_over_r_with(c, cfg)?.stabilized_at;
    let top = 2 * n + 1;
    let basis = Basis::new(c.ctx().n_vars(), top);
    let field = c.ctx().field();
    for p in [Parity::Even, Parity::Odd] {
        let r = c.rank(p);
        let cols: Vec<SparseVec> = (0..basis.up_to(top))
            .flat_map(|mi| (0..r).map(move |j| (mi, j)))
            .map(|(mi, j)| expanded_column(c, p, j, &basis.monos[mi], &basis, top))
            .collect();
        let bounds = boundary_echelon(c, p.flip(), &basis, n);
        let low = basis.up_to(n) * r;
        for z in kernel(field, &cols) {
            let mut acc = Vec::new();
            for (idx, v) in z.into_iter().filter(|e| e.0 < low) {
                let (mi, j) = (idx / r, idx % r);
                let m = &basis.monos[mi];
                for (t, gc) in g.terms() {
                    if t.degree() + m.degree() <= n {
                        acc.push((basis.index[&m.mul(t)] * r + j, gc.mul_ref(&v)));
                    }
                }
            }
            if !bounds.contains(&normalize(acc)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A closed even morphism is a quasi-isomorphism iff k ⊗ cone(f) is acyclic.
pub fn is_quasi_iso(f: &MFMorphism) -> Result<bool, MfError> {
    let cone = f.cone()?;
    Ok(cohomology_mod_k(&Z2Complex::from_mf(&cone))?.total() == 0)
}

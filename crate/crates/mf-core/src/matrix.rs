//! Dense matrices over a series ring.

use std::fmt;

use ring_core::{RingCtx, RingError, Scalar, TruncatedSeries};

use crate::error::MfError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedSeries>,
}

impl RMatrix {
    pub fn zeros(ctx: &RingCtx, rows: usize, cols: usize) -> Self {
        RMatrix { ctx: ctx.clone(), rows, cols, entries: vec![TruncatedSeries::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &RingCtx, n: usize) -> Self {
        Self::scalar_diag(ctx, n, &TruncatedSeries::one(ctx))
    }

    /// `g·id`.
    pub fn scalar_diag(ctx: &RingCtx, n: usize, g: &TruncatedSeries) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, g.clone());
        }
        m
    }

    pub fn from_rows(ctx: &RingCtx, rows: Vec<Vec<TruncatedSeries>>) -> Result<Self, MfError> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MfError::Shape("ragged rows".into()));
            }
            for e in row {
                e.ctx().check_same(ctx)?;
                entries.push(e);
            }
        }
        Ok(RMatrix { ctx: ctx.clone(), rows: r, cols: c, entries })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncatedSeries) {
        debug_assert_eq!(v.ctx(), &self.ctx);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[TruncatedSeries] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &TruncatedSeries> {
        self.entries.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<TruncatedSeries>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Largest total degree among the entries (0 for the zero matrix).
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn mul(&self, o: &RMatrix) -> Result<RMatrix, MfError> {
        self.ctx.check_same(&o.ctx)?;
        if self.cols != o.rows {
            return Err(MfError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &RMatrix, f: impl Fn(&TruncatedSeries, &TruncatedSeries) -> TruncatedSeries) -> Result<RMatrix, MfError> {
        self.ctx.check_same(&o.ctx)?;
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(MfError::Shape("entrywise operation on different shapes".into()));
        }
        Ok(RMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &RMatrix) -> Result<RMatrix, MfError> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &RMatrix) -> Result<RMatrix, MfError> {
        self.zip(o, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&TruncatedSeries) -> TruncatedSeries) -> RMatrix {
        RMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> RMatrix {
        self.map(|e| -e)
    }

    pub fn scale(&self, g: &TruncatedSeries) -> RMatrix {
        self.map(|e| e * g)
    }

    pub fn transpose(&self) -> RMatrix {
        let mut out = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; index (a, b) ↦ a·dim(B) + b.
    pub fn kron(&self, o: &RMatrix) -> Result<RMatrix, MfError> {
        self.ctx.check_same(&o.ctx)?;
        let mut out = Self::zeros(&self.ctx, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// [[a, b], [c, d]].
    pub fn block(a: &RMatrix, b: &RMatrix, c: &RMatrix, d: &RMatrix) -> Result<RMatrix, MfError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(MfError::Shape("block sizes do not fit".into()));
        }
        for m in [b, c, d] {
            a.ctx.check_same(&m.ctx)?;
        }
        let mut out = Self::zeros(&a.ctx, a.rows + c.rows, a.cols + b.cols);
        for (m, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RMatrix {
        let mut out = Self::zeros(&self.ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Moves entries to another context via a variable map (see `TruncatedSeries::rename_into`).
    pub fn rename_into(&self, target: &RingCtx, map: &[usize]) -> Result<RMatrix, RingError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.rename_into(target, map))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RMatrix { ctx: target.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn with_ctx(&self, ctx: &RingCtx) -> Result<RMatrix, RingError> {
        let entries = self.entries.iter().map(|e| e.with_ctx(ctx)).collect::<Result<Vec<_>, _>>()?;
        Ok(RMatrix { ctx: ctx.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Reduction modulo 𝔪, row by row.
    pub fn residue(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.residue()).collect()).collect()
    }

    /// Determinant by cofactor expansion (small matrices only).
    pub fn determinant(&self) -> Result<TruncatedSeries, MfError> {
        if self.rows != self.cols {
            return Err(MfError::Shape("determinant of a non-square matrix".into()));
        }
        Ok(self.det_rec(&(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>()))
    }

    fn det_rec(&self, rs: &[usize], cs: &[usize]) -> TruncatedSeries {
        if rs.is_empty() {
            return TruncatedSeries::one(&self.ctx);
        }
        let mut acc = TruncatedSeries::zero(&self.ctx);
        for (k, &c) in cs.iter().enumerate() {
            let a = self.get(rs[0], c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
            let t = a * &self.det_rec(&rs[1..], &rest);
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// Adjugate (transposed cofactor matrix): M·adj(M) = det(M)·id.
    pub fn adjugate(&self) -> Result<RMatrix, MfError> {
        if self.rows != self.cols {
            return Err(MfError::Shape("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = Self::zeros(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = self.det_rec(&rs, &cs);
                out.set(j, i, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

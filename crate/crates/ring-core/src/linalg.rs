//! Sparse exact linear algebra over the coefficient field.
//!
//! Vectors are sorted `(index, value)` lists without zeros. `Echelon` keeps an
//! incrementally grown echelon basis where each stored vector is normalized so
//! its smallest index (the pivot) carries coefficient one.

use std::collections::HashMap;

use crate::scalar::{FieldSpec, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

/// `v - c·p`, merging sorted supports.
pub fn sub_scaled(v: &[(usize, Scalar)], c: &Scalar, p: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, c.mul_ref(&p[j].1).neg_ref()));
            j += 1;
        } else {
            let s = v[i].1.sub_ref(&c.mul_ref(&p[j].1));
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, a)| (*i, a.mul_ref(c))).collect()
}

/// Sorts and merges an unsorted list of entries into a sparse vector.
pub fn normalize(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, a)) if *j == i => *a = a.add_ref(&c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    pivot_of_row: HashMap<usize, usize>,
    rows: Vec<SparseVec>,
    combos: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon { field, pivot_of_row: HashMap::new(), rows: Vec::new(), combos: None }
    }

    /// Also records, for every stored vector, its expression in the inserted vectors.
    pub fn tracking(field: FieldSpec) -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new(field) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Pivot indices of the stored basis, i.e. the leading positions of the span.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    fn reduce(&self, mut v: SparseVec, mut combo: Option<SparseVec>) -> (SparseVec, Option<SparseVec>) {
        let mut i = 0;
        while i < v.len() {
            match self.pivot_of_row.get(&v[i].0) {
                Some(&k) => {
                    let c = v[i].1.clone();
                    v = sub_scaled(&v, &c, &self.rows[k]);
                    if let (Some(cb), Some(all)) = (combo.as_mut(), self.combos.as_ref()) {
                        *cb = sub_scaled(cb, &c, &all[k]);
                    }
                }
                None => i += 1,
            }
        }
        (v, combo)
    }

    fn store(&mut self, v: SparseVec, combo: Option<SparseVec>) {
        let inv = v[0].1.inv().expect("nonzero pivot");
        let v = scale_vec(&v, &inv);
        self.pivot_of_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        if let (Some(all), Some(cb)) = (self.combos.as_mut(), combo) {
            all.push(scale_vec(&cb, &inv));
        }
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let (r, _) = self.reduce(v, None);
        if r.is_empty() {
            false
        } else {
            self.store(r, None);
            true
        }
    }

    /// Inserts vector number `tag`. If it is dependent, returns the relation
    /// Σ cⱼ·vⱼ = 0 among inserted vectors (with c_tag = 1).
    pub fn insert_tracked(&mut self, v: SparseVec, tag: usize) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "insert_tracked needs a tracking echelon");
        let one = Scalar::one(self.field);
        let (r, cb) = self.reduce(v, Some(vec![(tag, one)]));
        if r.is_empty() {
            cb
        } else {
            self.store(r, cb);
            None
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone(), None).0.is_empty()
    }
}

/// Rank of the matrix with the given columns.
pub fn rank(field: FieldSpec, cols: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field);
    for c in cols {
        e.insert(c.clone());
    }
    e.rank()
}

/// Basis of the null space of the matrix with the given columns, as vectors indexed by column.
pub fn kernel(field: FieldSpec, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking(field);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = e.insert_tracked(c.clone(), j) {
            out.push(rel);
        }
    }
    out
}

/// Applies the matrix (given by columns) to a sparse vector.
pub fn apply(cols: &[SparseVec], v: &[(usize, Scalar)]) -> SparseVec {
    let mut acc = Vec::new();
    for (j, c) in v {
        for (i, a) in &cols[*j] {
            acc.push((*i, a.mul_ref(c)));
        }
    }
    normalize(acc)
}

/// Columns of a dense matrix given row by row.
pub fn columns_of_dense(rows: &[Vec<Scalar>], ncols: usize) -> Vec<SparseVec> {
    (0..ncols)
        .map(|j| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| !r[j].is_zero())
                .map(|(i, r)| (i, r[j].clone()))
                .collect()
        })
        .collect()
}

//! Brute-force local algebra dimensions, sharing nothing with the library: polynomials
//! are exponent maps, the ideal is spanned by monomial multiples up to a fixed degree
//! and reduced by dense Gaussian elimination over BigRational.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly = BTreeMap<Vec<u32>, BigRational>;

pub fn poly(terms: &[(&[u32], i64)]) -> Poly {
    let mut p = Poly::new();
    for (e, c) in terms {
        let v = p.entry(e.to_vec()).or_insert_with(BigRational::zero);
        *v += BigRational::from_integer(BigInt::from(*c));
    }
    p.retain(|_, c| !c.is_zero());
    p
}

pub fn derivative(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        if e[i] > 0 {
            let mut f = e.clone();
            f[i] -= 1;
            out.insert(f, c * BigRational::from_integer(BigInt::from(e[i])));
        }
    }
    out
}

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().sum();
            for k in 0..=max_deg - used {
                let mut m2 = m.clone();
                m2.push(k);
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// dim k[x]/(gens + 𝔪^{deg+1}).
pub fn quotient_dim(n: usize, gens: &[Poly], deg: u32) -> usize {
    let monos = monomials(n, deg);
    let col = |e: &Vec<u32>| monos.iter().position(|m| m == e);
    let mut rows = Vec::new();
    for g in gens {
        for m in &monos {
            let mut row = vec![BigRational::zero(); monos.len()];
            for (e, c) in g {
                let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if prod.iter().sum::<u32>() <= deg {
                    row[col(&prod).unwrap()] += c;
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    monos.len() - rank(rows)
}

/// Milnor number, read off at a degree where the quotient has stopped growing.
/// For an isolated singularity with μ ≤ deg the quotient is already the local algebra.
pub fn milnor(n: usize, w: &Poly, deg: u32) -> usize {
    let partials: Vec<Poly> = (0..n).map(|i| derivative(w, i)).collect();
    let d = quotient_dim(n, &partials, deg);
    assert_eq!(d, quotient_dim(n, &partials, deg + 1), "degree {deg} too low");
    d
}

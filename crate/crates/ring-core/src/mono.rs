//! Dense exponent vectors in graded-lex order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exp = u16;

/// Exponent vector of a monomial. Ordered by total degree, then by
/// descending exponent vector, so for two variables: 1, x, y, x², xy, y², ...
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(SmallVec<[Exp; 6]>);

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(e: &[Exp]) -> Self {
        Mono(SmallVec::from_slice(e))
    }

    pub fn exps(&self) -> &[Exp] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Exp {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: Exp) {
        self.0[i] = e;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self` when exact.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if self.divides(o) {
            Some(Mono(o.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    /// Divides by the variable `i`, if it occurs.
    pub fn div_var(&self, i: usize) -> Option<Mono> {
        if self.0[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[i] -= 1;
        Some(m)
    }

    pub fn mul_var(&self, i: usize) -> Mono {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    /// Sends variable i to variable `map[i]` of an `n`-variable ring.
    pub fn rename(&self, n: usize, map: &[usize]) -> Mono {
        let mut m = Self::one(n);
        for (i, &e) in self.0.iter().enumerate() {
            m.0[map[i]] += e;
        }
        m
    }

    pub fn write_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

/// All monomials of total degree exactly `d` in `n` variables, in graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = vec![0 as Exp; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<Exp>, out: &mut Vec<Mono>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as Exp;
            out.push(Mono::from_exps(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as Exp;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Mono::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All monomials of total degree ≤ `max_degree`, in graded-lex order.
pub fn monomial_basis(n: usize, max_degree: u32) -> Vec<Mono> {
    (0..=max_degree).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// Number of monomials of degree ≤ d in n variables, C(n+d, n).
pub fn count_up_to(n: usize, d: u32) -> usize {
    let mut c: u128 = 1;
    for i in 1..=n as u128 {
        c = c * (d as u128 + i) / i;
    }
    c as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_examples() {
        let b = monomial_basis(1, 2);
        assert_eq!(b, vec![Mono::from_exps(&[0]), Mono::from_exps(&[1]), Mono::from_exps(&[2])]);
        let b = monomial_basis(2, 1);
        assert_eq!(b, vec![Mono::from_exps(&[0, 0]), Mono::from_exps(&[1, 0]), Mono::from_exps(&[0, 1])]);
        assert_eq!(monomial_basis(2, 2).len(), 6);
    }

    #[test]
    fn basis_is_sorted_and_counted() {
        for n in 1..5 {
            for d in 0..6 {
                let b = monomial_basis(n, d);
                assert_eq!(b.len(), count_up_to(n, d));
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn division() {
        let a = Mono::from_exps(&[1, 2]);
        let b = Mono::from_exps(&[2, 3]);
        assert_eq!(a.div(&b), Some(Mono::from_exps(&[1, 1])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.div_var(0), Some(Mono::from_exps(&[0, 2])));
        assert_eq!(Mono::from_exps(&[0, 2]).div_var(0), None);
    }
}

//! The contraction of A onto its cohomology, one variable at a time.
//!
//! Stage s contracts xⱼ with j = n−1−s. Its input is the complex left by the previous
//! stages: elements a·∂̃_U where a involves only x₁..xⱼ, θ₁..θⱼ, ∂₁..∂ⱼ and U records
//! the ∂'s already split off. On it the stage uses
//!
//!   h(a ∂̃_U) = θⱼ (a/xⱼ) ∂̃_U,   P = id − dh − hd,
//!
//! and projects P(a) onto the part free of xⱼ and θⱼ, moving ∂ⱼ into U. The inclusion
//! multiplies by ∂ⱼ on the right and applies P. The next stage's differential is
//! p∘d∘ι. The totals compose as h = h₀ + ι₀ h' p₀, with h' the total of the later stages.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use ring_core::{Mono, Scalar};

use crate::dga::DgAlgebra;
use crate::superop::{add_into, OpKey, SuperOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BKey {
    u: u32,
    op: OpKey,
}

type BVec = BTreeMap<BKey, Scalar>;

#[derive(Default)]
struct Stage {
    d: RefCell<HashMap<BKey, Rc<BVec>>>,
    p: RefCell<HashMap<BKey, Rc<BVec>>>,
    iota: RefCell<HashMap<BKey, Rc<BVec>>>,
    htot: RefCell<HashMap<BKey, Rc<BVec>>>,
}

fn cached(cache: &RefCell<HashMap<BKey, Rc<BVec>>>, k: &BKey, f: impl FnOnce() -> BVec) -> Rc<BVec> {
    if let Some(v) = cache.borrow().get(k) {
        return v.clone();
    }
    let v = Rc::new(f());
    cache.borrow_mut().insert(k.clone(), v.clone());
    v
}

fn axpy(acc: &mut BVec, c: &Scalar, v: &BVec) {
    for (k, a) in v {
        add_into(acc, k.clone(), a.mul_ref(c));
    }
}

/// Subsets of {0..n−1} ordered by size, then lexicographically.
pub fn subset_basis(n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..1u32 << n).collect();
    v.sort_by_key(|&u| (u.count_ones(), (0..n).filter(|i| u >> i & 1 == 1).collect::<Vec<_>>()));
    v
}

/// "1" for the unit, otherwise e.g. "dbar1*dbar3".
pub fn subset_label(u: u32) -> String {
    if u == 0 {
        return "1".into();
    }
    (0..32).filter(|i| u >> i & 1 == 1).map(|i| format!("dbar{}", i + 1)).collect::<Vec<_>>().join("*")
}

/// Projection p, inclusion ι and homotopy h with dh + hd = id − ιp on A.
pub struct Contraction {
    alg: DgAlgebra,
    stages: Vec<Stage>,
    basis: Vec<u32>,
    position: HashMap<u32, usize>,
    iota: Vec<SuperOp>,
    h_cache: RefCell<HashMap<OpKey, Rc<SuperOp>>>,
    p_cache: RefCell<HashMap<OpKey, Rc<Vec<Scalar>>>>,
}

impl Contraction {
    pub fn new(alg: DgAlgebra) -> Self {
        let n = alg.n_vars();
        let basis = subset_basis(n);
        let position = basis.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut c = Contraction {
            alg,
            stages: (0..n).map(|_| Stage::default()).collect(),
            basis,
            position,
            iota: Vec::new(),
            h_cache: RefCell::default(),
            p_cache: RefCell::default(),
        };
        c.iota = c.basis.iter().map(|&u| c.iota_total(u)).collect();
        c
    }

    pub fn algebra(&self) -> &DgAlgebra {
        &self.alg
    }

    /// The subsets U indexing the cohomology basis ∂̄_U.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|&u| subset_label(u)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn var(&self, s: usize) -> usize {
        self.alg.n_vars() - 1 - s
    }

    fn one_mono(&self) -> Mono {
        Mono::one(self.alg.n_vars())
    }

    fn unit(&self) -> Scalar {
        Scalar::one(self.alg.ctx().field())
    }

    fn stage_d(&self, s: usize, k: &BKey) -> Rc<BVec> {
        cached(&self.stages[s].d, k, || {
            if s == 0 {
                let a = SuperOp::term(self.alg.ctx(), k.op.clone(), self.unit());
                self.alg
                    .d(&a)
                    .terms()
                    .map(|(op, c)| (BKey { u: k.u, op: op.clone() }, c.clone()))
                    .collect()
            } else {
                let i = self.iota_key(s - 1, k);
                let di = self.apply(&i, |k| self.stage_d(s - 1, k));
                self.apply(&di, |k| self.p_key(s - 1, k))
            }
        })
    }

    fn apply(&self, v: &BVec, f: impl Fn(&BKey) -> Rc<BVec>) -> BVec {
        let mut out = BVec::new();
        for (k, c) in v {
            axpy(&mut out, c, &f(k));
        }
        out
    }

    fn h_stage(&self, s: usize, v: &BVec) -> BVec {
        let j = self.var(s);
        let bit = 1u32 << j;
        let mut out = BVec::new();
        for (k, c) in v {
            if k.op.theta & bit != 0 {
                continue;
            }
            if let Some(m) = k.op.mono.div_var(j) {
                let below = (k.op.theta & (bit - 1)).count_ones();
                let c = if below % 2 == 1 { c.neg_ref() } else { c.clone() };
                add_into(&mut out, BKey { u: k.u, op: OpKey::new(k.op.theta | bit, k.op.dtheta, m) }, c);
            }
        }
        out
    }

    /// P = id − dh − hd at stage s.
    fn big_p(&self, s: usize, v: &BVec) -> BVec {
        let dh = self.apply(&self.h_stage(s, v), |k| self.stage_d(s, k));
        let hd = self.h_stage(s, &self.apply(v, |k| self.stage_d(s, k)));
        let mut out = v.clone();
        let m1 = Scalar::from_i64(self.alg.ctx().field(), -1);
        axpy(&mut out, &m1, &dh);
        axpy(&mut out, &m1, &hd);
        out
    }

    fn p_key(&self, s: usize, k: &BKey) -> Rc<BVec> {
        cached(&self.stages[s].p, k, || {
            let j = self.var(s);
            let bit = 1u32 << j;
            let v = self.big_p(s, &BVec::from([(k.clone(), self.unit())]));
            let mut out = BVec::new();
            for (k, c) in v {
                if k.op.theta & bit != 0 || k.op.mono.get(j) > 0 {
                    continue;
                }
                let (u, t) = if k.op.dtheta & bit != 0 {
                    (k.u | bit, k.op.dtheta & !bit)
                } else {
                    (k.u, k.op.dtheta)
                };
                add_into(&mut out, BKey { u, op: OpKey::new(k.op.theta, t, k.op.mono) }, c);
            }
            out
        })
    }

    fn iota_key(&self, s: usize, k: &BKey) -> Rc<BVec> {
        cached(&self.stages[s].iota, k, || {
            let j = self.var(s);
            let bit = 1u32 << j;
            let v = if k.u & bit != 0 {
                let a = SuperOp::term(self.alg.ctx(), k.op.clone(), self.unit())
                    .mul(&SuperOp::dtheta(self.alg.ctx(), j));
                a.terms().map(|(op, c)| (BKey { u: k.u & !bit, op: op.clone() }, c.clone())).collect()
            } else {
                BVec::from([(k.clone(), self.unit())])
            };
            self.big_p(s, &v)
        })
    }

    fn htot_key(&self, s: usize, k: &BKey) -> Rc<BVec> {
        cached(&self.stages[s].htot, k, || {
            let mut out = self.h_stage(s, &BVec::from([(k.clone(), self.unit())]));
            if s + 1 < self.stages.len() {
                let p = self.p_key(s, k);
                let later = self.apply(&p, |k| self.htot_key(s + 1, k));
                let back = self.apply(&later, |k| self.iota_key(s, k));
                axpy(&mut out, &self.unit(), &back);
            }
            out
        })
    }

    fn to_op(&self, v: &BVec) -> SuperOp {
        let mut a = SuperOp::zero(self.alg.ctx());
        for (k, c) in v {
            debug_assert_eq!(k.u, 0);
            a.add_term(k.op.clone(), c.clone());
        }
        a
    }

    fn iota_total(&self, u: u32) -> SuperOp {
        let mut v = BVec::from([(BKey { u, op: OpKey::new(0, 0, self.one_mono()) }, self.unit())]);
        for s in (0..self.stages.len()).rev() {
            v = self.apply(&v, |k| self.iota_key(s, k));
        }
        self.to_op(&v)
    }

    /// ι(∂̄_U) for the basis element with the given index.
    pub fn iota(&self, index: usize) -> &SuperOp {
        &self.iota[index]
    }

    /// The total homotopy.
    pub fn h(&self, a: &SuperOp) -> SuperOp {
        let mut out = SuperOp::zero(self.alg.ctx());
        for (k, c) in a.terms() {
            let hit = self.h_cache.borrow().get(k).cloned();
            let img = if let Some(v) = hit {
                v
            } else {
                let v = Rc::new(self.to_op(&self.htot_key(0, &BKey { u: 0, op: k.clone() })));
                self.h_cache.borrow_mut().insert(k.clone(), v.clone());
                v
            };
            out = out.add(&img.scale(c));
        }
        out
    }

    /// The total projection, as coordinates in the basis.
    pub fn p(&self, a: &SuperOp) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.alg.ctx().field()); self.dim()];
        for (k, c) in a.terms() {
            let hit = self.p_cache.borrow().get(k).cloned();
            let img = if let Some(v) = hit {
                v
            } else {
                let mut v = BVec::from([(BKey { u: 0, op: k.clone() }, self.unit())]);
                for s in 0..self.stages.len() {
                    v = self.apply(&v, |k| self.p_key(s, k));
                }
                let mut coords = vec![Scalar::zero(self.alg.ctx().field()); self.dim()];
                for (bk, bc) in v {
                    debug_assert!(bk.op.theta == 0 && bk.op.dtheta == 0 && bk.op.mono.is_one());
                    coords[self.position[&bk.u]] = bc;
                }
                let v = Rc::new(coords);
                self.p_cache.borrow_mut().insert(k.clone(), v.clone());
                v
            };
            for (o, x) in out.iter_mut().zip(img.iter()) {
                o.add_mul_assign(c, x);
            }
        }
        out
    }

    /// ι applied to coordinates.
    pub fn iota_of(&self, coords: &[Scalar]) -> SuperOp {
        let mut out = SuperOp::zero(self.alg.ctx());
        for (c, i) in coords.iter().zip(&self.iota) {
            if !c.is_zero() {
                out = out.add(&i.scale(c));
            }
        }
        out
    }

    /// a − dh(a) − hd(a) − ιp(a); zero when the homotopy identity holds at a.
    pub fn homotopy_defect(&self, a: &SuperOp) -> SuperOp {
        let d = |x: &SuperOp| self.alg.d(x);
        a.sub(&d(&self.h(a))).sub(&self.h(&d(a))).sub(&self.iota_of(&self.p(a)))
    }

    /// Every normal-form monomial with x-degree at most `max_degree`.
    pub fn spanning_set(&self, max_degree: u32) -> Vec<SuperOp> {
        let n = self.alg.n_vars();
        let mut out = Vec::new();
        for m in ring_core::monomial_basis(n, max_degree) {
            for s in 0..1u32 << n {
                for t in 0..1u32 << n {
                    out.push(SuperOp::term(self.alg.ctx(), OpKey::new(s, t, m.clone()), self.unit()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_core::{parse_series, RingCtx};

    fn contraction(names: &[&str], w: &str) -> Contraction {
        let c = RingCtx::rational(names);
        Contraction::new(DgAlgebra::new(&parse_series(&c, w).unwrap()).unwrap())
    }

    #[test]
    fn basis_order_and_labels() {
        assert_eq!(subset_basis(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
        assert_eq!(subset_label(0), "1");
        assert_eq!(subset_label(5), "dbar1*dbar3");
    }

    #[test]
    fn one_variable_inclusion() {
        let c = contraction(&["x"], "x^3");
        assert_eq!(c.iota(0).to_string(), "1");
        assert_eq!(c.iota(1).to_string(), "dth1 - x*th1");
        let c = contraction(&["x"], "x^2 + x^5");
        assert_eq!(c.iota(1).to_string(), "dth1 - th1 - x^3*th1");
    }

    #[test]
    fn homotopy_identity_on_small_degrees() {
        for (names, w) in [(&["x"][..], "x^3"), (&["x", "y"][..], "x^2*y + y^3")] {
            let c = contraction(names, w);
            for a in c.spanning_set(2) {
                assert!(c.homotopy_defect(&a).is_zero(), "{w}: {a}");
            }
        }
    }

    #[test]
    fn projection_inverts_inclusion() {
        let c = contraction(&["x", "y"], "x^2 + y^3");
        for i in 0..c.dim() {
            let p = c.p(c.iota(i));
            for (k, v) in p.iter().enumerate() {
                assert_eq!(v.is_one(), k == i);
                assert!(k == i || v.is_zero());
            }
            assert!(c.alg.d(c.iota(i)).is_zero());
        }
    }
}

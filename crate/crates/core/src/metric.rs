use serde::Serialize;

use crate::connection::Connection;
use crate::fmanifold::{linalg::det, Matrix, Structure};

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct MetricReport {
    pub invariant: bool,
    pub killing: bool,
    pub bridge: bool,
    pub nondegenerate: bool,
    /// 1-based (i, j, k) with g_{il}c^l_{jk} ≠ g_{jl}c^l_{ik}.
    pub invariance_violations: Vec<(usize, usize, usize)>,
    /// 1-based (i, j) with e(g_{ij}) ≠ 0.
    pub killing_violations: Vec<(usize, usize)>,
    /// 1-based (i, j, k) where the bridge equation fails.
    pub bridge_violations: Vec<(usize, usize, usize)>,
}

impl MetricReport {
    pub fn ok(&self) -> bool {
        self.invariant && self.killing && self.bridge
    }
}

/// Invariance, Killing unit and the bridge equation
/// ∂_k g_{ij} − Γ^s_{ik}g_{sj} − Γ^s_{jk}g_{si}
///   = ½e^m c^s_{ik}(∂_s g_{mj} − ∂_j g_{ms}) + ½e^m c^s_{jk}(∂_s g_{mi} − ∂_i g_{ms}).
pub fn metric_checks(st: &Structure, g: &Matrix, gamma: &Connection) -> MetricReport {
    let n = st.n();
    let sp = &st.space;
    let c = &st.c;
    let mut rep = MetricReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = sp.rzero();
                let mut rhs = sp.rzero();
                for l in 0..n {
                    if c.contains(l, j, k) {
                        lhs = &lhs + g.get(i, l);
                    }
                    if c.contains(l, i, k) {
                        rhs = &rhs + g.get(j, l);
                    }
                }
                if lhs != rhs {
                    rep.invariance_violations.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    let firsts: Vec<usize> = (0..st.spec.r()).map(|a| st.spec.flat(a, 0)).collect();
    let dg: Vec<Matrix> = (0..n).map(|s| Matrix::from_fn(n, |a, b| sp.d(s, g.get(a, b)))).collect();
    for i in 0..n {
        for j in 0..n {
            let mut acc = sp.rzero();
            for &f in &firsts {
                acc = &acc + dg[f].get(i, j);
            }
            if !acc.is_zero() {
                rep.killing_violations.push((i + 1, j + 1));
            }
        }
    }
    let half = sp.rone().scale(&crate::arith::rational::frac(1, 2));
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut lhs = dg[k].get(i, j).clone();
                for s in 0..n {
                    lhs = &lhs - &(gamma.get(s, i, k) * g.get(s, j));
                    lhs = &lhs - &(gamma.get(s, j, k) * g.get(s, i));
                }
                let mut rhs = sp.rzero();
                for &m in &firsts {
                    for s in 0..n {
                        if c.contains(s, i, k) {
                            rhs = &rhs + &(dg[s].get(m, j) - dg[j].get(m, s));
                        }
                        if c.contains(s, j, k) {
                            rhs = &rhs + &(dg[s].get(m, i) - dg[i].get(m, s));
                        }
                    }
                }
                if lhs != &rhs * &half {
                    rep.bridge_violations.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    rep.invariant = rep.invariance_violations.is_empty();
    rep.killing = rep.killing_violations.is_empty();
    rep.bridge = rep.bridge_violations.is_empty();
    rep.nondegenerate = !det(g).is_zero();
    rep
}

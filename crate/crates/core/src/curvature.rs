use std::collections::BTreeMap;

use crate::arith::{RatExpr, Space};
use crate::connection::Connection;
use crate::fmanifold::{CTensor, Structure, Tensor3, Tensor4};

/// R^k_{lij} = ∂_jΓ^k_{il} − ∂_iΓ^k_{jl} + Γ^k_{js}Γ^s_{il} − Γ^k_{is}Γ^s_{jl},
/// stored as `get(k, l, i, j)`.
pub fn riemann(g: &Connection, space: &Space) -> Tensor4 {
    let n = g.n();
    let dg: Vec<Tensor3> = (0..n).map(|s| Tensor3::from_fn(n, |a, b, c| space.d(s, g.get(a, b, c)))).collect();
    Tensor4::from_fn(n, |k, l, i, j| {
        if i == j {
            return space.rzero();
        }
        let mut acc = dg[j].get(k, i, l) - dg[i].get(k, j, l);
        for s in 0..n {
            let (a, b) = (g.get(k, j, s), g.get(s, i, l));
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
            let (a, b) = (g.get(k, i, s), g.get(s, j, l));
            if !a.is_zero() && !b.is_zero() {
                acc = &acc - &(a * b);
            }
        }
        acc
    })
}

pub fn is_flat(r: &Tensor4) -> bool {
    r.is_zero()
}

/// Nonzero values of R^j_{skl}c^s_{mi} + R^j_{smk}c^s_{li} + R^j_{slm}c^s_{ki},
/// keyed by 0-based (j, k, l, m, i).
pub fn check_3rc(r: &Tensor4, c: &CTensor) -> BTreeMap<[usize; 5], RatExpr> {
    let n = r.n();
    let mut out = BTreeMap::new();
    let nv = r.get(0, 0, 0, 0).nvars();
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                for m in 0..n {
                    for i in 0..n {
                        let mut acc = RatExpr::zero(nv);
                        for s in 0..n {
                            if c.contains(s, m, i) {
                                acc = &acc + r.get(j, s, k, l);
                            }
                            if c.contains(s, l, i) {
                                acc = &acc + r.get(j, s, m, k);
                            }
                            if c.contains(s, k, i) {
                                acc = &acc + r.get(j, s, l, m);
                            }
                        }
                        if !acc.is_zero() {
                            out.insert([j, k, l, m, i], acc);
                        }
                    }
                }
            }
        }
    }
    out
}

/// e(Γ^i_{jk}) = Σ_σ ∂_{1(σ)}Γ^i_{jk}.
pub fn e_flatness_residual(g: &Connection, st: &Structure) -> Tensor3 {
    let n = g.n();
    let firsts: Vec<usize> = (0..st.spec.r()).map(|a| st.spec.flat(a, 0)).collect();
    Tensor3::from_fn(n, |i, j, k| {
        let mut acc = st.space.rzero();
        for &f in &firsts {
            acc = &acc + &st.space.d(f, g.get(i, j, k));
        }
        acc
    })
}

/// Index quadruples (1-based) where R^k_{lij} ≠ −R^k_{lji}.
pub fn antisymmetry_violations(r: &Tensor4) -> Vec<(usize, usize, usize, usize)> {
    let n = r.n();
    let mut out = Vec::new();
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in i..n {
                    if !(r.get(k, l, i, j) + r.get(k, l, j, i)).is_zero() {
                        out.push((k + 1, l + 1, i + 1, j + 1));
                    }
                }
            }
        }
    }
    out
}

use crate::connection::Connection;
use crate::error::Result;
use crate::fmanifold::{invert, Structure, Tensor3};

#[derive(Clone, Debug)]
pub struct DualStructure {
    /// c*^i_{jk} = (L⁻¹)^i_m c^m_{jk}.
    pub cstar: Tensor3,
    /// Γ*^k_{ij} = Γ^k_{ij} − c*^l_{ji} ∇_l E^k.
    pub gamma_star: Connection,
}

pub fn dual_structure(st: &Structure, g: &Connection) -> Result<DualStructure> {
    let n = st.n();
    let nv = st.nvars();
    let linv = invert(&st.l)?;
    let mut cstar = Tensor3::zero(n, nv);
    for &(m, j, k) in st.c.entries() {
        for i in 0..n {
            let v = linv.get(i, m);
            if !v.is_zero() {
                let cur = cstar.get(i, j, k) + v;
                cstar.set(i, j, k, cur);
            }
        }
    }
    // (∇E)^k_l = δ^k_l + Γ^k_{ls} E^s
    let nabla_e: Vec<Vec<_>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let mut acc = if k == l { st.space.rone() } else { st.space.rzero() };
                    for s in 0..n {
                        let gk = g.get(k, l, s);
                        if !gk.is_zero() {
                            acc = &acc + &(gk * &st.euler[s]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut gs = Connection::zero(n, nv);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = g.get(k, i, j).clone();
                for (l, row) in nabla_e[k].iter().enumerate() {
                    let c = cstar.get(l, j, i);
                    if !c.is_zero() && !row.is_zero() {
                        acc = &acc - &(c * row);
                    }
                }
                gs.set_sym(k, i, j, acc);
            }
        }
    }
    Ok(DualStructure { cstar, gamma_star: gs })
}

/// Index pairs (1-based) where c*^i_{jk} E^j ≠ δ^i_k.
pub fn dual_unit_violations(st: &Structure, d: &DualStructure) -> Vec<(usize, usize)> {
    let n = st.n();
    let mut out = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let mut acc = st.space.rzero();
            for j in 0..n {
                acc = &acc + &(d.cstar.get(i, j, k) * &st.euler[j]);
            }
            let target = if i == k { st.space.rone() } else { st.space.rzero() };
            if acc != target {
                out.push((i + 1, k + 1));
            }
        }
    }
    out
}

/// 1-based (i, j) where (∇_j E)^i = δ^i_j + Γ^i_{jk}E^k does not vanish.
pub fn euler_flatness_violations(st: &Structure, g: &Connection) -> Vec<(usize, usize)> {
    let n = st.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j { st.space.rone() } else { st.space.rzero() };
            for k in 0..n {
                acc = &acc + &(g.get(i, j, k) * &st.euler[k]);
            }
            if !acc.is_zero() {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

use std::collections::BTreeSet;

use crate::arith::{integrate_radial, OneForm, Polynomial, RatExpr};
use crate::error::{Error, Result};
use crate::fmanifold::{d_l_function, det, Matrix, Structure, VectorField};

#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub a: Vec<Polynomial>,
    pub v: Vec<Matrix>,
    pub x: Vec<VectorField>,
}

/// a_{k+1} with da_{k+1} = d_L a_k − a_k da_0 and a_{k+1}(0) = 0.
pub fn next_a(st: &Structure, ak: &Polynomial, a0: &Polynomial) -> Result<Polynomial> {
    let sp = &st.space;
    if !sp.jet_free(ak) || !sp.jet_free(a0) {
        return Err(Error::NotPolynomialForm);
    }
    let dl = d_l_function(ak, &st.l, sp);
    let w = OneForm::new(
        dl.components
            .iter()
            .enumerate()
            .map(|(i, c)| c - &(ak * &a0.partial(i)))
            .collect(),
    );
    integrate_radial(&w).map_err(|e| match e {
        Error::NotClosed(i, j) => Error::InvalidSeed(format!("d_L a_k - a_k da_0 is not closed at ({i},{j})")),
        other => other,
    })
}

/// V_{k+1} = V_k L − a_k I.
pub fn next_v(vk: &Matrix, l: &Matrix, ak: &Polynomial) -> Matrix {
    vk.mul(l).sub_scalar(&RatExpr::from(ak.clone()))
}

/// a_0..a_K, V_0..V_K and X_(k) = V_k e.
pub fn generate(st: &Structure, a0: &Polynomial, depth: usize) -> Result<Hierarchy> {
    let n = st.n();
    let nv = st.nvars();
    let mut a = vec![a0.clone()];
    let mut v = vec![Matrix::identity(n, nv)];
    for k in 0..depth {
        let next = next_a(st, &a[k], a0)?;
        v.push(next_v(&v[k], &st.l, &a[k]));
        a.push(next);
    }
    let x = v.iter().map(|m| m.apply(&st.e)).collect();
    Ok(Hierarchy { a, v, x })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CommutationReport {
    /// (i, j) with [A,B]^i_j ≠ 0, 1-based.
    pub bracket: Vec<(usize, usize)>,
    /// (i, j, m) where the flow condition fails, 1-based.
    pub flows: Vec<(usize, usize, usize)>,
}

impl CommutationReport {
    pub fn is_empty(&self) -> bool {
        self.bracket.is_empty() && self.flows.is_empty()
    }
}

/// Flow-condition residual
/// (∂_sA^i_j)B^s_m + A^i_s ∂_jB^s_m − (∂_sB^i_j)A^s_m − B^i_s ∂_jA^s_m
/// for all 0-based (i, j, m).
fn flow_residual(a: &Matrix, b: &Matrix, st: &Structure) -> Vec<Vec<Vec<RatExpr>>> {
    let n = a.n();
    let sp = &st.space;
    let da: Vec<Matrix> = (0..n).map(|s| Matrix::from_fn(n, |i, j| sp.d(s, a.get(i, j)))).collect();
    let db: Vec<Matrix> = (0..n).map(|s| Matrix::from_fn(n, |i, j| sp.d(s, b.get(i, j)))).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|m| {
                            let mut acc = sp.rzero();
                            for s in 0..n {
                                acc = &acc + &(da[s].get(i, j) * b.get(s, m));
                                acc = &acc + &(a.get(i, s) * db[j].get(s, m));
                                acc = &acc - &(db[s].get(i, j) * a.get(s, m));
                                acc = &acc - &(b.get(i, s) * da[j].get(s, m));
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Commuting-flows test. The flow condition enters contracted with u^j_x u^m_x,
/// so with `symmetric` it is required only for the part symmetric in (j, m);
/// otherwise componentwise.
pub fn check_commutation_with(a: &Matrix, b: &Matrix, st: &Structure, symmetric: bool) -> CommutationReport {
    let n = a.n();
    let br = a.commutator(b);
    let mut rep = CommutationReport::default();
    for i in 0..n {
        for j in 0..n {
            if !br.get(i, j).is_zero() {
                rep.bracket.push((i + 1, j + 1));
            }
        }
    }
    let r = flow_residual(a, b, st);
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let bad = if symmetric {
                    !(&r[i][j][m] + &r[i][m][j]).is_zero()
                } else {
                    !r[i][j][m].is_zero()
                };
                if bad && (!symmetric || seen.insert((i, j.min(m), j.max(m)))) {
                    rep.flows.push((i + 1, j + 1, m + 1));
                }
            }
        }
    }
    rep
}

pub fn check_commutation(a: &Matrix, b: &Matrix, st: &Structure) -> CommutationReport {
    check_commutation_with(a, b, st, true)
}

/// (det[X_(0)|…|X_(n−1)], det[E^0|…|E^{n−1}]) with E^k the k-th power of E
/// under the product.
pub fn independence_det(st: &Structure, h: &Hierarchy) -> Result<(RatExpr, RatExpr)> {
    let n = st.n();
    if h.x.len() < n {
        return Err(Error::Shape(format!("hierarchy depth {} is below n-1 = {}", h.x.len() - 1, n - 1)));
    }
    let lhs = det(&Matrix::from_columns(&h.x[..n]));
    let mut pows = vec![st.e.clone()];
    for k in 1..n {
        let next = st.l.apply(&pows[k - 1]);
        pows.push(next);
    }
    let rhs = det(&Matrix::from_columns(&pows));
    Ok((lhs, rhs))
}

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{OneForm, Polynomial, RatExpr, Space};
use crate::fmanifold::jordan::JordanSpec;
use crate::fmanifold::tensors::{Matrix, Tensor3, VectorField};

/// Structure constants with entries in {0, 1}, stored as the set of 0-based
/// triples (i, j, k) with c^i_{jk} = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CTensor {
    n: usize,
    entries: BTreeSet<(usize, usize, usize)>,
}

impl CTensor {
    /// c^{i(a)}_{j(b)k(g)} = δ^a_b δ^a_g δ^i_{j+k-1}.
    pub fn canonical(spec: &JordanSpec) -> Self {
        let mut entries = BTreeSet::new();
        for a in 0..spec.r() {
            let m = spec.blocks()[a];
            for j in 0..m {
                for k in 0..m - j {
                    entries.insert((spec.flat(a, j + k), spec.flat(a, j), spec.flat(a, k)));
                }
            }
        }
        CTensor { n: spec.n(), entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize, k: usize) -> bool {
        self.entries.contains(&(i, j, k))
    }

    pub fn entries(&self) -> impl Iterator<Item = &(usize, usize, usize)> {
        self.entries.iter()
    }

    pub fn remove(&mut self, i: usize, j: usize, k: usize) -> bool {
        self.entries.remove(&(i, j, k))
    }

    pub fn dense(&self, nvars: usize) -> Tensor3 {
        Tensor3::from_fn(self.n, |i, j, k| {
            if self.contains(i, j, k) {
                RatExpr::one(nvars)
            } else {
                RatExpr::zero(nvars)
            }
        })
    }
}

/// Canonical data of the F-manifold attached to a Jordan spec.
#[derive(Clone, Debug)]
pub struct Structure {
    pub spec: JordanSpec,
    pub space: Space,
    pub c: CTensor,
    pub e: VectorField,
    pub euler: VectorField,
    pub l: Matrix,
}

impl Structure {
    pub fn with_space(spec: &JordanSpec, space: Space) -> Self {
        assert_eq!(space.n(), spec.n(), "space dimension");
        let nv = space.nvars();
        let n = spec.n();
        let c = CTensor::canonical(spec);
        let e: VectorField =
            (0..n).map(|i| if spec.inner(i) == 0 { RatExpr::one(nv) } else { RatExpr::zero(nv) }).collect();
        let euler: VectorField = (0..n).map(|i| RatExpr::var(nv, i)).collect();
        let l = mult_operator(&euler, &c);
        Structure { spec: spec.clone(), space, c, e, euler, l }
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn nvars(&self) -> usize {
        self.space.nvars()
    }

    /// X = E - a0 e.
    pub fn x_field(&self, a0: &Polynomial) -> VectorField {
        let a = RatExpr::from(a0.clone());
        self.euler.iter().zip(&self.e).map(|(ei, ui)| ei - &(ui * &a)).collect()
    }
}

pub fn canonical_structure(spec: &JordanSpec) -> Structure {
    Structure::with_space(spec, Space::new(spec.n()))
}

/// (X∘Y)^i = c^i_{jk} X^j Y^k.
pub fn circ(x: &[RatExpr], y: &[RatExpr], c: &CTensor) -> VectorField {
    let nv = x[0].nvars();
    let mut out = vec![RatExpr::zero(nv); c.n()];
    for &(i, j, k) in c.entries() {
        if !x[j].is_zero() && !y[k].is_zero() {
            out[i] = &out[i] + &(&x[j] * &y[k]);
        }
    }
    out
}

/// (X∘)^i_k = c^i_{jk} X^j.
pub fn mult_operator(x: &[RatExpr], c: &CTensor) -> Matrix {
    let nv = x[0].nvars();
    let mut m = Matrix::zero(c.n(), nv);
    for &(i, j, k) in c.entries() {
        if !x[j].is_zero() {
            let v = m.get(i, k) + &x[j];
            m.set(i, k, v);
        }
    }
    m
}

/// N^i_{jk} = T^s_j ∂_s T^i_k − T^s_k ∂_s T^i_j − T^i_s(∂_j T^s_k − ∂_k T^s_j).
pub fn nijenhuis(t: &Matrix, space: &Space) -> Tensor3 {
    let n = t.n();
    let dt: Vec<Matrix> = (0..n).map(|s| Matrix::from_fn(n, |i, j| space.d(s, t.get(i, j)))).collect();
    Tensor3::from_fn(n, |i, j, k| {
        let mut acc = space.rzero();
        for s in 0..n {
            acc = &acc + &(t.get(s, j) * dt[s].get(i, k));
            acc = &acc - &(t.get(s, k) * dt[s].get(i, j));
            let inner = dt[j].get(s, k) - dt[k].get(s, j);
            acc = &acc - &(t.get(i, s) * &inner);
        }
        acc
    })
}

/// Nonzero components of the Hertling–Manin expression
/// (∂_s c^k_{im})c^s_{jl} − (∂_s c^k_{jl})c^s_{im} + (∂_i c^s_{jl})c^k_{sm}
/// + (∂_m c^s_{jl})c^k_{si} − (∂_l c^s_{im})c^k_{js} − (∂_j c^s_{im})c^k_{ls},
/// keyed by 0-based (k, i, m, j, l).
pub fn hertling_manin_residual(c: &Tensor3, space: &Space) -> BTreeMap<[usize; 5], RatExpr> {
    let n = c.n();
    let dc: Vec<Tensor3> = (0..n).map(|s| Tensor3::from_fn(n, |a, b, d| space.d(s, c.get(a, b, d)))).collect();
    let mut out = BTreeMap::new();
    for k in 0..n {
        for i in 0..n {
            for m in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let mut acc = space.rzero();
                        for s in 0..n {
                            let terms = [
                                (dc[s].get(k, i, m), c.get(s, j, l), 1),
                                (dc[s].get(k, j, l), c.get(s, i, m), -1),
                                (dc[i].get(s, j, l), c.get(k, s, m), 1),
                                (dc[m].get(s, j, l), c.get(k, s, i), 1),
                                (dc[l].get(s, i, m), c.get(k, j, s), -1),
                                (dc[j].get(s, i, m), c.get(k, l, s), -1),
                            ];
                            for (a, b, sign) in terms {
                                if a.is_zero() || b.is_zero() {
                                    continue;
                                }
                                let t = a * b;
                                acc = if sign > 0 { &acc + &t } else { &acc - &t };
                            }
                        }
                        if !acc.is_zero() {
                            out.insert([k, i, m, j, l], acc);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Nonzero values of c^m_{ij} c^d_{mk} − c^m_{jk} c^d_{im}, keyed by (d, i, j, k).
pub fn associativity_residual(c: &CTensor) -> BTreeMap<[usize; 4], i64> {
    let n = c.n();
    let v = |i, j, k| i64::from(c.contains(i, j, k));
    let mut out = BTreeMap::new();
    for d in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r: i64 = (0..n).map(|m| v(m, i, j) * v(d, m, k) - v(m, j, k) * v(d, i, m)).sum();
                    if r != 0 {
                        out.insert([d, i, j, k], r);
                    }
                }
            }
        }
    }
    out
}

/// (d_L f)_i = L^s_i ∂_s f.
pub fn d_l_function(f: &Polynomial, l: &Matrix, space: &Space) -> OneForm {
    let n = l.n();
    let df: Vec<Polynomial> = (0..n).map(|s| space.d_poly(s, f)).collect();
    let components = (0..n)
        .map(|i| {
            let mut acc = space.zero();
            for (s, dfs) in df.iter().enumerate() {
                let lsi = l.get(s, i).as_polynomial().expect("polynomial operator entries");
                if !lsi.is_zero() && !dfs.is_zero() {
                    acc = &acc + &(lsi * dfs);
                }
            }
            acc
        })
        .collect();
    OneForm::new(components)
}

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Polynomial, RatExpr, Space};
use crate::error::{Error, Result};
use crate::fmanifold::{mult_operator, Matrix, Structure, Tensor3};

/// Christoffel symbols Γ^i_{jk}, stored densely and symmetric in (j, k).
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub gamma: Tensor3,
}

impl Connection {
    pub fn zero(n: usize, nvars: usize) -> Self {
        Connection { gamma: Tensor3::zero(n, nvars) }
    }

    pub fn n(&self) -> usize {
        self.gamma.n()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatExpr {
        self.gamma.get(i, j, k)
    }

    /// Sets Γ^i_{jk} and Γ^i_{kj}.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, v: RatExpr) {
        self.gamma.set(i, k, j, v.clone());
        self.gamma.set(i, j, k, v);
    }

    /// Nonzero entries keyed "i,j,k" (1-based, j <= k).
    pub fn to_map(&self, space: &Space) -> BTreeMap<String, String> {
        let n = self.n();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.insert(format!("{},{},{}", i + 1, j + 1, k + 1), space.fmt(v));
                    }
                }
            }
        }
        out
    }
}

/// Symmetric symbol key (min, max) for a fixed upper index.
fn key(j: usize, k: usize) -> (usize, usize) {
    (j.min(k), j.max(k))
}

/// Affine form `constant + Σ coeff·Γ^i_{key}` in the symbols of one upper index.
#[derive(Clone, Debug)]
pub struct LinForm {
    pub constant: RatExpr,
    pub coeffs: BTreeMap<(usize, usize), RatExpr>,
}

impl LinForm {
    fn add(&mut self, k: (usize, usize), c: &RatExpr) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(|| RatExpr::zero(c.nvars()));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }
}

/// Data shared by all equations: V = X∘ and its coordinate derivatives.
pub struct System<'a> {
    st: &'a Structure,
    v: Matrix,
    dv: Vec<Matrix>,
}

impl<'a> System<'a> {
    pub fn new(st: &'a Structure, v: Matrix) -> Self {
        let n = st.n();
        let dv = (0..n).map(|s| Matrix::from_fn(n, |a, b| st.space.d(s, v.get(a, b)))).collect();
        System { st, v, dv }
    }

    /// (d_∇ V)^i_{jk} = ∂_jV^i_k − ∂_kV^i_j + Γ^i_{js}V^s_k − Γ^i_{ks}V^s_j as a form in Γ^i.
    pub fn dnabla_form(&self, i: usize, j: usize, k: usize) -> LinForm {
        let n = self.st.n();
        let mut f = LinForm { constant: self.dv[j].get(i, k) - self.dv[k].get(i, j), coeffs: BTreeMap::new() };
        for s in 0..n {
            f.add(key(j, s), self.v.get(s, k));
            f.add(key(k, s), &-self.v.get(s, j));
        }
        f
    }

    /// Σ_σ Γ^i_{1(σ) j} as a form in Γ^i.
    pub fn flat_unit_form(&self, j: usize) -> LinForm {
        let spec = &self.st.spec;
        let mut f = LinForm { constant: self.st.space.rzero(), coeffs: BTreeMap::new() };
        for a in 0..spec.r() {
            f.add(key(spec.flat(a, 0), j), &self.st.space.rone());
        }
        f
    }
}

/// Per-upper-index symbol table filled by the recursion.
struct Table<'s> {
    sys: &'s System<'s>,
    i: usize,
    known: BTreeMap<(usize, usize), RatExpr>,
}

impl Table<'_> {
    fn set(&mut self, j: usize, k: usize, v: RatExpr) {
        self.known.insert(key(j, k), v);
    }

    fn get(&self, j: usize, k: usize) -> Result<&RatExpr> {
        self.known
            .get(&key(j, k))
            .ok_or_else(|| Error::Internal(format!("Γ^{}_{{{},{}}} used before it was computed", self.i + 1, j + 1, k + 1)))
    }

    /// Solves the form for the target symbol, all other symbols being known.
    fn solve(&mut self, form: LinForm, target: (usize, usize)) -> Result<()> {
        let target = key(target.0, target.1);
        let mut rest = form.constant;
        let mut coeff = None;
        for (k, c) in form.coeffs {
            if k == target {
                coeff = Some(c);
            } else {
                let v = self.known.get(&k).ok_or_else(|| {
                    Error::Internal(format!(
                        "solving Γ^{}_{{{},{}}} needs unknown Γ^{}_{{{},{}}}",
                        self.i + 1,
                        target.0 + 1,
                        target.1 + 1,
                        self.i + 1,
                        k.0 + 1,
                        k.1 + 1
                    ))
                })?;
                rest = &rest + &(&c * v);
            }
        }
        let coeff = coeff.ok_or_else(|| {
            Error::Internal(format!("Γ^{}_{{{},{}}} does not occur in its equation", self.i + 1, target.0 + 1, target.1 + 1))
        })?;
        let v = (-rest).try_div(&coeff)?;
        self.known.insert(target, v);
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let st = self.sys.st;
        let spec = &st.spec;
        let r = spec.r();
        let zero = st.space.rzero();
        let alpha = spec.block_of(self.i);
        // case a: pairwise distinct blocks
        for b in 0..r {
            for g in 0..r {
                if b == alpha || g == alpha || b == g {
                    continue;
                }
                for j in 0..spec.blocks()[b] {
                    for k in 0..spec.blocks()[g] {
                        self.set(spec.flat(b, j), spec.flat(g, k), zero.clone());
                    }
                }
            }
        }
        // case b: Γ^{i(α)}_{j(β)k(α)}, β ≠ α, from (d_∇V)^{i(α)}_{j(β)k(α)}
        for b in (0..r).filter(|&b| b != alpha) {
            for k in (0..spec.blocks()[alpha]).rev() {
                for j in (0..spec.blocks()[b]).rev() {
                    let (jf, kf) = (spec.flat(b, j), spec.flat(alpha, k));
                    let form = self.sys.dnabla_form(self.i, jf, kf);
                    self.solve(form, (jf, kf))?;
                }
            }
        }
        // flat unit: symbols with a lower index 1(β)
        for b in (0..r).filter(|&b| b != alpha) {
            let one_b = spec.flat(b, 0);
            for j in 0..spec.blocks()[b] {
                let jf = spec.flat(b, j);
                let v = -self.get(jf, spec.flat(alpha, 0))?;
                self.set(jf, one_b, v);
            }
        }
        let one_a = spec.flat(alpha, 0);
        for j in 0..spec.blocks()[alpha] {
            let jf = spec.flat(alpha, j);
            let mut acc = zero.clone();
            for s in (0..r).filter(|&s| s != alpha) {
                acc = &acc - self.get(jf, spec.flat(s, 0))?;
            }
            self.set(jf, one_a, acc);
        }
        // cases c, d: Γ_{k(β) j(β)}, 2 <= j <= k, from (d_∇V)_{(j-1)(β) k(β)}
        for b in 0..r {
            for k in (1..spec.blocks()[b]).rev() {
                for j in (1..=k).rev() {
                    let (jf, kf) = (spec.flat(b, j), spec.flat(b, k));
                    let form = self.sys.dnabla_form(self.i, spec.flat(b, j - 1), kf);
                    self.solve(form, (kf, jf))?;
                }
            }
        }
        Ok(())
    }
}

/// The unique torsionless connection with ∇e = 0 and d_∇((E − a0 e)∘) = 0,
/// built by the recursion over upper indices.
pub fn solve_connection(st: &Structure, a0: &Polynomial) -> Result<Connection> {
    let x = st.x_field(a0);
    let sys = System::new(st, mult_operator(&x, &st.c));
    let n = st.n();
    let rows: Vec<Result<BTreeMap<(usize, usize), RatExpr>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Table { sys: &sys, i, known: BTreeMap::new() };
            t.run()?;
            Ok(t.known)
        })
        .collect();
    let mut g = Connection::zero(n, st.nvars());
    for (i, row) in rows.into_iter().enumerate() {
        let row = row?;
        for j in 0..n {
            for k in j..n {
                let v = row
                    .get(&(j, k))
                    .ok_or_else(|| Error::Internal(format!("Γ^{}_{{{},{}}} never computed", i + 1, j + 1, k + 1)))?;
                g.set_sym(i, j, k, v.clone());
            }
        }
    }
    Ok(g)
}

/// (d_∇V)^i_{jk} for all indices.
pub fn d_nabla(v: &Matrix, g: &Connection, space: &Space) -> Tensor3 {
    let n = v.n();
    let dv: Vec<Matrix> = (0..n).map(|s| Matrix::from_fn(n, |a, b| space.d(s, v.get(a, b)))).collect();
    Tensor3::from_fn(n, |i, j, k| {
        let mut acc = dv[j].get(i, k) - dv[k].get(i, j);
        for s in 0..n {
            let a = g.get(i, j, s);
            if !a.is_zero() && !v.get(s, k).is_zero() {
                acc = &acc + &(a * v.get(s, k));
            }
            let b = g.get(i, k, s);
            if !b.is_zero() && !v.get(s, j).is_zero() {
                acc = &acc - &(b * v.get(s, j));
            }
        }
        acc
    })
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ConnectionReport {
    pub torsionless: bool,
    pub flat_unit: bool,
    pub dnabla_zero: bool,
    /// 1-based (i, j, k) violating torsion-freeness.
    pub torsion_violations: Vec<(usize, usize, usize)>,
    /// 1-based (i, j) with Σ_σ Γ^i_{1(σ) j} ≠ 0.
    pub flat_unit_violations: Vec<(usize, usize)>,
    /// 1-based (i, j, k), j < k, with (d_∇ X∘)^i_{jk} ≠ 0.
    pub dnabla_violations: Vec<(usize, usize, usize)>,
}

impl ConnectionReport {
    pub fn ok(&self) -> bool {
        self.torsionless && self.flat_unit && self.dnabla_zero
    }
}

pub fn verify_connection(st: &Structure, a0: &Polynomial, g: &Connection) -> ConnectionReport {
    let n = st.n();
    let spec = &st.spec;
    let mut rep = ConnectionReport::default();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if g.get(i, j, k) != g.get(i, k, j) {
                    rep.torsion_violations.push((i + 1, j + 1, k + 1));
                }
            }
            let mut s = st.space.rzero();
            for a in 0..spec.r() {
                s = &s + g.get(i, spec.flat(a, 0), j);
            }
            if !s.is_zero() {
                rep.flat_unit_violations.push((i + 1, j + 1));
            }
        }
    }
    let x = st.x_field(a0);
    let dn = d_nabla(&mult_operator(&x, &st.c), g, &st.space);
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if !dn.get(i, j, k).is_zero() {
                    rep.dnabla_violations.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    rep.torsionless = rep.torsion_violations.is_empty();
    rep.flat_unit = rep.flat_unit_violations.is_empty();
    rep.dnabla_zero = rep.dnabla_violations.is_empty();
    rep
}

/// Independent solve: for each upper index, Gaussian elimination on the full
/// linear system (flat unit and d_∇(X∘) = 0) in all symmetric symbols. Returns
/// `Ok(None)` when the system does not determine the connection uniquely.
pub fn solve_connection_dense(st: &Structure, a0: &Polynomial) -> Result<Option<Connection>> {
    let n = st.n();
    let x = st.x_field(a0);
    let sys = System::new(st, mult_operator(&x, &st.c));
    let keys: Vec<(usize, usize)> = (0..n).flat_map(|j| (j..n).map(move |k| (j, k))).collect();
    let col: BTreeMap<(usize, usize), usize> = keys.iter().enumerate().map(|(c, &k)| (k, c)).collect();
    let nv = st.nvars();
    let mut g = Connection::zero(n, nv);
    for i in 0..n {
        let mut forms = Vec::new();
        for j in 0..n {
            forms.push(sys.flat_unit_form(j));
        }
        for j in 0..n {
            for k in j + 1..n {
                forms.push(sys.dnabla_form(i, j, k));
            }
        }
        // rows: [coeffs | -constant]
        let m = keys.len();
        let mut rows: Vec<Vec<RatExpr>> = forms
            .into_iter()
            .map(|f| {
                let mut row = vec![RatExpr::zero(nv); m + 1];
                for (k, c) in f.coeffs {
                    row[col[&k]] = c;
                }
                row[m] = -f.constant;
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..rows.len()).find(|&p| !rows[p][c].is_zero()) else {
                return Ok(None);
            };
            rows.swap(p, r);
            let inv = rows[r][c].inv()?;
            for v in rows[r].iter_mut() {
                *v = &*v * &inv;
            }
            for q in 0..rows.len() {
                if q == r || rows[q][c].is_zero() {
                    continue;
                }
                let f = rows[q][c].clone();
                for t in c..=m {
                    if !rows[r][t].is_zero() {
                        rows[q][t] = &rows[q][t] - &(&f * &rows[r][t]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| !row[m].is_zero()) {
            return Err(Error::Internal("inconsistent connection system".into()));
        }
        for (row, &c) in pivots.iter().enumerate() {
            let (j, k) = keys[c];
            g.set_sym(i, j, k, rows[row][m].clone());
        }
    }
    Ok(Some(g))
}

/// ∇_j c^i_{ks} − ∇_k c^i_{js} for constant c, as a four-index family keyed
/// by 0-based (i, j, k, s); only nonzero entries are returned.
pub fn nabla_c_asymmetry(st: &Structure, g: &Connection) -> BTreeMap<[usize; 4], RatExpr> {
    let n = st.n();
    let c = st.c.dense(st.nvars());
    // ∇_j c^i_{ks} = Γ^i_{jt} c^t_{ks} − Γ^t_{jk} c^i_{ts} − Γ^t_{js} c^i_{kt}
    let nabla = |j: usize, i: usize, k: usize, s: usize| {
        let mut acc = st.space.rzero();
        for t in 0..n {
            if !c.get(t, k, s).is_zero() {
                acc = &acc + g.get(i, j, t);
            }
            if !c.get(i, t, s).is_zero() {
                acc = &acc - g.get(t, j, k);
            }
            if !c.get(i, k, t).is_zero() {
                acc = &acc - g.get(t, j, s);
            }
        }
        acc
    };
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                for s in 0..n {
                    let r = &nabla(j, i, k, s) - &nabla(k, i, j, s);
                    if !r.is_zero() {
                        out.insert([i, j, k, s], r);
                    }
                }
            }
        }
    }
    out
}

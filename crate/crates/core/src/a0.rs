use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::{fmt_rational, parse_rational};
use crate::arith::{Polynomial, Rational, Space};
use crate::error::{Error, Result};
use crate::fmanifold::{JordanSpec, Structure};

/// Rational coefficient that reads from a JSON integer or a "p/q" string.
#[derive(Clone, Debug, PartialEq)]
pub struct Coef(pub Rational);

impl Serialize for Coef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(v) = i64::try_from(self.0.numer().clone()) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&fmt_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Coef(Rational::from_integer(v.into()))),
            Raw::Str(s) => parse_rational(&s)
                .map(Coef)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational '{s}'"))),
        }
    }
}

/// Per-block coefficient functions F_{α,1..m_α}, each a univariate polynomial
/// in the block's main variable given by ascending coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A0Family {
    pub blocks: Vec<Vec<Vec<Coef>>>,
}

impl A0Family {
    pub fn check_shape(&self, spec: &JordanSpec) -> Result<()> {
        let got: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        if got != spec.blocks() {
            return Err(Error::Shape(format!("family shape {got:?} does not match blocks {:?}", spec.blocks())));
        }
        Ok(())
    }

    /// The F's as polynomials in `space`, block by block.
    pub fn polynomials(&self, spec: &JordanSpec, space: &Space) -> Result<Vec<Vec<Polynomial>>> {
        self.check_shape(spec)?;
        Ok(self
            .blocks
            .iter()
            .enumerate()
            .map(|(a, fs)| {
                let x = space.u(spec.flat(a, 0));
                fs.iter()
                    .map(|coefs| {
                        let mut p = space.zero();
                        let mut pw = space.one();
                        for c in coefs {
                            p = &p + &pw.scale(&c.0);
                            pw = &pw * &x;
                        }
                        p
                    })
                    .collect()
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Family(A0Family),
    Symbolic,
    External,
}

#[derive(Clone, Debug, PartialEq)]
pub struct A0 {
    pub value: Polynomial,
    pub provenance: Provenance,
}

/// Calls `f` for each multiset of part sizes w_j ∈ 1..=max with Σ w_j ≤ limit,
/// parts listed in non-increasing order.
fn multisets(max: usize, limit: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if !prefix.is_empty() {
        f(prefix);
    }
    let used: usize = prefix.iter().sum();
    let top = prefix.last().copied().unwrap_or(max).min(max);
    for w in 1..=top {
        if used + w > limit {
            break;
        }
        prefix.push(w);
        multisets(max, limit, prefix, f);
        prefix.pop();
    }
}

/// Single-block general solution on the block coordinates `coords` (0-based,
/// main variable first):
/// a = F_m + Σ_{s>0} (1/s!) Σ u^{k_1}…u^{k_s} F^{(s-1)}_{m+s-Σk}, F_{≤0} = 0.
pub fn build_single_block(space: &Space, coords: &[usize], fs: &[Polynomial]) -> Polynomial {
    let m = coords.len();
    assert_eq!(fs.len(), m, "one function per block coordinate");
    let main = coords[0];
    let mut derivs: Vec<Vec<Polynomial>> = fs.iter().map(|f| vec![f.clone()]).collect();
    let mut deriv = |idx: usize, order: usize| -> Polynomial {
        let d = &mut derivs[idx];
        while d.len() <= order {
            let next = space.d_poly(main, d.last().unwrap());
            d.push(next);
        }
        d[order].clone()
    };
    let mut out = fs[m - 1].clone();
    let mut parts = Vec::new();
    let mut terms: Vec<Vec<usize>> = Vec::new();
    multisets(m - 1, m - 1, &mut parts, &mut |p| terms.push(p.to_vec()));
    for p in terms {
        // part w stands for coordinate u^{w+1} of the block
        let weight: usize = p.iter().sum();
        let s = p.len();
        let mut mono = space.one();
        let mut mult = Rational::from_integer(1.into());
        let mut run = 1u32;
        for (idx, &w) in p.iter().enumerate() {
            mono = &mono * &space.u(coords[w]);
            if idx > 0 && p[idx - 1] == w {
                run += 1;
            } else {
                run = 1;
            }
            mult /= Rational::from_integer(run.into());
        }
        let f = deriv(m - 1 - weight, s - 1);
        out = &out + &(&mono * &f).scale(&mult);
    }
    out
}

/// a0 = Σ_α (single-block solution in block α's coordinates).
pub fn build_a0_polys(st: &Structure, fs: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let spec = &st.spec;
    let got: Vec<usize> = fs.iter().map(Vec::len).collect();
    if got != spec.blocks() {
        return Err(Error::Shape(format!("family shape {got:?} does not match blocks {:?}", spec.blocks())));
    }
    let mut out = st.space.zero();
    for (a, f) in fs.iter().enumerate() {
        let coords: Vec<usize> = (0..spec.blocks()[a]).map(|i| spec.flat(a, i)).collect();
        out = &out + &build_single_block(&st.space, &coords, f);
    }
    Ok(out)
}

pub fn build_a0(st: &Structure, fam: &A0Family) -> Result<A0> {
    let fs = fam.polynomials(&st.spec, &st.space)?;
    Ok(A0 { value: build_a0_polys(st, &fs)?, provenance: Provenance::Family(fam.clone()) })
}

/// Adds jets F1, F2, ... (numbered across blocks) to a fresh space for `spec`
/// and returns the space with the per-block F polynomials.
pub fn symbolic_family(spec: &JordanSpec, max_order: u32) -> (Space, Vec<Vec<Polynomial>>) {
    let mut space = Space::new(spec.n());
    let mut idx = Vec::new();
    let mut k = 1;
    for a in 0..spec.r() {
        let mut row = Vec::new();
        for _ in 0..spec.blocks()[a] {
            row.push(space.add_jet(&format!("F{k}"), spec.flat(a, 0), max_order));
            k += 1;
        }
        idx.push(row);
    }
    let fs = idx.iter().map(|row| row.iter().map(|&v| space.var(v)).collect()).collect();
    (space, fs)
}

/// Residual of the master equation at the 0-based pair (i, j):
/// Σ_{s>i} u^{(s-i+1)(α)} ∂_{s(α)}∂_j f − Σ_{s>j} u^{(s-j+1)(β)} ∂_{s(β)}∂_i f + (u^{1(α)} − u^{1(β)}) ∂_i∂_j f.
pub fn master_residual(st: &Structure, f: &Polynomial, i: usize, j: usize) -> Polynomial {
    let spec = &st.spec;
    let sp = &st.space;
    let (a, ii) = spec.label(i);
    let (b, jj) = spec.label(j);
    let di = sp.d_poly(i, f);
    let dj = sp.d_poly(j, f);
    let mut out = sp.zero();
    for s in ii + 1..spec.blocks()[a] {
        let t = sp.d_poly(spec.flat(a, s), &dj);
        if !t.is_zero() {
            out = &out + &(&sp.u(spec.flat(a, s - ii)) * &t);
        }
    }
    for s in jj + 1..spec.blocks()[b] {
        let t = sp.d_poly(spec.flat(b, s), &di);
        if !t.is_zero() {
            out = &out - &(&sp.u(spec.flat(b, s - jj)) * &t);
        }
    }
    if a != b {
        let dij = sp.d_poly(j, &di);
        let diff = &sp.u(spec.flat(a, 0)) - &sp.u(spec.flat(b, 0));
        out = &out + &(&diff * &dij);
    }
    out
}

/// Unordered pairs (1-based, i < j) with nonzero master-equation residual.
pub fn check_master(st: &Structure, f: &Polynomial) -> Vec<((usize, usize), Polynomial)> {
    let n = st.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let r = master_residual(st, f, i, j);
            if !r.is_zero() {
                out.push(((i + 1, j + 1), r));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemViolation {
    /// ∂_i∂_j f ≠ ∂_ī∂_j̄ f although i + j = ī + j̄.
    Unequal((usize, usize), (usize, usize)),
    /// ∂_i∂_j f ≠ 0 although n − i − j ≤ −2.
    Nonvanishing(usize, usize),
}

/// Single-block derivative relations on the first `n` coordinates of `space`
/// (1-based indices in the report).
pub fn check_system_form(space: &Space, n: usize, f: &Polynomial) -> Vec<SystemViolation> {
    let d2 = |i: usize, j: usize| space.d_poly(j - 1, &space.d_poly(i - 1, f));
    let mut out = Vec::new();
    for sum in 2..=2 * n {
        let pairs: Vec<(usize, usize)> = (1..=n).filter_map(|i| (sum > i && sum - i >= i && sum - i <= n).then(|| (i, sum - i))).collect();
        if sum >= n + 2 {
            for &(i, j) in &pairs {
                if !d2(i, j).is_zero() {
                    out.push(SystemViolation::Nonvanishing(i, j));
                }
            }
        } else if let Some((&first, rest)) = pairs.split_first() {
            let v0 = d2(first.0, first.1);
            for &p in rest {
                if d2(p.0, p.1) != v0 {
                    out.push(SystemViolation::Unequal(first, p));
                }
            }
        }
    }
    out
}

/// Degree at most one in the coordinates, with no jet variables.
pub fn is_linear(space: &Space, f: &Polynomial) -> bool {
    f.degree_in_first(space.n()) <= 1 && space.jet_free(f)
}

#[derive(Clone, Debug)]
pub struct Bridge {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
}

/// ∂_{n+1−k} a0^{(n)}(F_1..F_n) against a0^{(k)}(F_1',…,F_{k−1}',F_k)
/// (against a0^{(n)}(F_1',…,F_n') when k = n). The block occupies the first n
/// coordinates of `space`.
pub fn partial_bridge(space: &Space, fs: &[Polynomial], k: usize) -> Result<Bridge> {
    let n = fs.len();
    if k == 0 || k > n || space.n() < n {
        return Err(Error::Index(k, n));
    }
    let coords: Vec<usize> = (0..n).collect();
    let a = build_single_block(space, &coords, fs);
    let lhs = space.d_poly(n - k, &a);
    let rhs = if k == n {
        let d: Vec<Polynomial> = fs.iter().map(|f| space.d_poly(0, f)).collect();
        build_single_block(space, &coords, &d)
    } else {
        let mut g: Vec<Polynomial> = fs[..k - 1].iter().map(|f| space.d_poly(0, f)).collect();
        g.push(fs[k - 1].clone());
        build_single_block(space, &coords[..k], &g)
    };
    let equal = lhs == rhs;
    Ok(Bridge { lhs, rhs, equal })
}

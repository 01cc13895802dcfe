//! Input files for the command line and the Python bindings.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::a0::{build_a0, A0Family, Coef, Provenance, A0};
use crate::arith::parse::{parse_expr, Bindings};
use crate::error::{Error, Result};
use crate::fmanifold::{JordanSpec, Matrix, Structure};
use crate::{Polynomial, Space};

/// Either `{"blocks": [[F11, ..], ..]}` or the bare nested array.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FamilyInput {
    Wrapped(A0Family),
    Bare(Vec<Vec<Vec<Coef>>>),
}

impl FamilyInput {
    pub fn family(&self) -> A0Family {
        match self {
            FamilyInput::Wrapped(f) => f.clone(),
            FamilyInput::Bare(b) => A0Family { blocks: b.clone() },
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub blocks: JordanSpec,
    #[serde(rename = "F", default)]
    pub f: Option<FamilyInput>,
    #[serde(default)]
    pub epsilon: Option<Vec<Coef>>,
    /// Raw a₀ expression, bypassing the family (negative tests).
    #[serde(default)]
    pub a0: Option<String>,
    #[serde(default)]
    pub depth: Option<usize>,
    /// Extra symbolic constants usable in `a0` and `metric`.
    #[serde(default)]
    pub constants: Vec<String>,
    /// Arbitrary one-variable functions, name → coordinate ("u2").
    #[serde(default)]
    pub functions: BTreeMap<String, String>,
    /// Symmetric metric as rows of expressions; only the upper triangle is read.
    #[serde(default)]
    pub metric: Option<Vec<Vec<String>>>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<SpecFile> {
        let sf: SpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("spec file: {e}")))?;
        let given = [sf.f.is_some(), sf.epsilon.is_some(), sf.a0.is_some()].iter().filter(|b| **b).count();
        if given != 1 {
            return Err(Error::Parse("spec file needs exactly one of \"F\", \"epsilon\", \"a0\"".into()));
        }
        Ok(sf)
    }

    /// The coordinate space with the declared constants and functions.
    pub fn space(&self) -> Result<Space> {
        let n = self.blocks.n();
        let mut sp = Space::new(n);
        for c in &self.constants {
            if sp.index_of(c).is_some() {
                return Err(Error::Parse(format!("duplicate name '{c}'")));
            }
            sp.add_const(c);
        }
        for (name, coord) in &self.functions {
            let k = coord
                .strip_prefix('u')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&k| (1..=n).contains(&k))
                .ok_or_else(|| Error::Parse(format!("function {name}: bad coordinate '{coord}'")))?;
            sp.add_jet(name, k - 1, 6);
        }
        Ok(sp)
    }

    pub fn structure(&self) -> Result<Structure> {
        Ok(Structure::with_space(&self.blocks, self.space()?))
    }

    pub fn a0(&self, st: &Structure) -> Result<A0> {
        let sp = &st.space;
        if let Some(f) = &self.f {
            return build_a0(st, &f.family());
        }
        if let Some(eps) = &self.epsilon {
            return Ok(A0 { value: linear_a0(&self.blocks, sp, eps)?, provenance: Provenance::External });
        }
        let text = self.a0.as_deref().unwrap_or_default();
        let e = parse_expr(sp, &Bindings::new(), text)?;
        let value = e.as_polynomial().cloned().ok_or_else(|| Error::Parse(format!("a0 '{text}' is not a polynomial")))?;
        Ok(A0 { value, provenance: Provenance::External })
    }

    pub fn metric_matrix(&self, st: &Structure) -> Result<Option<Matrix>> {
        let Some(rows) = &self.metric else { return Ok(None) };
        let n = st.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("metric must be {n}x{n}")));
        }
        let mut g = Matrix::zero(n, st.nvars());
        for i in 0..n {
            for j in i..n {
                let v = parse_expr(&st.space, &Bindings::new(), &rows[i][j])?;
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        Ok(Some(g))
    }
}

/// Length r: Σ_α ε_α u^{1(α)}. Length n: Σ_i ε_i u^i.
pub fn linear_a0(spec: &JordanSpec, sp: &Space, eps: &[Coef]) -> Result<Polynomial> {
    let coords: Vec<usize> = if eps.len() == spec.r() {
        (0..spec.r()).map(|a| spec.flat(a, 0)).collect()
    } else if eps.len() == spec.n() {
        (0..spec.n()).collect()
    } else {
        return Err(Error::Shape(format!("epsilon needs {} (blocks) or {} (coordinates) entries, got {}", spec.r(), spec.n(), eps.len())));
    };
    let mut a = sp.zero();
    for (c, e) in coords.iter().zip(eps) {
        a = &a + &sp.u(*c).scale(&e.0);
    }
    Ok(a)
}

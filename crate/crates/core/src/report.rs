//! Verification reports for a single spec file.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::a0::{check_master, is_linear};
use crate::connection::{solve_connection, verify_connection, ConnectionReport};
use crate::curvature::{antisymmetry_violations, check_3rc, is_flat, riemann};
use crate::dual::{dual_structure, dual_unit_violations, euler_flatness_violations};
use crate::error::Result;
use crate::fmanifold::Structure;
use crate::hierarchy::{check_commutation, generate, independence_det, CommutationReport};
use crate::metric::{metric_checks, MetricReport};
use crate::specfile::SpecFile;
use crate::Polynomial;

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub master: bool,
    pub connection: bool,
    pub curvature: bool,
    pub hierarchy: Option<usize>,
    pub dual: bool,
    pub metric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MasterSection {
    pub ok: bool,
    /// "i,j" → nonzero residual of the master equation.
    pub residuals: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionSection {
    #[serde(flatten)]
    pub checks: ConnectionReport,
    /// "i,j,k" (j ≤ k) → Γ^i_{jk}, nonzero entries only.
    pub gamma: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub index: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureSection {
    pub linear: bool,
    pub flat: bool,
    pub antisymmetric: bool,
    pub nonzero_components: usize,
    /// (j, k, l, m, i), 1-based.
    pub cond_3rc_violations: Vec<Residual>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCommutation {
    pub pair: (usize, usize),
    pub report: CommutationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Independence {
    pub det_x: String,
    pub det_powers: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchySection {
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub a: Vec<String>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<Vec<String>>>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<String>>,
    pub commuting: bool,
    pub commutation_failures: Vec<PairCommutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independence: Option<Independence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualSection {
    pub label: &'static str,
    pub linear: bool,
    pub dual_flat: bool,
    /// c*^i_{jk}E^j = δ^i_k.
    pub dual_unit: bool,
    /// ∇*E = 0.
    pub euler_flat: bool,
    pub gamma_star: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub blocks: Vec<usize>,
    pub a0: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master: Option<MasterSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsionless: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat_unit: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dnabla_zero: Option<bool>,
    #[serde(rename = "cond_3RC", skip_serializing_if = "Option::is_none")]
    pub cond_3rc: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_flat: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<HierarchySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricReport>,
    pub pass: bool,
}

fn hierarchy_section(st: &Structure, a0: &Polynomial, depth: usize) -> HierarchySection {
    let sp = &st.space;
    let h = match generate(st, a0, depth) {
        Ok(h) => h,
        Err(e) => {
            return HierarchySection { depth, error: Some(e.to_string()), a: vec![], v: vec![], x: vec![], commuting: false, commutation_failures: vec![], independence: None };
        }
    };
    let mut fails = Vec::new();
    for i in 0..h.v.len() {
        for j in i + 1..h.v.len() {
            let r = check_commutation(&h.v[i], &h.v[j], st);
            if !r.is_empty() {
                fails.push(PairCommutation { pair: (i, j), report: r });
            }
        }
    }
    let independence = independence_det(st, &h).ok().map(|(l, r)| Independence { det_x: sp.fmt(&l), det_powers: sp.fmt(&r), equal: l == r });
    HierarchySection {
        depth,
        error: None,
        a: h.a.iter().map(|p| sp.fmt_poly(p)).collect(),
        v: h.v.iter().map(|m| m.to_strings(sp)).collect(),
        x: h.x.iter().map(|x| x.iter().map(|c| sp.fmt(c)).collect()).collect(),
        commuting: fails.is_empty(),
        commutation_failures: fails,
        independence,
    }
}

/// Runs the requested checks. Input problems surface as `Err`; failed checks
/// only clear `pass`.
pub fn run_checks(sf: &SpecFile, opts: &CheckOptions) -> Result<CheckReport> {
    let st = sf.structure()?;
    let sp = &st.space;
    let a0 = sf.a0(&st)?.value;
    let metric_g = if opts.metric { Some(sf.metric_matrix(&st)?.ok_or_else(|| crate::Error::Parse("--metric needs a \"metric\" entry in the spec file".into()))?) } else { None };
    let linear = is_linear(sp, &a0);
    let mut rep = CheckReport {
        blocks: st.spec.blocks().to_vec(),
        a0: sp.fmt_poly(&a0),
        master: None,
        torsionless: None,
        flat_unit: None,
        dnabla_zero: None,
        cond_3rc: None,
        flat: None,
        dual_flat: None,
        connection: None,
        curvature: None,
        hierarchy: None,
        dual: None,
        metric: None,
        pass: true,
    };
    if opts.master {
        let res = check_master(&st, &a0);
        let ok = res.is_empty();
        rep.pass &= ok;
        rep.master = Some(MasterSection { ok, residuals: res.iter().map(|((i, j), p)| (format!("{i},{j}"), sp.fmt_poly(p))).collect() });
    }
    let need_gamma = opts.connection || opts.curvature || opts.dual || opts.metric;
    let gamma = if need_gamma { Some(solve_connection(&st, &a0)?) } else { None };
    if let (true, Some(g)) = (opts.connection, &gamma) {
        let checks = verify_connection(&st, &a0, g);
        rep.pass &= checks.ok();
        rep.torsionless = Some(checks.torsionless);
        rep.flat_unit = Some(checks.flat_unit);
        rep.dnabla_zero = Some(checks.dnabla_zero);
        rep.connection = Some(ConnectionSection { checks, gamma: g.to_map(sp) });
    }
    if let (true, Some(g)) = (opts.curvature, &gamma) {
        let r = riemann(g, sp);
        let rc = check_3rc(&r, &st.c);
        let flat = is_flat(&r);
        let antisymmetric = antisymmetry_violations(&r).is_empty();
        // flatness must track linearity of a₀
        rep.pass &= rc.is_empty() && antisymmetric && flat == linear;
        rep.cond_3rc = Some(rc.is_empty());
        rep.flat = Some(flat);
        rep.curvature = Some(CurvatureSection {
            linear,
            flat,
            antisymmetric,
            nonzero_components: r.nonzero().len(),
            cond_3rc_violations: rc.iter().map(|(k, v)| Residual { index: k.to_vec(), residual: sp.fmt(v) }).collect(),
        });
    }
    if let Some(depth) = opts.hierarchy {
        let h = hierarchy_section(&st, &a0, depth);
        rep.pass &= h.error.is_none() && h.commuting && h.independence.as_ref().is_none_or(|i| i.equal);
        rep.hierarchy = Some(h);
    }
    if let (true, Some(g)) = (opts.dual, &gamma) {
        let d = dual_structure(&st, g)?;
        let dual_flat = is_flat(&riemann(&d.gamma_star, sp));
        let dual_unit = dual_unit_violations(&st, &d).is_empty();
        let euler_flat = euler_flatness_violations(&st, &d.gamma_star).is_empty();
        rep.pass &= dual_unit && euler_flat && (!linear || dual_flat);
        rep.dual_flat = Some(dual_flat);
        rep.dual = Some(DualSection { label: "conjecture verification", linear, dual_flat, dual_unit, euler_flat, gamma_star: d.gamma_star.to_map(sp) });
    }
    if let (Some(g), Some(gm)) = (&gamma, &metric_g) {
        let m = metric_checks(&st, gm, g);
        rep.pass &= m.ok();
        rep.metric = Some(m);
    }
    Ok(rep)
}

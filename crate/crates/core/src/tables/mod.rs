//! Reference tables for the seven regular Jordan types with n ≤ 4: general
//! solution a₀, Christoffel symbols, dual symbols for a generic linear a₀ and a
//! metric fixture. Each case lives in a small text file (see `data/`).
//!
//! Line syntax:
//!
//! ```text
//! case ID | blocks m1 m2 .. | a0 EXPR
//! chr VALUE = [COEF] IJK | [COEF] IJK ..     COEF·Γ^I_JK = VALUE for every item
//! dual VALUE = ..                            same, for the dual connection
//! fix IJK VALUE ; note                       corrected Γ for an item of the previous line
//! extra chr|dual IJK VALUE ; note            nonzero symbol absent from the list
//! let NAME = EXPR | jet NAME uK | const NAMES | ma0 EXPR | g IJ EXPR
//! ```
//!
//! In `chr` lines `D1..Dn` denote ∂_k a₀ and `F1, F1', ..` the jets of the
//! general solution; `dual` lines use constants `eps1..epsn`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::a0::{build_a0_polys, symbolic_family};
use crate::arith::parse::{parse_expr, Bindings};
use crate::arith::rational::fmt_rational;
use crate::connection::{solve_connection, verify_connection, Connection};
use crate::curvature::{check_3rc, is_flat, riemann};
use crate::dual::{dual_structure, euler_flatness_violations};
use crate::error::{Error, Result};
use crate::fmanifold::{canonical_structure, JordanSpec, Matrix, Structure};
use crate::metric::{metric_checks, MetricReport};
use crate::{Polynomial, RatExpr, Space};

pub const CASE_IDS: [&str; 7] = ["2", "3", "21", "4", "31", "22", "211"];

const SOURCES: [&str; 7] = [
    include_str!("data/c2.txt"),
    include_str!("data/c3.txt"),
    include_str!("data/c21.txt"),
    include_str!("data/c4.txt"),
    include_str!("data/c31.txt"),
    include_str!("data/c22.txt"),
    include_str!("data/c211.txt"),
];

type Sym = [usize; 3];

#[derive(Clone, Debug)]
struct Item {
    coef: String,
    sym: Sym,
    fix: Option<(String, String)>,
}

#[derive(Clone, Debug)]
struct Chain {
    value: String,
    items: Vec<Item>,
}

#[derive(Clone, Debug, Default)]
struct TableSrc {
    chains: Vec<Chain>,
    extras: Vec<(Sym, String, String)>,
}

#[derive(Clone, Debug, Default)]
struct MetricSrc {
    lets: Vec<(String, String)>,
    jets: Vec<(String, usize)>,
    consts: Vec<String>,
    a0: String,
    g: Vec<((usize, usize), String)>,
}

#[derive(Clone, Debug)]
pub struct CaseSource {
    pub id: String,
    pub spec: JordanSpec,
    a0: String,
    chr: TableSrc,
    dual: TableSrc,
    metric: MetricSrc,
}

fn parse_sym(s: &str) -> Result<Sym> {
    let d: Vec<usize> = s.chars().map(|c| c.to_digit(10).map(|v| v as usize)).collect::<Option<_>>().ok_or_else(|| Error::Parse(format!("bad symbol '{s}'")))?;
    match d.as_slice() {
        [i, j, k] if *i > 0 && *j > 0 && *k > 0 => Ok([*i, *j, *k]),
        _ => Err(Error::Parse(format!("bad symbol '{s}'"))),
    }
}

fn split_note(s: &str) -> (&str, String) {
    match s.split_once(';') {
        Some((a, b)) => (a.trim(), b.trim().to_string()),
        None => (s.trim(), String::new()),
    }
}

fn parse_item(s: &str) -> Result<Item> {
    let s = s.trim();
    let (coef, sym) = match s.rsplit_once(char::is_whitespace) {
        Some((c, t)) => (c.trim().to_string(), t),
        None => ("1".to_string(), s),
    };
    Ok(Item { coef, sym: parse_sym(sym)?, fix: None })
}

fn parse_chain(rest: &str) -> Result<Chain> {
    let (value, items) = rest.rsplit_once('=').ok_or_else(|| Error::Parse(format!("missing '=' in '{rest}'")))?;
    let items = items.split('|').map(parse_item).collect::<Result<Vec<_>>>()?;
    Ok(Chain { value: value.trim().to_string(), items })
}

fn parse_source(text: &str) -> Result<CaseSource> {
    let mut id = None;
    let mut blocks = None;
    let mut a0 = None;
    let mut chr = TableSrc::default();
    let mut dual = TableSrc::default();
    let mut metric = MetricSrc::default();
    let mut last_dual = false;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
        let (kw, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing arguments"))?;
        let rest = rest.trim();
        match kw {
            "case" => id = Some(rest.to_string()),
            "blocks" => {
                let b = rest.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| err("bad block size"))).collect::<Result<Vec<_>>>()?;
                blocks = Some(JordanSpec::new(b)?);
            }
            "a0" => a0 = Some(rest.to_string()),
            "chr" => {
                chr.chains.push(parse_chain(rest)?);
                last_dual = false;
            }
            "dual" => {
                dual.chains.push(parse_chain(rest)?);
                last_dual = true;
            }
            "fix" => {
                let (body, note) = split_note(rest);
                let (sym, value) = body.split_once(char::is_whitespace).ok_or_else(|| err("fix needs a value"))?;
                let sym = parse_sym(sym)?;
                let t = if last_dual { &mut dual } else { &mut chr };
                let chain = t.chains.last_mut().ok_or_else(|| err("fix before any table line"))?;
                let item = chain.items.iter_mut().find(|it| it.sym == sym).ok_or_else(|| err("fix names a symbol not on the previous line"))?;
                item.fix = Some((value.trim().to_string(), note));
            }
            "extra" => {
                let (body, note) = split_note(rest);
                let mut parts = body.splitn(3, char::is_whitespace);
                let (t, sym, value) = (parts.next(), parts.next(), parts.next());
                let (Some(t), Some(sym), Some(value)) = (t, sym, value) else {
                    return Err(err("extra needs table, symbol and value"));
                };
                let tab = match t {
                    "chr" => &mut chr,
                    "dual" => &mut dual,
                    _ => return Err(err("extra table must be chr or dual")),
                };
                tab.extras.push((parse_sym(sym)?, value.trim().to_string(), note));
            }
            "let" => {
                let (name, e) = rest.split_once('=').ok_or_else(|| err("let needs '='"))?;
                metric.lets.push((name.trim().to_string(), e.trim().to_string()));
            }
            "jet" => {
                let mut p = rest.split_whitespace();
                let (Some(name), Some(coord)) = (p.next(), p.next()) else {
                    return Err(err("jet needs a name and a coordinate"));
                };
                let k = coord.strip_prefix('u').and_then(|d| d.parse::<usize>().ok()).filter(|&k| k > 0).ok_or_else(|| err("bad coordinate"))?;
                metric.jets.push((name.to_string(), k - 1));
            }
            "const" => metric.consts.extend(rest.split_whitespace().map(str::to_string)),
            "ma0" => metric.a0 = rest.to_string(),
            "g" => {
                let (ij, e) = rest.split_once(char::is_whitespace).ok_or_else(|| err("g needs an index pair and a value"))?;
                let d: Vec<usize> = ij.chars().filter_map(|c| c.to_digit(10).map(|v| v as usize)).collect();
                if d.len() != 2 || d.contains(&0) {
                    return Err(err("bad metric index"));
                }
                metric.g.push(((d[0] - 1, d[1] - 1), e.trim().to_string()));
            }
            _ => return Err(err(&format!("unknown keyword '{kw}'"))),
        }
    }
    let missing = |w: &str| Error::Parse(format!("table source lacks '{w}'"));
    Ok(CaseSource {
        id: id.ok_or_else(|| missing("case"))?,
        spec: blocks.ok_or_else(|| missing("blocks"))?,
        a0: a0.ok_or_else(|| missing("a0"))?,
        chr,
        dual,
        metric,
    })
}

pub fn case_source(id: &str) -> Result<CaseSource> {
    let pos = CASE_IDS.iter().position(|c| *c == id).ok_or_else(|| Error::Parse(format!("unknown case '{id}' (expected one of {})", CASE_IDS.join(", "))))?;
    parse_source(SOURCES[pos])
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Listed value differs from the computed one and no correction is recorded.
    Mismatch,
    /// Listed value differs; the recorded correction equals the computed one.
    Erratum,
    /// Computed symbol is nonzero but absent from the list.
    Unlisted,
    /// A recorded correction that is not needed or does not hold.
    BadCorrection,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub symbol: String,
    pub printed: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    /// Number of listed (symbol, value) pairs, counting each chain member.
    pub entries: usize,
    pub matched: usize,
    pub errata: usize,
    pub discrepancies: Vec<Discrepancy>,
    /// Whether the table exactly as listed (unlisted symbols zero) satisfies the
    /// defining conditions of its connection.
    pub listed_table_consistent: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct A0Check {
    pub printed: String,
    pub computed: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricFixtureReport {
    pub parameters: BTreeMap<String, String>,
    pub a0: String,
    pub checks: MetricReport,
    /// Negative control: the identity metric must fail the bridge equation.
    pub identity_bridge_fails: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub a0: A0Check,
    pub connection_verified: bool,
    pub cond_3rc: bool,
    pub chr: TableReport,
    pub dual: TableReport,
    /// Conjecture verification: dual curvature vanishes for the generic linear a₀.
    pub dual_flat: bool,
    pub metric: MetricFixtureReport,
    pub pass: bool,
}

fn sym_key(s: Sym) -> String {
    format!("{},{},{}", s[0], s[1], s[2])
}

fn norm(s: Sym) -> Sym {
    [s[0], s[1].min(s[2]), s[1].max(s[2])]
}

fn check_range(s: Sym, n: usize) -> Result<()> {
    if s.iter().any(|&v| v > n) {
        return Err(Error::Index(*s.iter().max().unwrap(), n));
    }
    Ok(())
}

/// Compares a listed table against `computed`; `consistent` judges the table
/// built from the listed values alone.
fn compare_table(src: &TableSrc, space: &Space, b: &Bindings, computed: &Connection, consistent: impl Fn(&Connection) -> bool) -> Result<TableReport> {
    let n = computed.n();
    let mut rep = TableReport { entries: 0, matched: 0, errata: 0, discrepancies: Vec::new(), listed_table_consistent: false, ok: false };
    let mut listed = Connection::zero(n, space.nvars());
    let mut seen = BTreeSet::new();
    for ch in &src.chains {
        let value = parse_expr(space, b, &ch.value)?;
        for it in &ch.items {
            check_range(it.sym, n)?;
            let s = norm(it.sym);
            let printed = value.try_div(&parse_expr(space, b, &it.coef)?)?;
            let got = computed.get(s[0] - 1, s[1] - 1, s[2] - 1);
            rep.entries += 1;
            if seen.insert(s) {
                listed.set_sym(s[0] - 1, s[1] - 1, s[2] - 1, printed.clone());
            }
            let disc = |status, note: &str| Discrepancy { symbol: sym_key(it.sym), printed: space.fmt(&printed), computed: space.fmt(got), status, note: note.to_string() };
            match (&printed == got, &it.fix) {
                (true, None) => rep.matched += 1,
                (true, Some((_, note))) => rep.discrepancies.push(disc(Status::BadCorrection, note)),
                (false, None) => rep.discrepancies.push(disc(Status::Mismatch, "")),
                (false, Some((fix, note))) => {
                    if &parse_expr(space, b, fix)? == got {
                        rep.errata += 1;
                        rep.discrepancies.push(disc(Status::Erratum, note));
                    } else {
                        rep.discrepancies.push(disc(Status::BadCorrection, note));
                    }
                }
            }
        }
    }
    let extras: BTreeMap<Sym, (&String, &String)> = src.extras.iter().map(|(s, v, note)| (norm(*s), (v, note))).collect();
    for i in 1..=n {
        for j in 1..=n {
            for k in j..=n {
                let s = [i, j, k];
                if seen.contains(&s) {
                    if let Some((_, note)) = extras.get(&s) {
                        rep.discrepancies.push(Discrepancy { symbol: sym_key(s), printed: String::new(), computed: String::new(), status: Status::BadCorrection, note: note.to_string() });
                    }
                    continue;
                }
                let got = computed.get(i - 1, j - 1, k - 1);
                let zero = space.rzero();
                let (status, note) = match extras.get(&s) {
                    Some((v, note)) if &parse_expr(space, b, v)? == got && !got.is_zero() => {
                        rep.errata += 1;
                        (Some(Status::Erratum), note.to_string())
                    }
                    Some((_, note)) => (Some(Status::BadCorrection), note.to_string()),
                    None if !got.is_zero() => (Some(Status::Unlisted), String::new()),
                    None => (None, String::new()),
                };
                if let Some(status) = status {
                    rep.discrepancies.push(Discrepancy { symbol: sym_key(s), printed: space.fmt(&zero), computed: space.fmt(got), status, note });
                }
            }
        }
    }
    rep.listed_table_consistent = consistent(&listed);
    rep.ok = rep.discrepancies.iter().all(|d| d.status == Status::Erratum);
    Ok(rep)
}

fn derivative_bindings(space: &Space, a0: &Polynomial) -> Bindings {
    let r = RatExpr::from(a0.clone());
    (0..space.n()).map(|k| (format!("D{}", k + 1), space.d(k, &r))).collect()
}

fn eps_structure(spec: &JordanSpec) -> Structure {
    let mut space = Space::new(spec.n());
    for k in 1..=spec.n() {
        space.add_const(&format!("eps{k}"));
    }
    Structure::with_space(spec, space)
}

/// Generic linear a₀ = Σ eps_k u_k over a space carrying the constants.
pub fn generic_linear(st: &Structure) -> Polynomial {
    let sp = &st.space;
    let mut a = sp.zero();
    for k in 0..st.n() {
        let e = sp.index_of(&format!("eps{}", k + 1)).expect("eps constant");
        a = &a + &(&sp.var(e) * &sp.u(k));
    }
    a
}

fn run_metric(src: &CaseSource) -> Result<MetricFixtureReport> {
    let m = &src.metric;
    let n = src.spec.n();
    let mut space = Space::new(n);
    for c in &m.consts {
        space.add_const(c);
    }
    for (name, coord) in &m.jets {
        if *coord >= n {
            return Err(Error::Index(coord + 1, n));
        }
        space.add_jet(name, *coord, 4);
    }
    let mut b = Bindings::new();
    let mut parameters = BTreeMap::new();
    for (name, e) in &m.lets {
        let v = parse_expr(&space, &b, e)?;
        let c = v.as_constant().ok_or_else(|| Error::Parse(format!("parameter {name} is not a constant")))?;
        parameters.insert(name.clone(), fmt_rational(&c));
        b.insert(name.clone(), v);
    }
    let st = Structure::with_space(&src.spec, space);
    let sp = &st.space;
    let a0 = parse_expr(sp, &b, &m.a0)?.as_polynomial().cloned().ok_or(Error::NotPolynomialForm)?;
    let mut g = Matrix::zero(n, sp.nvars());
    for ((i, j), e) in &m.g {
        if *i >= n || *j >= n {
            return Err(Error::Index(i.max(j) + 1, n));
        }
        let v = parse_expr(sp, &b, e)?;
        g.set(*i, *j, v.clone());
        g.set(*j, *i, v);
    }
    let gamma = solve_connection(&st, &a0)?;
    let checks = metric_checks(&st, &g, &gamma);
    let identity_bridge_fails = !metric_checks(&st, &Matrix::identity(n, sp.nvars()), &gamma).bridge;
    let ok = checks.ok() && checks.nondegenerate && identity_bridge_fails;
    Ok(MetricFixtureReport { parameters, a0: sp.fmt_poly(&a0), checks, identity_bridge_fails, ok })
}

pub fn verify_case(id: &str) -> Result<CaseReport> {
    let src = case_source(id)?;
    let spec = &src.spec;

    // general solution and Christoffel symbols, symbolic in F
    let (space, fs) = symbolic_family(spec, 6);
    let st = Structure::with_space(spec, space);
    let sp = &st.space;
    let a0 = build_a0_polys(&st, &fs)?;
    let printed_a0 = parse_expr(sp, &Bindings::new(), &src.a0)?;
    let a0_check = A0Check { printed: sp.fmt(&printed_a0), computed: sp.fmt_poly(&a0), equal: printed_a0 == RatExpr::from(a0.clone()) };
    let gamma = solve_connection(&st, &a0)?;
    let connection_verified = verify_connection(&st, &a0, &gamma).ok();
    let cond_3rc = check_3rc(&riemann(&gamma, sp), &st.c).is_empty();
    let b = derivative_bindings(sp, &a0);
    let chr = compare_table(&src.chr, sp, &b, &gamma, |t| verify_connection(&st, &a0, t).ok())?;

    // dual connection for the generic linear a₀
    let est = eps_structure(spec);
    let lin = generic_linear(&est);
    let eg = solve_connection(&est, &lin)?;
    let d = dual_structure(&est, &eg)?;
    let dual_flat = is_flat(&riemann(&d.gamma_star, &est.space));
    let dual_ok = |t: &Connection| euler_flatness_violations(&est, t).is_empty() && is_flat(&riemann(t, &est.space));
    let dual = compare_table(&src.dual, &est.space, &Bindings::new(), &d.gamma_star, dual_ok)?;

    let metric = run_metric(&src)?;
    let pass = a0_check.equal && connection_verified && cond_3rc && chr.ok && dual.ok && dual_flat && metric.ok;
    Ok(CaseReport { id: src.id, a0: a0_check, connection_verified, cond_3rc, chr, dual, dual_flat, metric, pass })
}

/// Runs the requested cases concurrently; results keep the order of `ids`.
pub fn verify_cases(ids: &[String]) -> Result<Vec<CaseReport>> {
    ids.par_iter().map(|id| verify_case(id)).collect()
}

/// The canonical structure for a case id such as "211".
pub fn case_structure(id: &str) -> Result<Structure> {
    Ok(canonical_structure(&case_source(id)?.spec))
}

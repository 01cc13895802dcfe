use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use fcc_core::report::{run_checks, CheckOptions};
use fcc_core::specfile::SpecFile;
use fcc_core::tables::{verify_cases, CaseReport, Status, CASE_IDS};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "fcc", version, about = "Exact checks for regular F-manifolds with compatible connection")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the canonical form of a₀.
    GenA0 {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run the selected checks; exit 1 if any fails.
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        master: bool,
        #[arg(long)]
        connection: bool,
        #[arg(long)]
        curvature: bool,
        /// Hierarchy depth; defaults to "depth" from the spec file, then n.
        #[arg(long, value_name = "K", num_args = 0..=1, default_missing_value = "0")]
        hierarchy: Option<usize>,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        metric: bool,
    },
    /// Recompute the tables of the low-dimensional cases and compare.
    VerifyPaper {
        #[arg(long = "case", value_name = "ID")]
        cases: Vec<String>,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn input_err(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn read_spec(path: &Path) -> Result<SpecFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    SpecFile::from_json(&text).map_err(input_err)
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        // lists of plain values and index tuples stay on one line
        Value::Array(a) if a.iter().any(has_object) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        _ => out.push(format!("{prefix}: {v}")),
    }
}

fn render(v: &Value, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string_pretty(v).expect("json values always serialize") + "\n",
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", v, &mut lines);
            lines.join("\n") + "\n"
        }
    }
}

/// First thing that keeps a case from passing, with both forms where there are two.
fn first_failure(c: &CaseReport) -> Option<String> {
    if !c.a0.equal {
        return Some(format!("case {}: a0 listed {} computed {}", c.id, c.a0.printed, c.a0.computed));
    }
    for (name, t) in [("Gamma", &c.chr), ("dual Gamma", &c.dual)] {
        if let Some(d) = t.discrepancies.iter().find(|d| d.status != Status::Erratum) {
            return Some(format!("case {}: {name}[{}] ({:?}) listed {} computed {}", c.id, d.symbol, d.status, d.printed, d.computed));
        }
    }
    let checks = [
        ("connection not verified", c.connection_verified),
        ("cyclic curvature condition fails", c.cond_3rc),
        ("dual connection not flat", c.dual_flat),
        ("metric fixture fails", c.metric.ok),
    ];
    checks.iter().find(|(_, ok)| !ok).map(|(m, _)| format!("case {}: {m}", c.id))
}

fn summary_text(reports: &[CaseReport]) -> String {
    let mark = |b: bool| if b { "ok" } else { "FAIL" };
    let mut s = format!("{:<5} {:<4} {:<18} {:<18} {:<6} {}\n", "case", "a0", "Gamma", "dual Gamma", "metric", "result");
    for c in reports {
        let tab = |t: &fcc_core::tables::TableReport| format!("{}/{} +{} errata", t.matched, t.entries, t.errata);
        s += &format!(
            "{:<5} {:<4} {:<18} {:<18} {:<6} {}\n",
            c.id,
            mark(c.a0.equal),
            tab(&c.chr),
            tab(&c.dual),
            mark(c.metric.ok),
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    let passed = reports.iter().filter(|c| c.pass).count();
    s += &format!("{passed}/{} cases pass\n", reports.len());
    s
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.cmd {
        Cmd::GenA0 { spec } => {
            let sf = read_spec(spec)?;
            let st = sf.structure().map_err(input_err)?;
            let a0 = sf.a0(&st).map_err(input_err)?;
            let s = st.space.fmt_poly(&a0.value);
            let out = match cli.format {
                Format::Json => render(&serde_json::json!({ "a0": s, "blocks": st.spec.blocks() }), Format::Json),
                Format::Text => s + "\n",
            };
            Ok((out, true))
        }
        Cmd::Check { spec, master, connection, curvature, hierarchy, dual, metric } => {
            let sf = read_spec(spec)?;
            let hierarchy = hierarchy.map(|k| if k > 0 { k } else { sf.depth.unwrap_or_else(|| sf.blocks.n()) });
            let opts = CheckOptions { master: *master, connection: *connection, curvature: *curvature, hierarchy, dual: *dual, metric: *metric };
            let rep = run_checks(&sf, &opts).map_err(input_err)?;
            let v = serde_json::to_value(&rep).expect("report serializes");
            Ok((render(&v, cli.format), rep.pass))
        }
        Cmd::VerifyPaper { cases } => {
            let ids: Vec<String> = if cases.is_empty() { CASE_IDS.iter().map(|s| s.to_string()).collect() } else { cases.clone() };
            let reports = verify_cases(&ids).map_err(input_err)?;
            let pass = reports.iter().all(|c| c.pass);
            let first = reports.iter().find_map(first_failure);
            let out = match cli.format {
                Format::Json => {
                    let mut v = serde_json::json!({ "cases": reports, "pass": pass });
                    if let Some(f) = &first {
                        v["first_failure"] = Value::String(f.clone());
                    }
                    render(&v, Format::Json)
                }
                Format::Text => summary_text(&reports),
            };
            if let Some(f) = first {
                eprintln!("{f}");
            }
            Ok((out, pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (out, pass) = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            return ExitCode::from(f.code);
        }
    };
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &out) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{out}"),
    }
    ExitCode::from(if pass { 0 } else { 1 })
}

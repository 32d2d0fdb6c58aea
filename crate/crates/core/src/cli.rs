//! Command-line front end.
//!
//! Every command builds a JSON report first; the table format is rendered
//! from that report. Exit codes: 0 when every applicable check passes, 1 when
//! one fails, 2 on input or validation errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bggcore::{
    bgg_complex, betti_linear, default_p_max, exactness_profile, validate_module, ExactnessReport,
    ExteriorModule,
};
use crate::chern::{bott_dimension, euler_char, gamma_series, hilbert_poly_f, HodgeProfile};
use crate::error::{Error, Result};
use crate::inequality::{
    check_theorem_c, exorbitance_verdict, gv_check, solved_bounds, surface_h11_bound, CheckRecord,
    ExorbitanceReport, Quantity,
};
use crate::interchange::{
    int_value, parse_gv, parse_module, parse_profile, parse_tensor, profile_to_json,
    rational_value, tensor_to_json,
};
use crate::linforms::{bilinear_equations, rank_report, DEFAULT_SEED};

/// Points sampled per differential in `exactness`.
const RANK_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hodgebgg", version, about = "Exact BGG complexes and Hodge-theoretic inequalities")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Seed for rank sampling; echoed in reports that sample.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,

    /// Write the report here instead of stdout. For `flip` this receives
    /// the flipped tensor and the report stays on stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension, irregularity, p_g, chi(omega_X) and the gamma classes.
    Invariants { profile: PathBuf },
    /// Every inequality, bound and criterion that applies to a profile.
    Check {
        profile: PathBuf,
        /// Generic-vanishing data {"codims": [...], "p_alpha": int?}.
        #[arg(long)]
        gv: Option<PathBuf>,
    },
    /// Exterior Betti numbers b_0..b_K from the Hilbert polynomial.
    Betti {
        profile: PathBuf,
        /// Certify the zero-regular regime with this module first.
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        max_twist: u32,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Regularity of the module's dual within a degree window.
    Regularity {
        module: PathBuf,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Slice homology of L(P) plus sampled rank evidence per differential.
    Exactness {
        module: PathBuf,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Flip a matrix of linear forms and compare bilinear equations.
    Flip { tensor: PathBuf },
    /// Dimensions of H^i(P^n, Omega^p(k)) for i = 0..n.
    Bott {
        n: usize,
        p: usize,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Exorbitance verdict for the canonical series.
    Exorbitance { profile: PathBuf },
}

/// A finished command: its report, whether any check failed, and warnings.
struct Outcome {
    report: Value,
    failed: bool,
    warnings: Vec<String>,
    /// Extra file payload (the flipped tensor).
    payload: Option<Value>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self {
            report,
            failed: false,
            warnings: Vec::new(),
            payload: None,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cfg) {
        Ok(outcome) => match emit(&cfg, outcome, stdout, stderr) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn emit(cfg: &RunConfig, outcome: Outcome, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let text = match cfg.format {
        Format::Json => canonical_json(&outcome.report),
        Format::Table => render_table(&outcome.report),
    };
    match (&cfg.out, outcome.payload) {
        (Some(path), Some(payload)) => {
            write_file(path, &canonical_json(&payload))?;
            write_stdout(stdout, &text)?;
        }
        (Some(path), None) => write_file(path, &text)?,
        (None, _) => write_stdout(stdout, &text)?,
    }
    Ok(if outcome.failed { 1 } else { 0 })
}

fn write_stdout(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Error::Invalid(format!("writing output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Prefixes parse and validation errors with the offending file.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_profile(path: &Path) -> Result<HodgeProfile> {
    in_file(path, parse_profile(&read(path)?))
}

fn load_module(path: &Path) -> Result<ExteriorModule> {
    let m = in_file(path, parse_module(&read(path)?))?;
    in_file(path, validate_module(&m))?;
    Ok(m)
}

/// Pretty JSON with sorted keys and a trailing newline. Parsing the output
/// and serializing again reproduces it byte for byte.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Invariants { profile } => Ok(Outcome::ok(invariants(&load_profile(profile)?))),
        Command::Check { profile, gv } => {
            let h = load_profile(profile)?;
            let gv = match gv {
                Some(path) => {
                    let g = in_file(path, parse_gv(&read(path)?))?;
                    in_file(path, g.validate(&h))?;
                    Some(g)
                }
                None => None,
            };
            let mut report = check_theorem_c(&h);
            report.extend(solved_bounds(&h));
            if let Some(g) = &gv {
                report.extend(gv_check(g, &h)?);
            }
            let exo = exorbitance_verdict(&h);
            let mut warnings = Vec::new();
            if report.all_not_applicable() {
                warnings.push("every check is not-applicable: no hypothesis flag is asserted".to_string());
            }
            let mut v = json!({
                "command": "check",
                "profile": profile_to_json(&h),
                "chi": euler_char(&h),
                "checks": report.checks.iter().map(check_value).collect::<Vec<_>>(),
                "exorbitance": exorbitance_value(&exo),
                "passed": !report.any_failed(),
                "warnings": warnings,
            });
            if h.dim() == 2 && h.q() >= 2 {
                v["surface_h11_bound"] = json!(surface_h11_bound(h.q())?);
            }
            Ok(Outcome {
                report: v,
                failed: report.any_failed(),
                warnings,
                payload: None,
            })
        }
        Command::Betti {
            profile,
            module,
            max_twist,
            pmax,
        } => {
            let h = load_profile(profile)?;
            let values = match module {
                Some(path) => {
                    let m = load_module(path)?;
                    let p_max = pmax.unwrap_or_else(|| default_p_max(m.top(), m.q()));
                    (0..=*max_twist as i64)
                        .map(|i| betti_linear(&m, &h, i, p_max).map(|b| int_value(&b)))
                        .collect::<Result<Vec<_>>>()?
                }
                None => (0..=*max_twist as i64)
                    .map(|i| int_value(&hilbert_poly_f(&h, i)))
                    .collect(),
            };
            Ok(Outcome::ok(json!({
                "command": "betti",
                "profile": profile_to_json(&h),
                "betti": values,
                "regularity_certified": module.is_some(),
            })))
        }
        Command::Regularity { module, pmax } => {
            let m = load_module(module)?;
            let p_max = pmax.unwrap_or_else(|| default_p_max(m.top(), m.q()));
            let r = exactness_profile(&bgg_complex(&m)?, p_max);
            Ok(Outcome {
                failed: !r.ledger_ok,
                ..Outcome::ok(json!({
                    "command": "regularity",
                    "q": r.q,
                    "top": r.top,
                    "p_max": r.p_max,
                    "regularity": r.regularity,
                    "witness": slice_value(r.first_failure),
                    "spot_totals": spot_totals(&r),
                    "ledger_ok": r.ledger_ok,
                }))
            })
        }
        Command::Exactness { module, pmax } => {
            let m = load_module(module)?;
            let p_max = pmax.unwrap_or_else(|| default_p_max(m.top(), m.q()));
            let c = bgg_complex(&m)?;
            let r = exactness_profile(&c, p_max);
            let ranks = c
                .diffs()
                .iter()
                .enumerate()
                .map(|(j, u)| {
                    let rep = rank_report(u, RANK_SAMPLES, cfg.seed)?;
                    Ok(json!({
                        "differential": j,
                        "generic_rank": rep.generic_rank,
                        "sampled": rep.sampled,
                        "verdict": rep.verdict(),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome {
                failed: !r.ledger_ok,
                ..Outcome::ok(json!({
                    "command": "exactness",
                    "q": r.q,
                    "top": r.top,
                    "p_max": r.p_max,
                    "term_dims": r.term_dims,
                    "homology": r.homology,
                    "spot_totals": spot_totals(&r),
                    "first_failure": slice_value(r.first_failure),
                    "regularity": r.regularity,
                    "ledger_ok": r.ledger_ok,
                    "graded_blocks": r.graded_blocks,
                    "seed": cfg.seed,
                    "rank_reports": ranks,
                }))
            })
        }
        Command::Flip { tensor } => {
            let u = in_file(tensor, parse_tensor(&read(tensor)?))?;
            let f = u.flip();
            let mut before = bilinear_equations(&u);
            let mut after = bilinear_equations(&f);
            before.sort();
            after.sort();
            let matches = before == after;
            let involution = f.flip() == u;
            let (a, b, q) = u.shape();
            let (fa, fb, fq) = f.shape();
            Ok(Outcome {
                report: json!({
                    "command": "flip",
                    "shape": [a, b, q],
                    "flipped_shape": [fa, fb, fq],
                    "equations": before.len(),
                    "equations_match": matches,
                    "involution": involution,
                    "tensor": tensor_to_json(&f),
                }),
                failed: !(matches && involution),
                warnings: Vec::new(),
                payload: Some(tensor_to_json(&f)),
            })
        }
        Command::Bott { n, p, k } => {
            if p > n {
                return Err(Error::Invalid(format!("need 0 <= p <= n, got p={p}, n={n}")));
            }
            let dims = bott_dimension(*n, *p, *k)?;
            Ok(Outcome::ok(json!({
                "command": "bott",
                "n": n,
                "p": p,
                "k": k,
                "dims": dims.iter().map(int_value).collect::<Vec<_>>(),
            })))
        }
        Command::Exorbitance { profile } => {
            let h = load_profile(profile)?;
            let mut v = exorbitance_value(&exorbitance_verdict(&h));
            v["command"] = json!("exorbitance");
            v["profile"] = profile_to_json(&h);
            Ok(Outcome::ok(v))
        }
    }
}

fn invariants(h: &HodgeProfile) -> Value {
    let c = gamma_series(h);
    json!({
        "command": "invariants",
        "dimension": h.dim(),
        "h0": h.h0(),
        "q": h.q(),
        "p_g": h.p_g(),
        "chi": euler_char(h),
        "gamma": c.gamma()[1..].iter().map(int_value).collect::<Vec<_>>(),
    })
}

fn slice_value(s: Option<(usize, usize)>) -> Value {
    match s {
        Some((spot, degree)) => json!({ "spot": spot, "degree": degree }),
        None => Value::Null,
    }
}

fn spot_totals(r: &ExactnessReport) -> Vec<usize> {
    (0..=r.top).map(|j| r.spot_total(j)).collect()
}

fn quantity_value(x: &Quantity) -> Value {
    match x {
        Quantity::Int(n) => int_value(n),
        Quantity::Rat(r) => rational_value(r),
        Quantity::Surd { base, radicand } => json!({
            "base": rational_value(base),
            "radicand": int_value(radicand),
        }),
    }
}

fn check_value(c: &CheckRecord) -> Value {
    json!({
        "name": c.name,
        "requires": c.requires.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "status": c.status.as_str(),
        "lhs": c.lhs.as_ref().map(quantity_value),
        "rhs": c.rhs.as_ref().map(quantity_value),
        "witness": c.witness,
        "note": c.note,
    })
}

fn exorbitance_value(e: &ExorbitanceReport) -> Value {
    json!({
        "verdict": e.verdict.as_str(),
        "index": e.index,
        "segre": e.segre.as_ref().map(int_value),
        "reason": e.reason,
    })
}

/// Renders a report as aligned text. Objects become `key: value` lines,
/// arrays of objects become tables, arrays of arrays one line per row.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let Value::Object(map) = v else {
        out.push_str(&format!("{pad}{}\n", cell(v)));
        return;
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, x) in map {
        match x {
            Value::Object(_) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_into(x, indent + 2, out);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_rows(items, indent + 2, out);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for (i, row) in items.iter().enumerate() {
                    out.push_str(&format!("{pad}  [{i}] {}\n", cell(row)));
                }
            }
            _ => out.push_str(&format!("{pad}{k:<width$}  {}\n", cell(x))),
        }
    }
}

/// Columns shown first in tables, in this order; the rest keep key order.
const LEAD_COLUMNS: [&str; 4] = ["name", "status", "lhs", "rhs"];

fn render_rows(items: &[Value], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let mut cols: Vec<&String> = Vec::new();
    for it in items {
        for k in it.as_object().expect("objects").keys() {
            if !cols.contains(&k) {
                cols.push(k);
            }
        }
    }
    let rank = |c: &str| LEAD_COLUMNS.iter().position(|x| *x == c).unwrap_or(LEAD_COLUMNS.len());
    cols.sort_by_key(|c| rank(c));
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|it| {
            let m: &Map<String, Value> = it.as_object().expect("objects");
            cols.iter()
                .map(|c| m.get(*c).map_or(String::new(), cell))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let s: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(x, w)| format!("{x:<w$}"))
            .collect();
        format!("{pad}{}\n", s.join("  ").trim_end())
    };
    out.push_str(&line(cols.iter().map(|c| c.as_str()).collect()));
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(cell).collect::<Vec<_>>().join(", ")),
        Value::Object(m) if m.contains_key("radicand") => {
            format!("{} + sqrt({})/2", cell(&m["base"]), cell(&m["radicand"]))
        }
        other => other.to_string(),
    }
}

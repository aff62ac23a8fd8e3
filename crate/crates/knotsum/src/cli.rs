//! Command-line driver. Exit codes: 0 success, 1 semantic failure, 2 input error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::delta::{delta_complex_of_diagram, validate_complex};
use crate::error::Error;
use crate::field::{Field, FieldSpec, Fp, Rational};
use crate::functor::{knot_invariant, knot_invariant_checked, long_knot_data};
use crate::hopf::{builtin, canonical_tmatrix, validate_hopf, HopfData, HopfFile};
use crate::linmap::Morphism;
use crate::statesum::statesum_report;
use crate::tangle::{diagram_combinatorics, parse_tangle, TangleWord};
use crate::tmatrix::build_rho_tau;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Every subcommand takes the same flags; each uses the ones it needs.
#[derive(Parser, Debug)]
#[command(name = "knotsum", version, about = "Exact knot invariants from Hopf algebra data")]
struct Cli {
    #[arg(value_enum)]
    command: CommandName,
    /// Hopf JSON file or builtin:NAME.
    #[arg(long)]
    hopf: Option<String>,
    /// Tangle word file.
    #[arg(long)]
    tangle: Option<PathBuf>,
    /// Framing parameter.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    k: i64,
    /// Recompute at k, k+1, k+2 and require equal results.
    #[arg(long)]
    check_k: bool,
    /// q or fp:P; overrides the field in the Hopf file.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for Morphism JSON artifacts.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    ValidateHopf,
    Invariant,
    Statesum,
    Complex,
}

pub enum HopfSource {
    Builtin(String),
    File(HopfFile),
}

pub struct RunConfig {
    pub command: CommandName,
    pub hopf: Option<HopfSource>,
    pub tangle: Option<TangleWord>,
    pub field: FieldSpec,
    pub k: i64,
    pub check_k: bool,
    pub format: Format,
    pub dump: Option<PathBuf>,
    pub inject_fault: bool,
}

/// What a run produced: exit code, standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Semantic(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TangleParse { .. } | Error::InvalidHopf(_) | Error::ScalarParse { .. } | Error::InvalidField(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Semantic(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path, what: &str) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {what} {}: {e}", path.display())))
}

fn load(raw: Cli) -> Run<RunConfig> {
    let hopf = match raw.hopf.as_deref() {
        None => None,
        Some(s) => Some(match s.strip_prefix("builtin:") {
            Some(name) => HopfSource::Builtin(name.to_string()),
            None => HopfSource::File(HopfFile::from_json(&read(Path::new(s), "Hopf file")?)?),
        }),
    };
    let needs_hopf = raw.command != CommandName::Complex;
    if needs_hopf && hopf.is_none() {
        return Err(Failure::Input("--hopf is required".into()));
    }
    let tangle = match &raw.tangle {
        None if raw.command == CommandName::ValidateHopf => None,
        None => return Err(Failure::Input("--tangle is required".into())),
        Some(path) => {
            let text = read(path, "tangle file")?;
            if text.trim().is_empty() {
                return Err(Failure::Input(format!("tangle file {} is empty", path.display())));
            }
            Some(parse_tangle(&text)?)
        }
    };
    let field = match (&raw.field, &hopf) {
        (Some(f), _) => FieldSpec::parse(f)?,
        (None, Some(HopfSource::File(file))) => file.field,
        _ => FieldSpec::Rationals,
    };
    field.validate()?;
    Ok(RunConfig {
        command: raw.command,
        hopf,
        tangle,
        field,
        k: raw.k,
        check_k: raw.check_k,
        format: raw.format,
        dump: raw.dump,
        inject_fault: raw.inject_fault,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let raw = match Cli::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = load(raw).and_then(|cfg| {
        let report = match cfg.field {
            FieldSpec::Rationals => execute::<Rational>(&cfg)?,
            FieldSpec::Prime { .. } => execute::<Fp>(&cfg)?,
        };
        Ok((cfg.format, report))
    });
    match result {
        Ok((format, (passed, value))) => Outcome {
            code: if passed { EXIT_OK } else { EXIT_SEMANTIC },
            stdout: render(&value, format),
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Semantic(msg)) => {
            Outcome { code: EXIT_SEMANTIC, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn hopf_data<S: Field>(cfg: &RunConfig, ctx: &S::Ctx) -> Run<HopfData<S>> {
    match cfg.hopf.as_ref().expect("checked while loading") {
        HopfSource::Builtin(name) => Ok(builtin(name, ctx)?),
        HopfSource::File(file) => Ok(HopfData::from_file(file, ctx)?),
    }
}

/// Loads and validates the Hopf data; a failing axiom is a semantic error.
fn valid_hopf<S: Field>(cfg: &RunConfig, ctx: &S::Ctx) -> Run<HopfData<S>> {
    let h = hopf_data::<S>(cfg, ctx)?;
    let report = validate_hopf(&h)?;
    if !report.passed {
        return Err(Failure::Semantic(format!("Hopf axioms fail: {}", report.failed().join(", "))));
    }
    Ok(h)
}

fn execute<S: Field>(cfg: &RunConfig) -> Run<(bool, Value)> {
    let ctx = S::ctx_from_spec(&cfg.field)?;
    match cfg.command {
        CommandName::ValidateHopf => cmd_validate_hopf::<S>(cfg, &ctx),
        CommandName::Invariant => cmd_invariant::<S>(cfg, &ctx),
        CommandName::Statesum => cmd_statesum::<S>(cfg, &ctx),
        CommandName::Complex => cmd_complex(cfg),
    }
}

fn cmd_validate_hopf<S: Field>(cfg: &RunConfig, ctx: &S::Ctx) -> Run<(bool, Value)> {
    let h = hopf_data::<S>(cfg, ctx)?;
    let report = validate_hopf(&h)?;
    let value = json!({
        "field": h.field().to_string(),
        "dim": h.dim,
        "passed": report.passed,
        "failed": report.failed(),
        "axioms": serde_json::to_value(&report.axioms).expect("report serializes"),
    });
    Ok((report.passed, value))
}

fn morphism_value<S: Field>(m: &Morphism<S>) -> Value {
    serde_json::to_value(m.to_json()).expect("morphism serializes")
}

fn dump<S: Field>(dir: &Path, items: &[(&str, &Morphism<S>)]) -> Run<()> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    for (name, m) in items {
        let path = dir.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&m.to_json()).expect("morphism serializes");
        std::fs::write(&path, text + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_invariant<S: Field>(cfg: &RunConfig, ctx: &S::Ctx) -> Run<(bool, Value)> {
    let w = cfg.tangle.as_ref().expect("checked while loading");
    let data = long_knot_data(w)?;
    let h = valid_hopf::<S>(cfg, ctx)?;
    let pkg = build_rho_tau(&canonical_tmatrix(&h)?, cfg.k)?;
    let ks: Vec<i64> = if cfg.check_k { (cfg.k..=cfg.k + 2).collect() } else { vec![cfg.k] };
    let psi = if cfg.check_k { knot_invariant_checked(&pkg, w, &ks)? } else { knot_invariant(&pkg, w, cfg.k)? };
    if let Some(dir) = &cfg.dump {
        dump(
            dir,
            &[
                ("rho", &pkg.rho),
                ("rho_plus", &pkg.rho_plus),
                ("rho_minus", &pkg.rho_minus),
                ("omega", &pkg.omega),
                ("psi", &psi),
            ],
        )?;
    }
    let wn = if data.twice_winding % 2 == 0 {
        json!(data.twice_winding / 2)
    } else {
        json!(format!("{}/2", data.twice_winding))
    };
    let mut value = morphism_value(&psi);
    value["wr"] = json!(data.writhe);
    value["wn"] = wn;
    value["k_checked"] = json!(ks);
    Ok((true, value))
}

fn cmd_statesum<S: Field>(cfg: &RunConfig, ctx: &S::Ctx) -> Run<(bool, Value)> {
    let w = cfg.tangle.as_ref().expect("checked while loading");
    let h = valid_hopf::<S>(cfg, ctx)?;
    let report = statesum_report(w, &h, cfg.k, cfg.inject_fault)?;
    let rows: Vec<Vec<String>> = report.matrix.to_rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let value = json!({
        "dom": crate::tangle::format_signs(w.dom()),
        "cod": crate::tangle::format_signs(w.cod()),
        "k": cfg.k,
        "matrix": rows,
        "crosscheck": report.crosscheck,
        "crossings": report.crossings,
        "edges": report.edges,
    });
    Ok((report.crosscheck, value))
}

fn cmd_complex(cfg: &RunConfig) -> Run<(bool, Value)> {
    let w = cfg.tangle.as_ref().expect("checked while loading");
    let comb = diagram_combinatorics(w)?;
    if comb.crossings.is_empty() {
        return Ok((
            true,
            json!({ "crossings": 0, "edges": comb.edges.len(), "counts": [], "faces": [], "valid": true }),
        ));
    }
    let x = delta_complex_of_diagram(&comb)?;
    let report = validate_complex(&x);
    let value = json!({
        "crossings": comb.crossings.len(),
        "edges": comb.edges.len(),
        "counts": x.counts,
        "faces": x.faces,
        "valid": report.passed,
        "identities_checked": report.checked,
    });
    Ok((report.passed, value))
}

/// JSON is pretty-printed with sorted keys; text mode prints one `key: value`
/// line per field and one line per matrix row.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("value serializes") + "\n",
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = value {
                for (key, v) in map {
                    match v {
                        Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_array) => {
                            out.push_str(&format!("{key}:\n"));
                            for row in rows {
                                out.push_str("  ");
                                out.push_str(&text_scalar(row));
                                out.push('\n');
                            }
                        }
                        _ => out.push_str(&format!("{key}: {}\n", text_scalar(v))),
                    }
                }
            } else {
                out.push_str(&text_scalar(value));
                out.push('\n');
            }
            out
        }
    }
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Array(_) => format!("[{}]", text_scalar(item)),
                _ => text_scalar(item),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

//! Batch front end: classify transformation sets, audit models, build
//! named transformations, solve interval instances, and run the property
//! suites. Reports go to stdout as aligned text, or as machine JSON with
//! `--json`. Exit codes: 0 all checks pass, 1 a check failed (a witness is
//! printed), 2 usage or parse error.

mod decimal;
mod poly;

use clap::{Parser, Subcommand};
use decimal::decimal_approx;
use kin_core::classify::{classify_set, clock_status, ClassifyError, ClockStatus};
use kin_core::efield::{ivt_sqrt_quadratic, FieldElem, FieldError};
use kin_core::geom::Line;
use kin_core::model::{Model, ModelSpec, Verdict, DEFAULT_AUDIT_TRIPLES};
use kin_core::verify::{run_suite, SuiteConfig, SuiteOutcome, SUITE_NAMES};
use kin_core::xform::{build_named, is_trivial, AffineMap, MakeArgs, MapSpec};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kin", version, about = "Exact kinematics toolkit")]
struct Cli {
    /// Fractional digits in decimal approximations (display only).
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a JSON list of transformations into its kinematic family.
    Classify { file: PathBuf },
    /// Build the model described by a spec file and audit the axioms.
    CheckModel {
        file: PathBuf,
        /// Overrides the seed stored in the model file.
        #[arg(long)]
        seed: Option<u64>,
        /// Witness JSON from a failed run; re-executes just that check.
        #[arg(long, allow_hyphen_values = true)]
        replay: Option<String>,
    },
    /// Print a named transformation as a matrix plus translation.
    Make {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Comma-separated components, e.g. --vec 0,1,0,0.
        #[arg(long, allow_hyphen_values = true)]
        vec: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Solve sqrt(F(x)/G(x)) = y for x in [a, b], exactly.
    Ivt {
        #[arg(long = "F", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "G", allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Run the seeded property suites.
    VerifyTheorems {
        /// Suite names to run; default is all of them.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overrides each suite's default random-case count.
        #[arg(long)]
        cases: Option<usize>,
        /// Witness JSON from a failed run; re-executes just that case.
        #[arg(long, allow_hyphen_values = true)]
        replay: Option<String>,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`kin ... | head`) like other batch tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let digits = cli.digits;
    let json = cli.json;
    match cli.command {
        Command::Classify { file } => cmd_classify(&file, digits, json),
        Command::CheckModel { file, seed, replay } => cmd_check_model(&file, seed, replay, json),
        Command::Make { name, c, v, u, vec, lambda } => cmd_make(&name, c, v, u, vec, lambda, json),
        Command::Ivt { f, g, a, b, y } => cmd_ivt(&f, &g, &a, &b, &y, digits, json),
        Command::VerifyTheorems { suites, seed, cases, replay } => {
            cmd_verify_theorems(&suites, seed, cases, replay, json)
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn status_str(s: ClockStatus) -> &'static str {
    match s {
        ClockStatus::Rest => "rest",
        ClockStatus::Slow => "slow",
        ClockStatus::Fast => "fast",
        ClockStatus::Accurate => "accurate",
    }
}

// ---- classify ---------------------------------------------------------------

fn load_maps(file: &PathBuf) -> Result<Vec<AffineMap>, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let specs: Vec<MapSpec> =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    specs
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.resolve().map_err(|e| format!("entry {i}: {e}")))
        .collect()
}

fn cmd_classify(file: &PathBuf, digits: usize, json: bool) -> ExitCode {
    let maps = match load_maps(file) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let statuses: Vec<&str> = maps.iter().map(|m| status_str(clock_status(m))).collect();
    match classify_set(&maps) {
        Ok(verdict) => {
            let kappa = verdict.kappa();
            let c = verdict.c();
            if json {
                let mut body = json!({
                    "variant": verdict.variant_name(),
                    "elements": maps.len(),
                    "clock_status": statuses,
                });
                if let Some(k) = &kappa {
                    body["kappa"] = json!(k.to_string());
                    body["kappa_decimal"] = json!(decimal_approx(k, digits));
                }
                if let Some(c) = c {
                    body["c"] = json!(c.to_string());
                    body["c_decimal"] = json!(decimal_approx(c, digits));
                }
                println!("{body}");
            } else {
                println!("verdict: {}", verdict.variant_name());
                if let Some(k) = &kappa {
                    println!("kappa: {k} \u{2248} {}", decimal_approx(k, digits));
                }
                if let Some(c) = c {
                    println!("c: {c} \u{2248} {}", decimal_approx(c, digits));
                }
                println!("elements: {}", maps.len());
                println!("clock status:");
                for (i, s) in statuses.iter().enumerate() {
                    println!("  [{i}] {s}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(ClassifyError::Inconsistent(w)) => {
            if json {
                let movers: Vec<_> = w
                    .moving_kappas
                    .iter()
                    .map(|(i, k)| json!({"index": i, "kappa": k.to_string()}))
                    .collect();
                let body = json!({
                    "error": "inconsistent",
                    "offender": w.offender,
                    "kappa": w.kappa.as_ref().map(|k| k.to_string()),
                    "kappa_source": w.kappa_source,
                    "disagreeing": w.disagreeing.as_ref().map(|(i, k)| {
                        json!({"index": i, "kappa": k.to_string()})
                    }),
                    "moving_kappas": movers,
                    "clock_status": statuses,
                });
                println!("{body}");
            } else {
                println!("inconsistent: {w}");
                if !w.moving_kappas.is_empty() {
                    println!("moving elements and their kappas:");
                    for (i, k) in &w.moving_kappas {
                        println!("  [{i}] kappa = {k}");
                    }
                }
            }
            ExitCode::FAILURE
        }
        Err(other) => usage_error(other),
    }
}

// ---- check-model ------------------------------------------------------------

fn cmd_check_model(
    file: &PathBuf,
    seed: Option<u64>,
    replay: Option<String>,
    json: bool,
) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", file.display())),
    };
    let mut spec: ModelSpec = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("{}: {e}", file.display())),
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    let run_seed = spec.seed;
    let model = match Model::from_spec(spec) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    if let Some(witness) = replay {
        return replay_model_check(&model, run_seed, &witness, json);
    }
    let report = model.audit(run_seed, DEFAULT_AUDIT_TRIPLES);
    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!(
            "observers: {} ({})",
            report.observers,
            if report.saturated { "saturated closure" } else { "unsaturated sample" }
        );
        println!("seed: {}", report.seed);
        println!("axioms:");
        for check in &report.checks {
            let extra = match (check.witnessed, check.structural) {
                (Some(w), Some(s)) => format!(", witnessed {w}, structural {s}"),
                _ => String::new(),
            };
            match &check.verdict {
                Verdict::Pass => {
                    println!("  {}: pass (checked {}{extra})", check.axiom, check.checked)
                }
                Verdict::NotCheckable { reason } => {
                    println!("  {}: not checkable ({reason})", check.axiom)
                }
                Verdict::Fail { witness } => {
                    println!(
                        "  {}: FAIL [{}] {}",
                        check.axiom,
                        witness.observers.join(", "),
                        witness.detail
                    );
                }
            }
            if let Some(note) = &check.note {
                println!("      note: {note}");
            }
        }
        println!("existence:");
        let flags = [
            ("moving_observer", &report.existence.moving_observer),
            ("slow_clock", &report.existence.slow_clock),
            ("fast_clock", &report.existence.fast_clock),
            ("moving_accurate_clock", &report.existence.moving_accurate_clock),
        ];
        for (name, flag) in flags {
            match &flag.witness {
                Some((m, k)) if flag.holds => println!("  {name}: yes ({m} vs {k})"),
                _ => println!("  {name}: {}", if flag.holds { "yes" } else { "no" }),
            }
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Re-runs a single failed check from its witness JSON. The fast paths
/// recompute the claim directly from the named observers; anything else
/// re-audits with the same seed and reports the named check.
fn replay_model_check(model: &Model, seed: u64, witness: &str, json: bool) -> ExitCode {
    let parsed: serde_json::Value = match serde_json::from_str(witness) {
        Ok(v) => v,
        Err(e) => return usage_error(format!("replay witness: {e}")),
    };
    let axiom = match parsed.get("axiom").and_then(|v| v.as_str()) {
        Some(a) => a.to_string(),
        None => return usage_error("replay witness needs an \"axiom\" field"),
    };
    let observers: Vec<String> = parsed
        .get("observers")
        .and_then(|v| v.as_array())
        .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
        .unwrap_or_default();
    let outcome: Result<Result<(), String>, String> = (|| {
        let wv = |m: &str, k: &str| model.worldview(m, k).map_err(|e| e.to_string());
        match (axiom.as_str(), observers.len()) {
            ("worldview", 1) => {
                let w = wv(&observers[0], &observers[0])?;
                Ok(if w.is_identity() {
                    Ok(())
                } else {
                    Err("self-worldview is not the identity".into())
                })
            }
            ("worldview", 3) => {
                let (m, h, k) = (&observers[0], &observers[1], &observers[2]);
                let composed = wv(m, h)?.compose(&wv(h, k)?);
                Ok(if composed == wv(m, k)? {
                    Ok(())
                } else {
                    Err("worldview composition law broke on this triple".into())
                })
            }
            ("colocation", 2) => {
                let w = wv(&observers[0], &observers[1])?;
                let axis = Line::time_axis();
                Ok(if w.apply_line(&axis) == axis && !is_trivial(&w) {
                    Err(format!(
                        "worldview fixes the time axis setwise but is not trivial: {w:?}"
                    ))
                } else {
                    Ok(())
                })
            }
            ("worldviews_in_sample", 2) => {
                let w = wv(&observers[0], &observers[1])?;
                Ok(if model.maps().any(|m| *m == w) {
                    Ok(())
                } else {
                    Err("worldview of a sample pair falls outside the sample".into())
                })
            }
            _ => {
                let report = model.audit(seed, DEFAULT_AUDIT_TRIPLES);
                let check = report
                    .check(&axiom)
                    .ok_or_else(|| format!("unknown axiom '{axiom}'"))?;
                Ok(match &check.verdict {
                    Verdict::Fail { witness } => Err(witness.detail.clone()),
                    _ => Ok(()),
                })
            }
        }
    })();
    match outcome {
        Err(usage) => usage_error(usage),
        Ok(result) => {
            let ok = result.is_ok();
            if json {
                let body = json!({
                    "axiom": axiom,
                    "observers": observers,
                    "reproduced": !ok,
                    "detail": result.as_ref().err(),
                });
                println!("{body}");
            } else if let Err(detail) = &result {
                println!("replay {axiom} [{}]: FAIL {detail}", observers.join(", "));
            } else {
                println!("replay {axiom} [{}]: pass", observers.join(", "));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

// ---- make -------------------------------------------------------------------

fn parse_elem(label: &str, s: &str) -> Result<FieldElem, String> {
    s.parse::<FieldElem>().map_err(|e| format!("--{label} '{s}': {e}"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_make(
    name: &str,
    c: Option<String>,
    v: Option<String>,
    u: Option<String>,
    vec: Option<String>,
    lambda: Option<String>,
    json: bool,
) -> ExitCode {
    let args = (|| -> Result<MakeArgs, String> {
        Ok(MakeArgs {
            c: c.map(|s| parse_elem("c", &s)).transpose()?,
            v: v.map(|s| parse_elem("v", &s)).transpose()?,
            u: u.map(|s| parse_elem("u", &s)).transpose()?,
            vec: vec
                .map(|s| {
                    s.split(',')
                        .map(|part| parse_elem("vec", part.trim()))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?,
            lambda: lambda.map(|s| parse_elem("lambda", &s)).transpose()?,
        })
    })();
    let args = match args {
        Ok(a) => a,
        Err(e) => return usage_error(e),
    };
    let map = match build_named(name, args) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    if json {
        println!("{}", serde_json::to_string(&map).expect("map serializes"));
    } else {
        println!("{name}:");
        print_map(&map);
    }
    ExitCode::SUCCESS
}

fn print_map(map: &AffineMap) {
    let rows = map.linear().rows();
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    let mut widths = [0usize; 4];
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    println!("  linear:");
    for row in &cells {
        let line: Vec<String> =
            row.iter().enumerate().map(|(j, cell)| format!("{cell:>w$}", w = widths[j])).collect();
        println!("    [ {} ]", line.join("  "));
    }
    let t = map.translation();
    println!("  translation: ({}, {}, {}, {})", t.t, t.x, t.y, t.z);
}

// ---- ivt --------------------------------------------------------------------

fn cmd_ivt(f: &str, g: &str, a: &str, b: &str, y: &str, digits: usize, json: bool) -> ExitCode {
    let parsed = (|| -> Result<_, String> {
        let fq = poly::parse_poly(f).map_err(|e| format!("--F: {e}"))?;
        let gq = poly::parse_poly(g).map_err(|e| format!("--G: {e}"))?;
        let a = parse_elem("a", a)?;
        let b = parse_elem("b", b)?;
        let y = parse_elem("y", y)?;
        Ok((fq, gq, a, b, y))
    })();
    let (fq, gq, a, b, y) = match parsed {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    match ivt_sqrt_quadratic(&fq, &gq, &a, &b, &y) {
        Ok(c) => {
            if json {
                let body = json!({
                    "c": c.to_string(),
                    "c_decimal": decimal_approx(&c, digits),
                });
                println!("{body}");
            } else {
                println!("c = {c} \u{2248} {}", decimal_approx(&c, digits));
            }
            ExitCode::SUCCESS
        }
        Err(e @ FieldError::PreconditionViolation(_)) => {
            if json {
                println!("{}", json!({"error": "precondition", "detail": e.to_string()}));
            } else {
                println!("check failed: {e}");
            }
            ExitCode::FAILURE
        }
        Err(e) => usage_error(e),
    }
}

// ---- verify-theorems ----------------------------------------------------------

fn cmd_verify_theorems(
    suites: &[String],
    seed: u64,
    cases: Option<usize>,
    replay: Option<String>,
    json: bool,
) -> ExitCode {
    let cfg = SuiteConfig { seed, cases };
    if let Some(witness) = replay {
        return replay_suite_case(&witness, &cfg, json);
    }
    let selected: Vec<&str> = if suites.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        let mut picked = Vec::new();
        for name in suites {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return usage_error(format!(
                    "unknown suite '{name}'; valid suites: {}",
                    SUITE_NAMES.join(", ")
                ));
            }
            picked.push(name.as_str());
        }
        picked.sort_unstable();
        picked.dedup();
        picked
    };
    let outcomes: Vec<SuiteOutcome> =
        selected.iter().map(|n| run_suite(n, &cfg).expect("validated suite name")).collect();
    let failed: usize = outcomes.iter().map(|o| o.failures.len()).sum();
    if json {
        let body = json!({
            "seed": seed,
            "cases": cases,
            "suites": outcomes,
            "ok": failed == 0,
        });
        println!("{body}");
    } else {
        let width = selected.iter().map(|n| n.len()).max().unwrap_or(0);
        for o in &outcomes {
            if o.ok() {
                println!("{:width$}  pass  ({} cases)", o.suite, o.passed);
            } else {
                println!(
                    "{:width$}  FAIL  ({} passed, {} failed)",
                    o.suite,
                    o.passed,
                    o.failures.len()
                );
                for f in &o.failures {
                    println!("    {}: {}", f.case, f.detail);
                }
            }
        }
        let total: usize = outcomes.iter().map(|o| o.passed).sum();
        if failed == 0 {
            println!("all {} suites passed ({total} cases)", outcomes.len());
        } else {
            println!("{failed} case(s) failed across {} suites", outcomes.len());
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Re-runs one suite and reports just the named case. The case id embeds
/// the seed it was generated with, which takes precedence over --seed so
/// the replay reproduces the original run.
fn replay_suite_case(witness: &str, cfg: &SuiteConfig, json: bool) -> ExitCode {
    let parsed: serde_json::Value = match serde_json::from_str(witness) {
        Ok(v) => v,
        Err(e) => return usage_error(format!("replay witness: {e}")),
    };
    let suite = match parsed.get("suite").and_then(|v| v.as_str()) {
        Some(s) => s.to_string(),
        None => return usage_error("replay witness needs a \"suite\" field"),
    };
    let case = match parsed.get("case").and_then(|v| v.as_str()) {
        Some(c) => c.to_string(),
        None => return usage_error("replay witness needs a \"case\" field"),
    };
    let mut cfg = *cfg;
    if let Some(embedded) = case.rsplit("seed=").next().and_then(|s| s.parse::<u64>().ok()) {
        if case.contains("seed=") {
            cfg.seed = embedded;
        }
    }
    let Some(outcome) = run_suite(&suite, &cfg) else {
        return usage_error(format!(
            "unknown suite '{suite}'; valid suites: {}",
            SUITE_NAMES.join(", ")
        ));
    };
    let hit = outcome.failures.iter().find(|f| f.case == case);
    if json {
        let body = json!({
            "suite": suite,
            "case": case,
            "seed": cfg.seed,
            "reproduced": hit.is_some(),
            "detail": hit.map(|f| f.detail.clone()),
        });
        println!("{body}");
    } else {
        match hit {
            Some(f) => println!("replay {suite} / {case}: FAIL {}", f.detail),
            None => println!("replay {suite} / {case}: pass"),
        }
    }
    if hit.is_some() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

//! `silting`: batch checks of silting complexes described by JSON instance files.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use silting_core::complex::{minimize, proj_replacement, Complex};
use silting_core::instance::{complex_spec, Instance};
use silting_core::semifree::DegreeWindow;
use silting_core::silting::{coresolve_a, goodify, is_presilting, is_tilting, silting_report};
use silting_core::verifier::{default_probes, verify, Probe, Settings, Verdict, SCHEMA};
use silting_core::Error;

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "silting", version, about = "Exact checks of silting and tilting complexes over quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Verification window as `lo:hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<DegreeWindow>,
    /// Cap on coresolution steps.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Length cap for projective resolutions.
    #[arg(long)]
    cap: Option<usize>,
    /// Write the JSON output here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Only {
    Presilting,
    Coresolution,
    Tilting,
}

#[derive(Subcommand)]
enum Command {
    /// Presilting, coresolution of A and tilting checks for one object.
    Check {
        #[command(flatten)]
        common: Common,
        object: String,
        /// Restrict to some of the checks; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<Only>,
    },
    /// Replace an object by its goodification and write the instance.
    Goodify {
        #[command(flatten)]
        common: Common,
        object: String,
        /// Store the result under this name instead of replacing the object.
        #[arg(long)]
        name: Option<String>,
    },
    /// Run the full verifier suite on one object.
    Verify {
        #[command(flatten)]
        common: Common,
        object: String,
        /// Probe objects by name (comma separated); default: simples, indecomposable projectives, A, the object.
        #[arg(long, value_delimiter = ',')]
        probes: Vec<String>,
    },
    /// `check` on every complex of the instance and `verify` on the good ones.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_window(s: &str) -> Result<DegreeWindow, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse::<i32>().map_err(|e| format!("lower end: {e}"))?;
    let hi = hi.trim().parse::<i32>().map_err(|e| format!("upper end: {e}"))?;
    DegreeWindow::new(lo, hi).map_err(|e| e.to_string())
}

/// An error with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Window { .. } | Error::Degenerate(_) | Error::NotPrime(_) | Error::NotAdmissible(_) => EXIT_INPUT,
            Error::Inconclusive(_) | Error::LengthCap { .. } | Error::GeneratorCap { .. } | Error::DimensionCap { .. } => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    Ok(Instance::parse(&text)?)
}

fn settings(c: &Common, inst: &Instance) -> Settings {
    let o = inst.options();
    Settings {
        window: c.window.unwrap_or(o.window),
        max_steps: c.max_steps.unwrap_or(o.max_steps),
        cap: c.cap.unwrap_or(o.cap),
        ..Settings::default()
    }
}

/// The object as a complex of projectives, resolving modules within the cap.
fn projective_object(inst: &Instance, name: &str, cap: usize) -> Result<(Complex, bool), Failure> {
    let x = inst.object(name)?;
    if x.is_projective() {
        return Ok((x, false));
    }
    let (p, _) = proj_replacement(&x, cap)?;
    Ok((minimize(&p), true))
}

fn emit(output: &Option<PathBuf>, value: &Value, verdict: Verdict) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    match output {
        Some(path) => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| Failure(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
            eprintln!("verdict: {}", verdict_name(verdict));
        }
        None => print_stdout(&format!("{text}\n")),
    }
    Ok(())
}

/// Writes to standard output, ignoring a closed pipe.
fn print_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn check_value(inst: &Instance, object: &str, s: &Settings, only: &[Only]) -> Result<(Value, Verdict), Failure> {
    let (u, resolved) = match projective_object(inst, object, s.cap) {
        Err(Failure(2, msg)) => {
            let v = json!({ "object": object, "verdict": "inconclusive", "notes": [msg] });
            return Ok((v, Verdict::Inconclusive));
        }
        other => other?,
    };
    let wants = |c: Only| only.is_empty() || only.contains(&c);
    let mut verdict = Verdict::Pass;
    let mut body = serde_json::Map::new();
    if only.is_empty() {
        let r = silting_report(&u, s.max_steps)?;
        if !r.presilting.holds {
            verdict = Verdict::Fail;
        } else if r.inconclusive {
            verdict = Verdict::Inconclusive;
        }
        body.insert("n".into(), json!(r.n));
        body.insert("good".into(), json!(r.good));
        body.insert("witness".into(), json!(r.presilting.witness));
        body.insert("report".into(), serde_json::to_value(&r).expect("reports serialize"));
    } else {
        if wants(Only::Presilting) {
            let p = is_presilting(&u)?;
            if !p.holds {
                verdict = verdict.max(Verdict::Fail);
            }
            body.insert("witness".into(), json!(p.witness));
            body.insert("presilting".into(), serde_json::to_value(&p).expect("serializes"));
        }
        if wants(Only::Coresolution) {
            let c = coresolve_a(&u, s.max_steps)?;
            if c.is_none() {
                verdict = verdict.max(Verdict::Inconclusive);
            }
            body.insert("n".into(), json!(c.as_ref().map(|c| c.n())));
            body.insert("coresolution".into(), json!(c.map(|c| c.steps.iter().map(|s| s.multiplicity).collect::<Vec<_>>())));
        }
        if wants(Only::Tilting) {
            let t = is_tilting(&u, s.max_steps)?;
            if t.witness.is_some() {
                verdict = verdict.max(Verdict::Fail);
            } else if !t.coresolution_found {
                verdict = verdict.max(Verdict::Inconclusive);
            }
            body.insert("tilting".into(), serde_json::to_value(&t).expect("serializes"));
        }
    }
    body.insert("object".into(), json!(object));
    body.insert("projective_resolution_used".into(), json!(resolved));
    body.insert("verdict".into(), json!(verdict_name(verdict)));
    Ok((Value::Object(body), verdict))
}

fn probes(inst: &Instance, object: &str, u: &Complex, names: &[String]) -> Result<Vec<Probe>, Failure> {
    if names.is_empty() {
        return Ok(default_probes(u)?);
    }
    names
        .iter()
        .map(|n| {
            if n == object {
                return Ok(Probe::complex(n, u.clone()));
            }
            match inst.module(n) {
                Some(m) => Ok(Probe::module(&inst.algebra, n, m.clone())),
                None => Ok(Probe::complex(n, inst.object(n)?)),
            }
        })
        .collect()
}

fn verify_value(inst: &Instance, object: &str, s: Settings, names: &[String]) -> Result<(Value, Verdict), Failure> {
    let (u, _) = projective_object(inst, object, s.cap)?;
    let ps = probes(inst, object, &u, names)?;
    let r = verify(&inst.file.name, object, &u, &ps, s)?;
    Ok((serde_json::to_value(&r).expect("reports serialize"), r.verdict))
}

fn envelope(command: &str, inst: &Instance, s: &Settings, body: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "instance": inst.file.name, "settings": s, "result": body })
}

fn run(cli: Cli) -> Result<Verdict, Failure> {
    match cli.command {
        Command::Check { common, object, only } => {
            let inst = load(&common.instance)?;
            let s = settings(&common, &inst);
            let (body, verdict) = check_value(&inst, &object, &s, &only)?;
            emit(&common.output, &envelope("check", &inst, &s, body), verdict)?;
            Ok(verdict)
        }
        Command::Goodify { common, object, name } => {
            let inst = load(&common.instance)?;
            let s = settings(&common, &inst);
            let (u, _) = projective_object(&inst, &object, s.cap)?;
            let p = is_presilting(&u)?;
            let step = if let Some((i, d)) = p.witness {
                Some(format!("not presilting: dim Hom(U, U[{i}]) = {d}"))
            } else if coresolve_a(&u, s.max_steps)?.is_none() {
                Some(format!("the coresolution of A did not finish within {} steps", s.max_steps))
            } else {
                None
            };
            if let Some(step) = step {
                let body = json!({ "object": object, "verdict": "inconclusive", "step": step });
                emit(&None, &envelope("goodify", &inst, &s, body), Verdict::Inconclusive)?;
                return Ok(Verdict::Inconclusive);
            }
            let g = goodify(&u, s.max_steps)?;
            let target = name.unwrap_or(object);
            let mut file = inst.file.clone();
            file.modules.remove(&target);
            file.complexes.insert(target, complex_spec(&g)?);
            Instance::build(file.clone())?;
            let text = format!("{}\n", file.to_json());
            match &common.output {
                Some(path) => std::fs::write(path, text).map_err(|e| Failure(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?,
                None => print_stdout(&text),
            }
            Ok(Verdict::Pass)
        }
        Command::Verify { common, object, probes } => {
            let inst = load(&common.instance)?;
            let s = settings(&common, &inst);
            let names = if probes.is_empty() { inst.options().probes.clone() } else { probes };
            let (body, verdict) = verify_value(&inst, &object, s, &names)?;
            emit(&common.output, &body, verdict)?;
            Ok(verdict)
        }
        Command::Report { common } => {
            let inst = load(&common.instance)?;
            let s = settings(&common, &inst);
            let mut checks = BTreeMap::new();
            let mut verifications = BTreeMap::new();
            let mut verdict = Verdict::Pass;
            for name in inst.file.complexes.keys() {
                let (c, v) = check_value(&inst, name, &s, &[])?;
                verdict = verdict.max(v);
                if c["good"] == json!(true) {
                    let (r, v) = verify_value(&inst, name, s, &inst.options().probes)?;
                    verdict = verdict.max(v);
                    verifications.insert(name.clone(), r);
                }
                checks.insert(name.clone(), c);
            }
            let body = json!({ "checks": checks, "verifications": verifications, "verdict": verdict_name(verdict) });
            emit(&common.output, &envelope("report", &inst, &s, body), verdict)?;
            Ok(verdict)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

//! Command-line front end. Every command produces one JSON report; keys are
//! sorted and every number is an exact rational string, so reruns with the
//! same inputs are byte-identical.

pub mod audit;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::disc_solver::{solve_disc_picard, solve_disc_recursive, tangency_order, JetSequence};
use crate::error::{Error, Result};
use crate::freeman::{disc_in_hypersurface, Mode};
use crate::geometry::{in_tjm, levi_form, levi_kernel_at, var_names, VectorField};
use crate::linalg;
use crate::scenario::{Geometry, Scenario};
use crate::series::scalar::rational_to_string;
use crate::series::CScalar;

pub const SCHEMA: &str = "jdisc-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_OBSTRUCTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ANOMALY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "jdisc",
    version,
    about = "Exact series computations for almost complex structures, Levi forms and J-holomorphic discs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lie brackets of all pairs of complex-tangent frame fields.
    BracketTable(ScenarioArgs),
    /// Polar-form matrix of the Levi form at 0, its inertia and kernel.
    Levi(ScenarioArgs),
    /// Solve for a J-holomorphic disc with prescribed jets at 0.
    Disc(DiscArgs),
    /// Build a commuting sequence X_1, …, X_K and the disc it produces.
    Freeman(FreemanArgs),
    /// Run the full regression battery.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Built-in scenario name or path to a scenario JSON file.
    #[arg(long)]
    pub scenario: String,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum SolverChoice {
    Recursive,
    Picard,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ModeChoice {
    Liealg,
    Subbundle,
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    #[command(flatten)]
    pub common: ScenarioArgs,
    /// Frame field whose value at 0 is the first jet (all higher jets zero).
    #[arg(long, conflicts_with = "jets")]
    pub x: Option<String>,
    /// JSON file with {"x0": [...], "jets": [[...], ...]} (rational strings or integers).
    #[arg(long)]
    pub jets: Option<PathBuf>,
    /// Jet order N; the disc is computed to accuracy N.
    #[arg(long, default_value_t = 6)]
    pub order: u32,
    #[arg(long, value_enum, default_value = "both")]
    pub solver: SolverChoice,
}

#[derive(Debug, Args)]
pub struct FreemanArgs {
    #[command(flatten)]
    pub common: ScenarioArgs,
    /// Frame field X to start from.
    #[arg(long)]
    pub x: String,
    #[arg(long, value_enum, default_value = "liealg")]
    pub mode: ModeChoice,
    /// Comma-separated frame fields spanning the subbundle (subbundle mode; default: X).
    #[arg(long, value_delimiter = ',')]
    pub span: Vec<String>,
    /// Number of stages K.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Jet order N of the disc (default K + 2).
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value = "recursive")]
    pub solver: SolverChoice,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Seed for the randomized identity checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// A finished command: its report and process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ClosureViolated(_) => EXIT_OBSTRUCTION,
        Error::CertificationFailed(_)
        | Error::SingularSystem(_)
        | Error::NonStabilization { .. }
        | Error::Series(_) => EXIT_ANOMALY,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Series(_) => "series",
        Error::DegenerateFrame => "degenerate_frame",
        Error::NotComplexTangent { .. } => "not_complex_tangent",
        Error::InsufficientAccuracy { .. } => "insufficient_accuracy",
        Error::Precondition(_) => "precondition",
        Error::VanishingField => "vanishing_field",
        Error::SingularHypersurface => "singular_hypersurface",
        Error::OffCenter(_) => "off_center",
        Error::NonStabilization { .. } => "non_stabilization",
        Error::NormPrecondition(_) => "norm_precondition",
        Error::NotIntegrable(_) => "not_integrable",
        Error::SingularSystem(_) => "singular_system",
        Error::CertificationFailed(_) => "certification_failed",
        Error::ClosureViolated(_) => "closure_violated",
        Error::Input(_) => "input",
    }
}

fn envelope(command: &str, params: Value, body: std::result::Result<Value, &Error>) -> Value {
    match body {
        Ok(result) => {
            json!({"schema": SCHEMA, "command": command, "params": params, "result": result})
        }
        Err(e) => json!({
            "schema": SCHEMA, "command": command, "params": params,
            "error": {"kind": error_kind(e), "message": e.to_string()},
        }),
    }
}

fn load(spec: &str) -> Result<Geometry> {
    Scenario::load(spec)?.geometry()
}

fn field_by_name<'a>(g: &'a Geometry, name: &str) -> Result<&'a VectorField> {
    g.scenario.field(name)
}

/// Frame fields that lie in T^J M along M.
fn complex_tangent_indices(g: &Geometry) -> Vec<usize> {
    (0..g.scenario.dim())
        .filter(|&i| in_tjm(&g.hyp, &g.j, g.scenario.frame.field(i)).member)
        .collect()
}

/// Greedy choice of complex-tangent frame fields forming a basis of T^J_0 M over ℂ.
fn complex_basis_indices(g: &Geometry) -> Vec<usize> {
    let j0 = g.j.at_origin();
    let mut rows: Vec<Vec<CScalar>> = Vec::new();
    let mut chosen = Vec::new();
    for i in complex_tangent_indices(g) {
        let v = g.scenario.frame.field(i).at_origin_complex();
        let mut trial = rows.clone();
        trial.push(linalg::mat_vec(&j0, &v));
        trial.push(v);
        if linalg::rank(&trial) == rows.len() + 2 {
            rows = trial;
            chosen.push(i);
        }
    }
    chosen
}

pub fn bracket_table(g: &Geometry) -> Result<Value> {
    let frame = &g.scenario.frame;
    let names = frame.names();
    let coords = var_names(g.scenario.dim());
    let idx = complex_tangent_indices(g);
    let mut entries = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let b = frame.field(i).bracket(frame.field(j));
            let coeffs = frame.decompose(&b)?;
            let in_frame: serde_json::Map<String, Value> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (names[k].clone(), json!(c.display_with(&coords).to_string())))
                .collect();
            entries.push(json!({
                "pair": [names[i], names[j]],
                "bracket": b.to_json(),
                "in_frame": in_frame,
            }));
        }
    }
    Ok(json!({
        "complex_tangent_fields": idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
        "entries": entries,
    }))
}

pub fn levi_report(g: &Geometry) -> Result<Value> {
    let frame = &g.scenario.frame;
    let basis_idx = complex_basis_indices(g);
    let basis: Vec<VectorField> = basis_idx.iter().map(|&i| frame.field(i).clone()).collect();
    let k = levi_kernel_at(&g.hyp, &g.j, &basis)?;
    let mut values = serde_json::Map::new();
    for &i in &basis_idx {
        let v = levi_form(&g.hyp, &g.j, frame.field(i))?.constant_term();
        values.insert(
            frame.names()[i].clone(),
            crate::series::json::scalar_json(&v),
        );
    }
    let kernel_in_frame: Vec<Value> = k
        .kernel_vectors
        .iter()
        .map(|v| {
            let c: Vec<CScalar> = v.iter().map(|x| CScalar::real(x.clone())).collect();
            let coords = frame.coordinates_at_origin(&c).unwrap_or_default();
            let m: serde_json::Map<String, Value> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| (frame.names()[i].clone(), json!(rational_to_string(&c.re))))
                .collect();
            Value::Object(m)
        })
        .collect();
    Ok(json!({
        "basis": basis_idx.iter().map(|&i| frame.names()[i].clone()).collect::<Vec<_>>(),
        "levi_at_origin": values,
        "polar": k.to_json(),
        "kernel_in_frame": kernel_in_frame,
    }))
}

fn disc_command(a: &DiscArgs) -> Result<(Value, i32)> {
    let g = load(&a.common.scenario)?;
    let n = a.order;
    let jets = match (&a.x, &a.jets) {
        (Some(name), _) => JetSequence::tangent(field_by_name(&g, name)?.at_origin(), n as usize),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read jets {}: {e}", path.display())))?;
            let v: Value =
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("jets JSON: {e}")))?;
            JetSequence::from_json(&v)?
        }
        (None, None) => return Err(Error::Input("one of --x or --jets is required".into())),
    };
    let j = g.j.truncate(n.min(g.j.accuracy()));
    let mut out = serde_json::Map::new();
    let mut code = EXIT_OK;
    let primary = match a.solver {
        SolverChoice::Picard => solve_disc_picard(&j, &jets, n, n as usize + 4)?,
        _ => solve_disc_recursive(&j, &jets, n)?,
    };
    if a.solver == SolverChoice::Both {
        let other = solve_disc_picard(&j, &jets, n, n as usize + 4)?;
        let agree = other.gamma == primary.gamma;
        if !agree {
            code = EXIT_ANOMALY;
        }
        out.insert("solvers_agree".into(), json!(agree));
        out.insert("picard_iterations".into(), json!(other.log.len()));
    }
    if !primary.residual_vanishes() {
        code = EXIT_ANOMALY;
    }
    out.insert(
        "tangency".into(),
        tangency_order(&g.hyp, &primary.gamma)?.to_json(),
    );
    out.insert("solution".into(), primary.to_json());
    Ok((Value::Object(out), code))
}

fn freeman_command(a: &FreemanArgs) -> Result<(Value, i32)> {
    let g = load(&a.common.scenario)?;
    let x = field_by_name(&g, &a.x)?.clone();
    let mode = match a.mode {
        ModeChoice::Liealg => Mode::LieAlgebra,
        ModeChoice::Subbundle => {
            let span = if a.span.is_empty() {
                vec![x.clone()]
            } else {
                a.span
                    .iter()
                    .map(|n| field_by_name(&g, n).cloned())
                    .collect::<Result<Vec<_>>>()?
            };
            Mode::Subbundle(span)
        }
    };
    let order = a.order.unwrap_or(a.k as u32 + 2);
    let rep = disc_in_hypersurface(
        &x,
        &g.j,
        &g.hyp,
        &mode,
        a.k,
        order,
        a.solver == SolverChoice::Both,
    )?;
    let code = if rep.run.obstruction.is_some() {
        EXIT_OBSTRUCTION
    } else if rep.certified() {
        EXIT_OK
    } else {
        EXIT_ANOMALY
    };
    Ok((rep.to_json(), code))
}

fn verify_command(a: &VerifyArgs) -> (Value, i32) {
    let checks = audit::run_all(a.seed);
    let all = checks.iter().all(|c| c.pass);
    let report = json!({
        "seed": a.seed,
        "all_pass": all,
        "checks": checks.iter().map(audit::Check::to_json).collect::<Vec<_>>(),
    });
    (report, if all { EXIT_OK } else { EXIT_ANOMALY })
}

fn finish(command: &str, params: Value, r: Result<(Value, i32)>) -> Outcome {
    match r {
        Ok((v, code)) => Outcome {
            report: envelope(command, params, Ok(v)),
            code,
        },
        Err(e) => Outcome {
            report: envelope(command, params, Err(&e)),
            code: exit_code(&e),
        },
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::BracketTable(a) => finish(
            "bracket-table",
            json!({"scenario": a.scenario}),
            load(&a.scenario)
                .and_then(|g| bracket_table(&g))
                .map(|v| (v, EXIT_OK)),
        ),
        Command::Levi(a) => finish(
            "levi",
            json!({"scenario": a.scenario}),
            load(&a.scenario)
                .and_then(|g| levi_report(&g))
                .map(|v| (v, EXIT_OK)),
        ),
        Command::Disc(a) => finish(
            "disc",
            json!({
                "scenario": a.common.scenario, "x": a.x, "order": a.order,
                "jets": a.jets.as_ref().map(|p| p.display().to_string()),
                "solver": format!("{:?}", a.solver).to_lowercase(),
            }),
            disc_command(a),
        ),
        Command::Freeman(a) => finish(
            "freeman",
            json!({
                "scenario": a.common.scenario, "x": a.x, "k": a.k, "order": a.order.unwrap_or(a.k as u32 + 2),
                "mode": format!("{:?}", a.mode).to_lowercase(), "span": a.span,
                "solver": format!("{:?}", a.solver).to_lowercase(),
            }),
            freeman_command(a),
        ),
        Command::VerifyPaper(a) => {
            let (v, code) = verify_command(a);
            Outcome {
                report: envelope("verify-paper", json!({"seed": a.seed}), Ok(v)),
                code,
            }
        }
    }
}

fn json_target(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::BracketTable(a) | Command::Levi(a) => a.json.as_ref(),
        Command::Disc(a) => a.common.json.as_ref(),
        Command::Freeman(a) => a.common.json.as_ref(),
        Command::VerifyPaper(a) => a.json.as_ref(),
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to stdout or the `--json` file. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cli);
    let text = out.render();
    match json_target(&cli) {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
            let status = out
                .report
                .get("error")
                .map(|e| e["message"].to_string())
                .unwrap_or_else(|| "ok".into());
            println!(
                "{}: exit {} ({status}); report written to {}",
                out.report["command"].as_str().unwrap_or(""),
                out.code,
                path.display()
            );
        }
        None => print!("{text}"),
    }
    out.code
}

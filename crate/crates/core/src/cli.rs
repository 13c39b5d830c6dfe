//! Command-line driver. Every subcommand builds a JSON report; `--json`
//! prints it verbatim, otherwise it is flattened to `key: value` lines.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::ballsets::{
    containment_chain_experiment, matrix_ball_arveson, matrix_ball_membership, qd_membership, selfdual_ball_membership,
    wmax_ball_membership,
};
use crate::drops::{
    level1_hull_membership, project_membership_special, witness_search, DropDescriptor, SearchOptions, WitnessOptions,
};
use crate::duality::{choi_membership, dual_pencil, FullSpanBasis};
use crate::error::{Error, Result};
use crate::extremality::{arveson_dilate, classify, DilationStatus, Verdict};
use crate::fixtures::{fixture, FIXTURE_NAMES};
use crate::io::TupleFile;
use crate::linalg::{GeneralTuple, HermitianTuple, ToleranceProfile};
use crate::pencil::{membership, Pencil};
use crate::spin::{anticommutation_residual, construct_spin};

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_NON_MEMBER: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_MALFORMED: i32 = 65;
pub const EXIT_NUMERICAL: i32 = 70;

const BOUNDEDNESS_DIRECTIONS: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "freespec", version, about = "Free spectrahedra and matrix convex set verification")]
pub struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[arg(long, global = true, env = "FREESPEC_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(flatten)]
    pub tolerances: ToleranceArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    #[arg(long, global = true)]
    pub tol_hermitian: Option<f64>,
    #[arg(long, global = true)]
    pub tol_psd: Option<f64>,
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,
    #[arg(long, global = true)]
    pub tol_membership_margin: Option<f64>,
}

impl ToleranceArgs {
    fn profile(&self) -> Result<ToleranceProfile<f64>> {
        let d = ToleranceProfile::<f64>::default();
        let p = ToleranceProfile {
            hermitian_tol: self.tol_hermitian.unwrap_or(d.hermitian_tol),
            psd_tol: self.tol_psd.unwrap_or(d.psd_tol),
            rank_tol: self.tol_rank.unwrap_or(d.rank_tol),
            residual_tol: self.tol_residual.unwrap_or(d.residual_tol),
            membership_margin: self.tol_membership_margin.unwrap_or(d.membership_margin),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Tuple arguments accept a JSON file path, a fixture name, `zeros`
/// (a 1×1 zero tuple matching the pencil length) or `zeros:N`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write or print a named fixture.
    Fixture {
        /// Omit to list the available names.
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of a point in the free spectrahedron of a pencil.
    Membership {
        #[arg(long)]
        pencil: String,
        #[arg(long)]
        point: String,
    },
    /// Extreme point certificate; exits 0 iff the point is free extreme.
    Extreme {
        #[arg(long)]
        pencil: String,
        #[arg(long)]
        point: String,
    },
    /// Repeated one-column dilations towards an Arveson extreme point.
    Dilate {
        #[arg(long)]
        pencil: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the spin tuple of length g, optionally testing a point against it.
    Spin {
        g: usize,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership in the matrix range of a full-span tuple via its Choi matrix.
    Choi {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        point: String,
    },
    /// Dual pencil of a full-span tuple.
    Dual {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership in a matrix convex set over the ball.
    Ball {
        #[arg(long, value_enum)]
        set: BallChoice,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 40)]
        refine: usize,
    },
    /// Membership in the projection keeping the first `keep` coordinates.
    Drop {
        #[arg(long)]
        pencil: String,
        #[arg(long)]
        keep: usize,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// Level-1 membership in the convex hull of the numerical ranges of the generators.
    Hull {
        #[arg(long = "generator", required = true)]
        generators: Vec<String>,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        y: Vec<f64>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, default_value_t = 60)]
        refine: usize,
    },
    /// Containment chain experiment around the spin spectrahedron.
    Chain {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run the acceptance criteria and print a pass/fail table.
    VerifyPaper {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BallChoice {
    Matrix,
    MatrixExtreme,
    Selfdual,
    Wmax,
    Qd,
}

struct Outcome {
    inputs: Value,
    result: Value,
    code: i32,
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("reports serialize")
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Malformed(_) | Error::NonFinite | Error::Io(_) => EXIT_MALFORMED,
        Error::Numerical { .. } | Error::Construction { .. } => EXIT_NUMERICAL,
        Error::Dimension(_) | Error::Parameter(_) | Error::Precondition(_) | Error::Unsupported(_) => EXIT_USAGE,
    }
}

fn read_file(arg: &str) -> Result<Option<TupleFile>> {
    let path = Path::new(arg);
    if path.is_file() {
        return TupleFile::read(path).map(Some);
    }
    Ok(None)
}

fn load_tuple(arg: &str, zeros_length: Option<usize>) -> Result<HermitianTuple<f64>> {
    if let Some(f) = read_file(arg)? {
        return f.to_hermitian();
    }
    if arg == "zeros" {
        let g = zeros_length.ok_or_else(|| Error::Parameter("`zeros` needs a pencil to fix its length".into()))?;
        return Ok(HermitianTuple::zeros(1, g));
    }
    if let Some(g) = arg.strip_prefix("zeros:") {
        let g = g.parse().map_err(|_| Error::Parameter(format!("bad length in '{arg}'")))?;
        return Ok(HermitianTuple::zeros(1, g));
    }
    if FIXTURE_NAMES.contains(&arg) {
        return Ok(fixture::<f64>(arg)?.tuple);
    }
    if arg.ends_with(".json") || arg.contains('/') {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no such file '{arg}'"),
        )));
    }
    Err(Error::Parameter(format!(
        "'{arg}' is neither a file, a fixture ({}) nor `zeros`",
        FIXTURE_NAMES.join(", ")
    )))
}

fn load_general(arg: &str) -> Result<GeneralTuple<f64>> {
    if let Some(f) = read_file(arg)? {
        return f.to_general();
    }
    let t = load_tuple(arg, None)?;
    GeneralTuple::new(t.into_matrices())
}

fn load_pencil(arg: &str) -> Result<Pencil<f64>> {
    Ok(Pencil::new(load_tuple(arg, None)?))
}

fn write_tuple(path: &Path, t: &HermitianTuple<f64>, comment: Option<String>) -> Result<()> {
    TupleFile::from_hermitian(t, comment).write(path)
}

fn verdict_code(member: bool, heuristic: bool) -> i32 {
    match (member, heuristic) {
        (false, _) => EXIT_NON_MEMBER,
        (true, true) => EXIT_INCONCLUSIVE,
        (true, false) => EXIT_MEMBER,
    }
}

fn run_command(cmd: &Command, seed: u64, tol: &ToleranceProfile<f64>) -> Result<Outcome> {
    match cmd {
        Command::Fixture { name: None, .. } => Ok(Outcome {
            inputs: json!({}),
            result: json!({ "fixtures": FIXTURE_NAMES }),
            code: EXIT_MEMBER,
        }),
        Command::Fixture { name: Some(name), out } => {
            let f = fixture::<f64>(name)?;
            let file = TupleFile::from_hermitian(&f.tuple, Some(f.comment.clone()));
            let mut result = json!({
                "name": f.name,
                "size": f.tuple.size(),
                "length": f.tuple.length(),
                "comment": f.comment,
            });
            match out {
                Some(p) => {
                    file.write(p)?;
                    result["written"] = json!(p.display().to_string());
                }
                None => result["tuple"] = serde_json::from_str(&file.to_json()).expect("valid json"),
            }
            Ok(Outcome {
                inputs: json!({ "name": name }),
                result,
                code: EXIT_MEMBER,
            })
        }
        Command::Membership { pencil, point } => {
            let a = load_pencil(pencil)?;
            let x = load_tuple(point, Some(a.length()))?;
            let v = membership(&a, &x, tol)?;
            Ok(Outcome {
                inputs: json!({ "pencil": pencil, "point": point }),
                code: verdict_code(v.member, false),
                result: to_value(&v),
            })
        }
        Command::Extreme { pencil, point } => {
            let a = load_pencil(pencil)?.with_boundedness_check(BOUNDEDNESS_DIRECTIONS, seed, tol)?;
            let x = load_tuple(point, Some(a.length()))?;
            let cert = classify(&a, &x, tol)?;
            let mut result = to_value(&cert);
            result["verdict_name"] = json!(cert.verdict.name());
            Ok(Outcome {
                inputs: json!({ "pencil": pencil, "point": point }),
                code: if cert.verdict == Verdict::Free { EXIT_MEMBER } else { EXIT_NON_MEMBER },
                result,
            })
        }
        Command::Dilate {
            pencil,
            point,
            max_steps,
            out,
        } => {
            let a = load_pencil(pencil)?;
            let x = load_tuple(point, Some(a.length()))?;
            let inputs = json!({ "pencil": pencil, "point": point, "max_steps": max_steps });
            let v = membership(&a, &x, tol)?;
            if !v.member {
                return Ok(Outcome {
                    inputs,
                    result: json!({ "membership": to_value(&v) }),
                    code: EXIT_NON_MEMBER,
                });
            }
            let d = arveson_dilate(&a, &x, *max_steps, tol)?;
            if let Some(p) = out {
                write_tuple(p, &d.dilation, Some(format!("dilation of {point} in {pencil}")))?;
            }
            let code = if d.status == DilationStatus::Arveson { EXIT_MEMBER } else { EXIT_INCONCLUSIVE };
            Ok(Outcome {
                inputs,
                result: json!({
                    "status": to_value(&d.status),
                    "final_size": d.dilation.size(),
                    "corner_error": d.corner_error,
                    "final_column_nullity": d.final_column_nullity,
                    "final_smallest_retained": d.final_smallest_retained,
                    "steps": to_value(&d.steps),
                }),
                code,
            })
        }
        Command::Spin { g, point, out } => {
            let f = construct_spin::<f64>(*g)?;
            if let Some(p) = out {
                write_tuple(p, &f.tuple, Some(format!("spin tuple of length {g}")))?;
            }
            let mut result = json!({
                "g": g,
                "size": f.tuple.size(),
                "anticommutation_residual": anticommutation_residual(&f.tuple),
            });
            let mut code = EXIT_MEMBER;
            if let Some(arg) = point {
                let x = load_tuple(arg, Some(*g))?;
                let v = membership(&f.pencil(), &x, tol)?;
                code = verdict_code(v.member, false);
                result["membership"] = to_value(&v);
            }
            Ok(Outcome {
                inputs: json!({ "g": g, "point": point }),
                result,
                code,
            })
        }
        Command::Choi { basis, point } => {
            let b = FullSpanBasis::new(load_tuple(basis, None)?, tol)?;
            let x = load_tuple(point, Some(b.tuple().length()))?;
            let v = choi_membership(&b, &x, tol)?;
            Ok(Outcome {
                inputs: json!({ "basis": basis, "point": point }),
                code: verdict_code(v.verdict.member, false),
                result: json!({
                    "verdict": to_value(&v.verdict),
                    "normalized_min_eigenvalue": v.normalized_min_eigenvalue,
                    "reconstruction_error": b.reconstruction_error(),
                }),
            })
        }
        Command::Dual { basis, out } => {
            let b = FullSpanBasis::new(load_tuple(basis, None)?, tol)?;
            let dual = dual_pencil(&b, tol)?;
            if let Some(p) = out {
                write_tuple(p, &dual, Some(format!("dual pencil of {basis}")))?;
            }
            Ok(Outcome {
                inputs: json!({ "basis": basis }),
                result: json!({
                    "size": dual.size(),
                    "length": dual.length(),
                    "reconstruction_error": b.reconstruction_error(),
                    "dual": to_value(&dual),
                }),
                code: EXIT_MEMBER,
            })
        }
        Command::Ball {
            set,
            point,
            grid,
            refine,
        } => {
            let inputs = json!({ "set": set.to_possible_value().expect("named variant").get_name(), "point": point, "grid": grid, "refine": refine });
            let v = match set {
                BallChoice::Matrix => matrix_ball_membership(&load_tuple(point, None)?, tol)?,
                BallChoice::Selfdual => selfdual_ball_membership(&load_tuple(point, None)?, tol)?,
                BallChoice::Wmax => wmax_ball_membership(&load_tuple(point, None)?, *grid, *refine, seed, tol)?,
                BallChoice::Qd => qd_membership(&load_general(point)?, *grid, *refine, seed, tol)?,
                BallChoice::MatrixExtreme => {
                    let x = load_tuple(point, None)?;
                    let m = matrix_ball_membership(&x, tol)?;
                    if !m.member {
                        return Ok(Outcome {
                            inputs,
                            code: EXIT_NON_MEMBER,
                            result: to_value(&m),
                        });
                    }
                    let e = matrix_ball_arveson(&x, tol)?;
                    return Ok(Outcome {
                        inputs,
                        code: if e.extreme { EXIT_MEMBER } else { EXIT_NON_MEMBER },
                        result: to_value(&e),
                    });
                }
            };
            Ok(Outcome {
                inputs,
                code: verdict_code(v.member, v.heuristic),
                result: to_value(&v),
            })
        }
        Command::Drop {
            pencil,
            keep,
            point,
            restarts,
            iters,
        } => {
            let a = load_pencil(pencil)?;
            let x = load_tuple(point, Some(*keep))?;
            let drop = DropDescriptor::new(a, *keep)?;
            let inputs = json!({ "pencil": pencil, "keep": keep, "point": point });
            let search = SearchOptions {
                seed,
                ..Default::default()
            };
            match project_membership_special(&drop, &x, &search, tol) {
                Ok(v) => {
                    return Ok(Outcome {
                        inputs,
                        code: verdict_code(v.verdict.member, v.heuristic),
                        result: json!({ "method": "oracle", "projection": to_value(&v) }),
                    })
                }
                Err(Error::Unsupported(_)) => {}
                Err(e) => return Err(e),
            }
            let opts = WitnessOptions {
                restarts: *restarts,
                iters: *iters,
                seed,
            };
            let w = witness_search(&drop, &x, &opts, tol)?;
            Ok(Outcome {
                inputs,
                code: if w.witness.is_some() { EXIT_MEMBER } else { EXIT_INCONCLUSIVE },
                result: json!({ "method": "witness-search", "search": to_value(&w) }),
            })
        }
        Command::Hull {
            generators,
            y,
            grid,
            refine,
        } => {
            let gens = generators.iter().map(|s| load_tuple(s, None)).collect::<Result<Vec<_>>>()?;
            let v = level1_hull_membership(&gens, y, *grid, *refine, tol)?;
            Ok(Outcome {
                inputs: json!({ "generators": generators, "y": y, "grid": grid, "refine": refine }),
                code: verdict_code(v.member, false),
                result: to_value(&v),
            })
        }
        Command::Chain { g, samples } => {
            let r = containment_chain_experiment::<f64>(*g, *samples, seed, tol)?;
            Ok(Outcome {
                inputs: json!({ "g": g, "samples": samples }),
                code: if r.violations.is_empty() { EXIT_MEMBER } else { EXIT_NON_MEMBER },
                result: to_value(&r),
            })
        }
        Command::VerifyPaper { criterion } => {
            let outcomes = match criterion {
                Some(id) => vec![acceptance::run(*id, seed)
                    .ok_or_else(|| Error::Parameter(format!("no criterion {id}; known: {:?}", acceptance::criterion_ids().collect::<Vec<_>>())))?],
                None => acceptance::run_all(seed),
            };
            let passed = outcomes.iter().filter(|o| o.passed).count();
            Ok(Outcome {
                inputs: json!({ "criterion": criterion }),
                code: if passed == outcomes.len() { EXIT_MEMBER } else { EXIT_NON_MEMBER },
                result: json!({
                    "passed": passed,
                    "total": outcomes.len(),
                    "criteria": to_value(&outcomes),
                }),
            })
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Fixture { .. } => "fixture",
        Command::Membership { .. } => "membership",
        Command::Extreme { .. } => "extreme",
        Command::Dilate { .. } => "dilate",
        Command::Spin { .. } => "spin",
        Command::Choi { .. } => "choi",
        Command::Dual { .. } => "dual",
        Command::Ball { .. } => "ball",
        Command::Drop { .. } => "drop",
        Command::Hull { .. } => "hull",
        Command::Chain { .. } => "chain",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

const HUMAN_WIDTH: usize = 100;

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.into(), s.clone())),
        _ => {
            let mut s = v.to_string();
            if s.len() > HUMAN_WIDTH {
                s.truncate(HUMAN_WIDTH);
                s.push_str("...");
            }
            out.push((prefix.into(), s));
        }
    }
}

fn criteria_table(result: &Value) -> Option<String> {
    let rows = result.get("criteria")?.as_array()?;
    let mut s = String::new();
    for r in rows {
        s.push_str(&format!(
            "{:>2}  {:<4}  {:<48}  {}\n",
            r["id"],
            if r["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
            r["name"].as_str().unwrap_or(""),
            r["detail"].as_str().unwrap_or("")
        ));
    }
    s.push_str(&format!("{} of {} passed\n", result["passed"], result["total"]));
    Some(s)
}

fn render_human(report: &Map<String, Value>) -> String {
    if let Some(t) = criteria_table(&report["result"]) {
        return t;
    }
    let mut rows = Vec::new();
    flatten("", &Value::Object(report.clone()), &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// Runs the driver and returns the exit code. Reports go to stdout, errors to stderr.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    let tol = match cli.tolerances.profile() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let outcome = match run_command(&cli.command, cli.seed, &tol) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let mut report = Map::new();
    report.insert("command".into(), json!(command_name(&cli.command)));
    report.insert("inputs".into(), outcome.inputs);
    report.insert("result".into(), outcome.result);
    report.insert("tolerances".into(), to_value(&tol));
    report.insert("seed".into(), json!(cli.seed));
    report.insert("exit_code".into(), json!(outcome.code));
    report.insert("wall_time_ms".into(), json!(started.elapsed().as_secs_f64() * 1e3));
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        print!("{}", render_human(&report));
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> i32 {
        main_with_args(std::iter::once("freespec").chain(args.iter().copied()))
    }

    #[test]
    fn documented_exit_codes() {
        assert_eq!(run(&["extreme", "--pencil", "spin-g3", "--point", "freeex4"]), EXIT_MEMBER);
        assert_eq!(run(&["membership", "--pencil", "pauli", "--point", "pauli-conj"]), EXIT_NON_MEMBER);
        assert_eq!(run(&["membership", "--pencil", "spin-g3", "--point", "zeros"]), EXIT_MEMBER);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["membership", "--pencil", "pauli"]), EXIT_USAGE);
        assert_eq!(run(&["membership", "--pencil", "nope", "--point", "zeros"]), EXIT_USAGE);
        assert_eq!(run(&["membership", "--pencil", "pauli", "--point", "spin-g4"]), EXIT_USAGE);
        assert_eq!(run(&["--tol-psd", "-1", "fixture"]), EXIT_USAGE);
    }

    #[test]
    fn error_mapping() {
        assert_eq!(exit_for(&Error::Malformed("x".into())), EXIT_MALFORMED);
        assert_eq!(
            exit_for(&Error::Numerical {
                message: "x".into(),
                residual: 1.0
            }),
            EXIT_NUMERICAL
        );
    }
}

//! Command-line front end. [`run`] takes the argument list and stdin and
//! returns the exit code and the report text, so the binary is a thin shell
//! around it.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use liedeform::deformed::DExport;
use liedeform::pipeline::Case;
use liedeform::{catalog, CartanMatrix, CheckReport, GAlgebra, RootSystem, UMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const ABOUT: &str = "Exact construction and verification of simple Lie algebras g and their \
u-deformations d = n- + k + h + n+.\n\n\
Catalog matrices (A1..A8, B2..B8, C3..C8, D4..D8, E6..E8, F4, G2) use Bourbaki node \
numbering with a_ij = alpha_j(h_i). Short simple roots: the last node of B_n, all but the \
last node of C_n, nodes 3 and 4 of F4, node 1 of G2 (so G2 is [[2,-3],[-1,2]]).";

#[derive(Debug, Parser)]
#[command(name = "liedeform", version, about = ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a Cartan matrix and report its symmetrizer and type.
    Classify(Common),
    /// List the roots in (height, lex) order.
    Roots(Common),
    /// Bracket table and Gram matrix of g or d.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Algebra::D)]
        algebra: Algebra,
    },
    /// Run every check on g and d; exit 1 if any fails.
    Verify(Common),
    /// rad(u), the ideals l and m, derived series, Killing radical, Gram determinant.
    Structure(Common),
    /// Read a JSON job spec from stdin.
    Job,
}

#[derive(Debug, Args, Clone, Default)]
struct Common {
    /// Inline JSON matrix, {"cartan": ...} object, or a file holding either.
    #[arg(long, conflicts_with = "catalog")]
    cartan: Option<String>,
    /// Catalog name such as A2, B3, G2.
    #[arg(long)]
    catalog: Option<String>,
    /// zero | random | random:<seed> | inline JSON grid of "p/q" strings | {"u": ...} | file.
    #[arg(long)]
    u: Option<String>,
    /// Seed for --u random.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    G,
    #[default]
    D,
}

/// Job read from stdin by `liedeform job`. Fields mirror the flags; `cartan`
/// may be a matrix, a `{"cartan": ...}` object, or a file path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub cartan: Option<Value>,
    #[serde(default)]
    pub catalog: Option<String>,
    #[serde(default)]
    pub u: Option<Value>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub algebra: Algebra,
}

/// Exit code and report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmd {
    Classify,
    Roots,
    Table(Algebra),
    Verify,
    Structure,
}

enum CartanSource {
    Json(Value),
    Catalog(String),
}

enum USource {
    Zero,
    Random(u64),
    Json(Value),
}

struct Request {
    cmd: Cmd,
    cartan: CartanSource,
    u: USource,
    format: Format,
    out: Option<String>,
}

struct Report {
    json: Value,
    text: String,
    code: i32,
}

pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    output: e.to_string(),
                },
                _ => input_error(&e.render().to_string()),
            };
        }
    };
    let req = match request(cli, stdin) {
        Ok(r) => r,
        Err(InputError(m)) => return input_error(&m),
    };
    let (format, out) = (req.format, req.out.clone());
    let report = match execute(req) {
        Ok(r) => r,
        Err(InputError(m)) => return input_error(&m),
    };
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => report.text,
    };
    match out {
        Some(path) => match fs::write(&path, &text) {
            Ok(()) => Outcome {
                code: report.code,
                output: String::new(),
            },
            Err(e) => input_error(&format!("cannot write {path}: {e}")),
        },
        None => Outcome {
            code: report.code,
            output: text,
        },
    }
}

fn input_error(msg: &str) -> Outcome {
    let mut output =
        serde_json::to_string(&json!({ "error": msg.trim_end() })).expect("string serializes");
    output.push('\n');
    Outcome {
        code: EXIT_INPUT,
        output,
    }
}

fn request(cli: Cli, stdin: &mut dyn Read) -> Result<Request, InputError> {
    let (cmd, common) = match cli.command {
        Command::Classify(c) => (Cmd::Classify, c),
        Command::Roots(c) => (Cmd::Roots, c),
        Command::Table { common, algebra } => (Cmd::Table(algebra), common),
        Command::Verify(c) => (Cmd::Verify, c),
        Command::Structure(c) => (Cmd::Structure, c),
        Command::Job => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            let job: JobSpec =
                serde_json::from_str(&buf).map_err(|e| InputError(format!("bad job spec: {e}")))?;
            return job_request(job);
        }
    };
    let cartan = match (common.cartan, common.catalog) {
        (Some(s), None) => CartanSource::Json(json_or_file(&s)?),
        (None, Some(name)) => CartanSource::Catalog(name),
        (None, None) => {
            return Err(InputError(
                "one of --cartan or --catalog is required".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(InputError("--cartan and --catalog are exclusive".into()))
        }
    };
    let u = match common.u.as_deref() {
        None | Some("zero") => USource::Zero,
        Some("random") => USource::Random(
            common
                .seed
                .ok_or_else(|| InputError("--u random requires --seed".into()))?,
        ),
        Some(s) if s.starts_with("random:") => USource::Random(
            s["random:".len()..]
                .parse()
                .map_err(|_| InputError(format!("bad seed in {s:?}")))?,
        ),
        Some(s) => USource::Json(json_or_file(s)?),
    };
    Ok(Request {
        cmd,
        cartan,
        u,
        format: common.format,
        out: common.out,
    })
}

fn job_request(job: JobSpec) -> Result<Request, InputError> {
    let cmd = match job.command.as_str() {
        "classify" => Cmd::Classify,
        "roots" => Cmd::Roots,
        "table" => Cmd::Table(job.algebra),
        "verify" => Cmd::Verify,
        "structure" => Cmd::Structure,
        other => return Err(InputError(format!("unknown command {other:?}"))),
    };
    let cartan = match (job.cartan, job.catalog) {
        (Some(Value::String(path)), None) => CartanSource::Json(json_or_file(&path)?),
        (Some(v), None) => CartanSource::Json(v),
        (None, Some(name)) => CartanSource::Catalog(name),
        _ => {
            return Err(InputError(
                "exactly one of cartan or catalog is required".into(),
            ))
        }
    };
    let u = match job.u {
        None => USource::Zero,
        Some(Value::String(s)) if s == "zero" => USource::Zero,
        Some(Value::String(s)) if s == "random" => USource::Random(
            job.seed
                .ok_or_else(|| InputError("random u requires a seed".into()))?,
        ),
        Some(Value::String(s)) if s.starts_with("random:") => USource::Random(
            s["random:".len()..]
                .parse()
                .map_err(|_| InputError(format!("bad seed in {s:?}")))?,
        ),
        Some(Value::String(path)) => USource::Json(json_or_file(&path)?),
        Some(v) => USource::Json(v),
    };
    Ok(Request {
        cmd,
        cartan,
        u,
        format: job.format,
        out: job.out,
    })
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn json_or_file(s: &str) -> Result<Value, InputError> {
    let t = s.trim_start();
    let text = if t.starts_with('[') || t.starts_with('{') {
        s.to_string()
    } else {
        fs::read_to_string(s).map_err(|e| InputError(format!("cannot read {s}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| InputError(format!("bad JSON: {e}")))
}

fn cartan_grid(v: &Value) -> Result<Vec<Vec<i64>>, InputError> {
    let grid = match v {
        Value::Object(m) => m
            .get("cartan")
            .ok_or_else(|| InputError("object has no \"cartan\" field".into()))?,
        other => other,
    };
    serde_json::from_value(grid.clone())
        .map_err(|e| InputError(format!("cartan must be an integer grid: {e}")))
}

fn load_cartan(src: &CartanSource) -> Result<CartanMatrix, InputError> {
    match src {
        CartanSource::Catalog(name) => Ok(catalog::named(name)?),
        CartanSource::Json(v) => Ok(CartanMatrix::validate(cartan_grid(v)?)?),
    }
}

fn load_u(src: &USource, n: usize) -> Result<UMatrix, InputError> {
    match src {
        USource::Zero => Ok(UMatrix::zero(n)),
        USource::Random(seed) => Ok(UMatrix::random(n, *seed)),
        USource::Json(v) => {
            let grid = match v {
                Value::Object(m) => m
                    .get("u")
                    .ok_or_else(|| InputError("object has no \"u\" field".into()))?,
                other => other,
            };
            let rows: Vec<Vec<Value>> = serde_json::from_value(grid.clone())
                .map_err(|e| InputError(format!("u must be a grid: {e}")))?;
            let strings = rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|c| match c {
                            Value::String(s) => Ok(s),
                            Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                            other => Err(InputError(format!(
                                "u entries must be \"p/q\" strings, got {other}"
                            ))),
                        })
                        .collect::<Result<Vec<String>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let u = UMatrix::from_strings(&strings)?;
            if u.len() != n {
                return Err(InputError(format!(
                    "u has size {}, Cartan matrix has rank {n}",
                    u.len()
                )));
            }
            Ok(u)
        }
    }
}

fn execute(req: Request) -> Result<Report, InputError> {
    if req.cmd == Cmd::Classify {
        return classify(&req.cartan);
    }
    let c = load_cartan(&req.cartan)?;
    match req.cmd {
        Cmd::Classify => unreachable!(),
        Cmd::Roots => Ok(roots(&c)),
        Cmd::Table(Algebra::G) => {
            let g = GAlgebra::from_cartan(&c)?;
            let e = g.export();
            let text = table_text(&e.table);
            Ok(Report {
                json: serde_json::to_value(&e)?,
                text,
                code: EXIT_OK,
            })
        }
        Cmd::Table(Algebra::D) => {
            let u = load_u(&req.u, c.rank())?;
            let case = Case::build(&c, &u)?;
            let e: DExport = case.d.export();
            let mut text = table_text(&e.table);
            text.push_str(&format!("gram_det = {}\n", e.gram_det));
            Ok(Report {
                json: serde_json::to_value(&e)?,
                text,
                code: EXIT_OK,
            })
        }
        Cmd::Verify => {
            let u = load_u(&req.u, c.rank())?;
            verify(&c, &u)
        }
        Cmd::Structure => {
            let u = load_u(&req.u, c.rank())?;
            let case = Case::build(&c, &u)?;
            let s = case.structure();
            let mut json = serde_json::to_value(&s)?;
            let obj = json
                .as_object_mut()
                .expect("struct serializes to an object");
            obj.insert("cartan".into(), json!(c.entries()));
            obj.insert("u".into(), json!(u.to_strings()));
            let text = format!(
                "rad(u): dim {}\nl: dim {}, derived series dims {:?}\nm: dim {}, derived series dims {:?}\n\
                 Killing radical: dim {}, equals l: {}, contains l: {}\ndim d = {}\ngram_det = {}\n",
                s.rad_u_dim,
                s.l_dim,
                s.l_derived_series_dims,
                s.m_dim,
                s.m_derived_series_dims,
                s.killing_radical_dim,
                s.killing_radical_equals_l,
                s.killing_radical_contains_l,
                s.dim_d,
                s.gram_det
            );
            Ok(Report {
                json,
                text,
                code: EXIT_OK,
            })
        }
    }
}

fn classify(src: &CartanSource) -> Result<Report, InputError> {
    let result = match src {
        CartanSource::Catalog(name) => catalog::named(name),
        CartanSource::Json(v) => CartanMatrix::validate(cartan_grid(v)?),
    };
    Ok(match result {
        Ok(c) => {
            let rs = RootSystem::generate(&c);
            let json = json!({
                "type_ok": true,
                "cartan": c.entries(),
                "rank": c.rank(),
                "symmetrizer": c.symmetrizer().entries(),
                "type": rs.type_name(),
                "root_count": rs.len(),
            });
            let text = format!(
                "finite type {} of rank {}\nsymmetrizer {:?}\n{} roots\n",
                rs.type_name(),
                c.rank(),
                c.symmetrizer().entries(),
                rs.len()
            );
            Report {
                json,
                text,
                code: EXIT_OK,
            }
        }
        Err(e) => Report {
            text: format!("not accepted: {e}\n"),
            json: json!({ "type_ok": false, "reason": e.to_string() }),
            code: EXIT_FAILED,
        },
    })
}

fn roots(c: &CartanMatrix) -> Report {
    let rs = RootSystem::generate(c);
    let list = |it: &mut dyn Iterator<Item = &liedeform::Root>| -> Vec<Value> {
        it.map(
            |r| json!({ "coords": r.coords(), "height": r.height(), "norm": rs.norm(r.coords()) }),
        )
        .collect()
    };
    let json = json!({
        "type": rs.type_name(),
        "count": rs.len(),
        "positive_count": rs.positive().count(),
        "highest": rs.highest().coords(),
        "positive": list(&mut rs.positive()),
        "negative": list(&mut rs.negative()),
    });
    let mut text = format!("{} roots ({} positive)\n", rs.len(), rs.positive().count());
    for r in rs.positive() {
        text.push_str(&format!("{r} height {}\n", r.height()));
    }
    Report {
        json,
        text,
        code: EXIT_OK,
    }
}

fn verify(c: &CartanMatrix, u: &UMatrix) -> Result<Report, InputError> {
    let case = Case::build(c, u)?;
    let checks: Vec<CheckReport> = case.verify();
    let all = checks.iter().all(CheckReport::passed);
    let s = case.structure();
    let json = json!({
        "cartan": c.entries(),
        "u": u.to_strings(),
        "type": case.g.roots().type_name(),
        "root_count": case.g.roots().len(),
        "dim_g": case.g.dim(),
        "dim_d": case.d.dim(),
        "rad_u_dim": s.rad_u_dim,
        "gram_det": s.gram_det,
        "checks": checks,
        "all_passed": all,
    });
    let mut text = String::new();
    for r in &checks {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{verdict} {} ({} cases, {} violations)\n",
            r.check, r.cases, r.violation_count
        ));
        for w in &r.violations {
            text.push_str(&format!("    {w}\n"));
        }
    }
    text.push_str(if all {
        "all checks passed\n"
    } else {
        "some checks failed\n"
    });
    Ok(Report {
        json,
        text,
        code: if all { EXIT_OK } else { EXIT_FAILED },
    })
}

fn table_text(t: &liedeform::table::TableExport) -> String {
    let mut s = format!("basis: {}\n", t.basis.join(" "));
    for e in &t.brackets {
        let rhs: Vec<String> = e.value.iter().map(|(k, v)| format!("({v}) {k}")).collect();
        s.push_str(&format!(
            "[{}, {}] = {}\n",
            e.left,
            e.right,
            rhs.join(" + ")
        ));
    }
    s.push_str("gram:\n");
    for row in &t.gram {
        s.push_str(&format!("  {}\n", row.join(" ")));
    }
    s
}

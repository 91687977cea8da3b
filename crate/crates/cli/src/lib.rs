//! `leibniz` command-line front end.
//!
//! Exit codes: 0 success, 1 mathematical negative (not Leibniz, not
//! isomorphic, a failed claim), 2 usage or format error, 3 search budget
//! exceeded.

pub mod document;
pub mod random;
pub mod selftest;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use leibniz_core::classify::{self, Case, ClassifyOptions, Outcome, Witness};
use leibniz_core::families::{Family, FamilyParams};
use leibniz_core::invariants::{self, fitting_decomposition, nilradical};
use leibniz_core::search::{self, SearchConfig};
use leibniz_core::{AlgebraTable, Error, FieldSpec, Matrix, Scalar, Subspace};
use serde_json::{json, Value};

use crate::document::{parse_algebra, serialize_algebra, DocError, Metadata};

#[derive(Parser, Debug)]
#[command(name = "leibniz", version, about = "Exact computations with finite-dimensional Leibniz algebras")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for subspace scans (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on subspaces visited per scan.
    #[arg(long, global = true)]
    max_subspaces: Option<u64>,
    /// Warn about unknown document fields instead of rejecting them.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Leibniz identity, Lie test and dim I_L.
    Check { file: PathBuf },
    /// Series, center, annihilators, squares ideal, nilradical.
    Invariants { file: PathBuf },
    /// Maximal dimension of an abelian subalgebra (GF(p) scan).
    Alpha { file: PathBuf },
    /// Maximal dimension of an abelian ideal (GF(p) scan).
    Beta { file: PathBuf },
    /// Case analysis for algebras with alpha = n-2.
    Classify {
        file: PathBuf,
        /// Abelian codimension-two subalgebra, rows separated by `;`.
        #[arg(long)]
        witness: Option<String>,
        /// Nilradical candidate, rows separated by `;`.
        #[arg(long)]
        nilradical: Option<String>,
    },
    /// Re-derives every claim of the matched case (GF(p) only).
    VerifyTheorem { file: PathBuf },
    /// Writes a family instance as a document.
    Make {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isomorphism test; prints the basis map.
    Iso { first: PathBuf, second: PathBuf },
    /// Fitting decomposition relative to an abelian subalgebra.
    Fitting {
        file: PathBuf,
        /// Abelian subalgebra, rows separated by `;`.
        #[arg(long)]
        subalgebra: String,
    },
    /// Quotient by an ideal, written as a document.
    Quotient {
        file: PathBuf,
        /// Ideal, rows separated by `;`.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random family instance.
    Random {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "GF(3)")]
        field: FieldSpec,
        #[arg(long)]
        seed: u64,
        /// Abelian summand dimension (the dimension itself for `abelian`).
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Dimension for family `e`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Apply a random invertible change of basis.
        #[arg(long)]
        basis_change: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the built-in property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value = "Q")]
    field: FieldSpec,
    /// 2x2 matrix: `id`, `0`, or four entries `a,b,c,d` (row-major).
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// (n-1)x(n-1) matrix for family `e`, row-major.
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    /// Vector of length n-1 for family `e`.
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    k: usize,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Doc(PathBuf, DocError),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Exit code for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::NotLeibniz(..)
        | Error::NotSubalgebra
        | Error::NotIdeal
        | Error::NotAbelian
        | Error::Precondition(_)
        | Error::Inconsistency(_) => 1,
        _ => 2,
    }
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { code: 0, text, json }
    }
}

struct Ctx {
    cfg: SearchConfig,
    lenient: bool,
    warnings: Vec<String>,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut cfg = SearchConfig::default();
    if let Some(t) = cli.threads {
        cfg = cfg.with_threads(t);
    }
    if let Some(m) = cli.max_subspaces {
        cfg.max_subspaces = m;
    }
    let mut ctx = Ctx { cfg, lenient: cli.lenient, warnings: Vec::new() };
    let result = dispatch(cli.command, &mut ctx);
    let mut stderr: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(r) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("plain data");
                s.push('\n');
                s
            } else {
                r.text
            };
            Output { code: r.code, stdout, stderr }
        }
        Err(e) => {
            let (code, msg) = match &e {
                CliError::Usage(m) => (2, m.clone()),
                CliError::Doc(p, d) => (2, format!("{}: {d}", p.display())),
                CliError::Core(c) => (exit_code(c), c.to_string()),
            };
            let stdout = if cli.json {
                format!("{}\n", json!({ "error": msg, "exit_code": code }))
            } else {
                String::new()
            };
            let _ = writeln!(stderr, "error: {msg}");
            Output { code, stdout, stderr }
        }
    }
}

fn load(path: &PathBuf, ctx: &mut Ctx) -> Result<AlgebraTable, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let parsed = parse_algebra(&text, ctx.lenient).map_err(|e| CliError::Doc(path.clone(), e))?;
    ctx.warnings.extend(parsed.warnings);
    Ok(parsed.table)
}

fn load_leibniz(path: &PathBuf, ctx: &mut Ctx) -> Result<AlgebraTable, CliError> {
    let l = load(path, ctx)?;
    l.require_leibniz()?;
    Ok(l)
}

fn emit_document(text: String, out: Option<PathBuf>, what: Value) -> Result<Report, CliError> {
    match out {
        Some(p) => {
            std::fs::write(&p, &text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            Ok(Report::ok(format!("wrote {}\n", p.display()), json!({ "written": p.display().to_string(), "algebra": what })))
        }
        None => Ok(Report::ok(text.clone(), serde_json::from_str(&text).expect("own output"))),
    }
}

fn parse_scalars(field: FieldSpec, text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| field.parse_scalar(t).map_err(CliError::from))
        .collect()
}

/// `id`, `0`, or `size²` row-major entries.
fn parse_matrix(field: FieldSpec, text: &str, size: usize) -> Result<Matrix, CliError> {
    match text.trim() {
        "id" | "identity" => return Ok(Matrix::identity(field, size)),
        "0" | "zero" => return Ok(Matrix::zeros(field, size, size)),
        _ => {}
    }
    let entries = parse_scalars(field, text)?;
    if entries.len() != size * size {
        return Err(CliError::Usage(format!(
            "matrix `{text}` has {} entries, expected {}",
            entries.len(),
            size * size
        )));
    }
    let rows = entries.chunks(size).map(<[Scalar]>::to_vec).collect();
    Ok(Matrix::from_rows(field, size, rows)?)
}

/// Rows separated by `;`, entries by `,`.
fn parse_subspace(l: &AlgebraTable, text: &str) -> Result<Subspace, CliError> {
    let n = l.dim();
    let mut rows = Vec::new();
    for row in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let v = parse_scalars(l.field(), row)?;
        if v.len() != n {
            return Err(CliError::Usage(format!("row `{row}` has {} entries, expected {n}", v.len())));
        }
        rows.push(v);
    }
    Ok(Subspace::span(l.field(), n, &rows)?)
}

fn scalar_json(s: &Scalar) -> Value {
    match s.residue_value() {
        Some(r) => Value::from(r),
        None => Value::from(s.to_string()),
    }
}

fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

fn subspace_json(s: &Subspace) -> Value {
    Value::Array(s.vectors().map(vec_json).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().map(vec_json).collect())
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

fn fmt_subspace(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.vectors().map(fmt_vec).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.row_vectors().map(fmt_vec).collect();
    format!("[{}]", rows.join(", "))
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<Report, CliError> {
    match cmd {
        Command::Check { file } => check(&load(&file, ctx)?),
        Command::Invariants { file } => invariants_report(&load_leibniz(&file, ctx)?),
        Command::Alpha { file } => scan(&load_leibniz(&file, ctx)?, ctx, true),
        Command::Beta { file } => scan(&load_leibniz(&file, ctx)?, ctx, false),
        Command::Classify { file, witness, nilradical } => {
            let l = load_leibniz(&file, ctx)?;
            let opts = ClassifyOptions {
                witness: witness.map(|w| parse_subspace(&l, &w)).transpose()?,
                nilradical: nilradical.map(|w| parse_subspace(&l, &w)).transpose()?,
                search: ctx.cfg,
            };
            classify_report(&l, &opts)
        }
        Command::VerifyTheorem { file } => theorem_report(&load_leibniz(&file, ctx)?, ctx),
        Command::Make { family, name, out } => make(family, name, out),
        Command::Iso { first, second } => {
            let a = load_leibniz(&first, ctx)?;
            let b = load_leibniz(&second, ctx)?;
            iso(&a, &b, ctx)
        }
        Command::Fitting { file, subalgebra } => {
            let l = load_leibniz(&file, ctx)?;
            let a = parse_subspace(&l, &subalgebra)?;
            fitting(&l, &a)
        }
        Command::Quotient { file, ideal, out } => {
            let l = load_leibniz(&file, ctx)?;
            let i = parse_subspace(&l, &ideal)?;
            let (q, proj) = l.quotient(&i)?;
            let meta = Metadata {
                name: Some(format!("{}/ideal", l.name().unwrap_or("L"))),
                provenance: Some(format!("quotient by {}; projection {}", fmt_subspace(&i), fmt_matrix(&proj))),
                family: None,
            };
            emit_document(serialize_algebra(&q, Some(meta)), out, Value::Null)
        }
        Command::Random { family, field, seed, k, n, basis_change, out } => {
            let (l, params) = random::instance(family, field, seed, k, n, basis_change)?;
            let meta = Metadata {
                name: l.name().map(str::to_string),
                provenance: Some(format!("random seed={seed} basis_change={basis_change}")),
                family: Some(params),
            };
            emit_document(serialize_algebra(&l, Some(meta)), out, Value::Null)
        }
        Command::Selftest { seed } => {
            let results = selftest::run(seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(text, "[{}] {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            let _ = writeln!(text, "{} suites, {failed} failed", results.len());
            let json = json!({
                "seed": seed,
                "suites": results.iter().map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
                "failed": failed,
            });
            Ok(Report { code: i32::from(failed > 0), text, json })
        }
    }
}

fn check(l: &AlgebraTable) -> Result<Report, CliError> {
    let violation = l.leibniz_violation();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!("field: {}\ndim: {}\n", l.field(), l.dim());
    let mut json = json!({ "field": l.field().to_string(), "dim": l.dim(), "leibniz": violation.is_none() });
    match violation {
        Some((i, j, k)) => {
            let _ = writeln!(text, "Leibniz: no (identity fails at basis triple ({i}, {j}, {k}))");
            json["violation"] = json!([i, j, k]);
            Ok(Report { code: 1, text, json })
        }
        None => {
            let lie = l.is_lie()?;
            let squares = l.squares_ideal()?;
            let _ = writeln!(text, "Leibniz: yes\nLie: {}\nI_L dim: {}", yes(lie), squares.dim());
            json["lie"] = json!(lie);
            json["squares_dim"] = json!(squares.dim());
            json["squares"] = subspace_json(&squares);
            Ok(Report::ok(text, json))
        }
    }
}

fn invariants_report(l: &AlgebraTable) -> Result<Report, CliError> {
    let s = invariants::series(l)?;
    let center = l.center();
    let squares = l.squares_ideal()?;
    let la = l.left_annihilator();
    let ra = l.right_annihilator();
    let l2 = l.product_space(&l.full(), &l.full())?;
    let nil = match nilradical(l) {
        Ok(n) => Some(n),
        Err(Error::RationalsUnsupported) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    let _ = writeln!(text, "field: {}\ndim: {}", l.field(), l.dim());
    let _ = writeln!(text, "Lie: {}", l.is_lie()?);
    let _ = writeln!(text, "derived dims: {:?}", s.derived_dims());
    let _ = writeln!(text, "lower central dims: {:?}", s.lower_central_dims());
    let _ = writeln!(text, "solvable: {} (derived length {:?})", s.solvable, s.derived_length);
    let _ = writeln!(text, "nilpotent: {}", s.nilpotent);
    let _ = writeln!(text, "dim L^2: {}", l2.dim());
    let _ = writeln!(text, "center: {} (dim {})", fmt_subspace(&center), center.dim());
    let _ = writeln!(text, "I_L: {} (dim {})", fmt_subspace(&squares), squares.dim());
    let _ = writeln!(text, "left annihilator dim: {}", la.dim());
    let _ = writeln!(text, "right annihilator dim: {}", ra.dim());
    match &nil {
        Some(n) => {
            let _ = writeln!(text, "nilradical: {} (dim {})", fmt_subspace(n), n.dim());
        }
        None => text.push_str("nilradical: not computed over Q\n"),
    }
    let json = json!({
        "field": l.field().to_string(),
        "dim": l.dim(),
        "lie": l.is_lie()?,
        "derived_dims": s.derived_dims(),
        "lower_central_dims": s.lower_central_dims(),
        "solvable": s.solvable,
        "nilpotent": s.nilpotent,
        "derived_length": s.derived_length,
        "product_dim": l2.dim(),
        "center": subspace_json(&center),
        "squares": subspace_json(&squares),
        "left_annihilator_dim": la.dim(),
        "right_annihilator_dim": ra.dim(),
        "nilradical": nil.as_ref().map(subspace_json),
    });
    Ok(Report::ok(text, json))
}

fn scan(l: &AlgebraTable, ctx: &Ctx, alpha: bool) -> Result<Report, CliError> {
    let r = if alpha { search::alpha(l, &ctx.cfg)? } else { search::beta(l, &ctx.cfg)? };
    let (label, value, witness) = if alpha {
        ("alpha", r.alpha, r.alpha_witness)
    } else {
        ("beta", r.beta, r.beta_witness)
    };
    let value = value.expect("scan reports a value");
    let witness = witness.expect("scan reports a witness");
    let text = format!(
        "{label} = {value}\nwitness: {}\nsubspaces visited: {}\n",
        fmt_subspace(&witness),
        r.visited
    );
    let json = json!({ label: value, "witness": subspace_json(&witness), "visited": r.visited, "exhaustive": r.exhaustive });
    Ok(Report::ok(text, json))
}

fn verdict_json(v: &classify::ClassificationVerdict) -> Value {
    let d = &v.diagnostics;
    let witness = match &v.witness {
        Witness::None => Value::Null,
        Witness::AbelianIdeal(s) => json!({ "abelian_ideal": subspace_json(s) }),
        Witness::Quadratic(q) => json!({
            "m": matrix_json(&q.m),
            "chi": q.chi.to_string(),
            "chi_irreducible": q.chi_irreducible,
            "basis": matrix_json(&q.basis),
        }),
        Witness::Extension(e) => json!({
            "phi": matrix_json(&e.phi),
            "theta": matrix_json(&e.theta),
            "v": vec_json(&e.v),
            "nilradical": subspace_json(&e.nilradical),
            "basis": matrix_json(&e.basis),
            "phi_star": matrix_json(&e.phi_star),
            "theta_star": e.theta_star.as_ref().map(matrix_json),
            "chi": e.chi.to_string(),
            "chi_irreducible": e.chi_irreducible,
            "reconstructed": e.reconstructed,
        }),
    };
    json!({
        "case": v.case.to_string(),
        "overlaps": v.overlaps.iter().map(Case::to_string).collect::<Vec<_>>(),
        "witness": witness,
        "diagnostics": {
            "dim": d.dim,
            "alpha": d.alpha,
            "beta": d.beta,
            "lie": d.is_lie,
            "solvable": d.solvable,
            "derived_length": d.derived_length,
            "derived_dims": d.derived_dims,
            "lower_central_dims": d.lower_central_dims,
            "center_dim": d.center_dim,
            "squares_dim": d.squares_dim,
            "product_dim": d.product_dim,
            "nilradical_dim": d.nilradical_dim,
            "chi_normalized": d.chi.as_ref().map(ToString::to_string),
        },
    })
}

fn verdict_text(v: &classify::ClassificationVerdict) -> String {
    let d = &v.diagnostics;
    let mut t = format!("case: {}\n", v.case);
    if !v.overlaps.is_empty() {
        let o: Vec<String> = v.overlaps.iter().map(Case::to_string).collect();
        let _ = writeln!(t, "also matches: {}", o.join(", "));
    }
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(t, "alpha = {}, beta = {}", opt(d.alpha), opt(d.beta));
    let _ = writeln!(
        t,
        "dim {}; Lie {}; solvable {} (length {}); derived dims {:?}",
        d.dim,
        d.is_lie,
        d.solvable,
        opt(d.derived_length),
        d.derived_dims
    );
    let _ = writeln!(
        t,
        "dim C(L) {}; dim I_L {}; dim L^2 {}; dim Nil(L) {}",
        d.center_dim,
        d.squares_dim,
        d.product_dim,
        opt(d.nilradical_dim)
    );
    match &v.witness {
        Witness::None => {}
        Witness::AbelianIdeal(s) => {
            let _ = writeln!(t, "abelian ideal: {} (dim {})", fmt_subspace(s), s.dim());
        }
        Witness::Quadratic(q) => {
            let _ = writeln!(t, "m = {}; chi = {} ({})", fmt_matrix(&q.m), q.chi, irr(q.chi_irreducible));
            let _ = writeln!(t, "adapted basis (rows): {}", fmt_matrix(&q.basis));
        }
        Witness::Extension(e) => {
            let _ = writeln!(t, "Nil(L) = {}", fmt_subspace(&e.nilradical));
            let _ = writeln!(t, "adapted basis (rows): {}", fmt_matrix(&e.basis));
            let _ = writeln!(t, "phi = {}\ntheta = {}\nv = {}", fmt_matrix(&e.phi), fmt_matrix(&e.theta), fmt_vec(&e.v));
            let _ = writeln!(t, "phi* chi = {} ({}); reconstructed: {}", e.chi, irr(e.chi_irreducible), e.reconstructed);
        }
    }
    if let Some(c) = &d.chi {
        let _ = writeln!(t, "normalized chi: {c}");
    }
    t
}

fn irr(b: bool) -> &'static str {
    if b {
        "irreducible"
    } else {
        "reducible"
    }
}

fn classify_report(l: &AlgebraTable, opts: &ClassifyOptions) -> Result<Report, CliError> {
    let v = classify::classify(l, opts)?;
    Ok(Report::ok(verdict_text(&v), verdict_json(&v)))
}

fn theorem_report(l: &AlgebraTable, ctx: &Ctx) -> Result<Report, CliError> {
    let r = classify::verify_main_theorem(l, &ctx.cfg)?;
    let mut text = format!("alpha = {}, n = {}", r.alpha, r.dim);
    if let Some(b) = r.beta {
        let _ = write!(text, ", beta = {b}");
    }
    text.push('\n');
    if let Some(v) = &r.verdict {
        text.push_str(&verdict_text(v));
    }
    for c in &r.claims {
        let case = c.case.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(text, "[{}] {case}: {} {}", c.outcome, c.name, c.detail);
    }
    for f in &r.findings {
        let _ = writeln!(text, "finding: {f}");
    }
    let all = r.all_pass();
    let _ = writeln!(text, "all claims hold: {all}");
    let json = json!({
        "dim": r.dim,
        "alpha": r.alpha,
        "beta": r.beta,
        "verdict": r.verdict.as_ref().map(verdict_json),
        "claims": r.claims.iter().map(|c| json!({
            "case": c.case.map(|c| c.to_string()),
            "name": c.name,
            "outcome": match c.outcome { Outcome::Pass => "pass", Outcome::Fail => "fail", Outcome::NotApplicable => "not_applicable" },
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "findings": r.findings,
        "all_pass": all,
    });
    Ok(Report { code: i32::from(!all), text, json })
}

fn make(a: FamilyArgs, name: Option<String>, out: Option<PathBuf>) -> Result<Report, CliError> {
    let f = a.field;
    let mut p = FamilyParams::new(a.family, f);
    let e_size = a.n.map(|n| n.saturating_sub(1)).unwrap_or(3);
    p.lambda = a.lambda.as_deref().map(|s| parse_matrix(f, s, 2)).transpose()?;
    p.mu = a.mu.as_deref().map(|s| parse_matrix(f, s, 2)).transpose()?;
    p.m = a.m.as_deref().map(|s| parse_matrix(f, s, 2)).transpose()?;
    p.phi = a.phi.as_deref().map(|s| parse_matrix(f, s, e_size)).transpose()?;
    p.theta = a.theta.as_deref().map(|s| parse_matrix(f, s, e_size)).transpose()?;
    p.v = a.v.as_deref().map(|s| parse_scalars(f, s)).transpose()?;
    p.n = a.n;
    p.k = a.k;
    let l = p.build()?;
    let mut block = json!({ "family": a.family.to_string(), "field": f.to_string(), "k": a.k });
    for (key, val) in [("lambda", &a.lambda), ("mu", &a.mu), ("m", &a.m), ("phi", &a.phi), ("theta", &a.theta), ("v", &a.v)] {
        if let Some(v) = val {
            block[key] = json!(v);
        }
    }
    if let Some(n) = a.n {
        block["n"] = json!(n);
    }
    let meta = Metadata {
        name: name.or_else(|| l.name().map(str::to_string)),
        provenance: Some("leibniz make".into()),
        family: Some(block),
    };
    emit_document(serialize_algebra(&l, Some(meta)), out, Value::Null)
}

fn iso(a: &AlgebraTable, b: &AlgebraTable, ctx: &Ctx) -> Result<Report, CliError> {
    if a.field() != b.field() {
        return Err(CliError::Core(Error::FieldMismatch(a.field().to_string(), b.field().to_string())));
    }
    let r = search::iso_search(a, b, &ctx.cfg)?;
    let text = match &r.map {
        Some(m) => format!("isomorphic: yes\nimages of the first basis (rows): {}\n", fmt_matrix(m)),
        None => "isomorphic: no\n".into(),
    };
    let json = json!({ "isomorphic": r.isomorphic, "map": r.map.as_ref().map(matrix_json) });
    Ok(Report { code: i32::from(!r.isomorphic), text, json })
}

fn fitting(l: &AlgebraTable, a: &Subspace) -> Result<Report, CliError> {
    let split = fitting_decomposition(l, a)?;
    let nil = invariants::acts_nilpotently_on(l, a, &split.l0)?;
    let text = format!(
        "L0 = {} (dim {})\nL1 = {} (dim {})\nA acts nilpotently on L0: {nil}\n",
        fmt_subspace(&split.l0),
        split.l0.dim(),
        fmt_subspace(&split.l1),
        split.l1.dim()
    );
    let json = json!({ "l0": subspace_json(&split.l0), "l1": subspace_json(&split.l1), "nilpotent_on_l0": nil });
    Ok(Report::ok(text, json))
}

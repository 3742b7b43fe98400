//! Command dispatch for the `defkt` binary. [`run`] returns the exit code
//! and rendered output so that it can be tested without spawning processes.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use defkt::numerics::{
    torus_moduli_map, u1_characters, Complex64, ComplexMatrix, SimDiagOptions,
};
use defkt::verify::{CheckStatus, Expectation};
use defkt::{
    atiyah_segal_compare, cohomology, connectivity_bounds, consistency_suite, kdef, ktheory,
    moduli_homotopy, parse_expr, qcd, rdef_homotopy, Error, ErrorClass, GradedGroup,
    GroupExpr,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

/// Inclusive range written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    fn range(&self) -> RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("bound {t:?} is not a nonnegative integer"))
        };
        let (lo, hi) = (parse(a)?, parse(b)?);
        if lo > hi {
            return Err(format!("lower bound {lo} exceeds upper bound {hi}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Debug, Parser)]
#[command(name = "defkt", version, about = "Deformation K-theory and stable moduli of flat connections")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ExprArg {
    /// Group expression, e.g. "M(2) x N(3) x S1" or "N(2)^3".
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct RangedExpr {
    /// Group expression.
    pub expr: String,
    /// Degree range `a..b`; defaults to `0..qcd+2`.
    #[arg(long)]
    pub degrees: Option<Span>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deformation K-theory as a wedge of ku-module summands.
    Kdef(ExprArg),
    /// Homotopy groups of the representation spectrum.
    Rdef(RangedExpr),
    /// Homotopy groups of the stable moduli space of flat connections.
    Moduli(RangedExpr),
    /// Integral cohomology of the classifying space.
    Cohomology(ExprArg),
    /// Complex K-theory of the classifying space.
    Ktheory(ExprArg),
    /// Compare deformation K-theory with topological K-theory.
    Compare(ExprArg),
    /// Run the consistency suite; exits 4 if any check fails.
    Check(ExprArg),
    /// Joint eigenvalues of a commuting unitary pair read from a JSON file.
    TorusMap {
        /// File holding {"a": matrix, "b": matrix}.
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for input validation and the diagonality residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sample U(1) characters of the non-orientable surface N(q).
    Characters {
        q: u32,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Connectivity formulas for flat connections over M(g) or N(q).
    Connectivity {
        surface: String,
        /// Bundle ranks `a..b`.
        #[arg(long, default_value = "1..10")]
        ranks: Span,
    },
}

/// Exit code and text for stdout (success) or stderr (failure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Parse => EXIT_PARSE,
        ErrorClass::Semantic => EXIT_SEMANTIC,
        ErrorClass::Numeric => EXIT_NUMERIC,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(Rendered::Ok(out)) => Outcome::ok(out),
        Ok(Rendered::Failed(out)) => Outcome { code: EXIT_VERIFICATION, stdout: out, stderr: String::new() },
        Err(Failure::Engine(e)) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(Failure::Input(msg)) => Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Verification(msg)) => {
            Outcome { code: EXIT_VERIFICATION, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

enum Rendered {
    Ok(String),
    /// Rendered report whose verification failed.
    Failed(String),
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<Rendered, Failure> {
    let json = cli.json;
    let out = match &cli.command {
        Command::Kdef(a) => {
            let e = parse_expr(&a.expr)?;
            let m = kdef(&e)?;
            if json {
                pretty(&json!({
                    "expr": e.to_string(),
                    "module": m,
                    "summand_counts": m.summand_counts(),
                }))
            } else {
                format!("{m}\n")
            }
        }
        Command::Rdef(r) => ranged(r, Convention::Rdef, json)?,
        Command::Moduli(r) => ranged(r, Convention::Moduli, json)?,
        Command::Cohomology(a) => {
            let e = parse_expr(&a.expr)?;
            graded_output(&e, "cohomology", &cohomology(&e)?, json)
        }
        Command::Ktheory(a) => {
            let e = parse_expr(&a.expr)?;
            graded_output(&e, "ktheory", &ktheory(&e)?, json)
        }
        Command::Compare(a) => {
            let e = parse_expr(&a.expr)?;
            let r = atiyah_segal_compare(&e)?;
            let text = if json {
                pretty(&serde_json::to_value(&r).expect("report serializes"))
            } else {
                let mut s = format!("# compare {} (qcd = {})\n", r.expr, r.qcd);
                for row in &r.rows {
                    let want = match row.expected {
                        Expectation::Isomorphic => "iso",
                        Expectation::NotIsomorphic => "non-iso",
                    };
                    let _ = writeln!(
                        s,
                        "{:>3}  kdef {:<24} K {:<24} {:<8} expected {:<8} {}",
                        row.degree,
                        row.kdef.to_string(),
                        row.ktheory.to_string(),
                        if row.isomorphic { "iso" } else { "non-iso" },
                        want,
                        if row.passed { "PASS" } else { "FAIL" }
                    );
                }
                s
            };
            return Ok(if r.passed { Rendered::Ok(text) } else { Rendered::Failed(text) });
        }
        Command::Check(a) => {
            let e = parse_expr(&a.expr)?;
            let r = consistency_suite(&e)?;
            let text = if json {
                pretty(&json!({ "expr": r.expr, "passed": r.all_passed(), "items": r.items }))
            } else {
                let mut s = format!("# check {}\n", r.expr);
                for item in &r.items {
                    let status = match item.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::NotApplicable => "n/a ",
                    };
                    let _ = writeln!(s, "({}) {status} {}: {}", item.id, item.name, item.detail);
                }
                s
            };
            return Ok(if r.all_passed() { Rendered::Ok(text) } else { Rendered::Failed(text) });
        }
        Command::TorusMap { file, seed, tol } => torus_map(file, *seed, *tol, json)?,
        Command::Characters { q, samples, seed } => characters(*q, *samples, *seed, json)?,
        Command::Connectivity { surface, ranks } => connectivity(surface, *ranks, json)?,
    };
    Ok(Rendered::Ok(out))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Convention {
    Rdef,
    Moduli,
}

const RDEF_NOTE: &str = "degree 0 includes the Z summand recording the rank of the representation";
const MODULI_NOTE: &str = "degree 0 omits the rank summand Z; the representation-spectrum values are listed alongside";

fn ranged(r: &RangedExpr, conv: Convention, json: bool) -> Result<String, Failure> {
    let e = parse_expr(&r.expr)?;
    let span = match r.degrees {
        Some(s) => s,
        None => Span { lo: 0, hi: qcd(&e)? + 2 },
    };
    let rdef = GradedGroup::integer(
        span.range().map(|d| rdef_homotopy(&e, d).map(|g| (d, g))).collect::<defkt::Result<Vec<_>>>()?,
    );
    let (name, groups, note) = match conv {
        Convention::Rdef => ("rdef", rdef.clone(), RDEF_NOTE),
        Convention::Moduli => {
            let m = span
                .range()
                .map(|d| moduli_homotopy(&e, d).map(|g| (d, g)))
                .collect::<defkt::Result<Vec<_>>>()?;
            ("moduli", GradedGroup::integer(m), MODULI_NOTE)
        }
    };
    if json {
        let mut v = json!({
            "expr": e.to_string(),
            "invariant": name,
            "degrees": [span.lo, span.hi],
            "degree0_convention": name,
            "note": note,
            "groups": groups,
        });
        if conv == Convention::Moduli {
            v["rdef_convention"] = serde_json::to_value(&rdef).expect("graded groups serialize");
        }
        return Ok(pretty(&v));
    }
    let mut s = format!("# {name} {e} ({note})\n");
    for d in span.range() {
        let _ = write!(s, "{d:>3}  {}", groups.get(d));
        if conv == Convention::Moduli && d == 0 {
            let _ = write!(s, "    [representation spectrum: {}]", rdef.get(0));
        }
        s.push('\n');
    }
    Ok(s)
}

fn graded_output(e: &GroupExpr, name: &str, g: &GradedGroup, json: bool) -> String {
    if json {
        return pretty(&json!({ "expr": e.to_string(), "invariant": name, "groups": g }));
    }
    let top = match g.grading() {
        defkt::Grading::Integer => g.max_degree().unwrap_or(0),
        defkt::Grading::Mod2 => 1,
    };
    let mut s = format!("# {name} {e}\n");
    for d in 0..=top {
        let _ = writeln!(s, "{d:>3}  {}", g.get(d));
    }
    s
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum PairFile {
    Named { a: ComplexMatrix, b: ComplexMatrix },
    List([ComplexMatrix; 2]),
}

struct Pair {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

fn read_pair(path: &Path) -> Result<Pair, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let malformed = |e: serde_json::Error| {
        Failure::Input(format!(
            "{}: malformed matrix pair (expected {{\"a\": matrix, \"b\": matrix}} or [a, b]): {e}",
            path.display()
        ))
    };
    // parse once to report syntax errors with a line and column
    let value: Value = serde_json::from_str(&text).map_err(malformed)?;
    let (a, b) = match serde_json::from_value(value).map_err(malformed)? {
        PairFile::Named { a, b } => (a, b),
        PairFile::List([a, b]) => (a, b),
    };
    Ok(Pair { a, b })
}

fn torus_map(path: &Path, seed: u64, tol: f64, json: bool) -> Result<String, Failure> {
    let pair = read_pair(path)?;
    let opts = SimDiagOptions { input_tol: tol, diagonal_tol: tol, seed, ..Default::default() };
    let map = torus_moduli_map(&pair.a, &pair.b, &opts)?;
    let d = &map.diagonalization;
    if json {
        let points: Vec<Value> = map
            .points
            .pairs
            .iter()
            .map(|&(t, p)| {
                let (x, y) = (Complex64::from_polar(1.0, t), Complex64::from_polar(1.0, p));
                json!({ "angles": [t, p], "values": [[x.re, x.im], [y.re, y.im]] })
            })
            .collect();
        return Ok(pretty(&json!({
            "n": pair.a.dim(),
            "points": points,
            "unitarity_residual": d.unitarity_residual,
            "diagonality_residual": d.diagonality_residual,
            "refinement_depth": d.depth,
            "seed": seed,
            "tolerances": d.options,
        })));
    }
    let mut s = format!("# joint eigenvalues of a commuting pair, n = {}\n", pair.a.dim());
    for &(t, p) in &map.points.pairs {
        let _ = writeln!(s, "({t:.12}, {p:.12})");
    }
    let _ = writeln!(
        s,
        "# unitarity residual {:.3e}, diagonality residual {:.3e}, depth {}, seed {seed}",
        d.unitarity_residual, d.diagonality_residual, d.depth
    );
    Ok(s)
}

fn characters(q: u32, samples: usize, seed: u64, json: bool) -> Result<String, Failure> {
    let pts = u1_characters(q, samples, seed)?;
    let count = |label: i8| pts.iter().filter(|p| p.component == label).count();
    let dims: Vec<usize> = pts.iter().map(|p| p.point.local_dimension(1e-7)).collect();
    if dims.iter().any(|&k| k != (q - 1) as usize) {
        return Err(Failure::Verification(format!(
            "local dimension estimate differs from {} at some sample",
            q - 1
        )));
    }
    if json {
        let points: Vec<Value> = pts
            .iter()
            .map(|p| {
                let vals: Vec<[f64; 2]> = p.point.values.iter().map(|z| [z.re, z.im]).collect();
                json!({ "component": p.component, "values": vals })
            })
            .collect();
        return Ok(pretty(&json!({
            "q": q,
            "seed": seed,
            "samples": samples,
            "components": { "+1": count(1), "-1": count(-1) },
            "component_dimension": q - 1,
            "points": points,
        })));
    }
    let mut s = format!("# U(1) characters of N({q}), seed {seed}\n");
    let _ = writeln!(s, "component +1: {} samples", count(1));
    let _ = writeln!(s, "component -1: {} samples", count(-1));
    let _ = writeln!(s, "local dimension of every sample: {}", q - 1);
    Ok(s)
}

fn connectivity(surface: &str, ranks: Span, json: bool) -> Result<String, Failure> {
    let e = parse_expr(surface)?;
    let rows = ranks
        .range()
        .map(|n| connectivity_bounds(&e, n))
        .collect::<defkt::Result<Vec<_>>>()?;
    if json {
        return Ok(pretty(&json!({ "surface": e.to_string(), "rows": rows })));
    }
    let mut s = format!("# connectivity for {e}\n    n  flat-connections  map B     sharp\n");
    for r in &rows {
        let flat = format!(
            "{}{}",
            if r.flat_connections.sharp { "" } else { ">= " },
            r.flat_connections.value
        );
        let map = match r.classifying_map.low {
            Some(l) => format!("({l}, {})", r.classifying_map.value),
            None => format!(">= {}", r.classifying_map.value),
        };
        let sharp = r.flat_connections_sharp.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(s, "{:>5}  {flat:<16}  {map:<8}  {sharp}", r.rank);
    }
    Ok(s)
}

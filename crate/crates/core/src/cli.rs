//! Command-line front end used by the `sandpile` binary.
//!
//! Exit codes: 0 on success (or every check matching), 1 on a verification
//! mismatch, 2 on bad usage or input.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::AbelianGroup;
use crate::circulant::{self, DEFAULT_BRUTE_CAP};
use crate::closed_form;
use crate::error::Error;
use crate::graphs::{Family, GraphSpec};
use crate::linalg::IntegerMatrix;

/// Environment variable holding the default enumeration cap for the
/// brute-force circulant oracles.
pub const BRUTE_CAP_ENV: &str = "SANDPILE_BRUTE_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "sandpile",
    version,
    about = "Sandpile groups of generalized de Bruijn and Kautz digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Groups of a single graph, by closed form, SNF, or both.
    Group(GroupArgs),
    /// Cross-check closed forms against SNF oracles over a grid of graphs.
    Sweep(SweepArgs),
    /// Invertible circulants over F_p and their comparison with sand dune groups.
    Circulant(CirculantArgs),
    /// Number of normal elements of F_{p^n} over F_p.
    NormalCount(NormalCountArgs),
    /// Smith normal form of an integer matrix read from a file.
    Snf(SnfArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyArg {
    Db,
    Kautz,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Db => Family::DeBruijn,
            FamilyArg::Kautz => Family::Kautz,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SweepFamily {
    Db,
    Kautz,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Closed,
    Snf,
    Both,
}

/// Cross-checks run by `sweep`.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// Closed-form sandpile group against SNF of the reduced Laplacian.
    ClosedForm,
    /// Spanning tree counts against SNF group orders at every root.
    MatrixTree,
    /// Closed-form sand dune group against SNF of the ε relations (de Bruijn).
    SandDune,
    /// `|Σ| = n·|S|` with both sides from SNF (de Bruijn).
    OrderRatio,
    /// Orders of every `e_v` in `Σ` against the cokernel oracle (de Bruijn).
    ElementOrders,
    /// `C′(n, d) = Σ(n, d)` and the normal-element count, for prime `d`.
    Circulant,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "both")]
    family: SweepFamily,
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[arg(long, default_value_t = 9)]
    d_max: usize,
    /// Comma-separated subset of checks; all of them by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Vec<Check>,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, default_value_t = 0)]
    parallel: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CirculantArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: u64,
    /// Largest ring size enumerated for the quotient by the shift.
    #[arg(long)]
    brute_cap: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct NormalCountArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    n: u64,
    /// Also count by enumerating F_{p^n}.
    #[arg(long)]
    brute: bool,
    #[arg(long)]
    brute_cap: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SnfArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

/// Parses `args` (program name first) and runs the subcommand, writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Group(a) => cmd_group(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Circulant(a) => cmd_circulant(&a, out),
        Command::NormalCount(a) => cmd_normal_count(&a, out),
        Command::Snf(a) => cmd_snf(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MISMATCH
        }
    }
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Parse { .. }
            | Error::EmptyMatrix
            | Error::ResourceLimit { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Mismatch(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn brute_cap(flag: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(BRUTE_CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{BRUTE_CAP_ENV}={s:?} is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

fn group_json(g: &AbelianGroup) -> Value {
    serde_json::to_value(g).expect("group serializes")
}

fn print_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("value serializes")
    )
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

fn cmd_group(a: &GroupArgs, out: &mut dyn Write) -> CmdResult {
    let family = Family::from(a.family);
    let min_d = if a.method == Method::Snf { 1 } else { 2 };
    if a.n < 2 || a.d < min_d {
        return Err(Failure::Usage(format!(
            "group needs n >= 2 and d >= {min_d} for this method, got n={}, d={}",
            a.n, a.d
        )));
    }
    let spec = GraphSpec::new(family, a.n, a.d)?;
    let (n, d) = (a.n as u64, a.d as u64);
    let closed = a.method != Method::Snf;
    let snf = a.method != Method::Closed;

    let s_closed = closed
        .then(|| closed_form::sandpile_group(family, n, d))
        .transpose()?;
    let dune_closed = (closed && family == Family::DeBruijn)
        .then(|| closed_form::sand_dune_group(n, d))
        .transpose()?;
    let graph = spec.build();
    let s_snf = snf.then(|| graph.sandpile_group_snf(0)).transpose()?;
    let dune_snf = (snf && family == Family::DeBruijn && d >= 2)
        .then(|| closed_form::epsilon_relation_matrix(n, d)?.finite_part(a.n - 1))
        .transpose()?;
    let trees = graph.spanning_tree_count(0)?;

    let matched = (a.method == Method::Both).then(|| s_closed == s_snf && dune_closed == dune_snf);

    if a.json {
        let opt = |g: &Option<AbelianGroup>| g.as_ref().map_or(Value::Null, group_json);
        let mut report = json!({
            "instance": {"family": family, "n": a.n, "d": a.d},
            "sandpile": {"closed": opt(&s_closed), "snf": opt(&s_snf)},
            "trees": trees.to_string(),
            "match": matched,
        });
        if family == Family::DeBruijn {
            report["sand_dune"] = json!({"closed": opt(&dune_closed), "snf": opt(&dune_snf)});
        }
        print_json(out, &report)?;
    } else {
        writeln!(out, "{spec}")?;
        let rows = [
            ("sandpile group (closed form)", &s_closed),
            ("sandpile group (SNF)", &s_snf),
            ("sand dune group (closed form)", &dune_closed),
            ("sand dune group (SNF)", &dune_snf),
        ];
        for (label, g) in rows {
            if let Some(g) = g {
                writeln!(out, "  {label:<30} {g}")?;
            }
        }
        writeln!(out, "  {:<30} {trees}", "spanning trees (root 0)")?;
        if let Some(ok) = matched {
            writeln!(out, "  {:<30} {}", "match", verdict(ok))?;
        }
    }
    Ok(if matched == Some(false) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

/// Outcome of one cross-check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// An AbelianGroup JSON object or a decimal string.
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub d: usize,
}

/// All checks run on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: Instance,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl VerificationReport {
    fn new(instance: Instance, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            instance,
            checks,
            pass,
        }
    }
}

fn timed(name: &str, f: impl FnOnce() -> crate::Result<(Value, Value)>) -> CheckResult {
    let start = Instant::now();
    let (expected, actual) = match f() {
        Ok(pair) => pair,
        Err(e) => (Value::Null, Value::String(format!("error: {e}"))),
    };
    CheckResult {
        name: name.to_string(),
        pass: expected == actual,
        expected,
        actual,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn decimal(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

/// Runs the selected checks on one graph. Checks that do not apply to the
/// instance (family or primality of `d`) are skipped.
pub fn verify_instance(
    family: Family,
    n: usize,
    d: usize,
    checks: &BTreeSet<Check>,
) -> VerificationReport {
    let instance = Instance { family, n, d };
    let (nu, du) = (n as u64, d as u64);
    let graph = GraphSpec::new(family, n, d).map(|s| s.build());
    let db = family == Family::DeBruijn;
    let mut results = Vec::new();

    for &check in checks {
        let r = match check {
            Check::ClosedForm => timed("closed_form", || {
                let expected = closed_form::sandpile_group(family, nu, du)?;
                let actual = graph.clone()?.sandpile_group_snf(0)?;
                Ok((group_json(&expected), group_json(&actual)))
            }),
            Check::MatrixTree => timed("matrix_tree", || {
                let g = graph.clone()?;
                let expected = g.spanning_tree_count(0)?;
                for root in 0..n {
                    let trees = g.spanning_tree_count(root)?;
                    let order = g.sandpile_group_snf(root)?.order()?;
                    if trees != expected || order != expected {
                        let actual = format!("root {root}: trees {trees}, group order {order}");
                        return Ok((decimal(&expected), Value::String(actual)));
                    }
                }
                Ok((decimal(&expected), decimal(&expected)))
            }),
            Check::SandDune if db => timed("sand_dune", || {
                let expected = closed_form::sand_dune_group(nu, du)?;
                let actual = closed_form::epsilon_relation_matrix(nu, du)?.finite_part(n - 1)?;
                Ok((group_json(&expected), group_json(&actual)))
            }),
            Check::OrderRatio if db => timed("order_ratio", || {
                let s = graph.clone()?.sandpile_group_snf(0)?.order()?;
                let dune = closed_form::epsilon_relation_matrix(nu, du)?
                    .finite_part(n - 1)?
                    .order()?;
                Ok((decimal(&(s * BigUint::from(n))), decimal(&dune)))
            }),
            Check::ElementOrders if db => timed("element_orders", || {
                let m = closed_form::epsilon_relation_matrix(nu, du)?;
                let basis: Vec<Vec<BigInt>> = (1..n)
                    .map(|v| (1..n).map(|w| BigInt::from(u8::from(v == w))).collect())
                    .collect();
                let expected: Vec<Value> = (1..nu)
                    .map(|v| closed_form::order_of_ev(v, nu, du).map(|o| decimal(&o)))
                    .collect::<crate::Result<_>>()?;
                let actual: Vec<Value> = m
                    .cokernel_element_orders(&basis)?
                    .iter()
                    .map(decimal)
                    .collect();
                Ok((Value::Array(expected), Value::Array(actual)))
            }),
            Check::Circulant if db && crate::numtheory::is_prime(du) => {
                results.push(timed("circulant_fixing_ones", || {
                    let expected = closed_form::sand_dune_group(nu, du)?;
                    let actual = circulant::circulant_group_fixing_ones(nu, du)?;
                    Ok((group_json(&expected), group_json(&actual)))
                }));
                timed("normal_count", || {
                    let s = closed_form::sandpile_group_db(nu, du)?.order()?;
                    let expected = s * BigUint::from(nu * (du - 1));
                    let actual = circulant::count_normal_elements(du, nu)?;
                    Ok((decimal(&expected), decimal(&actual)))
                })
            }
            _ => continue,
        };
        results.push(r);
    }
    VerificationReport::new(instance, results)
}

/// Every `(family, n, d)` with `2 ≤ n ≤ n_max`, `2 ≤ d ≤ d_max`, in the
/// order reports are returned.
pub fn sweep_instances(families: &[Family], n_max: usize, d_max: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for &family in families {
        for d in 2..=d_max {
            for n in 2..=n_max {
                out.push(Instance { family, n, d });
            }
        }
    }
    out
}

/// Runs [`verify_instance`] over `instances` on a pool of `workers` threads
/// (0 for the rayon default). The result order matches `instances`.
pub fn run_sweep(
    instances: &[Instance],
    checks: &BTreeSet<Check>,
    workers: usize,
) -> std::result::Result<Vec<VerificationReport>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()?;
    Ok(pool.install(|| {
        instances
            .par_iter()
            .map(|i| verify_instance(i.family, i.n, i.d, checks))
            .collect()
    }))
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(_) => serde_json::from_value::<AbelianGroup>(v.clone())
            .map(|g| g.to_string())
            .unwrap_or_else(|_| v.to_string()),
        Value::Array(xs) => xs.iter().map(show).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    if a.n_max < 2 || a.d_max < 2 {
        return Err(Failure::Usage(format!(
            "sweep needs --n-max >= 2 and --d-max >= 2, got {} and {}",
            a.n_max, a.d_max
        )));
    }
    let families: &[Family] = match a.family {
        SweepFamily::Db => &[Family::DeBruijn],
        SweepFamily::Kautz => &[Family::Kautz],
        SweepFamily::Both => &[Family::DeBruijn, Family::Kautz],
    };
    let checks: BTreeSet<Check> = if a.checks.is_empty() {
        Check::value_variants().iter().copied().collect()
    } else {
        a.checks.iter().copied().collect()
    };
    let instances = sweep_instances(families, a.n_max, a.d_max);
    let reports =
        run_sweep(&instances, &checks, a.parallel).map_err(|e| Failure::Usage(e.to_string()))?;

    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: Vec<(&VerificationReport, &CheckResult)> = reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| (r, c)))
        .collect();

    if a.json {
        print_json(
            out,
            &serde_json::to_value(&reports).expect("reports serialize"),
        )?;
    } else {
        writeln!(
            out,
            "{} instances, {} checks: {} passed, {} failed",
            reports.len(),
            total,
            total - failed.len(),
            failed.len()
        )?;
        for (r, c) in failed.iter().take(10) {
            let spec = GraphSpec::new(r.instance.family, r.instance.n, r.instance.d)?;
            writeln!(out, "FAIL {spec} {}", c.name)?;
            writeln!(out, "  expected {}", show(&c.expected))?;
            writeln!(out, "  actual   {}", show(&c.actual))?;
        }
    }
    Ok(if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_circulant(a: &CirculantArgs, out: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Failure::Usage("circulant needs n >= 1".into()));
    }
    let cap = brute_cap(a.brute_cap)?;
    let structure = circulant::circulant_group(a.n, a.p)?;
    let report = circulant::report(a.n, a.p, cap)?;
    let (dune, sandpile) = if a.n >= 2 {
        (
            Some(closed_form::sand_dune_group(a.n, a.p)?),
            Some(closed_form::sandpile_group_db(a.n, a.p)?),
        )
    } else {
        (None, None)
    };
    let dune_match = dune.as_ref().map(|g| *g == report.c_prime);
    let quotient_match = match (&sandpile, &report.quotient_by_shift) {
        (Some(s), Some(q)) => Some(s == q),
        _ => None,
    };
    let ok =
        dune_match != Some(false) && quotient_match != Some(false) && report.scalar_split_holds();

    if a.json {
        let opt = |g: &Option<AbelianGroup>| g.as_ref().map_or(Value::Null, group_json);
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["factors"] = serde_json::to_value(&structure.factors).expect("factors serialize");
        v["sand_dune"] = opt(&dune);
        v["sandpile"] = opt(&sandpile);
        v["match"] =
            json!({"C_prime_vs_sand_dune": dune_match, "quotient_vs_sandpile": quotient_match});
        print_json(out, &v)?;
    } else {
        let (n, p) = (a.n, a.p);
        writeln!(out, "n = {n} = {} * {p}^{}", structure.m, structure.s)?;
        writeln!(out, "  {:<24} {}", format!("C({n}, {p})"), report.c)?;
        writeln!(out, "  {:<24} {}", format!("C'({n}, {p})"), report.c_prime)?;
        match &report.quotient_by_shift {
            Some(q) => writeln!(out, "  {:<24} {q}", format!("C'({n}, {p})/<x>"))?,
            None => writeln!(
                out,
                "  {:<24} skipped: {p}^{n} exceeds the cap {cap}",
                format!("C'({n}, {p})/<x>")
            )?,
        }
        writeln!(
            out,
            "  {:<24} {}",
            "normal elements", report.normal_elements
        )?;
        writeln!(out, "factors of x^{} - 1 over F_{p}:", structure.m)?;
        for f in &structure.factors {
            let coset: Vec<String> = f.coset.iter().map(u64::to_string).collect();
            writeln!(
                out,
                "  coset {{{}}}  degree {}  Z_{}  one-units {}",
                coset.join(", "),
                f.degree,
                f.teichmuller_order,
                f.one_unit_part
            )?;
        }
        if let (Some(dune), Some(ok)) = (&dune, dune_match) {
            writeln!(
                out,
                "  {:<24} {dune}  match {}",
                format!("Σ({n}, {p})"),
                verdict(ok)
            )?;
        }
        if let Some(s) = &sandpile {
            let m = quotient_match.map_or("not enumerated", verdict);
            writeln!(out, "  {:<24} {s}  match {m}", format!("S({n}, {p})"))?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_normal_count(a: &NormalCountArgs, out: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Failure::Usage("normal-count needs n >= 1".into()));
    }
    let count = circulant::count_normal_elements(a.p, a.n)?;
    let brute = if a.brute {
        Some(circulant::bruteforce_count_normal(
            a.p,
            a.n,
            brute_cap(a.brute_cap)?,
        )?)
    } else {
        None
    };
    let ok = brute.as_ref().is_none_or(|b| *b == count);
    if a.json {
        let v = json!({
            "p": a.p,
            "n": a.n,
            "normal_elements": count.to_string(),
            "brute_force": brute.as_ref().map(BigUint::to_string),
            "match": brute.as_ref().map(|_| ok),
        });
        print_json(out, &v)?;
    } else {
        match &brute {
            None => writeln!(out, "{count}")?,
            Some(_) if ok => writeln!(out, "{count} (verified by enumeration)")?,
            Some(b) => writeln!(out, "{count} (enumeration found {b})")?,
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_snf(a: &SnfArgs, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.input.display())))?;
    let m: IntegerMatrix = text
        .parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", a.input.display())))?;
    let diagonal = m.smith_normal_form().diagonal();
    let factors = m.invariant_factors();
    let group = m.smith_group(m.cols())?;
    let finite = group.torsion();
    let join = |xs: Vec<String>| xs.join(" ");
    if a.json {
        let v = json!({
            "rows": m.rows(),
            "cols": m.cols(),
            "diagonal": diagonal.iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "invariant_factors": factors.iter().map(BigUint::to_string).collect::<Vec<_>>(),
            "group": group_json(&group),
            "finite_part": group_json(&finite),
        });
        print_json(out, &v)?;
    } else {
        writeln!(
            out,
            "{}",
            join(diagonal.iter().map(BigInt::to_string).collect())
        )?;
        writeln!(
            out,
            "invariant factors: {}",
            join(factors.iter().map(BigUint::to_string).collect())
        )?;
        writeln!(out, "cokernel: {group}")?;
        writeln!(out, "finite part: {finite}")?;
    }
    Ok(EXIT_OK)
}

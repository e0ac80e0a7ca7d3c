//! Command-line front end. [`run`] takes an argument vector and returns the
//! exit code with the text destined for stdout and stderr.

use std::fmt::Write as _;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use magoglab::bijection::{magog_triangle_to_matrix, matrix_to_magog_triangle};
use magoglab::btp::{btp_contains, btp_decompose, btp_facet_audit, split_step};
use magoglab::certificate::{verify_vertex_certificates, Polytope};
use magoglab::ehrhart::{ehrhart, lattice_points_in_dilate, DilatePolytope};
use magoglab::enumerate::{count, enumerate, Object, ObjectKind};
use magoglab::golden::{reproduce_tables, TableSelector};
use magoglab::hull::{lp_membership, Membership};
use magoglab::point::{triangle_point, Coordinates, RationalTrianglePoint};
use magoglab::rational::{format_rational, int};
use magoglab::serial::{parse, serialize, SerializedObject};
use magoglab::stats::Statistic;
use magoglab::suites::{conjecture_suite, theorem_suite};
use magoglab::tables::distribution;
use magoglab::tsscpp::tsscpp3_vertex_audit;
use magoglab::validate::{classify, validate_magog};
use magoglab::{Error, Rational, SignMatrix};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "magoglab", version, about = "Magog matrices, boolean triangles and their polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count every object of a family.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "format")]
        count: bool,
        #[arg(long, value_enum)]
        format: Option<JsonFormat>,
    },
    /// Distribution of a statistic over magog matrices or ASMs.
    Stats {
        #[arg(long, value_enum)]
        kind: StatsKind,
        #[arg(long, value_enum)]
        stat: StatArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Apply the matrix/triangle bijection in either direction.
    Map {
        #[arg(long, value_enum)]
        from: MapFrom,
        #[arg(long)]
        input: PathBuf,
    },
    /// Report which families a sign matrix belongs to.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Polytope operations.
    Polytope {
        #[command(subcommand)]
        action: PolytopeAction,
    },
    /// Lattice-point counts of dilates and their Ehrhart polynomial.
    Ehrhart {
        #[arg(long, value_enum)]
        polytope: EhrhartPolytope,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmax: u64,
        #[arg(long)]
        interpolate: bool,
    },
    /// Brute-force verification suites and table reproduction.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n_max: usize,
        /// Restrict table reproduction to `table1` .. `table9` or `all`.
        #[arg(long, default_value = "all")]
        table: String,
        /// Directory receiving one CSV per table and the diff report.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    #[arg(long, value_enum, default_value = "btp")]
    polytope: PolytopeArg,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum PolytopeAction {
    /// Decide whether a point lies in the polytope.
    Membership {
        #[command(flatten)]
        common: PolytopeArgs,
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a point as a convex combination of vertices.
    Decompose {
        #[command(flatten)]
        common: PolytopeArgs,
        #[arg(long)]
        input: PathBuf,
        /// Print only the first splitting step.
        #[arg(long)]
        step: bool,
    },
    /// Check the separating hyperplane of every vertex.
    Certify {
        #[command(flatten)]
        common: PolytopeArgs,
    },
    /// Certify the facets of the inequality description.
    Facets {
        #[command(flatten)]
        common: PolytopeArgs,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    MagogMatrix,
    MagogTriangle,
    SquareSign,
    Asm,
    BooleanTriangle,
    Gapless,
}

impl From<KindArg> for ObjectKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::MagogMatrix => ObjectKind::MagogMatrix,
            KindArg::MagogTriangle => ObjectKind::MagogTriangle,
            KindArg::SquareSign => ObjectKind::SquareSign,
            KindArg::Asm => ObjectKind::Asm,
            KindArg::BooleanTriangle => ObjectKind::BooleanTriangle,
            KindArg::Gapless => ObjectKind::Gapless,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum JsonFormat {
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum StatsKind {
    Magog,
    Asm,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum StatArg {
    NegOnes,
    Inv,
    Posinv,
    FirstRowOne,
    FirstColOne,
    LastRowOne,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::NegOnes => Statistic::NegOnes,
            StatArg::Inv => Statistic::Inv,
            StatArg::Posinv => Statistic::Posinv,
            StatArg::FirstRowOne => Statistic::FirstRowOne,
            StatArg::FirstColOne => Statistic::FirstColOne,
            StatArg::LastRowOne => Statistic::LastRowOne,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MapFrom {
    Matrix,
    Triangle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PolytopeArg {
    Btp,
    Tsscpp,
}

impl From<PolytopeArg> for Polytope {
    fn from(p: PolytopeArg) -> Self {
        match p {
            PolytopeArg::Btp => Polytope::Btp,
            PolytopeArg::Tsscpp => Polytope::Tsscpp,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum EhrhartPolytope {
    Btp,
    Tsscpp3,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Suite {
    Theorems,
    Conjectures,
    Tables,
}

/// A failed command: exit code plus message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::ResourceLimit { .. } | Error::DilationLimit { .. } => EXIT_USAGE,
            Error::Shape(_) | Error::EntryRange { .. } | Error::Precondition { .. } | Error::DimensionMismatch { .. } => {
                EXIT_DOMAIN
            }
            Error::Interpolation(_) | Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DOMAIN, message: message.into() }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Standard output of a command plus its exit code; a nonzero code with
/// output means the command ran and reported a negative answer.
struct Done {
    code: i32,
    stdout: String,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Done { code: EXIT_OK, stdout }
    }
}

type CmdResult = Result<Done, Failure>;

fn read_object(path: &Path) -> Result<SerializedObject, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse(&text)?)
}

fn line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn rational(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(format_rational(r))
}

fn cmd_enumerate(kind: KindArg, n: usize, count_only: bool) -> CmdResult {
    let kind = ObjectKind::from(kind);
    if count_only {
        return Ok(Done::ok(format!("{}\n", count(kind, n)?)));
    }
    let mut out = String::new();
    for obj in enumerate(kind, n)? {
        let s = match obj {
            Object::Matrix(m) => SerializedObject::Matrix(m),
            Object::MagogTriangle(t) => SerializedObject::MagogTriangle(t),
            Object::BooleanTriangle(b) => SerializedObject::BooleanTriangle(b),
        };
        out.push_str(&serialize(&s));
    }
    Ok(Done::ok(out))
}

fn cmd_stats(kind: StatsKind, stat: StatArg, n: usize, format: TableFormat) -> CmdResult {
    let kind = match kind {
        StatsKind::Magog => ObjectKind::MagogMatrix,
        StatsKind::Asm => ObjectKind::Asm,
    };
    let table = distribution(kind, stat.into(), n)?;
    Ok(Done::ok(match format {
        TableFormat::Csv => format!("{}\n", table.to_csv()),
        TableFormat::Json => line(serde_json::to_value(&table).map_err(Error::from)?),
    }))
}

fn cmd_map(from: MapFrom, input: &Path) -> CmdResult {
    match (from, read_object(input)?) {
        (MapFrom::Matrix, SerializedObject::Matrix(m)) => {
            let report = validate_magog(&m);
            if !report.is_valid() {
                return Err(domain(format!("input is not a magog matrix: {report}")));
            }
            Ok(Done::ok(serialize(&matrix_to_magog_triangle(&m)?.into())))
        }
        (MapFrom::Triangle, SerializedObject::MagogTriangle(t)) => {
            Ok(Done::ok(serialize(&magog_triangle_to_matrix(&t).into())))
        }
        (MapFrom::Matrix, other) => Err(domain(format!("expected a sign matrix, found a {}", other.kind()))),
        (MapFrom::Triangle, other) => Err(domain(format!("expected a magog triangle, found a {}", other.kind()))),
    }
}

fn cmd_classify(input: &Path) -> CmdResult {
    match read_object(input)? {
        SerializedObject::Matrix(m) => Ok(Done::ok(line(serde_json::to_value(classify(&m)).map_err(Error::from)?))),
        other => Err(domain(format!("expected a sign matrix, found a {}", other.kind()))),
    }
}

fn check_order(declared: Option<usize>, actual: usize) -> Result<(), Failure> {
    match declared {
        Some(n) if n != actual => Err(domain(format!("--n {n} does not match the input order {actual}"))),
        _ => Ok(()),
    }
}

fn btp_point(obj: SerializedObject) -> Result<RationalTrianglePoint, Failure> {
    match obj {
        SerializedObject::RationalTriangle(p) => Ok(p),
        SerializedObject::BooleanTriangle(b) => Ok(triangle_point(&b)),
        other => Err(domain(format!("a {} is not a point of a boolean triangle polytope", other.kind()))),
    }
}

fn matrix_point(obj: SerializedObject) -> Result<(usize, Vec<Rational>), Failure> {
    match obj {
        SerializedObject::RationalMatrix(p) => Ok((p.order(), p.entries().to_vec())),
        SerializedObject::Matrix(m) => Ok((m.order(), m.coordinates().into_iter().map(int).collect())),
        other => Err(domain(format!("a {} is not a point of a magog matrix polytope", other.kind()))),
    }
}

fn magog_vertices(n: usize) -> Result<Vec<SignMatrix>, Failure> {
    Ok(enumerate(ObjectKind::MagogMatrix, n)?
        .filter_map(|o| match o {
            Object::Matrix(m) => Some(m),
            _ => None,
        })
        .collect())
}

fn decomposition_json<V: Clone + Into<SerializedObject>>(d: &magoglab::hull::ConvexDecomposition<V>) -> String {
    serialize(&SerializedObject::from(d))
}

fn cmd_membership(args: &PolytopeArgs, input: &Path) -> CmdResult {
    let obj = read_object(input)?;
    match args.polytope {
        PolytopeArg::Btp => {
            let p = btp_point(obj)?;
            check_order(args.n, p.order())?;
            let report = btp_contains(&p);
            let member = report.is_valid();
            let out = line(json!({ "polytope": "btp", "n": p.order(), "member": member, "violations": report.violations() }));
            Ok(Done { code: if member { EXIT_OK } else { EXIT_DOMAIN }, stdout: out })
        }
        PolytopeArg::Tsscpp => {
            let (n, point) = matrix_point(obj)?;
            check_order(args.n, n)?;
            let vertices = magog_vertices(n)?;
            match lp_membership(&point, &vertices)? {
                Membership::Inside(_) => {
                    Ok(Done::ok(line(json!({ "polytope": "tsscpp", "n": n, "member": true }))))
                }
                Membership::NotInHull(f) => {
                    if !f.separates(&point, &vertices) {
                        return Err(Failure { code: EXIT_INTERNAL, message: "separating functional failed verification".into() });
                    }
                    let weights: Vec<_> = f.weights.iter().map(rational).collect();
                    let out = line(json!({
                        "polytope": "tsscpp",
                        "n": n,
                        "member": false,
                        "separator": { "weights": weights, "offset": rational(&f.offset) },
                    }));
                    Ok(Done { code: EXIT_DOMAIN, stdout: out })
                }
            }
        }
    }
}

fn cmd_decompose(args: &PolytopeArgs, input: &Path, step: bool) -> CmdResult {
    let obj = read_object(input)?;
    match args.polytope {
        PolytopeArg::Btp => {
            let p = btp_point(obj)?;
            check_order(args.n, p.order())?;
            let report = btp_contains(&p);
            if !report.is_valid() {
                return Err(domain(format!("point is outside the polytope: {report}")));
            }
            if step {
                let out = match split_step(&p)? {
                    None => line(json!({ "integral": true })),
                    Some(s) => {
                        let mut out = String::from("{\"integral\":false");
                        let _ = write!(out, ",\"k_plus\":\"{}\"", format_rational(&s.k_plus));
                        let _ = write!(out, ",\"k_minus\":\"{}\"", format_rational(&s.k_minus));
                        let _ = write!(out, ",\"upper_weight\":\"{}\"", format_rational(&s.upper_weight()));
                        let _ = write!(out, ",\"upper\":{}", SerializedObject::RationalTriangle(s.upper.clone()).to_json());
                        let _ = write!(out, ",\"lower_weight\":\"{}\"", format_rational(&s.lower_weight()));
                        let _ = write!(out, ",\"lower\":{}", SerializedObject::RationalTriangle(s.lower.clone()).to_json());
                        out.push_str("}\n");
                        out
                    }
                };
                return Ok(Done::ok(out));
            }
            Ok(Done::ok(decomposition_json(&btp_decompose(&p)?)))
        }
        PolytopeArg::Tsscpp => {
            if step {
                return Err(usage("--step applies to the boolean triangle polytope only"));
            }
            let (n, point) = matrix_point(obj)?;
            check_order(args.n, n)?;
            match lp_membership(&point, &magog_vertices(n)?)? {
                Membership::Inside(d) => Ok(Done::ok(decomposition_json(&d))),
                Membership::NotInHull(_) => Err(domain("point is outside the polytope")),
            }
        }
    }
}

fn required_n(args: &PolytopeArgs) -> Result<usize, Failure> {
    args.n.ok_or_else(|| usage("--n is required"))
}

fn cmd_certify(args: &PolytopeArgs) -> CmdResult {
    let report = verify_vertex_certificates(args.polytope.into(), required_n(args)?)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_DOMAIN };
    Ok(Done { code, stdout: line(serde_json::to_value(&report).map_err(Error::from)?) })
}

fn cmd_facets(args: &PolytopeArgs) -> CmdResult {
    let n = required_n(args)?;
    match args.polytope {
        PolytopeArg::Btp => {
            let audit = btp_facet_audit(n)?;
            let facets: Vec<String> = audit.checks.iter().filter(|c| c.certified).map(|c| c.facet.to_string()).collect();
            let out = line(json!({
                "polytope": "btp",
                "n": n,
                "inequalities": audit.inequalities,
                "certified": audit.certified,
                "expected": audit.expected,
                "facets": facets,
            }));
            Ok(Done { code: if audit.passed() { EXIT_OK } else { EXIT_DOMAIN }, stdout: out })
        }
        PolytopeArg::Tsscpp if n == 3 => {
            let audit = tsscpp3_vertex_audit()?;
            let code = if audit.passed() { EXIT_OK } else { EXIT_DOMAIN };
            Ok(Done { code, stdout: line(serde_json::to_value(&audit).map_err(Error::from)?) })
        }
        PolytopeArg::Tsscpp => Err(usage("an inequality description is available only for n = 3")),
    }
}

fn cmd_ehrhart(polytope: EhrhartPolytope, n: usize, tmax: u64, interpolate: bool) -> CmdResult {
    let p = match polytope {
        EhrhartPolytope::Btp => DilatePolytope::Btp(n),
        EhrhartPolytope::Tsscpp3 if n == 3 => DilatePolytope::Tsscpp3,
        EhrhartPolytope::Tsscpp3 => return Err(usage("tsscpp3 is the order-3 polytope; pass --n 3")),
    };
    if !interpolate {
        let mut out = String::from("t,count\n");
        for t in 0..=tmax {
            let _ = writeln!(out, "{t},{}", lattice_points_in_dilate(p, t)?);
        }
        return Ok(Done::ok(out));
    }
    let (counts, fit) = ehrhart(p, tmax)?;
    let out = line(json!({
        "polytope": p.to_string(),
        "counts": counts,
        "dimension": fit.dimension,
        "polynomial": fit.polynomial.to_string(),
        "normalized_volume": rational(&fit.normalized_volume),
    }));
    Ok(Done::ok(out))
}

fn cmd_check(suite: Suite, n_max: usize, table: &str, out_dir: Option<&Path>) -> CmdResult {
    match suite {
        Suite::Theorems => {
            let r = theorem_suite(n_max)?;
            Ok(Done { code: if r.all_passed() { EXIT_OK } else { EXIT_DOMAIN }, stdout: r.to_csv("pass", "fail") })
        }
        Suite::Conjectures => Ok(Done::ok(conjecture_suite(n_max)?.to_csv("agree", "disagree"))),
        Suite::Tables => {
            let selector: TableSelector = table.parse()?;
            let report = reproduce_tables(selector, n_max)?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
                for t in &report.tables {
                    let path = dir.join(format!("table{}.csv", t.table));
                    fs::write(&path, &t.csv).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                }
                let path = dir.join("diff.txt");
                fs::write(&path, report.diff_report()).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let code = if report.passed() { EXIT_OK } else { EXIT_DOMAIN };
            Ok(Done { code, stdout: report.diff_report() })
        }
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Enumerate { kind, n, count, format: _ } => cmd_enumerate(kind, n, count),
        Command::Stats { kind, stat, n, format } => cmd_stats(kind, stat, n, format),
        Command::Map { from, input } => cmd_map(from, &input),
        Command::Classify { input } => cmd_classify(&input),
        Command::Polytope { action } => match action {
            PolytopeAction::Membership { common, input } => cmd_membership(&common, &input),
            PolytopeAction::Decompose { common, input, step } => cmd_decompose(&common, &input, step),
            PolytopeAction::Certify { common } => cmd_certify(&common),
            PolytopeAction::Facets { common } => cmd_facets(&common),
        },
        Command::Ehrhart { polytope, n, tmax, interpolate } => cmd_ehrhart(polytope, n, tmax, interpolate),
        Command::Check { suite, n_max, table, out_dir } => cmd_check(suite, n_max, &table, out_dir.as_deref()),
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(done)) => Output { code: done.code, stdout: done.stdout, stderr: String::new() },
        Ok(Err(f)) => Output { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            Output { code: EXIT_INTERNAL, stdout: String::new(), stderr: format!("internal error: {msg}\n") }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_and_bad_flags() {
        assert_eq!(run(["magoglab", "--help"]).code, EXIT_OK);
        assert_eq!(run(["magoglab", "enumerate", "--kind", "nope", "--n", "3"]).code, EXIT_USAGE);
        assert_eq!(run(["magoglab", "enumerate", "--kind", "asm", "--n", "3", "--count", "--format", "json"]).code, EXIT_USAGE);
    }

    #[test]
    fn ceilings_are_usage_errors() {
        let out = run(["magoglab", "ehrhart", "--polytope", "tsscpp3", "--n", "4", "--tmax", "2"]);
        assert_eq!(out.code, EXIT_USAGE);
    }
}

//! The `kmon` command line: parses the text formats of the `kappa` crate,
//! runs one decision procedure and prints a deterministic report.
//!
//! Exit codes follow the verdict: `0` for yes, `1` for no, `2` for unknown.
//! Usage errors exit with `3`, unparsable input with `4`, and inputs the
//! chosen procedure rejects with `5`.

use std::fmt::Display;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use thiserror::Error;

use kappa::braiding::{braid_find, parse_certificate, telescope, verify, BraidHost, BraidVerdict, VerifyOutcome};
use kappa::cyclic::CyclicMonoid;
use kappa::diophantine::{aleph0_extend_finite, decompose, universal_extend, ConstraintSystem, DioMonoid};
use kappa::dsl::{
    parse_element, parse_family, parse_monoid, parse_presentation, parse_vector, ElemExpr, FamilyExpr, MonoidExpr,
};
use kappa::free_vectors::{CardVec, VectorMonoid};
use kappa::gallery::{DedekindMonoid, HnpVector, RationalLine, TrivialExtension};
use kappa::presentations::{corollary_checks, realizable_two_gen, PresentedMonoid, DEFAULT_STEPS};
use kappa::{check_axioms, Budget, CardBoundMode, ExtCard, Family, KappaMonoid, LawSubject, Truth};

pub const EXIT_USAGE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_REJECTED: i32 = 5;

/// Exit status and standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Rejected(_) => EXIT_REJECTED,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Rejected(_) => "rejected",
        }
    }
}

fn rejected(e: impl Display) -> CliError {
    CliError::Rejected(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kmon", version, about = "Decide questions about monoids with infinite sums")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Search steps available to semi-decision procedures.
    #[arg(long, global = true, default_value_t = DEFAULT_STEPS)]
    budget: u64,
    /// Coordinate cap for enumerative searches.
    #[arg(long, global = true, default_value_t = 32)]
    radius: u64,
    /// Seed for randomised law checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Summation bound `kappa` of the monoid.
    #[arg(long, global = true, default_value = "aleph0")]
    kappa: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Is the vector or element a member of the monoid?
    Member {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        vec: Option<String>,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Membership in the universal extension of a Diophantine monoid.
    Extend {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        vec: String,
        /// Use `H + aleph0 H` for the monoid `H` of finite solutions.
        #[arg(long)]
        from_finite: bool,
    },
    /// Split a member into its aleph0 part and layers of larger multiplicity.
    Decompose {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        vec: String,
    },
    /// Verify a braiding certificate (inline, or `@file`).
    BraidCheck {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        cert: String,
        #[arg(long, default_value = "aleph0")]
        lambda: String,
    },
    /// Search for a braiding of two families.
    BraidFind {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "aleph0")]
        lambda: String,
    },
    /// Decide whether a two-generated presentation is realizable.
    Realizable2 {
        #[arg(long)]
        pres: String,
        /// Also evaluate the case conditions comparing add(x1) and add(x2).
        #[arg(long)]
        corollary: bool,
    },
    /// Check the summation laws on random families.
    Axioms {
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Sum a family in a gallery monoid, or test an HNP vector.
    GalleryEval {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        fam: Option<String>,
        #[arg(long)]
        vec: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Member { .. } => "member",
            Command::Extend { .. } => "extend",
            Command::Decompose { .. } => "decompose",
            Command::BraidCheck { .. } => "braid-check",
            Command::BraidFind { .. } => "braid-find",
            Command::Realizable2 { .. } => "realizable2",
            Command::Axioms { .. } => "axioms",
            Command::GalleryEval { .. } => "gallery-eval",
        }
    }
}

/// Report fields in output order; multi-line values become JSON arrays.
struct Report {
    verdict: Truth,
    fields: Vec<(String, Value)>,
    budget: Budget,
}

impl Report {
    fn new(budget: Budget) -> Self {
        Report {
            verdict: Truth::Unknown,
            fields: Vec::new(),
            budget,
        }
    }

    fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.fields.push((key.to_string(), Value::String(value.to_string())));
        self
    }

    fn lines(&mut self, key: &str, text: impl Display) -> &mut Self {
        let lines = text.to_string().lines().map(|l| Value::String(l.to_string())).collect();
        self.fields.push((key.to_string(), Value::Array(lines)));
        self
    }

    fn render(&self, command: &str, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = format!("command: {command}\n");
                for (k, v) in &self.fields {
                    match v {
                        Value::Array(items) => {
                            out.push_str(&format!("{k}:\n"));
                            for item in items {
                                out.push_str(&format!("  {}\n", item.as_str().unwrap_or_default()));
                            }
                        }
                        other => out.push_str(&format!("{k}: {}\n", other.as_str().unwrap_or_default())),
                    }
                }
                out.push_str(&format!("verdict: {}\n{}\n", self.verdict, self.budget));
                out
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), json!(command));
                obj.insert("verdict".into(), json!(self.verdict.to_string()));
                for (k, v) in &self.fields {
                    obj.insert(json_key(k), v.clone());
                }
                obj.insert(
                    "budget".into(),
                    json!({ "used": self.budget.used(), "limit": self.budget.limit() }),
                );
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).unwrap_or_default();
                s.push('\n');
                s
            }
        }
    }
}

/// `finite-shift [i=1, j=2]` becomes `finite_shift_i1_j2`.
fn json_key(label: &str) -> String {
    let mut key = String::new();
    for ch in label.chars() {
        if ch.is_ascii_alphanumeric() {
            key.push(ch);
        } else if matches!(ch, ' ' | '-' | ',') && !key.ends_with('_') {
            key.push('_');
        }
    }
    key.trim_end_matches('_').to_string()
}

fn exit_code(t: Truth) -> i32 {
    match t {
        Truth::Yes => 0,
        Truth::No => 1,
        Truth::Unknown => 2,
    }
}

/// Runs `kmon` with `args`, where `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return Outcome {
                code,
                stdout: e.render().to_string(),
            };
        }
    };
    let name = cli.command.name();
    match execute(&cli) {
        Ok(report) => Outcome {
            code: exit_code(report.verdict),
            stdout: report.render(name, cli.format),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: match cli.format {
                Format::Text => format!("command: {name}\nerror ({}): {e}\n", e.kind()),
                Format::Json => {
                    let v = json!({ "command": name, "error": e.to_string(), "kind": e.kind() });
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap_or_default())
                }
            },
        },
    }
}

/// Reads `@path` arguments from disk and returns anything else unchanged.
fn load(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn parsed<T, E: Display>(what: &str, arg: &str, parse: impl Fn(&str) -> Result<T, E>) -> Result<T, CliError> {
    let text = load(arg)?;
    parse(&text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

fn card(what: &str, arg: &str) -> Result<ExtCard, CliError> {
    parsed(what, arg, ExtCard::from_str)
}

fn dio_system(expr: &MonoidExpr) -> Result<ConstraintSystem, CliError> {
    match expr {
        MonoidExpr::Dio(sys) => Ok(sys.clone()),
        MonoidExpr::Naturals { dim } => Ok(ConstraintSystem::free(*dim)),
        other => Err(rejected(format!("expected a Diophantine monoid, found {other}"))),
    }
}

enum Built {
    Vector(VectorMonoid),
    Dio(DioMonoid),
    Cyclic(CyclicMonoid),
    TrivialDio(TrivialExtension<DioMonoid>),
    TrivialCyclic(TrivialExtension<CyclicMonoid>),
    Line(RationalLine),
    Dedekind(DedekindMonoid),
    Presented(PresentedMonoid),
    Hnp(Vec<BigRational>),
}

fn cyclic(tail: u64, period: u64, kappa: &ExtCard) -> Result<CyclicMonoid, CliError> {
    let m = CyclicMonoid::cmn(tail, period).map_err(rejected)?;
    if tail == 0 {
        Ok(m)
    } else {
        m.extended(kappa.clone()).map_err(rejected)
    }
}

fn build(expr: &MonoidExpr, kappa: &ExtCard, steps: u64) -> Result<Built, CliError> {
    if kappa.is_finite() {
        return Err(rejected(format!("kappa must be infinite, found {kappa}")));
    }
    let at_most = CardBoundMode::AtMost(kappa.clone());
    Ok(match expr {
        MonoidExpr::Naturals { dim } => Built::Vector(VectorMonoid::free(*dim, kappa.clone())),
        MonoidExpr::Dio(sys) => Built::Dio(DioMonoid::new(sys.clone(), at_most)),
        MonoidExpr::Cmn { tail, period } => Built::Cyclic(cyclic(*tail, *period, kappa)?),
        MonoidExpr::Trivial(base) => match base.as_ref() {
            MonoidExpr::Cmn { tail, period } => {
                let base = CyclicMonoid::cmn(*tail, *period).map_err(rejected)?;
                Built::TrivialCyclic(TrivialExtension::new(base, kappa.clone()).map_err(rejected)?)
            }
            other => {
                let base = DioMonoid::new(dio_system(other)?, CardBoundMode::finite());
                Built::TrivialDio(TrivialExtension::new(base, kappa.clone()).map_err(rejected)?)
            }
        },
        MonoidExpr::QLine => Built::Line(RationalLine),
        MonoidExpr::Dedekind { factors } => {
            Built::Dedekind(DedekindMonoid::new(factors.clone(), kappa.clone()).map_err(rejected)?)
        }
        MonoidExpr::Hnp { weights } => Built::Hnp(weights.clone()),
        MonoidExpr::TwoGen(p) => Built::Presented(PresentedMonoid::new(p.clone()).with_steps(steps)),
    })
}

/// Binds `$m` to the built monoid and `$conv` to its element reader, then
/// evaluates `$body`; the HNP predicate, which is not a monoid, goes to `$hnp`.
macro_rules! with_monoid {
    ($built:expr, $m:ident, $conv:ident, $body:expr, $hnp:expr) => {
        match $built {
            Built::Vector($m) => {
                let d = $m.dim();
                let $conv = move |e: &ElemExpr| e.to_vector(d);
                $body
            }
            Built::Dio($m) => {
                let d = $m.dim();
                let $conv = move |e: &ElemExpr| e.to_vector(d);
                $body
            }
            Built::Cyclic($m) => {
                let $conv = |e: &ElemExpr| e.to_card();
                $body
            }
            Built::TrivialDio($m) => {
                let d = $m.base().dim();
                let $conv = move |e: &ElemExpr| e.to_adjoined(|b| b.to_vector(d));
                $body
            }
            Built::TrivialCyclic($m) => {
                let $conv = |e: &ElemExpr| e.to_adjoined(|b| b.to_card());
                $body
            }
            Built::Line($m) => {
                let $conv = |e: &ElemExpr| e.to_line();
                $body
            }
            Built::Dedekind($m) => {
                let copy = $m.clone();
                let $conv = move |e: &ElemExpr| e.to_dedekind(&copy);
                $body
            }
            Built::Presented($m) => {
                let $conv = |e: &ElemExpr| e.to_form();
                $body
            }
            Built::Hnp(_) => $hnp,
        }
    };
}

fn not_a_monoid() -> CliError {
    rejected("hnp(c=..) is a membership predicate, not a monoid; use member or gallery-eval with --vec")
}

fn family<E: Clone + Ord>(
    what: &str,
    arg: &str,
    conv: impl Fn(&ElemExpr) -> Result<E, String>,
) -> Result<(FamilyExpr, Family<E>), CliError> {
    let expr = parsed(what, arg, parse_family)?;
    let fam = expr.to_family(conv).map_err(|e| rejected(format!("{what}: {e}")))?;
    Ok((expr, fam))
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let kappa = card("--kappa", &cli.kappa)?;
    let mut budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Member { monoid, vec, elem } => member(cli, monoid, vec.as_deref(), elem.as_deref(), &kappa, budget),
        Command::Extend {
            monoid,
            vec,
            from_finite,
        } => {
            let sys = dio_system(&parsed("--monoid", monoid, parse_monoid)?)?;
            let v = parsed("--vec", vec, parse_vector)?;
            let mut r = Report::new(budget);
            r.field("monoid", &sys).field("vector", &v);
            if *from_finite {
                let ext = aleph0_extend_finite(&DioMonoid::new(sys, CardBoundMode::finite()))
                    .map_err(rejected)?
                    .with_radius(cli.radius);
                r.field("extension", format!("H + aleph0 H, search radius {}", cli.radius));
                r.verdict = ext.contains(&v);
                if let Some(w) = ext.witness(&v) {
                    r.field(
                        "witness",
                        format!(
                            "h = {}, h' = {}",
                            CardVec::from_u64s(&w.h),
                            CardVec::from_u64s(&w.h_prime)
                        ),
                    );
                }
            } else {
                let base = DioMonoid::new(sys, CardBoundMode::at_most_level(0));
                let ext = universal_extend(&base, &kappa).map_err(rejected)?;
                r.field("extension", format!("universal extension to {kappa}"));
                r.verdict = Truth::from_bool(ext.member(&v).map_err(rejected)?);
            }
            Ok(r)
        }
        Command::Decompose { monoid, vec } => {
            let sys = dio_system(&parsed("--monoid", monoid, parse_monoid)?)?;
            let v = parsed("--vec", vec, parse_vector)?;
            let m = DioMonoid::new(sys.clone(), CardBoundMode::AtMost(kappa.clone()));
            let d = decompose(&m, &v).map_err(rejected)?;
            let back = d.recombine();
            let mut r = Report::new(budget);
            r.field("monoid", &sys)
                .field("vector", &v)
                .lines("decomposition", &d)
                .field("recombined", &back);
            r.verdict = Truth::from_bool(back == v);
            Ok(r)
        }
        Command::BraidFind { monoid, x, y, lambda } => {
            let expr = parsed("--monoid", monoid, parse_monoid)?;
            let lambda = card("--lambda", lambda)?;
            let built = build(&expr, &kappa, cli.budget)?;
            let mut r = Report::new(budget);
            r.field("monoid", &expr);
            match built {
                Built::Vector(m) => find(&m, |e| e.to_vector(m.dim()), x, y, &lambda, &mut budget, &mut r)?,
                Built::Dio(m) => find(&m, |e| e.to_vector(m.dim()), x, y, &lambda, &mut budget, &mut r)?,
                Built::Cyclic(m) => find(&m, |e| e.to_card(), x, y, &lambda, &mut budget, &mut r)?,
                Built::Presented(m) => find(&m, |e| e.to_form(), x, y, &lambda, &mut budget, &mut r)?,
                _ => return Err(rejected("braid search needs N0^k, dio, cmn or twogen")),
            }
            r.budget = budget;
            Ok(r)
        }
        Command::BraidCheck {
            monoid,
            x,
            y,
            cert,
            lambda,
        } => {
            let expr = parsed("--monoid", monoid, parse_monoid)?;
            let lambda = card("--lambda", lambda)?;
            let built = build(&expr, &kappa, cli.budget)?;
            let mut r = Report::new(budget);
            r.field("monoid", &expr);
            match built {
                Built::Vector(m) => check(&m, |e| e.to_vector(m.dim()), x, y, cert, &lambda, &mut r)?,
                Built::Dio(m) => check(&m, |e| e.to_vector(m.dim()), x, y, cert, &lambda, &mut r)?,
                Built::Cyclic(m) => check(&m, |e| e.to_card(), x, y, cert, &lambda, &mut r)?,
                Built::Presented(m) => check(&m, |e| e.to_form(), x, y, cert, &lambda, &mut r)?,
                Built::Line(m) => check(&m, |e| e.to_line(), x, y, cert, &lambda, &mut r)?,
                Built::Dedekind(m) => {
                    let copy = m.clone();
                    check(&m, move |e| e.to_dedekind(&copy), x, y, cert, &lambda, &mut r)?
                }
                _ => return Err(rejected("certificates cannot be read for this monoid")),
            }
            Ok(r)
        }
        Command::Realizable2 { pres, corollary } => {
            let p = parsed("--pres", pres, parse_presentation)?;
            let mut r = Report::new(budget);
            r.field("presentation", &p);
            let report = if *corollary {
                let c = corollary_checks(&p, &mut budget);
                r.field("case", c.case);
                for clause in &c.clauses {
                    r.field(
                        &format!("clause {}", clause.name),
                        format!("{} ({})", clause.truth, clause.detail),
                    );
                }
                r.field("case condition", c.equivalent)
                    .field("consistent", c.consistent);
                c.realizability
            } else {
                realizable_two_gen(&p, &mut budget)
            };
            r.field(
                "non-cyclic",
                format!("{} ({})", report.non_cyclic.truth, report.non_cyclic.detail),
            );
            for c in &report.checks {
                r.field(&c.label(), format!("{} ({})", c.truth, c.detail));
            }
            if let Some(v) = report.violated() {
                r.field("violated", v.label());
            }
            r.verdict = report.verdict;
            r.budget = budget;
            Ok(r)
        }
        Command::Axioms { monoid, samples } => {
            let expr = parsed("--monoid", monoid, parse_monoid)?;
            let built = build(&expr, &kappa, cli.budget)?;
            let mut r = Report::new(budget);
            r.field("monoid", &expr)
                .field("samples", samples)
                .field("seed", cli.seed);
            with_monoid!(
                built,
                m,
                _conv,
                laws(&m, *samples, cli.seed, &mut r),
                return Err(not_a_monoid())
            );
            Ok(r)
        }
        Command::GalleryEval { monoid, fam, vec } => {
            let expr = parsed("--monoid", monoid, parse_monoid)?;
            let built = build(&expr, &kappa, cli.budget)?;
            let mut r = Report::new(budget);
            r.field("monoid", &expr);
            if let Built::Hnp(weights) = &built {
                let v = vec.as_deref().ok_or_else(|| rejected("hnp needs --vec"))?;
                hnp(weights, v, &kappa, &mut r)?;
                return Ok(r);
            }
            let fam = fam.as_deref().ok_or_else(|| rejected("gallery-eval needs --fam"))?;
            with_monoid!(built, m, conv, evaluate(&m, conv, fam, &mut r)?, unreachable!());
            Ok(r)
        }
    }
}

fn member(
    _cli: &Cli,
    monoid: &str,
    vec: Option<&str>,
    elem: Option<&str>,
    kappa: &ExtCard,
    budget: Budget,
) -> Result<Report, CliError> {
    let expr = parsed("--monoid", monoid, parse_monoid)?;
    let built = build(&expr, kappa, budget.limit())?;
    let mut r = Report::new(budget);
    r.field("monoid", &expr).field("kappa", kappa);
    if let Built::Hnp(weights) = &built {
        let v = vec.ok_or_else(|| rejected("hnp needs --vec"))?;
        hnp(weights, v, kappa, &mut r)?;
        return Ok(r);
    }
    let text = vec.or(elem).ok_or_else(|| rejected("member needs --vec or --elem"))?;
    let e = parsed("element", text, parse_element)?;
    r.field("element", &e);
    if let Built::Dedekind(m) = &built {
        let (rank, class) = match &e {
            ElemExpr::Card(c) => (c.clone(), Vec::new()),
            ElemExpr::Classed { rank, class } => (rank.clone(), class.clone()),
            other => {
                return Err(rejected(format!(
                    "expected a rank with optional class, found `{other}`"
                )))
            }
        };
        r.verdict = Truth::from_bool(m.member_pair(&rank, &class));
        return Ok(r);
    }
    with_monoid!(
        built,
        m,
        conv,
        {
            let x = conv(&e).map_err(rejected)?;
            r.verdict = m.contains(&x);
        },
        unreachable!()
    );
    Ok(r)
}

fn hnp(weights: &[BigRational], v: &str, kappa: &ExtCard, r: &mut Report) -> Result<(), CliError> {
    let x = parsed("--vec", v, parse_vector)?;
    r.field("vector", &x);
    let h = HnpVector::new(x, weights.to_vec()).map_err(rejected)?;
    match h.violation(kappa).map_err(rejected)? {
        None => r.verdict = Truth::Yes,
        Some(why) => {
            r.field("reason", why);
            r.verdict = Truth::No;
        }
    }
    Ok(())
}

fn laws<M: LawSubject>(m: &M, samples: usize, seed: u64, r: &mut Report) {
    let report = check_axioms(m, samples, seed);
    r.lines("laws", &report);
    r.verdict = Truth::from_bool(report.all_passed());
}

fn evaluate<M: KappaMonoid>(
    m: &M,
    conv: impl Fn(&ElemExpr) -> Result<M::Elem, String>,
    fam: &str,
    r: &mut Report,
) -> Result<(), CliError> {
    let (expr, fam) = family("--fam", fam, conv)?;
    r.field("family", &expr);
    let sum = m.ksum(&fam).map_err(rejected)?;
    r.field("sum", sum);
    r.verdict = Truth::Yes;
    Ok(())
}

fn find<M: BraidHost>(
    m: &M,
    conv: impl Fn(&ElemExpr) -> Result<M::Elem, String> + Copy,
    x: &str,
    y: &str,
    lambda: &ExtCard,
    budget: &mut Budget,
    r: &mut Report,
) -> Result<(), CliError> {
    let (xe, xf) = family("--x", x, conv)?;
    let (ye, yf) = family("--y", y, conv)?;
    r.field("x", &xe).field("y", &ye).field("lambda", lambda);
    let verdict = braid_find(m, &xf, &yf, lambda, budget).map_err(rejected)?;
    r.verdict = verdict.truth();
    match verdict {
        BraidVerdict::Braided(cert) => {
            r.field("kind", cert.kind()).lines("certificate", &cert);
        }
        BraidVerdict::NotBraided(why) => {
            r.field("reason", why);
        }
        BraidVerdict::Unknown(why) => {
            r.field("reason", why);
        }
    }
    Ok(())
}

fn check<M: KappaMonoid>(
    m: &M,
    conv: impl Fn(&ElemExpr) -> Result<M::Elem, String> + Clone,
    x: &str,
    y: &str,
    cert: &str,
    lambda: &ExtCard,
    r: &mut Report,
) -> Result<(), CliError>
where
    M::Elem: FromStr,
    <M::Elem as FromStr>::Err: Display,
{
    let (xe, xf) = family("--x", x, conv.clone())?;
    let (ye, yf) = family("--y", y, conv)?;
    let cert = parsed("--cert", cert, parse_certificate::<M::Elem>)?;
    r.field("x", &xe)
        .field("y", &ye)
        .field("lambda", lambda)
        .field("kind", cert.kind());
    let outcome = verify(m, &xf, &yf, &cert, lambda);
    r.verdict = outcome.truth();
    match &outcome {
        VerifyOutcome::Valid => {
            let (sx, sy) = telescope(m, &xf, &yf).map_err(rejected)?;
            r.field("sums", format!("{sx} = {sy}"));
        }
        VerifyOutcome::Invalid(why) | VerifyOutcome::Undetermined(why) => {
            r.field("reason", why);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_identifiers() {
        assert_eq!(json_key("finite-shift [i=1, j=2]"), "finite_shift_i1_j2");
        assert_eq!(json_key("case condition"), "case_condition");
        assert_eq!(json_key("non-cyclic"), "non_cyclic");
    }

    #[test]
    fn verdicts_map_to_exit_codes() {
        assert_eq!(exit_code(Truth::Yes), 0);
        assert_eq!(exit_code(Truth::No), 1);
        assert_eq!(exit_code(Truth::Unknown), 2);
    }

    #[test]
    fn plain_arguments_are_not_files() {
        assert_eq!(load("fam { }").unwrap(), "fam { }");
        assert!(matches!(load("@/definitely/missing"), Err(CliError::Parse(_))));
    }

    #[test]
    fn hnp_is_not_a_monoid() {
        let out = run(["kmon", "axioms", "--monoid", "hnp(c=1)"]);
        assert_eq!(out.code, EXIT_REJECTED);
    }
}

//! Command-line driver for the rankone library: bracket arithmetic,
//! reduction, classification, construction of the built-in families,
//! one-variable family identification, and the verification suites.
//!
//! Results go to stdout (human text or JSON per `--format`); seeds and
//! diagnostics go to stderr.  Exit codes: 0 for a computed result, 1
//! for typed domain errors or failed verification suites, 2 for parse
//! and usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use rankone::classify::{
    classify_abstract, classify_rank_one, verify_abelian_centralizers, ClassOutcome,
    ClassifyError, Sl2Triple,
};
use rankone::construct::{
    abelian_example, almost_abelian_example, f_k_beta, f_of_beta, random_rank_one_span,
    sl2_example, ConstructError,
};
use rankone::deriv::DerivError;
use rankone::poly::{rat, PolyError, Rational};
use rankone::span::{
    centralizer, independent_basis, SpanError, SpannedAlgebra, StructureTensor, TensorError,
};
use rankone::textio::{parse_derivation, parse_poly, ParseError};
use rankone::w1::{classify_w1, normalize_w1, scan_two_dim_spans, W1Error, W1Outcome};
use rankone::{Derivation, MultiPoly};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "rankone",
    version,
    about = "Exact computations with polynomial vector fields",
    arg_required_else_help = true
)]
struct Cli {
    /// Number of variables for parsing inputs
    #[arg(long = "vars", global = true, default_value_t = 1)]
    vars: usize,
    /// Output format
    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized suites (falls back to RANKONE_SEED, then 0)
    #[arg(long = "seed", global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two fields
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Apply a field to a polynomial
    Apply {
        #[arg(allow_hyphen_values = true)]
        derivation: String,
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Factor a field into its content times a reduced direction
    Reduce {
        #[arg(allow_hyphen_values = true)]
        derivation: String,
    },
    /// Classify the Lie algebra spanned by fields sharing one direction
    Classify {
        #[arg(required = true, allow_hyphen_values = true)]
        derivations: Vec<String>,
    },
    /// Classify an abstract bracket given as a JSON structure tensor
    #[command(name = "classify-abstract")]
    ClassifyAbstract { tensor: String },
    /// Basis of the centralizer of an element inside a span: X in D1 D2 ...
    Centralizer {
        #[arg(allow_hyphen_values = true)]
        element: String,
        /// The literal word "in"
        keyword: String,
        #[arg(required = true, allow_hyphen_values = true)]
        span: Vec<String>,
    },
    /// Emit the basis of one of the built-in families
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Identify a span of one-variable fields
    #[command(name = "w1-classify")]
    W1Classify {
        #[arg(required = true, allow_hyphen_values = true)]
        derivations: Vec<String>,
    },
    /// Identify a one-variable span and shift it to its beta = 0 form
    #[command(name = "w1-normalize")]
    W1Normalize {
        #[arg(required = true, allow_hyphen_values = true)]
        derivations: Vec<String>,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Family {
    /// m commuting multiples of one field (needs --vars >= 2)
    Abelian { m: usize },
    /// The abelian family of size m plus its scaling element
    #[command(name = "almost-abelian")]
    AlmostAbelian { m: usize },
    /// The degree-two triple over the last variable
    Sl2,
    /// Two-dimensional one-variable family with index k and shift beta
    Fk {
        k: u32,
        #[arg(default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
    /// Three-dimensional one-variable family with shift beta
    Fbeta {
        #[arg(default_value = "0", allow_hyphen_values = true)]
        beta: String,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Randomized abelian-centralizer checks on random rank-one spans
    Prop1 {
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
    /// Family construction/classification round trips
    Theorem1 {
        #[arg(long = "max-dim", default_value_t = 6)]
        max_dim: usize,
    },
    /// Exhaustive lattice scan for closed two-dimensional spans
    Prop3,
}

struct DomainError {
    variant: &'static str,
    message: String,
}

enum AppError {
    Parse(ParseError),
    Usage(String),
    Domain(DomainError),
    Failed(String),
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Parse(e)
    }
}

fn dom(variant: &'static str, message: impl ToString) -> AppError {
    AppError::Domain(DomainError { variant, message: message.to_string() })
}

impl From<DerivError> for AppError {
    fn from(e: DerivError) -> Self {
        let variant = match e {
            DerivError::DimensionMismatch { .. } => "DimensionMismatch",
            DerivError::ZeroDerivation => "ZeroDerivation",
            DerivError::NotRankOne { .. } => "NotRankOne",
            DerivError::AllZero => "AllZero",
        };
        dom(variant, e)
    }
}

impl From<PolyError> for AppError {
    fn from(e: PolyError) -> Self {
        let variant = match e {
            PolyError::DimensionMismatch { .. } => "DimensionMismatch",
            PolyError::VariableOutOfRange { .. } => "VariableOutOfRange",
            PolyError::NotDivisible => "NotDivisible",
            PolyError::DivisionByZero => "DivisionByZero",
            PolyError::AllZero => "AllZero",
        };
        dom(variant, e)
    }
}

impl From<SpanError> for AppError {
    fn from(e: SpanError) -> Self {
        dom("NotInSpan", e)
    }
}

impl From<TensorError> for AppError {
    fn from(e: TensorError) -> Self {
        let variant = match e {
            TensorError::Shape { .. } => "Shape",
            TensorError::Antisymmetry { .. } => "Antisymmetry",
            TensorError::Jacobi { .. } => "Jacobi",
        };
        dom(variant, e)
    }
}

impl From<ConstructError> for AppError {
    fn from(e: ConstructError) -> Self {
        let variant = match e {
            ConstructError::NeedsSecondVariable => "NeedsSecondVariable",
            ConstructError::UnsupportedIndex { .. } => "UnsupportedIndex",
            ConstructError::ZeroSize => "ZeroSize",
            ConstructError::InvalidFrame(_) => "InvalidFrame",
        };
        dom(variant, e)
    }
}

impl From<W1Error> for AppError {
    fn from(e: W1Error) -> Self {
        let variant = match e {
            W1Error::NotUnivariate { .. } => "NotUnivariate",
            W1Error::ZeroAlpha => "ZeroAlpha",
            W1Error::NotNormalizable => "NotNormalizable",
            W1Error::NonIntegerCoefficients => "NonIntegerCoefficients",
            W1Error::DegreeTooSmall { .. } => "DegreeTooSmall",
        };
        dom(variant, e)
    }
}

impl From<ClassifyError> for AppError {
    fn from(e: ClassifyError) -> Self {
        dom("Precondition", e)
    }
}

#[derive(Serialize)]
struct DerivationOut {
    derivation: String,
}

#[derive(Serialize)]
struct PolynomialOut {
    polynomial: String,
}

#[derive(Serialize)]
struct ReduceOut {
    content: String,
    direction: String,
}

#[derive(Serialize)]
struct TripleOut {
    e: String,
    h: String,
    f: String,
}

#[derive(Serialize)]
struct ClassifyOut {
    variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<TripleOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct BasisOut {
    basis: Vec<String>,
}

#[derive(Serialize)]
struct W1Out {
    variant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct SubstitutionOut {
    alpha: String,
    beta: String,
}

#[derive(Serialize)]
struct W1NormalizeOut {
    outcome: W1Out,
    substitution: SubstitutionOut,
}

#[derive(Serialize)]
struct Prop1Out {
    passes: u32,
    trials: u32,
    seed: u64,
}

#[derive(Serialize)]
struct Theorem1Out {
    passes: usize,
    total: usize,
    max_dim: usize,
}

#[derive(Serialize)]
struct ScanOut {
    q: String,
    pairs: u64,
    closed: u64,
}

#[derive(Serialize)]
struct Prop3Out {
    scans: Vec<ScanOut>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(AppError::Parse(e)) => {
            eprintln!("parse error at bytes {}..{}: {}", e.span.start, e.span.end, e.message);
            2
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(AppError::Domain(e)) => {
            eprintln!("error: {}: {}", e.variant, e.message);
            1
        }
        Err(AppError::Failed(msg)) => {
            eprintln!("{msg}");
            1
        }
    };
    std::process::exit(code);
}

fn emit<T: Serialize>(format: Format, human: &str, json: &T) {
    match format {
        Format::Human => println!("{human}"),
        Format::Json => println!("{}", serde_json::to_string(json).expect("serializable output")),
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("RANKONE_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn parse_rational_arg(s: &str) -> Result<Rational, AppError> {
    let p = parse_poly(s, 1)?;
    match p.constant_value() {
        Some(c) => Ok(c),
        None => Err(AppError::Usage(format!("expected a rational constant, got `{s}`"))),
    }
}

fn parse_span(specs: &[String], n: usize) -> Result<Vec<Derivation>, AppError> {
    specs.iter().map(|s| Ok(parse_derivation(s, n)?)).collect()
}

fn basis_strings(ds: &[Derivation]) -> Vec<String> {
    ds.iter().map(|d| d.to_string()).collect()
}

fn coords_string(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn run(cli: Cli) -> Result<(), AppError> {
    let n = cli.vars;
    if n == 0 {
        return Err(AppError::Usage("--vars must be at least 1".to_string()));
    }
    let format = cli.format;
    match cli.command {
        Command::Bracket { left, right } => {
            let l = parse_derivation(&left, n)?;
            let r = parse_derivation(&right, n)?;
            let b = l.bracket(&r)?;
            emit(format, &b.to_string(), &DerivationOut { derivation: b.to_string() });
        }
        Command::Apply { derivation, polynomial } => {
            let d = parse_derivation(&derivation, n)?;
            let f = parse_poly(&polynomial, n)?;
            let out = d.apply(&f)?;
            emit(format, &out.to_string(), &PolynomialOut { polynomial: out.to_string() });
        }
        Command::Reduce { derivation } => {
            let d = parse_derivation(&derivation, n)?;
            let r = d.reduce()?;
            let human = format!("content: {}\ndirection: {}", r.content, r.direction);
            emit(
                format,
                &human,
                &ReduceOut { content: r.content.to_string(), direction: r.direction.to_string() },
            );
        }
        Command::Classify { derivations } => {
            let ds = parse_span(&derivations, n)?;
            let outcome = classify_rank_one(&ds);
            let (human, json) = classify_outputs(&ds, &outcome);
            emit(format, &human, &json);
        }
        Command::ClassifyAbstract { tensor } => {
            let t = parse_tensor(&tensor)?;
            let outcome = classify_abstract(&t)?;
            let (human, json) = abstract_outputs(&outcome);
            emit(format, &human, &json);
        }
        Command::Centralizer { element, keyword, span } => {
            if keyword != "in" {
                return Err(AppError::Usage(format!(
                    "expected the literal word `in` between the element and the span, got `{keyword}`"
                )));
            }
            let x = parse_derivation(&element, n)?;
            let ds = parse_span(&span, n)?;
            let a = SpannedAlgebra::from_span(&ds);
            let basis = centralizer(&x, &a)?;
            emit(
                format,
                &basis_strings(&basis).join("\n"),
                &BasisOut { basis: basis_strings(&basis) },
            );
        }
        Command::Construct { family } => {
            let a = match family {
                Family::Abelian { m } => abelian_example(m, n)?,
                Family::AlmostAbelian { m } => almost_abelian_example(m, n)?,
                Family::Sl2 => sl2_example(n)?,
                Family::Fk { k, beta } => f_k_beta(k, &parse_rational_arg(&beta)?)?,
                Family::Fbeta { beta } => f_of_beta(&parse_rational_arg(&beta)?),
            };
            emit(
                format,
                &basis_strings(a.basis()).join("\n"),
                &BasisOut { basis: basis_strings(a.basis()) },
            );
        }
        Command::W1Classify { derivations } => {
            let ds = parse_span(&derivations, n)?;
            let outcome = classify_w1(&ds)?;
            let (human, json) = w1_outputs(&outcome);
            emit(format, &human, &json);
        }
        Command::W1Normalize { derivations } => {
            let ds = parse_span(&derivations, n)?;
            let outcome = classify_w1(&ds)?;
            let (normal, map) = normalize_w1(&outcome)?;
            let (human, json) = w1_outputs(&normal);
            let human = format!("{human}\nsubstitution: alpha={}, beta={}", map.alpha, map.beta);
            let json = W1NormalizeOut {
                outcome: json,
                substitution: SubstitutionOut {
                    alpha: map.alpha.to_string(),
                    beta: map.beta.to_string(),
                },
            };
            emit(format, &human, &json);
        }
        Command::Verify { suite } => {
            let seed = resolve_seed(cli.seed);
            match suite {
                Suite::Prop1 { trials } => verify_prop1(trials, seed, format)?,
                Suite::Theorem1 { max_dim } => verify_theorem1(max_dim, format)?,
                Suite::Prop3 => verify_prop3(format)?,
            }
        }
    }
    Ok(())
}

fn triple_out(t: &Sl2Triple<Derivation>) -> TripleOut {
    TripleOut { e: t.e.to_string(), h: t.h.to_string(), f: t.f.to_string() }
}

fn classify_outputs(
    inputs: &[Derivation],
    outcome: &ClassOutcome<Derivation>,
) -> (String, ClassifyOut) {
    let mut json = ClassifyOut {
        variant: "",
        dimension: None,
        basis: None,
        witness_b: None,
        triple: None,
        detail: None,
    };
    let human = match outcome {
        ClassOutcome::Abelian { dim } => {
            json.variant = "Abelian";
            json.dimension = Some(*dim);
            json.basis = Some(basis_strings(&independent_basis(inputs)));
            format!("Abelian, dim {dim}")
        }
        ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
            json.variant = "AlmostAbelian";
            json.dimension = Some(*dim);
            json.basis = Some(basis_strings(ideal));
            json.witness_b = Some(witness.to_string());
            format!(
                "AlmostAbelian, dim {dim}, b={witness}, ideal=[{}]",
                basis_strings(ideal).join(", ")
            )
        }
        ClassOutcome::Sl2 { triple } => {
            json.variant = "Sl2";
            json.dimension = Some(3);
            json.basis = Some(basis_strings(&independent_basis(inputs)));
            match triple {
                Some(t) => {
                    json.triple = Some(triple_out(t));
                    format!("Sl2, triple e={}, h={}, f={}", t.e, t.h, t.f)
                }
                None => "Sl2, no rational triple found".to_string(),
            }
        }
        ClassOutcome::HypothesisViolated { violation } => {
            json.variant = "HypothesisViolated";
            json.detail = Some(violation.to_string());
            format!("HypothesisViolated: {violation}")
        }
        ClassOutcome::NotClosed { left, right, escape } => {
            json.variant = "NotClosed";
            json.detail = Some(format!(
                "bracket of elements {left} and {right} escapes the span: {escape}"
            ));
            format!("NotClosed, bracket of elements {left} and {right} escapes the span: {escape}")
        }
    };
    (human, json)
}

fn abstract_outputs(outcome: &ClassOutcome<Vec<Rational>>) -> (String, ClassifyOut) {
    let mut json = ClassifyOut {
        variant: "",
        dimension: None,
        basis: None,
        witness_b: None,
        triple: None,
        detail: None,
    };
    let human = match outcome {
        ClassOutcome::Abelian { dim } => {
            json.variant = "Abelian";
            json.dimension = Some(*dim);
            format!("Abelian, dim {dim}")
        }
        ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
            json.variant = "AlmostAbelian";
            json.dimension = Some(*dim);
            json.basis = Some(ideal.iter().map(|v| coords_string(v)).collect());
            json.witness_b = Some(coords_string(witness));
            let ideal_strings: Vec<String> = ideal.iter().map(|v| coords_string(v)).collect();
            format!(
                "AlmostAbelian, dim {dim}, b={}, ideal=[{}]",
                coords_string(witness),
                ideal_strings.join(", ")
            )
        }
        ClassOutcome::Sl2 { triple } => {
            json.variant = "Sl2";
            json.dimension = Some(3);
            match triple {
                Some(t) => {
                    json.triple = Some(TripleOut {
                        e: coords_string(&t.e),
                        h: coords_string(&t.h),
                        f: coords_string(&t.f),
                    });
                    format!(
                        "Sl2, triple e={}, h={}, f={}",
                        coords_string(&t.e),
                        coords_string(&t.h),
                        coords_string(&t.f)
                    )
                }
                None => "Sl2".to_string(),
            }
        }
        ClassOutcome::HypothesisViolated { violation } => {
            json.variant = "HypothesisViolated";
            json.detail = Some(violation.to_string());
            format!("HypothesisViolated: {violation}")
        }
        ClassOutcome::NotClosed { left, right, escape } => {
            json.variant = "NotClosed";
            json.detail = Some(format!(
                "bracket of elements {left} and {right} escapes the span: {}",
                coords_string(escape)
            ));
            format!(
                "NotClosed, bracket of elements {left} and {right} escapes the span: {}",
                coords_string(escape)
            )
        }
    };
    (human, json)
}

fn w1_outputs(outcome: &W1Outcome) -> (String, W1Out) {
    let mut json = W1Out {
        variant: "",
        dimension: None,
        k: None,
        beta: None,
        q: None,
        witness: None,
    };
    let human = match outcome {
        W1Outcome::OneDim => {
            json.variant = "OneDim";
            json.dimension = Some(1);
            "OneDim".to_string()
        }
        W1Outcome::Fk { k, q } => {
            json.variant = "Fk";
            json.dimension = Some(2);
            json.k = Some(*k);
            json.q = Some(q.to_string());
            format!("Fk, k={k}, q={q}")
        }
        W1Outcome::FkBeta { k, beta } => {
            json.variant = "FkBeta";
            json.dimension = Some(2);
            json.k = Some(*k);
            json.beta = Some(beta.to_string());
            format!("FkBeta, k={k}, beta={beta}")
        }
        W1Outcome::FBeta { beta } => {
            json.variant = "FBeta";
            json.dimension = Some(3);
            json.beta = Some(beta.to_string());
            format!("FBeta, beta={beta}")
        }
        W1Outcome::NotSubalgebra { witness } => {
            json.variant = "NotSubalgebra";
            json.witness = Some(witness.to_string());
            format!("NotSubalgebra: {witness}")
        }
    };
    (human, json)
}

fn json_rational(v: &serde_json::Value) -> Result<Rational, AppError> {
    match v {
        serde_json::Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(rat(i, 1)),
            None => Err(AppError::Usage(format!(
                "tensor entries must be integers or rational strings, got {num}"
            ))),
        },
        serde_json::Value::String(s) => parse_rational_arg(s),
        other => Err(AppError::Usage(format!(
            "tensor entries must be integers or rational strings, got {other}"
        ))),
    }
}

fn parse_tensor(s: &str) -> Result<StructureTensor, AppError> {
    let value: serde_json::Value = serde_json::from_str(s)
        .map_err(|e| AppError::Usage(format!("invalid JSON tensor: {e}")))?;
    let outer = value
        .as_array()
        .ok_or_else(|| AppError::Usage("the tensor must be a JSON array c[i][j][k]".to_string()))?;
    let mut c = Vec::with_capacity(outer.len());
    for row in outer {
        let mids = row
            .as_array()
            .ok_or_else(|| AppError::Usage("tensor rows must be arrays".to_string()))?;
        let mut plane = Vec::with_capacity(mids.len());
        for entry in mids {
            let inner = entry
                .as_array()
                .ok_or_else(|| AppError::Usage("tensor entries must be arrays".to_string()))?;
            plane.push(inner.iter().map(json_rational).collect::<Result<Vec<_>, _>>()?);
        }
        c.push(plane);
    }
    Ok(StructureTensor::new(c)?)
}

fn verify_prop1(trials: u32, seed: u64, format: Format) -> Result<(), AppError> {
    eprintln!("seed: {seed}");
    let mut passes = 0;
    let mut failure: Option<String> = None;
    for t in 0..trials {
        let n = (t as usize % 3) + 1;
        let dim = (t as usize % 5) + 1;
        let degree = (t % 4) + 1;
        let span_seed = seed ^ (u64::from(t)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let span = random_rank_one_span(n, dim, degree, span_seed)?;
        let a = SpannedAlgebra::from_span(&span);
        let report = verify_abelian_centralizers(&a, 1, span_seed)?;
        if report.passes == report.trials {
            passes += 1;
        } else if failure.is_none() {
            if let Some(cx) = report.counterexample {
                failure = Some(format!(
                    "counterexample: centralizer of {} contains the non-commuting pair {}, {}",
                    cx.element, cx.left, cx.right
                ));
            }
        }
    }
    emit(
        format,
        &format!("{passes}/{trials} centralizers abelian"),
        &Prop1Out { passes, trials, seed },
    );
    match failure {
        None => Ok(()),
        Some(msg) => Err(AppError::Failed(msg)),
    }
}

fn scalar_one_action(witness: &Derivation, ideal: &[Derivation]) -> bool {
    ideal.iter().all(|a| match witness.bracket(a) {
        Ok(b) => b == *a,
        Err(_) => false,
    })
}

fn triple_verifies(t: &Sl2Triple<Derivation>) -> bool {
    let two = rat(2, 1);
    t.e.bracket(&t.f).map(|b| b == t.h).unwrap_or(false)
        && t.h.bracket(&t.e).map(|b| b == t.e.scale(&two)).unwrap_or(false)
        && t.h.bracket(&t.f).map(|b| b == t.f.scale(&(-two))).unwrap_or(false)
}

fn verify_theorem1(max_dim: usize, format: Format) -> Result<(), AppError> {
    let mut total = 0;
    let mut passes = 0;
    let mut failure: Option<String> = None;
    let record = |ok: bool, what: String, failure: &mut Option<String>| {
        if ok {
            1
        } else {
            if failure.is_none() {
                *failure = Some(format!("mismatch: {what}"));
            }
            0
        }
    };
    for n in 2..=3 {
        for m in 1..=max_dim {
            let a = abelian_example(m, n)?;
            let ok = matches!(classify_rank_one(a.basis()), ClassOutcome::Abelian { dim } if dim == m);
            total += 1;
            passes += record(ok, format!("abelian m={m} n={n}"), &mut failure);
        }
        for m in 1..max_dim {
            let a = almost_abelian_example(m, n)?;
            let ok = match classify_rank_one(a.basis()) {
                ClassOutcome::AlmostAbelian { dim, ideal, witness } => {
                    dim == m + 1 && ideal.len() == m && scalar_one_action(&witness, &ideal)
                }
                _ => false,
            };
            total += 1;
            passes += record(ok, format!("almost-abelian m={m} n={n}"), &mut failure);
        }
    }
    if max_dim >= 3 {
        for n in 1..=3 {
            let a = sl2_example(n)?;
            let ok = match classify_rank_one(a.basis()) {
                ClassOutcome::Sl2 { triple: Some(t) } => triple_verifies(&t),
                _ => false,
            };
            total += 1;
            passes += record(ok, format!("sl2 n={n}"), &mut failure);
        }
    }
    emit(
        format,
        &format!("{passes}/{total} classifications verified"),
        &Theorem1Out { passes, total, max_dim },
    );
    match failure {
        None => Ok(()),
        Some(msg) => Err(AppError::Failed(msg)),
    }
}

fn verify_prop3(format: Format) -> Result<(), AppError> {
    let mut scans = Vec::new();
    let mut lines = Vec::new();
    let mut bad = false;
    for q_text in ["x^2", "x^2 - 1"] {
        let q: MultiPoly = parse_poly(q_text, 1)?;
        let scan = scan_two_dim_spans(&q, 2, 7)?;
        bad |= scan.closed_found > 0;
        lines.push(format!(
            "q={}: {} closed two-dimensional spans in {} pairs",
            q, scan.closed_found, scan.pairs_checked
        ));
        scans.push(ScanOut {
            q: q.to_string(),
            pairs: scan.pairs_checked,
            closed: scan.closed_found,
        });
    }
    emit(format, &lines.join("\n"), &Prop3Out { scans });
    if bad {
        return Err(AppError::Failed("a closed two-dimensional span was found".to_string()));
    }
    Ok(())
}

//! Command line front end. Exit codes: 0 success, 1 computation error,
//! 2 usage error, 3 oracle disagreement. Machine output is JSON with a
//! top-level `"schema": 1`; runs with identical arguments, seed and
//! environment produce byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::explore::{
    conjecture8_sweep, hecke_count, oracle_crosscheck, verify_paper_counterexamples, Budget,
    ExploreError,
};
use crate::format::{
    icube_to_json, matrix_to_json, matrix_to_text, parse_matrix_auto,
};
use crate::hermitian::{build_orthoregular, HermForm2};
use crate::icube::{
    extend3, extend4, extend6_real, necessary_conditions, snf_pairing_check, verify, IcubeMatrix,
};
use crate::lattice::{snf, Mat};
use crate::quat::{lipschitz_left_divisor, Quat};
use crate::ring::{eps_delta_split_int, quadring_left_divisors, two_squares, GaussInt, QuadRingElem};
use crate::Ring;

/// Fixed default seed: reproducibility over novelty.
pub const DEFAULT_SEED: u64 = 1729;

const EXIT_OK: i32 = 0;
const EXIT_COMPUTE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_ORACLE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "icubes",
    about = "Construct, extend and certify equal-norm integral orthogonal bases over Z and Z[i]",
    version
)]
struct Cli {
    /// Output format for machine consumption.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest norm the searches will touch.
    #[arg(long)]
    max_lambda: Option<u64>,
    /// Largest ambient dimension for enumeration.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Search tree node limit.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Candidate or result cap for counters.
    #[arg(long)]
    max_candidates: Option<u64>,
}

impl BudgetArgs {
    /// Flags take precedence, then `ICUBES_MAX_*` environment variables,
    /// then the defaults.
    fn resolve(&self) -> Result<Budget, String> {
        fn env_or<T: FromStr>(name: &str, flag: Option<T>, default: T) -> Result<T, String> {
            if let Some(v) = flag {
                return Ok(v);
            }
            match std::env::var(name) {
                Ok(s) => s.parse().map_err(|_| format!("bad {}={:?}", name, s)),
                Err(_) => Ok(default),
            }
        }
        let d = Budget::default();
        Ok(Budget {
            max_lambda: BigInt::from(env_or(
                "ICUBES_MAX_LAMBDA",
                self.max_lambda,
                10_000u64,
            )?),
            max_dim: env_or("ICUBES_MAX_DIM", self.max_dim, d.max_dim)?,
            max_nodes: env_or("ICUBES_MAX_NODES", self.max_nodes, d.max_nodes)?,
            max_candidates: env_or("ICUBES_MAX_CANDIDATES", self.max_candidates, d.max_candidates)?,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extend a vector or partial icube to a full icube.
    Extend {
        #[arg(long)]
        ring: Option<Ring>,
        /// Ambient dimension; inferred from the input when omitted.
        #[arg(long)]
        dim: Option<usize>,
        /// Inline matrix, a path, or @path; text or JSON by first byte.
        input: String,
    },
    /// Check that a matrix is an icube and report its norm.
    Verify {
        #[arg(long)]
        ring: Option<Ring>,
        input: String,
    },
    /// Report arithmetic obstructions to extending a vector.
    Obstruct {
        #[arg(long)]
        ring: Option<Ring>,
        input: String,
    },
    /// Smith normal form with the icube pairing check for square inputs.
    Snf {
        #[arg(long)]
        ring: Option<Ring>,
        input: String,
    },
    /// Split a Lipschitz quaternion as t = u v with norm(u) = m.
    FactorQuat {
        /// Quaternion literal like "1+2i-3j+k".
        quat: String,
        /// Required norm of the left factor.
        #[arg(long)]
        norm: String,
    },
    /// Express n as a sum of two squares, if possible.
    TwoSquares { n: String },
    /// Search an orthobalanced basis of the given norm for a binary form.
    Orthoreg {
        #[arg(long)]
        ring: Option<Ring>,
        /// The form as a 2x2 matrix "a,b; c,d".
        #[arg(long)]
        form: String,
        #[arg(long)]
        lambda: String,
    },
    /// Count Hecke returns: exact for n=2, constructive lower bound for n=3,4.
    HeckeCount {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Extension sweep over icubes in dimension 8; appends JSONL instance
    /// lines to the report file.
    SweepC8 {
        /// Largest norm of the rank-1 icubes swept exhaustively.
        #[arg(long, default_value = "25")]
        norm_bound: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Append-only JSONL report path.
        #[arg(long)]
        report: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Re-verify the golden fixtures; exits 3 if any fails.
    VerifyPaperExamples {
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare a constructive algorithm against its exhaustive oracle;
    /// exits 3 on disagreement.
    Crosscheck {
        /// One of: extend3, two-squares, orthoreg-absence, obstruct.
        name: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

fn compute(msg: impl ToString) -> Failure {
    Failure { code: EXIT_COMPUTE, message: msg.to_string() }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, payload)) => {
            match cli.output {
                OutputFormat::Text => println!("{}", text),
                OutputFormat::Json => println!("{}", payload),
            }
            EXIT_OK
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Wrap a result object with the output schema version.
fn envelope(command: &str, body: Value) -> Value {
    json!({ "schema": 1, "command": command, "result": body })
}

fn parse_bigint(s: &str) -> Result<BigInt, Failure> {
    s.parse::<BigInt>().map_err(|_| usage(format!("not an integer: {:?}", s)))
}

struct ParsedMatrix {
    mat: Mat,
    ring: Ring,
    /// True when the input was a single text row, i.e. a vector.
    vector: bool,
}

/// Read inline text, a file path, or @path, auto-detecting text vs JSON.
fn read_matrix(input: &str, ring_flag: Option<Ring>) -> Result<ParsedMatrix, Failure> {
    let content = if let Some(path) = input.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path, e)))?
    } else if std::path::Path::new(input).is_file() {
        std::fs::read_to_string(input).map_err(|e| usage(format!("{}: {}", input, e)))?
    } else {
        input.to_string()
    };
    let parsed = parse_matrix_auto(&content).map_err(|e| usage(e.to_string()))?;
    let ring = match (ring_flag, parsed.ring) {
        (Some(r), Some(s)) if r != s => {
            return Err(usage(format!("--ring {} conflicts with the input's ring {}", r, s)))
        }
        (Some(r), _) | (None, Some(r)) => r,
        (None, None) => {
            // infer: any imaginary part means Gaussian
            if parsed.mat.data.iter().any(|e| !e.is_real()) {
                Ring::Gauss
            } else {
                Ring::Int
            }
        }
    };
    let vector = parsed.mat.rows == 1 && parsed.mat.cols > 1;
    let mat = if vector {
        Mat::from_cols(vec![parsed.mat.row(0)])
    } else {
        parsed.mat
    };
    Ok(ParsedMatrix { mat, ring, vector })
}

fn icube_text(ic: &IcubeMatrix) -> String {
    format!(
        "ring {}  n {}  k {}  norm {}\n{}",
        ic.ring,
        ic.n(),
        ic.k(),
        ic.lambda,
        matrix_to_text(&ic.mat)
    )
}

fn dispatch(cli: &Cli) -> Result<(String, Value), Failure> {
    match &cli.command {
        Command::Extend { ring, dim, input } => cmd_extend(*ring, *dim, input),
        Command::Verify { ring, input } => cmd_verify(*ring, input),
        Command::Obstruct { ring, input } => cmd_obstruct(*ring, input),
        Command::Snf { ring, input } => cmd_snf(*ring, input),
        Command::FactorQuat { quat, norm } => cmd_factor_quat(quat, norm),
        Command::TwoSquares { n } => cmd_two_squares(n),
        Command::Orthoreg { ring, form, lambda } => cmd_orthoreg(*ring, form, lambda),
        Command::HeckeCount { n, p1, p2, budget } => cmd_hecke(*n, p1, p2, budget),
        Command::SweepC8 { norm_bound, samples, seed, report, budget } => {
            cmd_sweep(norm_bound, *samples, *seed, report.as_deref(), budget)
        }
        Command::VerifyPaperExamples { budget } => cmd_paper_examples(budget),
        Command::Crosscheck { name, budget } => cmd_crosscheck(name, budget),
    }
}

fn cmd_extend(
    ring: Option<Ring>,
    dim: Option<usize>,
    input: &str,
) -> Result<(String, Value), Failure> {
    let parsed = read_matrix(input, ring)?;
    let n = dim.unwrap_or(parsed.mat.rows);
    if n != parsed.mat.rows {
        return Err(usage(format!(
            "--dim {} does not match the input's {} rows",
            n, parsed.mat.rows
        )));
    }
    let a0 = verify(&parsed.mat, parsed.ring).map_err(compute)?;
    let full = match n {
        3 => extend3(&a0),
        4 => extend4(&a0),
        6 if a0.k() == 1 && parsed.ring == Ring::Int => extend6_real(&a0.mat.col(0)),
        _ => {
            return Err(usage(format!(
                "extension implemented for dimensions 3, 4 and 6 (rank 1 over Z), got n = {}, k = {}",
                n,
                a0.k()
            )))
        }
    }
    .map_err(compute)?;
    Ok((icube_text(&full), envelope("extend", icube_to_json(&full))))
}

fn cmd_verify(ring: Option<Ring>, input: &str) -> Result<(String, Value), Failure> {
    let parsed = read_matrix(input, ring)?;
    let ic = verify(&parsed.mat, parsed.ring).map_err(compute)?;
    Ok((
        format!("ok: {}-icube of norm {} in {}^{}", ic.k(), ic.lambda, ic.ring, ic.n()),
        envelope("verify", icube_to_json(&ic)),
    ))
}

fn cmd_obstruct(ring: Option<Ring>, input: &str) -> Result<(String, Value), Failure> {
    let parsed = read_matrix(input, ring)?;
    if !parsed.vector && parsed.mat.cols != 1 {
        return Err(usage("obstruct takes a single vector"));
    }
    let v = parsed.mat.col(0);
    let report = necessary_conditions(&v, parsed.ring);
    let text = match &report.reason {
        Some(r) => format!("Obstructed: {} ({})", r, report.detail),
        None => format!("No obstruction found for norm {}", report.lambda),
    };
    let body = json!({
        "obstructed": report.obstructed,
        "reason": report.reason.as_ref().map(|r| r.to_string()),
        "lambda": report.lambda.to_string(),
        "detail": report.detail,
    });
    Ok((text, envelope("obstruct", body)))
}

fn cmd_snf(ring: Option<Ring>, input: &str) -> Result<(String, Value), Failure> {
    let parsed = read_matrix(input, ring)?;
    let res = snf(&parsed.mat);
    let diag: Vec<String> = res.diag.iter().map(|d| d.to_string()).collect();
    let mut text = format!("diag: {}", diag.join(","));
    let pairing = verify(&parsed.mat, parsed.ring)
        .ok()
        .filter(|ic| ic.n() == ic.k())
        .map(|ic| snf_pairing_check(&ic));
    if let Some((ok, _)) = &pairing {
        let _ = write!(text, "\npairing: {}", if *ok { "ok" } else { "violated" });
    }
    let body = json!({
        "diag": diag,
        "left": matrix_to_json(&res.left),
        "right": matrix_to_json(&res.right),
        "pairing": pairing.map(|(ok, _)| ok),
    });
    Ok((text, envelope("snf", body)))
}

fn cmd_factor_quat(quat: &str, norm: &str) -> Result<(String, Value), Failure> {
    let t: Quat = quat.parse().map_err(|e: crate::quat::ParseQuatError| usage(e.to_string()))?;
    let m = parse_bigint(norm)?;
    let (u, v) = lipschitz_left_divisor(&t, &m).map_err(compute)?;
    Ok((
        format!("{} = ({}) ({})", t, u, v),
        envelope(
            "factor-quat",
            json!({
                "t": t.to_string(),
                "u": u.to_string(),
                "v": v.to_string(),
                "norm_u": u.norm().to_string(),
            }),
        ),
    ))
}

fn cmd_two_squares(n: &str) -> Result<(String, Value), Failure> {
    let n = parse_bigint(n)?;
    match two_squares(&n) {
        Some(w) => {
            let (a, b) = (w.re.clone(), w.im.clone());
            Ok((
                format!("{} = {}^2 + {}^2", n, a, b),
                envelope(
                    "two-squares",
                    json!({ "n": n.to_string(), "a": a.to_string(), "b": b.to_string() }),
                ),
            ))
        }
        None => Ok((
            format!("{} is not a sum of two squares", n),
            envelope("two-squares", json!({ "n": n.to_string(), "a": Value::Null, "b": Value::Null })),
        )),
    }
}

fn cmd_orthoreg(ring: Option<Ring>, form: &str, lambda: &str) -> Result<(String, Value), Failure> {
    let ring = ring.unwrap_or(Ring::Int);
    let parsed = read_matrix(form, Some(ring))?;
    if parsed.mat.rows != 2 || parsed.mat.cols != 2 {
        return Err(usage("the form must be a 2x2 matrix"));
    }
    let alpha = parsed.mat.at(0, 0);
    let gamma = parsed.mat.at(1, 1);
    if !alpha.is_real() || !gamma.is_real() {
        return Err(usage("the diagonal of the form must be real"));
    }
    if &parsed.mat.at(0, 1).conj() != parsed.mat.at(1, 0) {
        return Err(usage("the form must be self-adjoint"));
    }
    let q = HermForm2::new(alpha.re.clone(), parsed.mat.at(0, 1).clone(), gamma.re.clone(), ring)
        .map_err(compute)?;
    let lambda = parse_bigint(lambda)?;
    let (delta, _) = q.delta_eps();
    // default type: delta_nu = nu * sqrt(Delta), real over Z, any Gaussian
    // square root of Delta over Z[i]
    let basis = if (&lambda % &delta) == BigInt::from(0) {
        let nu = &lambda / &delta;
        let root = match ring {
            Ring::Int => {
                let r = delta.sqrt();
                (&r * &r == delta).then(|| GaussInt::from_int(r))
            }
            Ring::Gauss => two_squares(&delta),
        };
        match root {
            Some(r) => {
                let dn = &GaussInt::from_int(nu) * &r;
                build_orthoregular(&q, &lambda, &dn).map_err(compute)?
            }
            None => None,
        }
    } else {
        None
    };
    match basis {
        Some(b) => {
            let a1 = format!("{},{}", b.a1[0], b.a1[1]);
            let a2 = format!("{},{}", b.a2[0], b.a2[1]);
            let kind = if b.is_orthoregular() {
                "orthoregular".to_string()
            } else {
                format!("orthobalanced, eps {}", b.eps)
            };
            Ok((
                format!("a1 = ({})  a2 = ({})  [{}]", a1, a2, kind),
                envelope(
                    "orthoreg",
                    json!({ "found": true, "a1": a1, "a2": a2, "eps": b.eps.to_string() }),
                ),
            ))
        }
        None => Ok((
            "no orthobalanced basis of this norm".into(),
            envelope(
                "orthoreg",
                json!({ "found": false, "a1": Value::Null, "a2": Value::Null, "eps": Value::Null }),
            ),
        )),
    }
}

fn explore_failure(e: ExploreError) -> Failure {
    compute(e)
}

fn cmd_hecke(
    n: usize,
    p1: &str,
    p2: &str,
    budget: &BudgetArgs,
) -> Result<(String, Value), Failure> {
    let budget = budget.resolve().map_err(usage)?;
    let p1 = parse_bigint(p1)?;
    let p2 = parse_bigint(p2)?;
    let report = hecke_count(n, &p1, &p2, &budget).map_err(explore_failure)?;
    let text = format!(
        "n = {}  |l1 l2|^2 = {}  count {} ({})",
        report.n,
        report.product,
        report.count,
        if report.exact { "exact" } else { "lower bound" }
    );
    let body = serde_json::to_value(&report).expect("report serializes");
    Ok((text, envelope("hecke-count", body)))
}

fn cmd_sweep(
    max_lambda: &str,
    samples: usize,
    seed: u64,
    report_path: Option<&str>,
    budget: &BudgetArgs,
) -> Result<(String, Value), Failure> {
    let budget = budget.resolve().map_err(usage)?;
    let max_lambda = parse_bigint(max_lambda)?;
    let report = conjecture8_sweep(&max_lambda, samples, seed, &budget);
    if let Some(path) = report_path {
        use std::io::Write;
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| usage(format!("{}: {}", path, e)))?;
        for inst in &report.instances {
            writeln!(f, "{}", serde_json::to_string(inst).expect("instance serializes"))
                .map_err(|e| compute(format!("{}: {}", path, e)))?;
        }
    }
    let text = format!(
        "attempted {}  extended {}  budget-exceeded {}  counterexamples {}",
        report.attempted,
        report.extended,
        report.budget_exceeded,
        report.counterexamples.len()
    );
    let body = json!({
        "attempted": report.attempted,
        "extended": report.extended,
        "budget_exceeded": report.budget_exceeded,
        "counterexamples": report.counterexamples,
        "seed": seed,
    });
    Ok((text, envelope("sweep-c8", body)))
}

/// The worked examples around the quadratic order `Z[sqrt(17) j]` and the
/// norm split of 425.
fn section3_fixtures() -> Vec<(String, bool, String)> {
    let mut out = Vec::new();

    let t = QuadRingElem::new(2, 1, 17);
    out.push((
        "quadring-norm-21".to_string(),
        t.norm() == BigInt::from(21),
        format!("|2+sqrt(17)j|^2 = {}", t.norm()),
    ));

    let mut no_divisor = true;
    for s in [QuadRingElem::new(4, 5, 17), QuadRingElem::new(4, -5, 17)] {
        let divs = quadring_left_divisors(&s, &BigInt::from(21));
        if !divs.is_empty() {
            no_divisor = false;
        }
    }
    out.push((
        "quadring-no-divisor-21".to_string(),
        no_divisor,
        "4+-5 sqrt(17)j admits no divisor of absolute square 21".to_string(),
    ));

    let absence = crate::explore::crosscheck_orthoreg_absence();
    out.push((
        "form-21-4-absence".to_string(),
        absence.agreed(),
        format!("{} scanned pairs", absence.instances),
    ));

    let (delta, eps) = eps_delta_split_int(&BigInt::from(425), Ring::Int);
    let ok = delta == num_rational::BigRational::from(BigInt::from(25)) && eps == BigInt::from(17);
    out.push((
        "split-425".to_string(),
        ok,
        format!("425 = {} * {}", delta, eps),
    ));

    out
}

fn cmd_paper_examples(budget: &BudgetArgs) -> Result<(String, Value), Failure> {
    let budget = budget.resolve().map_err(usage)?;
    let mut rows: Vec<(String, bool, String)> = verify_paper_counterexamples(&budget)
        .into_iter()
        .map(|f| (f.name, f.passed, f.detail))
        .collect();
    rows.extend(section3_fixtures());
    let mut text = String::new();
    let mut all = true;
    for (name, passed, detail) in &rows {
        all &= *passed;
        let _ = writeln!(text, "{}: {} ({})", if *passed { "PASS" } else { "FAIL" }, name, detail);
    }
    let _ = write!(text, "{}", if all { "all fixtures pass" } else { "FIXTURE FAILURE" });
    let body = json!({
        "fixtures": rows
            .iter()
            .map(|(name, passed, detail)| json!({ "name": name, "passed": passed, "detail": detail }))
            .collect::<Vec<_>>(),
        "all_passed": all,
    });
    if all {
        Ok((text, envelope("verify-paper-examples", body)))
    } else {
        Err(Failure { code: EXIT_ORACLE, message: text })
    }
}

fn cmd_crosscheck(name: &str, budget: &BudgetArgs) -> Result<(String, Value), Failure> {
    let budget = budget.resolve().map_err(usage)?;
    let report = oracle_crosscheck(name, &budget).map_err(|e| usage(e.to_string()))?;
    let text = format!(
        "{}: {} instances, {} disagreements",
        report.name,
        report.instances,
        report.disagreements.len()
    );
    if report.agreed() {
        let body = serde_json::to_value(&report).expect("report serializes");
        Ok((text, envelope("crosscheck", body)))
    } else {
        Err(Failure {
            code: EXIT_ORACLE,
            message: format!("{}\n{}", text, report.disagreements.join("\n")),
        })
    }
}

//! Command-line front end.
//!
//! Every subcommand produces one report, written to standard output or to
//! `--out`. Exit codes: 0 when every certificate passes, 1 when one fails,
//! 2 for usage errors and exceeded resource limits.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cubicdyn::{OrbitBuilder, ProfileRow};
use crate::error::{Error, Result};
use crate::exactpoly::{valuation, ModUniPoly, UniPoly};
use crate::frobres::{
    artin_schreier_resultant_closed, artin_schreier_resultant_operator, artin_schreier_resultant_oracle,
    brute_force_sum_product, geometric_operator, sum_product_closed, OracleRecord,
};
use crate::rigidity::PCFSolution;
use crate::rigidity::{
    certify_resultant, curve_pair, expected_degree, solve_system, Partials, ReportOptions, Tails,
    TransversalityReport, DEFAULT_TOL, RESIDUAL_TARGET, TRANSVERSALITY_THRESHOLD,
};
use crate::sylvester::{build_sylvester_with, determinant_eval_interp, determinant_fraction_free};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Fraction-free elimination over Z[y].
    Ff,
    /// Evaluation at integer points and interpolation.
    Ei,
    /// Both, compared.
    Both,
}

#[derive(Parser, Debug)]
#[command(name = "cubic-pcf", version, about = "Critical-orbit certificates for marked cubic polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, env = "CUBIC_PCF_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest iterate depth.
    #[arg(long, global = true, env = "CUBIC_PCF_MAX_N", value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: Option<u32>,
    /// Largest Sylvester matrix dimension.
    #[arg(long, global = true, env = "CUBIC_PCF_MAX_SIZE", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_size: Option<u64>,
    /// Largest field enumeration, as p^(n+m).
    #[arg(long, global = true, env = "CUBIC_PCF_ENUM_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub enum_budget: Option<u64>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PairArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Tail length of the first critical point (0 or 1).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub tail_i: u8,
    /// Tail length of the second critical point (0 or 1).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub tail_j: u8,
}

impl PairArgs {
    fn tails(&self) -> Tails {
        Tails { i: self.tail_i, j: self.tail_j }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Full transversality report for one pair of orbit conditions.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Matching tolerance for |G(alpha, beta)|.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Skip the numeric exhibit.
        #[arg(long)]
        no_solve: bool,
    },
    /// Exact x-resultant of the two orbit polynomials.
    Resultant {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = Method::Ei)]
        method: Method,
    },
    /// Artin–Schreier resultant and the sum-product identity over F_p.
    ArtinSchreier {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Also compute the Sylvester determinant over F_p[A, B].
        #[arg(long)]
        oracle: bool,
    },
    /// Degrees of the x-coefficients of f^n(x) against 4 floor(k/3) - k.
    Profile {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Numeric intersection points with their Jacobian values.
    Solve {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Transversality reports over ranges of (n, m).
    Sweep {
        /// Range of n: `A`, `A..B` (B excluded) or `A..=B`.
        #[arg(long, default_value = "1..=2", value_parser = parse_range)]
        n: Range,
        #[arg(long, default_value = "1..=2", value_parser = parse_range)]
        m: Range,
        /// Tail pairs such as `00,11`.
        #[arg(long, value_delimiter = ',', default_value = "00", value_parser = parse_tails)]
        tails: Vec<Tails>,
        /// All four tail pairs.
        #[arg(long, conflicts_with = "tails")]
        all_tails: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Skip the numeric exhibit.
        #[arg(long)]
        no_solve: bool,
    },
}

/// Inclusive range of periods; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: u32,
    pub hi: u32,
}

impl Range {
    pub fn values(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

pub fn parse_range(s: &str) -> std::result::Result<Range, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad bound {t:?}: {e}"));
    let range = if let Some((a, b)) = s.split_once("..=") {
        Range { lo: num(a)?, hi: num(b)? }
    } else if let Some((a, b)) = s.split_once("..") {
        let hi = num(b)?;
        match hi.checked_sub(1) {
            Some(hi) => Range { lo: num(a)?, hi },
            None => Range { lo: 1, hi: 0 },
        }
    } else {
        let v = num(s)?;
        Range { lo: v, hi: v }
    };
    if range.lo == 0 && range.lo <= range.hi {
        return Err("periods start at 1".into());
    }
    Ok(range)
}

pub fn parse_tails(s: &str) -> std::result::Result<Tails, String> {
    let digits: Vec<u8> = s
        .trim()
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(format!("bad tail pair {s:?}")))
        .collect::<std::result::Result<_, _>>()?;
    match digits[..] {
        [i, j] => Tails::new(i, j).map_err(|e| e.to_string()),
        _ => Err(format!("tail pair must be two digits, got {s:?}")),
    }
}

/// A fully resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub emit: Emit,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub limits: Limits,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let g = cli.global;
        let mut limits = Limits::default();
        if let Some(v) = g.max_n {
            limits.max_n = v;
        }
        if let Some(v) = g.max_size {
            limits.max_size = v as usize;
        }
        if let Some(v) = g.enum_budget {
            limits.enum_budget = v;
        }
        RunConfig {
            command: cli.command,
            emit: g.emit,
            out: g.out,
            jobs: g.jobs.map(|j| j as usize),
            seed: g.seed,
            limits,
        }
    }

    pub fn try_parse_from<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Self::from_cli)
    }
}

/// A rendered report and whether all of its certificates passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Exit code for an error: usage and resource problems are 2, failed
/// certificates 1.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. }
        | Error::BudgetExceeded { .. }
        | Error::InvalidArgument(_)
        | Error::NotPrime(_)
        | Error::Degenerate(_)
        | Error::RingMismatch { .. } => 2,
        _ => 1,
    }
}

/// Parses the arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

/// Runs the configured subcommand and writes its report.
pub fn run(config: &RunConfig) -> i32 {
    let outcome = match config.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(config)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => execute(config),
    };
    match outcome {
        Ok(outcome) => {
            let written = match &config.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => std::io::stdout().write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return 2;
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

/// Runs the configured subcommand and renders its report.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let builder = OrbitBuilder::new(config.limits.clone());
    match config.command.clone() {
        Command::Verify { pair, tol, no_solve } => {
            let report = crate::rigidity::transversality_report(
                &builder,
                pair.n,
                pair.m,
                pair.tails(),
                ReportOptions { tol, solve: !no_solve },
            )?;
            let pass = report.overall;
            let output = match config.emit {
                Emit::Json => to_json(&report)?,
                Emit::Text => verify_text(&report),
                Emit::Csv => sweep_csv(&[SweepRow::from_report(&report)])?,
            };
            Ok(Outcome { output, pass })
        }
        Command::Resultant { pair, method } => resultant_command(&builder, pair, method, config.emit),
        Command::ArtinSchreier { p, n, m, oracle } => {
            artin_schreier_command(p, n, m, oracle, config.seed, &config.limits, config.emit)
        }
        Command::Profile { n } => profile_command(&builder, n, config.emit),
        Command::Solve { pair, tol } => solve_command(&builder, pair, tol, config.emit),
        Command::Sweep { n, m, tails, all_tails, tol, no_solve } => {
            let tails = if all_tails { Tails::all().to_vec() } else { tails };
            let rows = sweep(&builder, n, m, &tails, ReportOptions { tol, solve: !no_solve });
            let pass = rows.iter().all(|r| r.overall);
            let output = match config.emit {
                Emit::Json => to_json(&rows)?,
                Emit::Csv => sweep_csv(&rows)?,
                Emit::Text => sweep_text(&rows),
            };
            Ok(Outcome { output, pass })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvariantViolation(format!("JSON encoding: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn residue(v: Option<i8>) -> String {
    v.map_or("?".into(), |v| v.to_string())
}

fn partials_text(p: &Partials) -> String {
    format!("({}, {}, {}, {})", residue(p.f_x), residue(p.f_y), residue(p.g_x), residue(p.g_y))
}

fn complex_text(re: f64, im: f64) -> String {
    if im < 0.0 {
        format!("{re:.12} - {:.12}i", -im)
    } else {
        format!("{re:.12} + {im:.12}i")
    }
}

fn solution_lines(out: &mut String, sols: &[PCFSolution]) {
    for s in sols {
        let _ = writeln!(
            out,
            "  alpha = {:<36} beta = {:<36} J = {:<36} res = {:.1e}/{:.1e}{}{}",
            complex_text(s.alpha.re, s.alpha.im),
            complex_text(s.beta.re, s.beta.im),
            complex_text(s.jacobian_value.re, s.jacobian_value.im),
            s.residual_f,
            s.residual_g,
            if s.multiplicity_hint > 1 { format!(" mult {}", s.multiplicity_hint) } else { String::new() },
            if s.strict { "" } else { " non-strict" },
        );
    }
}

pub fn verify_text(r: &TransversalityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "transversality report n={} m={} tails=({},{})", r.n, r.m, r.tails.i, r.tails.j);
    let _ = writeln!(
        out,
        "resultant: degree {} (expected {}), lead {}, ord3 {}, mod 3 leading term {}, mod 3 closed form {}",
        r.resultant_degree,
        r.expected_degree,
        r.lead_coeff.as_deref().unwrap_or("(mod 3 only)"),
        r.lead_coeff_ord3,
        r.mod3_leading_term,
        if r.mod3_matches_closed_form { "matches" } else { "differs" },
    );
    let _ = writeln!(
        out,
        "jacobian: J = 1 mod 3 {}, K = (J - 1)/3 has {} terms",
        yes(r.jacobian_mod3_ok),
        r.k_terms
    );
    let _ = writeln!(
        out,
        "partials mod 3 (F_x, F_y, G_x, G_y): observed {}, derived {}, stated {}",
        partials_text(&r.partials.observed),
        partials_text(&r.partials.derived),
        partials_text(&r.partials.stated),
    );
    let _ = writeln!(
        out,
        "integrality: ord3 lead(R) {}, ord3 lead_x(F) {}, {}",
        r.integrality.resultant_lead_ord3,
        r.integrality.f_lead_ord3,
        pass_fail(r.integrality.pass),
    );
    if r.solved {
        let _ = writeln!(
            out,
            "solutions: {} (root count consistent {}, non-strict {})",
            r.solutions.len(),
            yes(r.root_count_consistent),
            r.non_strict_count(),
        );
        solution_lines(&mut out, &r.solutions);
        if let Some(j) = r.min_abs_jacobian {
            let _ = writeln!(out, "min |J|: {j}");
        }
    } else {
        let _ = writeln!(out, "solutions: not computed");
    }
    let _ = writeln!(out, "overall: {}", pass_fail(r.overall));
    out
}

/// JSON record of the `resultant` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantRecord {
    pub n: u32,
    pub m: u32,
    pub tails: Tails,
    pub degree: u64,
    pub lead_coeff: String,
    pub ord3_lead: u32,
    pub mod3_leading_term: String,
    /// Whether both determinant methods agree; `None` when only one ran.
    pub method_agreement: Option<bool>,
}

fn resultant_command(builder: &OrbitBuilder, pair: PairArgs, method: Method, emit: Emit) -> Result<Outcome> {
    let (n, m, tails) = (pair.n, pair.m, pair.tails());
    Limits::check("n + m", (n + m) as u64, builder.limits().max_exact_sum as u64)?;
    let (f, g) = curve_pair(builder, n, m, tails)?;
    let s = build_sylvester_with(&f, &g, builder.limits())?;
    let bound = if tails.is_periodic() { expected_degree(n, m) as usize } else { s.generic_degree_bound() };
    let (r, agreement) = match method {
        Method::Ff => (determinant_fraction_free(&s)?, None),
        Method::Ei => (determinant_eval_interp(&s, bound)?, None),
        Method::Both => {
            let (a, b) = rayon::join(|| determinant_fraction_free(&s), || determinant_eval_interp(&s, bound));
            let (a, b) = (a?, b?);
            let agree = a == b;
            (a, Some(agree))
        }
    };
    let (Some(degree), Some(lead)) = (r.degree().finite(), r.leading_coefficient()) else {
        return Err(Error::Degenerate(format!("resultant of {f} and {g} vanishes")));
    };
    let reduced = r.reduce_mod(3)?;
    let mod3_leading_term = match (reduced.degree().finite(), reduced.leading_coefficient()) {
        (Some(d), Some(c)) => ModUniPoly::monomial(3, c, d as usize).to_string(),
        _ => "0".into(),
    };
    let record = ResultantRecord {
        n,
        m,
        tails,
        degree,
        lead_coeff: lead.to_string(),
        ord3_lead: valuation(lead, 3).unwrap_or(0),
        mod3_leading_term,
        method_agreement: agreement,
    };
    let mut pass = agreement != Some(false);
    if tails.is_periodic() {
        pass &= degree == expected_degree(n, m) && record.ord3_lead == 0;
    }
    let output = match emit {
        Emit::Json => to_json(&record)?,
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "n",
                "m",
                "tail_i",
                "tail_j",
                "degree",
                "lead_coeff",
                "ord3_lead",
                "mod3_leading_term",
                "method_agreement",
            ])
            .and_then(|_| {
                w.write_record([
                    n.to_string(),
                    m.to_string(),
                    tails.i.to_string(),
                    tails.j.to_string(),
                    degree.to_string(),
                    record.lead_coeff.clone(),
                    record.ord3_lead.to_string(),
                    record.mod3_leading_term.clone(),
                    agreement.map_or(String::new(), |a| a.to_string()),
                ])
            })
            .map_err(csv_error)?;
            csv_finish(w)?
        }
        Emit::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "Res_x n={n} m={m} tails=({},{})", tails.i, tails.j);
            let _ = writeln!(out, "degree {degree}, lead {}, ord3 {}", record.lead_coeff, record.ord3_lead);
            let _ = writeln!(out, "mod 3 leading term {}", record.mod3_leading_term);
            if let Some(a) = agreement {
                let _ = writeln!(out, "fraction-free and eval-interp agree: {}", yes(a));
            }
            if degree <= 30 {
                let _ = writeln!(out, "R = {r}");
            }
            out
        }
    };
    Ok(Outcome { output, pass })
}

/// JSON record of the `artin-schreier` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinSchreierRecord {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub closed_form: String,
    /// The operator form `phi_m(A) - phi_n(B)` equals the closed form.
    pub operator_form_agrees: bool,
    /// `prod (T - u - v)` from the operator identity.
    pub sum_product: String,
    /// Brute-force enumeration agrees; `None` beyond the budget.
    pub sum_product_enumeration_agrees: Option<bool>,
    pub seed: u64,
    pub additivity_samples: usize,
    /// The operator acts additively on random pairs of polynomials.
    pub additivity_holds: bool,
    pub oracle: Option<OracleRecord>,
}

const ADDITIVITY_SAMPLES: usize = 16;

fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_degree: usize) -> ModUniPoly {
    let len = rng.gen_range(0..=max_degree + 1);
    ModUniPoly::new(p, (0..len).map(|_| rng.gen_range(0..p)).collect())
}

fn artin_schreier_command(
    p: u64,
    n: u32,
    m: u32,
    oracle: bool,
    seed: u64,
    limits: &Limits,
    emit: Emit,
) -> Result<Outcome> {
    let closed = artin_schreier_resultant_closed(p, n, m)?;
    let operator_form_agrees = artin_schreier_resultant_operator(p, n, m)? == closed;
    let product = sum_product_closed(p, n, m)?;
    let enumeration = match brute_force_sum_product(p, n, m, limits.enum_budget) {
        Ok(b) => Some(b == product),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let op = geometric_operator(m as usize, num_integer::gcd(n, m) as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let additivity_holds = (0..ADDITIVITY_SAMPLES).all(|_| {
        let a = random_poly(&mut rng, p, 3);
        let b = random_poly(&mut rng, p, 3);
        op.apply(&a.add(&b)) == op.apply(&a).add(&op.apply(&b))
    });
    let oracle = oracle.then(|| artin_schreier_resultant_oracle(p, n, m, limits)).transpose()?;
    let record = ArtinSchreierRecord {
        p,
        n,
        m,
        closed_form: closed.display_with(["A", "B"]),
        operator_form_agrees,
        sum_product: product.to_string().replace('y', "T"),
        sum_product_enumeration_agrees: enumeration,
        seed,
        additivity_samples: ADDITIVITY_SAMPLES,
        additivity_holds,
        oracle,
    };
    let pass = operator_form_agrees && enumeration != Some(false) && additivity_holds;
    let output = match emit {
        Emit::Json => to_json(&record)?,
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "p",
                "n",
                "m",
                "closed_form",
                "operator_form_agrees",
                "oracle_determinant",
                "oracle_sign",
            ])
            .and_then(|_| {
                w.write_record([
                    p.to_string(),
                    n.to_string(),
                    m.to_string(),
                    record.closed_form.clone(),
                    operator_form_agrees.to_string(),
                    record.oracle.as_ref().map_or(String::new(), |o| o.determinant.clone()),
                    record.oracle.as_ref().map_or(String::new(), |o| o.sign.to_string()),
                ])
            })
            .map_err(csv_error)?;
            csv_finish(w)?
        }
        Emit::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "Res_x(x^{} - x - A, x^{} - x - B) over F_{p}", p.pow(n), p.pow(m));
            let _ = writeln!(out, "closed form: {}", record.closed_form);
            let _ = writeln!(out, "operator form agrees: {}", yes(operator_form_agrees));
            let _ = writeln!(out, "prod (T - u - v) = {}", record.sum_product);
            let _ = writeln!(out, "enumeration agrees: {}", enumeration.map_or("skipped (budget)", yes));
            let _ = writeln!(
                out,
                "additivity on {ADDITIVITY_SAMPLES} random pairs (seed {seed}): {}",
                yes(additivity_holds)
            );
            if let Some(o) = &record.oracle {
                let _ = writeln!(out, "Sylvester determinant ({}x{}): {}", o.size, o.size, o.determinant);
                let _ = writeln!(out, "matched sign: {:+}", o.sign);
            }
            out
        }
    };
    Ok(Outcome { output, pass })
}

/// JSON record of the `profile` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub n: u32,
    /// Bounds, leading and top coefficients all hold.
    pub lemma_holds: bool,
    pub failure: Option<String>,
    /// Observation only: `deg a_k` meets the bound except at `k = 3^n - 1`.
    pub equality_pattern_observed: bool,
    pub equality_exceptions: Vec<u64>,
    pub rows: Vec<ProfileRow>,
}

fn profile_command(builder: &OrbitBuilder, n: u32, emit: Emit) -> Result<Outcome> {
    let prof = builder.coefficient_profile(n)?;
    let check = prof.check();
    let record = ProfileRecord {
        n,
        lemma_holds: check.is_ok(),
        failure: check.err().map(|e| e.to_string()),
        equality_pattern_observed: prof.equality_pattern_observed(),
        equality_exceptions: prof.equality_exceptions(),
        rows: prof.rows(),
    };
    let output = match emit {
        Emit::Json => to_json(&record)?,
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "bound", "actual_degree", "ok"]).map_err(csv_error)?;
            for r in &record.rows {
                w.write_record([
                    r.n.to_string(),
                    r.k.to_string(),
                    r.bound.to_string(),
                    r.actual_degree.to_string(),
                    r.ok.to_string(),
                ])
                .map_err(csv_error)?;
            }
            csv_finish(w)?
        }
        Emit::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "coefficients a_k of f^{n}(x) = sum a_k x^(3^{n} - k)");
            let _ = writeln!(out, "{:>6} {:>6} {:>6} {:>4}", "k", "bound", "deg", "ok");
            for r in &record.rows {
                let _ = writeln!(
                    out,
                    "{:>6} {:>6} {:>6} {:>4}",
                    r.k,
                    r.bound,
                    r.actual_degree.to_string(),
                    yes(r.ok)
                );
            }
            let _ = writeln!(out, "bounds and extreme coefficients: {}", pass_fail(record.lemma_holds));
            if let Some(f) = &record.failure {
                let _ = writeln!(out, "  {f}");
            }
            let _ = writeln!(
                out,
                "observed: degree equals the bound except at k = {:?} ({})",
                record.equality_exceptions,
                if record.equality_pattern_observed {
                    "only k = 3^n - 1, where a_k = 0"
                } else {
                    "other exceptions"
                },
            );
            out
        }
    };
    Ok(Outcome { output, pass: record.lemma_holds })
}

fn solve_command(builder: &OrbitBuilder, pair: PairArgs, tol: f64, emit: Emit) -> Result<Outcome> {
    let (n, m, tails) = (pair.n, pair.m, pair.tails());
    let cert = certify_resultant(builder, n, m, tails)?;
    let r: &UniPoly = cert.resultant.as_ref().ok_or(Error::ResourceLimit {
        what: "n + m for an exact resultant",
        value: (n + m) as u64,
        limit: builder.limits().max_exact_sum as u64,
    })?;
    let outcome = solve_system(builder, n, m, tails, r, tol)?;
    let pass = outcome.root_count_consistent
        && outcome.solutions.iter().all(|s| {
            s.abs_jacobian() >= TRANSVERSALITY_THRESHOLD
                && s.residual_f <= RESIDUAL_TARGET
                && s.residual_g <= RESIDUAL_TARGET
        });
    let output = match emit {
        Emit::Json => to_json(&outcome.solutions)?,
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "alpha_re",
                "alpha_im",
                "beta_re",
                "beta_im",
                "residual_F",
                "residual_G",
                "J_re",
                "J_im",
                "multiplicity_hint",
                "strict",
            ])
            .map_err(csv_error)?;
            for s in &outcome.solutions {
                w.write_record([
                    s.alpha.re.to_string(),
                    s.alpha.im.to_string(),
                    s.beta.re.to_string(),
                    s.beta.im.to_string(),
                    s.residual_f.to_string(),
                    s.residual_g.to_string(),
                    s.jacobian_value.re.to_string(),
                    s.jacobian_value.im.to_string(),
                    s.multiplicity_hint.to_string(),
                    s.strict.to_string(),
                ])
                .map_err(csv_error)?;
            }
            csv_finish(w)?
        }
        Emit::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "solutions n={n} m={m} tails=({},{}): {} (root count consistent {})",
                tails.i,
                tails.j,
                outcome.solutions.len(),
                yes(outcome.root_count_consistent)
            );
            solution_lines(&mut out, &outcome.solutions);
            out
        }
    };
    Ok(Outcome { output, pass })
}

/// One row of a sweep; failed runs keep their error and count as failing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    pub m: u32,
    pub tail_i: u8,
    pub tail_j: u8,
    pub degree: Option<u64>,
    pub expected: u64,
    pub ord3_lead: Option<u32>,
    pub jac_mod3: Option<bool>,
    pub num_solutions: Option<usize>,
    #[serde(rename = "min_abs_J")]
    pub min_abs_j: Option<f64>,
    pub overall: bool,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn from_report(r: &TransversalityReport) -> Self {
        SweepRow {
            n: r.n,
            m: r.m,
            tail_i: r.tails.i,
            tail_j: r.tails.j,
            degree: Some(r.resultant_degree),
            expected: r.expected_degree,
            ord3_lead: Some(r.lead_coeff_ord3),
            jac_mod3: Some(r.jacobian_mod3_ok),
            num_solutions: r.solved.then_some(r.solutions.len()),
            min_abs_j: r.min_abs_jacobian,
            overall: r.overall,
            error: None,
        }
    }

    fn failed(n: u32, m: u32, tails: Tails, e: &Error) -> Self {
        SweepRow {
            n,
            m,
            tail_i: tails.i,
            tail_j: tails.j,
            degree: None,
            expected: expected_degree(n, m),
            ord3_lead: None,
            jac_mod3: None,
            num_solutions: None,
            min_abs_j: None,
            overall: false,
            error: Some(e.to_string()),
        }
    }
}

/// Reports for every `(n, m, tails)` in the ranges, computed concurrently
/// and returned in row order.
pub fn sweep(
    builder: &OrbitBuilder,
    n: Range,
    m: Range,
    tails: &[Tails],
    opts: ReportOptions,
) -> Vec<SweepRow> {
    let jobs: Vec<(u32, u32, Tails)> = n
        .values()
        .flat_map(|a| m.values().flat_map(move |b| tails.iter().map(move |&t| (a, b, t))))
        .collect();
    jobs.par_iter()
        .map(|&(a, b, t)| match crate::rigidity::transversality_report(builder, a, b, t, opts) {
            Ok(r) => SweepRow::from_report(&r),
            Err(e) => SweepRow::failed(a, b, t, &e),
        })
        .collect()
}

pub const SWEEP_COLUMNS: [&str; 11] = [
    "n",
    "m",
    "tail_i",
    "tail_j",
    "degree",
    "expected",
    "ord3_lead",
    "jac_mod3",
    "num_solutions",
    "min_abs_J",
    "overall",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), T::to_string)
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvariantViolation(format!("CSV encoding: {e}"))
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvariantViolation(format!("CSV encoding: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvariantViolation(format!("CSV encoding: {e}")))
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS).map_err(csv_error)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.tail_i.to_string(),
            r.tail_j.to_string(),
            opt(&r.degree),
            r.expected.to_string(),
            opt(&r.ord3_lead),
            opt(&r.jac_mod3),
            opt(&r.num_solutions),
            opt(&r.min_abs_j),
            r.overall.to_string(),
        ])
        .map_err(csv_error)?;
    }
    csv_finish(w)
}

fn sweep_text(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3} {:>3} {:>5} {:>8} {:>8} {:>5} {:>8} {:>6} {:>10} {:>7}",
        "n", "m", "tails", "degree", "expected", "ord3", "jac_mod3", "sols", "min|J|", "overall"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>5} {:>8} {:>8} {:>5} {:>8} {:>6} {:>10} {:>7}",
            r.n,
            r.m,
            format!("{}{}", r.tail_i, r.tail_j),
            opt(&r.degree),
            r.expected,
            opt(&r.ord3_lead),
            r.jac_mod3.map_or("", yes),
            opt(&r.num_solutions),
            opt(&r.min_abs_j),
            pass_fail(r.overall),
        );
        if let Some(e) = &r.error {
            let _ = writeln!(out, "    error: {e}");
        }
    }
    out
}

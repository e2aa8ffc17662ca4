//! Acceptance criteria, one pass/fail line each. Exact criteria compare with
//! zero tolerance; numeric ones use the tolerances pinned below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cubic_pcf::cubicdyn::{CriticalPoint, OrbitBuilder};
use cubic_pcf::exactpoly::{valuation, BivarPoly, ModBivarPoly, UniPoly};
use cubic_pcf::frobres::{
    artin_schreier_resultant_closed, artin_schreier_resultant_oracle, brute_force_sum_product,
    sum_product_closed,
};
use cubic_pcf::rigidity::{
    aberth, certify_jacobian_mod3, certify_resultant, curve_pair, expected_degree, jacobian,
    transversality_report, ReportOptions, ResultantMethod, Tails,
};
use cubic_pcf::sylvester::{
    build_sylvester, determinant_eval_interp, determinant_fraction_free, determinant_mod_p, SylvesterMatrix,
};
use cubic_pcf::Limits;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
/// Residual bound for numeric solutions.
const RESIDUAL_MAX: f64 = 1e-8;
/// Lower bound on |J| at every numeric solution.
const JACOBIAN_MIN: f64 = 1e-6;
/// Relative error allowed on the n = m = 1 solution set and J values.
const EXHIBIT_REL: f64 = 1e-8;
/// Relative error allowed for the product-over-roots oracle.
const ORACLE_REL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

/// `x^(3^n) + y + y^3 + ... + y^(3^(n-1))` over F_3.
fn iterate_closed_form(n: u32) -> ModBivarPoly {
    let mut terms = vec![((3u32.pow(n), 0u32), 1u64)];
    terms.extend((0..n).map(|i| ((0, 3u32.pow(i)), 1)));
    ModBivarPoly::from_terms(3, terms)
}

fn criterion_1(b: &OrbitBuilder) -> Outcome {
    for n in 1..=6 {
        let got = b.iterate_critical(n, CriticalPoint::Plus).map_err(e)?.poly.reduce_mod(3).map_err(e)?;
        ensure(got == iterate_closed_form(n), || format!("n = {n}: f^n(x) mod 3 = {got}"))?;
    }
    Ok("f^n(x) = x^(3^n) + Y_n mod 3 for n = 1..6".into())
}

fn criterion_2(b: &OrbitBuilder) -> Outcome {
    for n in 1..=6 {
        let it = b.iterate_critical(n, CriticalPoint::Plus).map_err(e)?.poly;
        let top = 3u32.pow(n);
        for k in 0..=top {
            let a_k = it.coefficient_in_x(top - k);
            let bound = 4 * Integer::div_floor(&(k as i64), &3) - k as i64;
            let ok = match a_k.degree().finite() {
                None => true,
                Some(d) => bound >= 0 && d as i64 <= bound,
            };
            ensure(ok, || format!("n = {n}, k = {k}: deg a_k = {} > {bound}", a_k.degree()))?;
        }
        let a0 = it.coefficient_in_x(top);
        let want = BigInt::from(-2).pow(3u32.pow(n - 1));
        ensure(a0 == UniPoly::constant(want.clone()), || format!("n = {n}: a_0 = {a0}"))?;
        let last = it.coefficient_in_x(0);
        ensure(
            last.degree().finite() == Some(3u64.pow(n - 1))
                && last.leading_coefficient() == Some(&BigInt::from(1)),
            || format!("n = {n}: a_(3^n) = {last}"),
        )?;
        ensure(b.coefficient_profile(n).map_err(e)?.check().is_ok(), || format!("n = {n}: profile check"))?;
    }
    Ok("deg a_k <= 4 floor(k/3) - k, a_0 = (-2)^(3^(n-1)), a_(3^n) monic of degree 3^(n-1), n = 1..6".into())
}

fn pairs(max_sum: u32) -> Vec<(u32, u32)> {
    (1..max_sum).flat_map(|n| (1..=max_sum - n).map(move |m| (n, m))).collect()
}

fn criterion_3(b: &OrbitBuilder) -> Outcome {
    let mut count = 0;
    for (n, m) in pairs(5) {
        for tails in Tails::all() {
            let j = jacobian(b, n, m, tails).map_err(e)?;
            let jm1 = &j - &BivarPoly::one();
            let bad = jm1.terms().iter().find(|(_, c)| !c.is_multiple_of(&BigInt::from(3)));
            ensure(bad.is_none(), || format!("({n},{m},{tails:?}): coefficient {bad:?} of J - 1"))?;
            ensure(certify_jacobian_mod3(&j).is_ok(), || format!("({n},{m},{tails:?}): certificate"))?;
            count += 1;
        }
    }
    Ok(format!("J = 1 mod 3 for {count} cases, n + m <= 5, all tails"))
}

fn criterion_4(b: &OrbitBuilder) -> Outcome {
    for (n, m) in pairs(5) {
        let c = certify_resultant(b, n, m, Tails::PERIODIC).map_err(e)?;
        let d = expected_degree(n, m);
        ensure(c.method == ResultantMethod::Exact, || format!("({n},{m}) not exact"))?;
        let r = c.resultant.as_ref().unwrap();
        let lead = r.leading_coefficient().unwrap();
        ensure(r.degree().finite() == Some(d), || format!("({n},{m}): degree {}", r.degree()))?;
        ensure(valuation(lead, 3) == Some(0), || format!("({n},{m}): lead {lead}"))?;
        ensure(lead.mod_floor(&BigInt::from(3)) == BigInt::from(2), || {
            format!("({n},{m}): lead {lead} not 2 mod 3")
        })?;
        ensure(c.mod3_leading_term == format!("2*y^{d}"), || format!("({n},{m}): {}", c.mod3_leading_term))?;
    }
    let c = certify_resultant(b, 1, 1, Tails::PERIODIC).map_err(e)?;
    let r = c.resultant.unwrap();
    ensure(r == UniPoly::monomial(BigInt::from(-64), 3), || format!("Res(F1, G1) = {r}"))?;
    // lc(F)^(deg G) * prod over roots alpha of F(x, y0) of G(alpha, y0)
    let (f, g) = curve_pair(b, 1, 1, Tails::PERIODIC).map_err(e)?;
    for y0 in [Complex64::new(0.5, 0.0), Complex64::new(-0.3, 0.7), Complex64::new(2.0, 1.0)] {
        let fc: Vec<Complex64> = f.x_coefficients().iter().map(|c| c.eval_complex(y0)).collect();
        let lead = *fc.last().unwrap();
        let prod = aberth(&fc)
            .map_err(e)?
            .into_iter()
            .fold(lead.powi(g.deg_x().finite().unwrap() as i32), |acc, a| acc * g.eval_complex(a, y0));
        let want = r.eval_complex(y0);
        ensure((prod - want).norm() <= ORACLE_REL * want.norm(), || {
            format!("product over roots at {y0}: {prod} vs {want}")
        })?;
    }
    Ok("deg = 3^(n+m-1), unit lead = 2 mod 3 for n + m <= 5; Res(F1, G1) = -64y^3 = product over roots"
        .into())
}

fn criterion_5(limits: &Limits) -> Outcome {
    let mut signs = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=2 {
            for m in 1..=2 {
                let brute = brute_force_sum_product(p, n, m, limits.enum_budget).map_err(e)?;
                let closed = sum_product_closed(p, n, m).map_err(e)?;
                ensure(brute == closed, || format!("p={p} n={n} m={m}: enumeration {brute} vs {closed}"))?;
                let o = artin_schreier_resultant_oracle(p, n, m, limits).map_err(e)?;
                let cf = artin_schreier_resultant_closed(p, n, m).map_err(e)?;
                ensure(o.closed_form == cf.display_with(["A", "B"]), || {
                    format!("p={p} n={n} m={m}: closed form")
                })?;
                signs.push(o.sign);
            }
        }
    }
    let all_plus = signs.iter().all(|&s| s == 1);
    Ok(format!(
        "12 cases exact; Sylvester determinant = {} closed form",
        if all_plus { "+1 *" } else { "+-1 *" }
    ))
}

fn random_sylvester(rng: &mut ChaCha8Rng, size: usize) -> Result<SylvesterMatrix<UniPoly>, String> {
    loop {
        let df = rng.gen_range(1..size);
        let dg = size - df;
        let poly = |rng: &mut ChaCha8Rng, d: usize| {
            BivarPoly::from_terms((0..=d).flat_map(|ex| {
                (0..3)
                    .map(|ey| ((ex as u32, ey as u32), BigInt::from(rng.gen_range(-20i64..=20))))
                    .collect::<Vec<_>>()
            }))
        };
        let (f, g) = (poly(rng, df), poly(rng, dg));
        if f.deg_x().finite() == Some(df as u64) && g.deg_x().finite() == Some(dg as u64) {
            return build_sylvester(&f, &g).map_err(e);
        }
    }
}

fn criterion_6(b: &OrbitBuilder) -> Outcome {
    let mut small = 0;
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for tails in Tails::all() {
            let (f, g) = curve_pair(b, n, m, tails).map_err(e)?;
            let s = build_sylvester(&f, &g).map_err(e)?;
            let ff = determinant_fraction_free(&s).map_err(e)?;
            let ei = determinant_eval_interp(&s, s.generic_degree_bound()).map_err(e)?;
            ensure(ff == ei, || format!("({n},{m},{tails:?}) size {}: methods differ", s.size()))?;
            small += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for size in 2..=20 {
        let s = random_sylvester(&mut rng, size)?;
        let ff = determinant_fraction_free(&s).map_err(e)?;
        let ei = determinant_eval_interp(&s, s.generic_degree_bound()).map_err(e)?;
        ensure(ff == ei, || format!("random system of size {size}: methods differ"))?;
        small += 1;
    }
    let mut large = 0;
    for (n, m) in [(1, 3), (3, 1), (2, 3), (3, 2), (3, 3)] {
        let (f, g) = curve_pair(b, n, m, Tails::PERIODIC).map_err(e)?;
        let s = build_sylvester(&f, &g).map_err(e)?;
        let r = determinant_eval_interp(&s, expected_degree(n, m) as usize).map_err(e)?;
        for p in [3u64, 5, 7, 1_000_003] {
            let dp = determinant_mod_p(&s, p).map_err(e)?;
            ensure(dp == r.reduce_mod(p).map_err(e)?, || format!("({n},{m}) size {} mod {p}", s.size()))?;
        }
        large += 1;
    }
    for size in [24, 40, 60] {
        let s = random_sylvester(&mut rng, size)?;
        let r = determinant_eval_interp(&s, s.generic_degree_bound()).map_err(e)?;
        for p in [3u64, 1_000_003] {
            ensure(determinant_mod_p(&s, p).map_err(e)? == r.reduce_mod(p).map_err(e)?, || {
                format!("random size {size} mod {p}")
            })?;
        }
        large += 1;
    }
    Ok(format!("{small} systems of size <= 20 agree exactly, {large} of size <= 60 agree mod p"))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= EXHIBIT_REL * b.norm().max(1.0)
}

fn criterion_7(b: &OrbitBuilder) -> Outcome {
    let mut total = 0;
    for (n, m) in pairs(4) {
        for tails in Tails::all() {
            let r = transversality_report(b, n, m, tails, ReportOptions::default()).map_err(e)?;
            ensure(r.solved && !r.solutions.is_empty(), || format!("({n},{m},{tails:?}) not solved"))?;
            ensure(r.root_count_consistent, || format!("({n},{m},{tails:?}) root count"))?;
            for s in &r.solutions {
                ensure(s.residual_f <= RESIDUAL_MAX && s.residual_g <= RESIDUAL_MAX, || {
                    format!("({n},{m},{tails:?}) residuals {} {}", s.residual_f, s.residual_g)
                })?;
                ensure(s.abs_jacobian() >= JACOBIAN_MIN, || {
                    format!("({n},{m},{tails:?}) |J| = {}", s.abs_jacobian())
                })?;
            }
            total += r.solutions.len();
        }
    }
    let r = transversality_report(b, 1, 1, Tails::PERIODIC, ReportOptions::default()).map_err(e)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let want =
        [(Complex64::new(0.0, -s), 4.0), (Complex64::new(0.0, 0.0), -2.0), (Complex64::new(0.0, s), 4.0)];
    ensure(r.solutions.len() == 3, || format!("n = m = 1: {} solutions", r.solutions.len()))?;
    for (sol, (alpha, j)) in r.solutions.iter().zip(want) {
        ensure(
            close(sol.alpha.into(), alpha)
                && close(sol.beta.into(), Complex64::new(0.0, 0.0))
                && close(sol.jacobian_value.into(), Complex64::new(j, 0.0)),
            || format!("n = m = 1: unexpected solution {sol:?}"),
        )?;
    }
    Ok(format!(
        "{total} solutions for n + m <= 4, all tails; n = m = 1 gives (0,0), (+-i/sqrt 2, 0) with J = -2, 4"
    ))
}

fn criterion_8(b: &OrbitBuilder) -> Outcome {
    for n in 1..=5 {
        let v = b.verify_factor_identity(n).map_err(e)?;
        ensure(v.holds(), || format!("n = {n}: identity fails"))?;
    }
    Ok("f^(n+1)(x) - f(x) = (f^n(x) - x)^2 (f^n(x) + 2x) for n = 1..5".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = 0;
    for _ in 0..200 {
        let (a, b, c) = (
            common::random_bivar(&mut rng, 5, 4, 130),
            common::random_bivar(&mut rng, 5, 4, 130),
            common::random_bivar(&mut rng, 5, 4, 130),
        );
        common::ring_laws_z(&a, &b, &c)?;
        common::leibniz(&a, &b)?;
        let p = [2u64, 3, 5, 7, 1_000_003][rng.gen_range(0..5)];
        common::reduction_homomorphism(&a, &b, p)?;
        let q = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let (fa, fb, fc) = (
            common::random_mod_bivar(&mut rng, q, 5, 3),
            common::random_mod_bivar(&mut rng, q, 5, 3),
            common::random_mod_bivar(&mut rng, q, 5, 3),
        );
        common::ring_laws_fp(&fa, &fb, &fc)?;
        let (s, t) = (common::random_operator(&mut rng, 3), common::random_operator(&mut rng, 3));
        let r = [2u64, 3, 5][rng.gen_range(0..3)];
        let (f, g) = (common::random_mod_uni(&mut rng, r, 3), common::random_mod_uni(&mut rng, r, 3));
        common::operator_action(&s, &t, &f, &g)?;
        let (u, v, w) = (
            common::random_bivar(&mut rng, 3, 2, 8),
            common::random_bivar(&mut rng, 2, 2, 8),
            common::random_bivar(&mut rng, 2, 2, 8),
        );
        common::substitution_composition(&u, &v, &w)?;
        checks += 1;
    }
    let mut triples = 0;
    for _ in 0..10_000 {
        let t = [rng.gen_range(-1e4..1e4), rng.gen_range(-1e4..1e4), rng.gen_range(-1e4..1e4)];
        common::floor_inequality(t)?;
        triples += 1;
    }
    Ok(format!("seed {SEED}: {checks} rounds of ring, reduction, operator and substitution laws; {triples} floor triples"))
}

fn main() {
    let builder = OrbitBuilder::default();
    let limits = Limits::default();
    let criteria: Vec<Criterion> = vec![
        (1, "iterate closed form mod 3", Duration::from_secs(10), Box::new(|| criterion_1(&builder))),
        (2, "coefficient bounds", Duration::from_secs(30), Box::new(|| criterion_2(&builder))),
        (3, "Jacobian certificate", Duration::from_secs(120), Box::new(|| criterion_3(&builder))),
        (
            4,
            "resultant degree and leading coefficient",
            Duration::from_secs(300),
            Box::new(|| criterion_4(&builder)),
        ),
        (5, "finite-field lemmas", Duration::from_secs(60), Box::new(|| criterion_5(&limits))),
        (6, "determinant cross-validation", Duration::from_secs(120), Box::new(|| criterion_6(&builder))),
        (7, "numeric transversality exhibit", Duration::from_secs(30), Box::new(|| criterion_7(&builder))),
        (8, "tail-one factor identity", Duration::from_secs(60), Box::new(|| criterion_8(&builder))),
        (9, "property suites", Duration::from_secs(120), Box::new(criterion_9)),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(&*run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over the {budget:?} budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id} PASS {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {id} FAIL {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

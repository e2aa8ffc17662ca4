//! Certificates for transversality of the periodic and tail-one curves:
//! the Jacobian congruence `J = 1 + 3K`, the resultant degree and unit
//! leading coefficient, 3-adic integrality of the intersection points, and
//! a numeric exhibit of every intersection point with its Jacobian value.

mod roots;
mod solve;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use roots::{aberth, integer_roots};
pub use solve::{
    solve_system, ComplexValue, PCFSolution, SolveOutcome, DEFAULT_TOL, RESIDUAL_TARGET,
    TRANSVERSALITY_THRESHOLD,
};

use crate::cubicdyn::OrbitBuilder;
use crate::error::{Error, Result};
use crate::exactpoly::{valuation, BivarPoly, Exponents, ModBivarPoly, ModUniPoly, UniPoly, Var};
use crate::frobres::geometric_operator;
use crate::sylvester::{leading_data, resultant_x_bounded};
use crate::Limits;

/// Which curves are intersected: `i = 1` selects `F^(n,1)` instead of
/// `F^(n)`, `j = 1` selects `G^(m,1)` instead of `G^(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Tails {
    pub i: u8,
    pub j: u8,
}

impl Tails {
    pub const PERIODIC: Tails = Tails { i: 0, j: 0 };

    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i > 1 || j > 1 {
            return Err(Error::InvalidArgument(format!("tail lengths must be 0 or 1, got ({i}, {j})")));
        }
        Ok(Tails { i, j })
    }

    pub fn all() -> [Tails; 4] {
        [Tails { i: 0, j: 0 }, Tails { i: 1, j: 0 }, Tails { i: 0, j: 1 }, Tails { i: 1, j: 1 }]
    }

    pub fn is_periodic(self) -> bool {
        self == Self::PERIODIC
    }
}

impl Serialize for Tails {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.i, self.j).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tails {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (i, j) = <(u8, u8)>::deserialize(d)?;
        Tails::new(i, j).map_err(serde::de::Error::custom)
    }
}

fn check_periods(n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("periods must be at least 1".into()));
    }
    Ok(())
}

/// The F- and G-variants selected by `tails`.
pub fn curve_pair(builder: &OrbitBuilder, n: u32, m: u32, tails: Tails) -> Result<(BivarPoly, BivarPoly)> {
    check_periods(n, m)?;
    let f = if tails.i == 0 { builder.build_f(n)? } else { builder.build_f_tail(n)? };
    let g = if tails.j == 0 { builder.build_g(m)? } else { builder.build_g_tail(m)? };
    Ok((f, g))
}

fn jacobian_of(f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    let fx = f.partial_derivative(Var::X);
    let fy = f.partial_derivative(Var::Y);
    let gx = g.partial_derivative(Var::X);
    let gy = g.partial_derivative(Var::Y);
    &(&fx * &gy) - &(&fy * &gx)
}

/// `J = F_x G_y - F_y G_x` for the selected variants.
pub fn jacobian(builder: &OrbitBuilder, n: u32, m: u32, tails: Tails) -> Result<BivarPoly> {
    let (f, g) = curve_pair(builder, n, m, tails)?;
    Ok(jacobian_of(&f, &g))
}

/// A coefficient of `J - 1` not divisible by 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianFailure {
    pub monomial: Exponents,
    pub coefficient: BigInt,
}

impl std::fmt::Display for JacobianFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (ex, ey) = self.monomial;
        write!(f, "coefficient {} of x^{ex} y^{ey} in J - 1 is not divisible by 3", self.coefficient)
    }
}

/// Returns `K = (J - 1)/3`, or the first monomial whose coefficient in
/// `J - 1` is not a multiple of 3.
pub fn certify_jacobian_mod3(j: &BivarPoly) -> std::result::Result<BivarPoly, JacobianFailure> {
    (j - &BivarPoly::one())
        .divide_by_integer(&BigInt::from(3))
        .map_err(|(monomial, coefficient)| JacobianFailure { monomial, coefficient })
}

/// A partial derivative reduced mod 3 when it is a constant, as -1, 0 or 1.
fn constant_mod3(p: &BivarPoly) -> Result<Option<i8>> {
    let r = p.reduce_mod(3)?;
    Ok(r.as_constant().map(|c| match c {
        0 => 0,
        1 => 1,
        _ => -1,
    }))
}

/// Residues mod 3 of the four partial derivatives, `None` where the
/// reduction is not constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partials {
    pub f_x: Option<i8>,
    pub f_y: Option<i8>,
    pub g_x: Option<i8>,
    pub g_y: Option<i8>,
}

impl Partials {
    pub fn determinant(&self) -> Option<i8> {
        let (a, b, c, d) = (self.f_x?, self.f_y?, self.g_x?, self.g_y?);
        Some((a * d - b * c).rem_euclid(3))
    }
}

/// Observed partial congruences next to the independently derived ones
/// and the ones printed in the source for the tail-one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCongruences {
    pub observed: Partials,
    pub derived: Partials,
    pub stated: Partials,
}

impl PartialCongruences {
    pub fn observed_match_derived(&self) -> bool {
        self.observed == self.derived
    }
}

/// From `F = x^(3^n) - x + Y_n` and `G = -x^(3^m) + x + Y_m` mod 3 (the
/// tail variants reduce to the same polynomials).
pub const DERIVED_PARTIALS: Partials = Partials { f_x: Some(-1), f_y: Some(1), g_x: Some(1), g_y: Some(1) };

/// As printed for the tail-one lemma; the F-signs are swapped relative to
/// direct differentiation.
pub fn stated_partials(tails: Tails) -> Partials {
    let (f_x, f_y) = if tails.i == 1 { (Some(1), Some(-1)) } else { (Some(-1), Some(1)) };
    Partials { f_x, f_y, g_x: Some(1), g_y: Some(1) }
}

pub fn partial_congruences(
    builder: &OrbitBuilder,
    n: u32,
    m: u32,
    tails: Tails,
) -> Result<PartialCongruences> {
    let (f, g) = curve_pair(builder, n, m, tails)?;
    let observed = Partials {
        f_x: constant_mod3(&f.partial_derivative(Var::X))?,
        f_y: constant_mod3(&f.partial_derivative(Var::Y))?,
        g_x: constant_mod3(&g.partial_derivative(Var::X))?,
        g_y: constant_mod3(&g.partial_derivative(Var::Y))?,
    };
    Ok(PartialCongruences { observed, derived: DERIVED_PARTIALS, stated: stated_partials(tails) })
}

/// `Y_n = y + y^3 + ... + y^(3^(n-1))` over F_3.
fn y_sum(n: u32) -> ModUniPoly {
    let mut c = vec![0u64; 3usize.pow(n - 1) + 1];
    for i in 0..n {
        c[3usize.pow(i)] = 1;
    }
    ModUniPoly::new(3, c)
}

/// The resultant mod 3 from the reductions `F = x^N - x + Y_n`,
/// `G = -(x^M - x - Y_m)` and the Artin–Schreier resultant identity:
/// `phi_m(Y_n) + phi_n(Y_m)` with `phi_k = tau^d (tau^k - 1)/(tau^d - 1)`.
pub fn resultant_mod3_closed_form(n: u32, m: u32) -> Result<ModUniPoly> {
    check_periods(n, m)?;
    let d = num_integer::gcd(n, m) as usize;
    let a = geometric_operator(m as usize, d).apply(&y_sum(n));
    let b = geometric_operator(n as usize, d).apply(&y_sum(m));
    Ok(a.add(&b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultantMethod {
    /// Exact determinant over Z[y].
    Exact,
    /// Only the reduction mod 3, from the closed forms.
    Mod3ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantCertificate {
    pub n: u32,
    pub m: u32,
    pub tails: Tails,
    pub method: ResultantMethod,
    pub degree: u64,
    pub expected_degree: u64,
    /// Exact leading coefficient, absent for the mod-3 method.
    pub lead_coeff: Option<String>,
    /// 3-adic valuation of the leading coefficient; for the mod-3 method
    /// 0 is inferred from a nonzero leading residue at the expected degree.
    pub ord3_lead: u32,
    pub mod3_leading_term: String,
    /// The exact resultant reduced mod 3 equals the closed form.
    pub mod3_matches_closed_form: bool,
    #[serde(skip)]
    pub resultant: Option<UniPoly>,
}

impl ResultantCertificate {
    pub fn degree_ok(&self) -> bool {
        self.degree == self.expected_degree
    }

    pub fn mod3_lead_ok(&self) -> bool {
        self.mod3_leading_term == format!("2*y^{}", self.expected_degree)
    }

    /// Degree, unit leading coefficient and the mod-3 leading term.
    pub fn passes(&self) -> bool {
        self.degree_ok() && self.ord3_lead == 0 && self.mod3_lead_ok() && self.mod3_matches_closed_form
    }
}

fn leading_term_string(r: &ModUniPoly) -> String {
    match (r.degree().finite(), r.leading_coefficient()) {
        (Some(d), Some(c)) => ModUniPoly::monomial(3, c, d as usize).to_string(),
        _ => "0".into(),
    }
}

pub fn expected_degree(n: u32, m: u32) -> u64 {
    3u64.pow(n + m - 1)
}

/// Computes `Res_x` of the selected variants and its certificate data.
/// Exact when `n + m <= max_exact_sum`, otherwise mod 3 only up to
/// `max_mod_sum`.
pub fn certify_resultant(
    builder: &OrbitBuilder,
    n: u32,
    m: u32,
    tails: Tails,
) -> Result<ResultantCertificate> {
    check_periods(n, m)?;
    let limits = builder.limits();
    Limits::check("n + m", (n + m) as u64, limits.max_mod_sum as u64)?;
    let expected = expected_degree(n, m);
    let closed = resultant_mod3_closed_form(n, m)?;
    if n + m > limits.max_exact_sum {
        return Ok(ResultantCertificate {
            n,
            m,
            tails,
            method: ResultantMethod::Mod3ClosedForm,
            degree: closed.degree().finite().unwrap_or(0),
            expected_degree: expected,
            lead_coeff: None,
            ord3_lead: if closed.degree().finite() == Some(expected) { 0 } else { 1 },
            mod3_leading_term: leading_term_string(&closed),
            mod3_matches_closed_form: true,
            resultant: None,
        });
    }
    let (f, g) = curve_pair(builder, n, m, tails)?;
    // The periodic bound is the proven one; tail variants use the generic
    // bound. Either way one extra sample point checks the bound.
    let bound = tails.is_periodic().then_some(expected as usize);
    let r = resultant_x_bounded(&f, &g, bound)?;
    let lead = leading_data(&r)?;
    let reduced = r.reduce_mod(3)?;
    Ok(ResultantCertificate {
        n,
        m,
        tails,
        method: ResultantMethod::Exact,
        degree: lead.degree,
        expected_degree: expected,
        lead_coeff: Some(lead.lead.to_string()),
        ord3_lead: lead.ord3,
        mod3_leading_term: leading_term_string(&reduced),
        mod3_matches_closed_form: reduced == closed,
        resultant: Some(r),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityVerdict {
    /// `ord_3` of the leading coefficient of the resultant in y.
    pub resultant_lead_ord3: u32,
    /// `ord_3` of the x-leading coefficient of the F-variant.
    pub f_lead_ord3: u32,
    pub pass: bool,
}

/// beta is 3-adically integral when the resultant has a unit leading
/// coefficient; alpha then is too when the F-variant has a unit
/// x-leading coefficient.
pub fn integrality_from_leads(resultant_lead: &BigInt, f_lead: &BigInt) -> Result<IntegralityVerdict> {
    let r = valuation(resultant_lead, 3).ok_or_else(|| Error::Degenerate("zero resultant lead".into()))?;
    let f = valuation(f_lead, 3).ok_or_else(|| Error::Degenerate("zero x-leading coefficient".into()))?;
    Ok(IntegralityVerdict { resultant_lead_ord3: r, f_lead_ord3: f, pass: r == 0 && f == 0 })
}

pub fn integrality_certificate(
    builder: &OrbitBuilder,
    cert: &ResultantCertificate,
) -> Result<IntegralityVerdict> {
    let (f, _) = curve_pair(builder, cert.n, cert.m, cert.tails)?;
    let f_lead = f.leading_coefficient_x();
    let f_lead = match (f_lead.degree().finite(), f_lead.leading_coefficient()) {
        (Some(0), Some(c)) => c.clone(),
        _ => {
            return Err(Error::InvariantViolation(format!("x-leading coefficient {f_lead} is not constant")))
        }
    };
    let f_ord = valuation(&f_lead, 3).unwrap_or(u32::MAX);
    Ok(IntegralityVerdict {
        resultant_lead_ord3: cert.ord3_lead,
        f_lead_ord3: f_ord,
        pass: cert.ord3_lead == 0 && f_ord == 0,
    })
}

/// Aggregated certificate for one `(n, m, tails)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityReport {
    pub n: u32,
    pub m: u32,
    pub tails: Tails,
    pub resultant_degree: u64,
    pub expected_degree: u64,
    pub resultant_method: ResultantMethod,
    pub lead_coeff: Option<String>,
    pub lead_coeff_ord3: u32,
    pub mod3_leading_term: String,
    pub mod3_matches_closed_form: bool,
    pub jacobian_mod3_ok: bool,
    #[serde(rename = "K_poly_present")]
    pub k_poly_present: bool,
    /// Number of terms of `K = (J - 1)/3`.
    pub k_terms: usize,
    pub partials: PartialCongruences,
    pub integrality: IntegralityVerdict,
    /// Whether the numeric exhibit ran (it needs the exact resultant).
    pub solved: bool,
    pub root_count_consistent: bool,
    pub solutions: Vec<PCFSolution>,
    pub min_abs_jacobian: Option<f64>,
    pub overall: bool,
}

impl TransversalityReport {
    pub fn non_strict_count(&self) -> usize {
        self.solutions.iter().filter(|s| !s.strict).count()
    }
}

/// Options for [`transversality_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportOptions {
    pub tol: f64,
    pub solve: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { tol: DEFAULT_TOL, solve: true }
    }
}

/// Runs every certificate for `(n, m, tails)`. `overall` holds when the
/// resultant has the expected degree and a unit leading coefficient, `J` is
/// 1 mod 3, and every numeric solution has `|J|` above the threshold.
pub fn transversality_report(
    builder: &OrbitBuilder,
    n: u32,
    m: u32,
    tails: Tails,
    opts: ReportOptions,
) -> Result<TransversalityReport> {
    let cert = certify_resultant(builder, n, m, tails)?;
    let j = jacobian(builder, n, m, tails)?;
    let k = certify_jacobian_mod3(&j);
    let partials = partial_congruences(builder, n, m, tails)?;
    let integrality = integrality_certificate(builder, &cert)?;
    let (solved, outcome) = match (&cert.resultant, opts.solve) {
        (Some(r), true) if r.degree().finite().is_some_and(|d| d <= builder.limits().numeric_degree) => {
            (true, solve_system(builder, n, m, tails, r, opts.tol)?)
        }
        _ => (false, SolveOutcome { solutions: Vec::new(), root_count_consistent: true }),
    };
    let min_abs_jacobian =
        outcome.solutions.iter().map(PCFSolution::abs_jacobian).min_by(|a, b| a.total_cmp(b));
    let overall = cert.degree_ok()
        && cert.ord3_lead == 0
        && k.is_ok()
        && outcome.solutions.iter().all(|s| s.abs_jacobian() >= TRANSVERSALITY_THRESHOLD);
    Ok(TransversalityReport {
        n,
        m,
        tails,
        resultant_degree: cert.degree,
        expected_degree: cert.expected_degree,
        resultant_method: cert.method,
        lead_coeff: cert.lead_coeff.clone(),
        lead_coeff_ord3: cert.ord3_lead,
        mod3_leading_term: cert.mod3_leading_term.clone(),
        mod3_matches_closed_form: cert.mod3_matches_closed_form,
        jacobian_mod3_ok: k.is_ok(),
        k_poly_present: k.is_ok(),
        k_terms: k.as_ref().map_or(0, |k| k.num_terms()),
        partials,
        integrality,
        solved,
        root_count_consistent: outcome.root_count_consistent,
        solutions: outcome.solutions,
        min_abs_jacobian,
        overall,
    })
}

/// `J` reduced mod 3, for display.
pub fn jacobian_mod3(j: &BivarPoly) -> Result<ModBivarPoly> {
    j.reduce_mod(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn b() -> OrbitBuilder {
        OrbitBuilder::default()
    }

    #[test]
    fn first_jacobians() {
        let j = jacobian(&b(), 1, 1, Tails::PERIODIC).unwrap();
        assert_eq!(j.to_string(), "-12*x^2 - 2");
        let j10 = jacobian(&b(), 1, 1, Tails { i: 1, j: 0 }).unwrap();
        assert_eq!(j10.to_string(), "-12*x^2 + 1");
        assert_eq!(certify_jacobian_mod3(&j).unwrap().to_string(), "-4*x^2 - 1");
        assert_eq!(certify_jacobian_mod3(&BivarPoly::one()).unwrap(), BivarPoly::zero());
        let fail = certify_jacobian_mod3(&BivarPoly::x()).unwrap_err();
        assert_eq!(fail.monomial, (1, 0));
        assert_eq!(jacobian_mod3(&j).unwrap(), ModBivarPoly::one(3));
    }

    #[test]
    fn partials_and_congruence() {
        for tails in Tails::all() {
            for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
                let pc = partial_congruences(&b(), n, m, tails).unwrap();
                assert!(pc.observed_match_derived(), "{n} {m} {tails:?}");
                assert_eq!(pc.observed.determinant(), Some(1));
                assert!(certify_jacobian_mod3(&jacobian(&b(), n, m, tails).unwrap()).is_ok());
            }
        }
        assert_eq!(stated_partials(Tails { i: 1, j: 0 }).f_x, Some(1));
    }

    #[test]
    fn resultant_certificates() {
        let c = certify_resultant(&b(), 1, 1, Tails::PERIODIC).unwrap();
        assert_eq!((c.degree, c.lead_coeff.as_deref(), c.ord3_lead), (3, Some("-64"), 0));
        assert_eq!(c.mod3_leading_term, "2*y^3");
        assert!(c.passes());
        let c = certify_resultant(&b(), 1, 2, Tails::PERIODIC).unwrap();
        assert_eq!(c.degree, 9);
        assert!(c.passes());
        let c = certify_resultant(&b(), 2, 2, Tails::PERIODIC).unwrap();
        assert_eq!(c.degree, 27);
        assert!(c.passes());
    }

    #[test]
    fn mod3_only_range() {
        let limits = Limits { max_exact_sum: 2, ..Limits::default() };
        let builder = OrbitBuilder::new(limits);
        let c = certify_resultant(&builder, 2, 2, Tails::PERIODIC).unwrap();
        assert_eq!(c.method, ResultantMethod::Mod3ClosedForm);
        assert_eq!(c.degree, 27);
        assert!(c.passes());
        assert!(c.lead_coeff.is_none());
        let over = Limits { max_mod_sum: 3, ..Limits::default() };
        assert!(matches!(
            certify_resultant(&OrbitBuilder::new(over), 2, 2, Tails::PERIODIC),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn integrality() {
        let c = certify_resultant(&b(), 1, 1, Tails::PERIODIC).unwrap();
        assert!(integrality_certificate(&b(), &c).unwrap().pass);
        let c = certify_resultant(&b(), 2, 1, Tails::PERIODIC).unwrap();
        let v = integrality_certificate(&b(), &c).unwrap();
        assert!(v.pass && v.f_lead_ord3 == 0);
        let bad = integrality_from_leads(&BigInt::from(3), &BigInt::from(-2)).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.resultant_lead_ord3, 1);
    }

    #[test]
    fn first_solutions() {
        let r = transversality_report(&b(), 1, 1, Tails::PERIODIC, ReportOptions::default()).unwrap();
        assert!(r.overall && r.root_count_consistent);
        assert_eq!(r.solutions.len(), 3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let alphas: Vec<Complex64> = r.solutions.iter().map(|x| x.alpha.into()).collect();
        let want = [Complex64::new(0.0, -s), Complex64::new(0.0, 0.0), Complex64::new(0.0, s)];
        for (a, w) in alphas.iter().zip(want) {
            assert!((a - w).norm() <= 1e-8 * w.norm().max(1.0));
        }
        let js: Vec<Complex64> = r.solutions.iter().map(|x| x.jacobian_value.into()).collect();
        for (j, w) in js.iter().zip([4.0, -2.0, 4.0]) {
            assert!((j - w).norm() <= 1e-8 * w.abs());
        }
        assert!(r.solutions.iter().all(|x| x.multiplicity_hint == 3 && x.beta.re == 0.0));
    }

    #[test]
    fn tail_solutions() {
        let r = transversality_report(&b(), 1, 1, Tails { i: 1, j: 1 }, ReportOptions::default()).unwrap();
        assert!(r.overall);
        // y = 0 and x in {0, 1, -1}; x = 0 is also periodic
        assert_eq!(r.solutions.len(), 3);
        assert_eq!(r.non_strict_count(), 1);
    }

    #[test]
    fn report_json_round_trip() {
        let r = transversality_report(&b(), 2, 1, Tails::PERIODIC, ReportOptions::default()).unwrap();
        assert!(r.overall);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"K_poly_present\":true") && s.contains("\"residual_F\""));
        let back: TransversalityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}

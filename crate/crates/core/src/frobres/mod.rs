//! Finite-field identities: the Frobenius operator calculus in Z[tau],
//! explicit extension fields, the product `prod (T - u - v)` over
//! `u in F_(p^n)`, `v in F_(p^m)`, and the resultant of two Artin–Schreier
//! polynomials, each paired with a brute-force oracle.

mod field;
mod operator;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use field::{FieldElement, FieldTower};
pub use operator::{geometric_operator, sum_product_operator, FrobeniusOperator};

use crate::error::{Error, Result};
use crate::exactpoly::{ModBivarPoly, ModUniPoly};
use crate::sylvester::SylvesterMatrix;
use crate::Limits;

/// Largest polynomial degree the closed forms will write out densely.
pub const MAX_CLOSED_DEGREE: u64 = 1 << 24;

fn check_args(p: u64, n: u32, m: u32) -> Result<()> {
    crate::exactpoly::ring::check_modulus(p)?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be positive".into()));
    }
    let degree = p.checked_pow(n + m).unwrap_or(u64::MAX);
    Limits::check("closed-form degree p^(n+m)", degree, MAX_CLOSED_DEGREE)
}

/// `prod_{u in F_(p^n)} prod_{v in F_(p^m)} (T - u - v)` from the operator
/// identity: `tau^d (tau^n - 1)(tau^m - 1)/(tau^d - 1)` applied to T.
pub fn sum_product_closed(p: u64, n: u32, m: u32) -> Result<ModUniPoly> {
    check_args(p, n, m)?;
    Ok(sum_product_operator(n as usize, m as usize).apply(&ModUniPoly::monomial(p, 1, 1)))
}

/// The same product by enumeration inside `F_(p^lcm(n, m))`.
pub fn brute_force_sum_product(p: u64, n: u32, m: u32, budget: u64) -> Result<ModUniPoly> {
    check_args(p, n, m)?;
    let needed = p.checked_pow(n + m).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let field = FieldTower::new(p, n.lcm(&m))?;
    let us = field.subfield(n)?;
    let vs = field.subfield(m)?;
    let linear = |u: &FieldElement, v: &FieldElement| vec![field.neg(&field.add(u, v)), field.one()];
    let product = us
        .par_iter()
        .map(|u| vs.iter().fold(vec![field.one()], |acc, v| field::poly_mul(&field, &acc, &linear(u, v))))
        .reduce(|| vec![field.one()], |a, b| field::poly_mul(&field, &a, &b));
    let coeffs = product
        .iter()
        .map(|c| {
            field
                .as_base(c)
                .ok_or_else(|| Error::InvariantViolation("product has a coefficient outside F_p".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(ModUniPoly::new(p, coeffs))
}

/// `sum_{i=1}^{m/d} A^(p^(id)) - sum_{i=1}^{n/d} B^(p^(id))` with
/// `d = gcd(n, m)`, as a polynomial in the variables (A, B).
pub fn artin_schreier_resultant_closed(p: u64, n: u32, m: u32) -> Result<ModBivarPoly> {
    check_args(p, n, m)?;
    let d = n.gcd(&m);
    let mut out = ModBivarPoly::zero(p);
    for i in 1..=m / d {
        out = &out + &ModBivarPoly::monomial(p, 1, p.pow(i * d) as u32, 0);
    }
    for i in 1..=n / d {
        out = &out - &ModBivarPoly::monomial(p, 1, 0, p.pow(i * d) as u32);
    }
    Ok(out)
}

/// The closed form written as operators: `phi_m(A) - phi_n(B)` with
/// `phi_k = tau^d (tau^k - 1)/(tau^d - 1)`.
pub fn artin_schreier_resultant_operator(p: u64, n: u32, m: u32) -> Result<ModBivarPoly> {
    check_args(p, n, m)?;
    let d = n.gcd(&m) as usize;
    let a = geometric_operator(m as usize, d).apply_bivar(&ModBivarPoly::x(p));
    let b = geometric_operator(n as usize, d).apply_bivar(&ModBivarPoly::y(p));
    Ok(&a - &b)
}

/// Outcome of the Sylvester-determinant oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub size: usize,
    pub closed_form: String,
    pub determinant: String,
    /// `det = sign * closed form`; in characteristic 2 the sign is +1.
    pub sign: i8,
}

/// `x^(p^k) - x - c` as a descending coefficient list over F_p[A, B].
fn artin_schreier_coefficients(p: u64, k: u32, c: &ModBivarPoly) -> Vec<ModBivarPoly> {
    let deg = p.pow(k) as usize;
    let mut coeffs = vec![ModBivarPoly::zero(p); deg + 1];
    coeffs[0] = ModBivarPoly::one(p);
    coeffs[deg - 1] = &coeffs[deg - 1] - &ModBivarPoly::one(p);
    coeffs[deg] = -c;
    coeffs
}

/// `Res_x(x^(p^n) - x - A, x^(p^m) - x - B)` as the determinant of the
/// Sylvester matrix over F_p[A, B], compared with the closed form.
pub fn artin_schreier_resultant_oracle(p: u64, n: u32, m: u32, limits: &Limits) -> Result<OracleRecord> {
    check_args(p, n, m)?;
    let size = p.checked_pow(n).zip(p.checked_pow(m)).map_or(u64::MAX, |(a, b)| a + b);
    if size > limits.sylvester_budget {
        return Err(Error::BudgetExceeded { needed: size, budget: limits.sylvester_budget });
    }
    let f = artin_schreier_coefficients(p, n, &ModBivarPoly::x(p));
    let g = artin_schreier_coefficients(p, m, &ModBivarPoly::y(p));
    let det = SylvesterMatrix::from_coefficients(&f, &g)?.determinant()?;
    let closed = artin_schreier_resultant_closed(p, n, m)?;
    let sign = if det == closed {
        1
    } else if det == -&closed {
        -1
    } else {
        return Err(Error::InvariantViolation(format!(
            "Sylvester determinant {} differs from the closed form {} beyond sign",
            det.display_with(["A", "B"]),
            closed.display_with(["A", "B"])
        )));
    };
    Ok(OracleRecord {
        p,
        n,
        m,
        size: size as usize,
        closed_form: closed.display_with(["A", "B"]),
        determinant: det.display_with(["A", "B"]),
        sign,
    })
}

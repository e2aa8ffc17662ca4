#[cfg(test)]
use num_bigint::BigInt;
use num_bigint::Sign;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::UniPoly;

pub const MAX_ITERATIONS: usize = 500;
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

fn times_pow2(x: f64, e: i64) -> f64 {
    let half = (e / 2).clamp(-1100, 1100) as i32;
    let rest = (e - e / 2).clamp(-1100, 1100) as i32;
    x * 2f64.powi(half) * 2f64.powi(rest)
}

/// Integer coefficients as floats, all divided by one power of two so the
/// largest has magnitude near 1.
pub fn to_float_coeffs(p: &UniPoly) -> Vec<Complex64> {
    let bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    p.coeffs()
        .iter()
        .map(|c| {
            let drop = (c.bits() as i64 - 64).max(0);
            let mantissa = (c.magnitude() >> drop as u64).to_f64().unwrap_or(0.0);
            let v = times_pow2(mantissa, drop - bits);
            Complex64::new(if c.sign() == Sign::Minus { -v } else { v }, 0.0)
        })
        .collect()
}

/// `a / b` without forming `|b|^2`, which can overflow.
fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.norm();
    (a / s) / (b / s)
}

/// Value, derivative, and the value of the polynomial with absolute
/// coefficients at `|z|` (the rounding-error scale of the value).
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut value = Complex64::zero();
    let mut deriv = Complex64::zero();
    let mut scale = 0.0;
    let r = z.norm();
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
        scale = scale * r + c.norm();
    }
    (value, deriv, scale)
}

/// All complex roots, with multiplicity, of the polynomial with the given
/// coefficients (lowest degree first, leading coefficient nonzero), by
/// Aberth–Ehrlich simultaneous iteration. Exact zero roots are split off
/// first.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::NumericFailure("roots of the zero polynomial".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex64::zero(); zeros];
    let lead = *coeffs.last().unwrap();
    let monic: Vec<Complex64> = coeffs[zeros..].iter().map(|&c| safe_div(c, lead)).collect();
    let d = monic.len() - 1;
    if d == 0 {
        return Ok(roots);
    }
    if d == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    // Fujiwara's bound on the root moduli sets the starting circle.
    let radius = (1..=d)
        .map(|k| {
            let c = monic[d - k].norm();
            if k == d {
                (c / 2.0).powf(1.0 / k as f64)
            } else {
                c.powf(1.0 / k as f64)
            }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut converged = vec![false; d];
    for _ in 0..MAX_ITERATIONS {
        for k in 0..d {
            if converged[k] {
                continue;
            }
            let (v, dv, scale) = horner(&monic, z[k]);
            // Stop once the residual is at the level of rounding error.
            if v.norm() <= 4.0 * d as f64 * f64::EPSILON * scale {
                converged[k] = true;
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= RELATIVE_TOLERANCE * (1.0 + z[k].norm()) {
                converged[k] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            roots.extend(z);
            return Ok(roots);
        }
    }
    Err(Error::NumericFailure(format!(
        "root finder did not converge within {MAX_ITERATIONS} iterations on a degree {d} polynomial"
    )))
}

/// Roots of an integer polynomial.
pub fn integer_roots(p: &UniPoly) -> Result<Vec<Complex64>> {
    aberth(&to_float_coeffs(p)).map_err(|e| match e {
        Error::NumericFailure(msg) => Error::NumericFailure(format!("{msg}: {p}")),
        other => other,
    })
}

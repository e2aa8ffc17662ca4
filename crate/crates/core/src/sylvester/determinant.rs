use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{ExactRing, UniPoly};

/// Fraction-free (Bareiss) determinant of a square matrix over an integral
/// domain. Rows are swapped to find a nonzero pivot, preferring the
/// lightest candidate; every division is checked for exactness.
pub fn bareiss_determinant<E: ExactRing>(mut m: Vec<Vec<E>>) -> Result<E> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let Some(sample) = m.first().and_then(|r| r.first()).cloned() else {
        return Err(Error::InvalidArgument("empty matrix".into()));
    };
    let mut negate = false;
    let mut prev = sample.one_like();
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !m[i][k].ring_is_zero()).min_by_key(|&i| m[i][k].weight());
        let Some(pivot) = pivot else {
            return Ok(sample.zero_like());
        };
        if pivot != k {
            m.swap(pivot, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let row_k = &top[k];
        let pk = &row_k[k];
        rest.par_iter_mut().try_for_each(|row| -> Result<()> {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = row[j].ring_mul(pk).ring_sub(&lead.ring_mul(&row_k[j]));
                row[j] = num
                    .exact_div(&prev)
                    .ok_or_else(|| Error::InvariantViolation(format!("Bareiss step {k} left a remainder")))?;
            }
            row[k] = lead.zero_like();
            Ok(())
        })?;
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.ring_neg() } else { det })
}

/// Sample points `0, 1, -1, 2, -2, ...`.
pub fn sample_points(count: usize) -> Vec<BigInt> {
    (0..count as i64).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }).map(BigInt::from).collect()
}

/// Newton interpolation through `(points[i], values[i])` with every divided
/// difference required to be an integer. For an integer polynomial of
/// degree below the point count this always holds, so a remainder means the
/// data did not come from such a polynomial.
pub fn interpolate_integer(points: &[BigInt], values: &[BigInt]) -> Result<UniPoly> {
    assert_eq!(points.len(), values.len());
    let n = points.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i] - &points[i - level];
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::BoundViolation(format!(
                    "divided difference of order {level} is not an integer"
                )));
            }
            dd[i] = q;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let factor = UniPoly::new(vec![-points[i].clone(), BigInt::from(1)]);
        acc = &(&acc * &factor) + &UniPoly::constant(dd[i].clone());
    }
    Ok(acc)
}

/// Determinant of a matrix over Z[y] whose determinant has degree at most
/// `degree_bound`: integer determinants at `degree_bound + 1` points, then
/// exact interpolation. One further point is evaluated and compared, so an
/// undersized bound is reported instead of silently producing a wrong
/// polynomial.
pub fn eval_interp_determinant(m: &[Vec<UniPoly>], degree_bound: usize) -> Result<UniPoly> {
    let points = sample_points(degree_bound + 2);
    let values: Vec<BigInt> = points
        .par_iter()
        .map(|y| {
            let evaluated: Vec<Vec<BigInt>> =
                m.iter().map(|row| row.iter().map(|e| e.eval(y)).collect()).collect();
            bareiss_determinant(evaluated)
        })
        .collect::<Result<_>>()?;
    let poly = interpolate_integer(&points[..=degree_bound], &values[..=degree_bound])?;
    let check = &points[degree_bound + 1];
    if poly.eval(check) != values[degree_bound + 1] {
        return Err(Error::BoundViolation(format!("determinant degree exceeds the bound {degree_bound}")));
    }
    Ok(poly)
}

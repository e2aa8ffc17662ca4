use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{check_modulus, reduce_bigint, ExactRing};
use super::{write_term, Degree, ModUniPoly};
use crate::error::Result;

/// Dense univariate polynomial in `y` with integer coefficients, stored
/// lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        Degree::of_len(self.coeffs.len())
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    pub fn eval_complex(&self, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(e, c)| c * BigInt::from(e)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn reduce_mod(&self, p: u64) -> Result<ModUniPoly> {
        check_modulus(p)?;
        Ok(ModUniPoly::new(p, self.coeffs.iter().map(|c| reduce_bigint(c, p)).collect()))
    }

    /// Gcd of the coefficients, taken positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and normalises the leading coefficient to be
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient in Z[y], `None` if the division leaves a remainder or
    /// a non-integral coefficient.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        let d_lead = divisor.coeffs.last()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let dn = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dn];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(d_lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quot))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dn = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > dn {
            let top = rem.pop().unwrap();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            let off = rem.len() - dn;
            for (j, dc) in divisor.coeffs[..dn].iter().enumerate() {
                rem[off + j] -= &top * dc;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Self::new(rem)
    }

    /// Primitive gcd via the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Yun square-free decomposition: pairs `(factor, multiplicity)` with
    /// primitive, pairwise coprime, square-free factors whose product (with
    /// multiplicities) equals the primitive part of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let a = self.primitive_part();
        if a.coeffs.len() <= 1 {
            return Vec::new();
        }
        let b = a.derivative();
        let c = a.gcd(&b);
        let mut w = a.checked_div(&c).expect("gcd divides");
        let mut y = b.checked_div(&c).expect("gcd divides derivative");
        let mut z = &y - &w.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while w.coeffs.len() > 1 {
            let g = w.gcd(&z);
            if g.coeffs.len() > 1 {
                out.push((g.clone(), i));
            }
            w = w.checked_div(&g).expect("factor divides");
            y = z.checked_div(&g).expect("factor divides");
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::new(out)
    }
}

impl ExactRing for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.coeffs.len() == 1 {
            let d = &divisor.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            return Some(UniPoly::new(out));
        }
        self.checked_div(divisor)
    }
    fn weight(&self) -> usize {
        self.coeffs.iter().map(|c| c.bits() as usize + 1).sum()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = super::monomial_string((0, e as u32), ["x", "y"]);
            write_term(f, first, c.is_negative(), &c.abs().to_string(), &mono)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_degree() {
        let p = UniPoly::from_i64(&[0, 0, 0, -64]);
        assert_eq!(p.to_string(), "-64*y^3");
        assert_eq!(p.degree(), Degree::Finite(3));
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::zero().degree(), Degree::MinusInfinity);
        assert_eq!(UniPoly::from_i64(&[1, 1, 0, 1]).to_string(), "y^3 + y + 1");
    }

    #[test]
    fn exact_division() {
        let a = UniPoly::from_i64(&[-1, 0, 1]);
        let b = UniPoly::from_i64(&[1, 1]);
        assert_eq!(a.checked_div(&b), Some(UniPoly::from_i64(&[-1, 1])));
        assert_eq!(a.checked_div(&UniPoly::from_i64(&[1, 2])), None);
        assert_eq!(
            UniPoly::from_i64(&[2, 4]).exact_div(&UniPoly::from_i64(&[2])),
            Some(UniPoly::from_i64(&[1, 2]))
        );
    }

    #[test]
    fn gcd_and_squarefree() {
        // (y - 1)^2 (y + 2)^3 y
        let f = &(&UniPoly::from_i64(&[-1, 1]).pow(2) * &UniPoly::from_i64(&[2, 1]).pow(3))
            * &UniPoly::from_i64(&[0, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(
            parts,
            vec![
                (UniPoly::from_i64(&[0, 1]), 1),
                (UniPoly::from_i64(&[-1, 1]), 2),
                (UniPoly::from_i64(&[2, 1]), 3),
            ]
        );
        let g = UniPoly::from_i64(&[0, 0, 0, -64]).squarefree_decomposition();
        assert_eq!(g, vec![(UniPoly::from_i64(&[0, 1]), 3)]);
    }

    #[test]
    fn evaluation() {
        let p = UniPoly::from_i64(&[1, 0, 1]);
        assert_eq!(p.eval(&BigInt::from(-3)), BigInt::from(10));
        let z = p.eval_complex(Complex64::new(0.0, 1.0));
        assert!(z.norm() < 1e-15);
    }
}

use num_bigint::BigInt;

use crate::exactpoly::BivarPoly;

/// Polynomial in a third variable `z` with coefficients in Z[x, y];
/// `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub coeffs: Vec<BivarPoly>,
}

impl ZPoly {
    /// `z^3 - 3x^2 z + y`.
    pub fn one_step() -> Self {
        ZPoly {
            coeffs: vec![
                BivarPoly::y(),
                BivarPoly::monomial(BigInt::from(-3), 2, 0),
                BivarPoly::zero(),
                BivarPoly::one(),
            ],
        }
    }

    pub fn identity() -> Self {
        ZPoly { coeffs: vec![BivarPoly::zero(), BivarPoly::one()] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BivarPoly::zero();
        ZPoly {
            coeffs: (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        }
        .trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ZPoly { coeffs: Vec::new() };
        }
        let mut out = vec![BivarPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        ZPoly { coeffs: out }.trimmed()
    }

    /// Replaces `z` by the bivariate polynomial `inner` (Horner in `z`).
    pub fn substitute_z(&self, inner: &BivarPoly) -> BivarPoly {
        let mut acc = BivarPoly::zero();
        for c in self.coeffs.iter().rev() {
            if !acc.is_zero() {
                acc = &acc * inner;
            }
            acc = &acc + c;
        }
        acc
    }

    /// Replaces `z` by another z-polynomial: `self(inner(z))`.
    pub fn compose(&self, inner: &ZPoly) -> ZPoly {
        let mut acc = ZPoly { coeffs: Vec::new() };
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&ZPoly { coeffs: vec![c.clone()] });
        }
        acc
    }

    /// True when every coefficient is even in `x`.
    pub fn is_even_in_x(&self) -> bool {
        self.coeffs.iter().all(|c| c.terms().keys().all(|&(ex, _)| ex % 2 == 0))
    }
}

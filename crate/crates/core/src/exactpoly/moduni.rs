use std::fmt;

use super::ring::{inv_mod, mul_mod, ExactRing};
use super::{write_term, Degree};

/// Dense univariate polynomial over F_p, lowest degree first, no trailing
/// zeros. Used for Sylvester entries mod p and for extension-field moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModUniPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModUniPoly {
    /// Builds the polynomial, reducing every coefficient modulo `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModUniPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModUniPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn monomial(p: u64, c: u64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(p, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> u64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        Degree::of_len(self.coeffs.len())
    }

    pub fn leading_coefficient(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, v: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, v % p, p) + c) % p)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "ring mismatch: F_{} vs F_{}", self.p, other.p);
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        self.check(divisor);
        let p = self.p;
        let lead = divisor.leading_coefficient().expect("division by zero polynomial");
        let inv = inv_mod(lead, p);
        let dn = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dn {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dn];
            if top == 0 {
                continue;
            }
            let q = mul_mod(top, inv, p);
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(q, dc, p)) % p;
            }
            quot[i] = q;
        }
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(l) => {
                let inv = inv_mod(l, self.p);
                Self::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect())
            }
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Degree::Finite(d) if d >= 1 => d as usize,
            _ => return false,
        };
        let t = Self::monomial(self.p, 1, 1);
        let mut power = t.clone();
        for _ in 1..=n / 2 {
            power = power.pow_mod(self.p, self);
            if self.gcd(&power.sub(&t)).coeffs.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl ExactRing for ModUniPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }
    fn one_like(&self) -> Self {
        Self::one(self.p)
    }
    fn ring_is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn ring_add(&self, other: &Self) -> Self {
        ModUniPoly::add(self, other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        ModUniPoly::sub(self, other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        ModUniPoly::mul(self, other)
    }
    fn ring_neg(&self) -> Self {
        ModUniPoly::neg(self)
    }
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
    fn weight(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for ModUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = super::monomial_string((0, e as u32), ["x", "y"]);
            write_term(f, first, false, &c.to_string(), &mono)?;
            first = false;
        }
        Ok(())
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{ModBivarPoly, ModUniPoly};

/// An element `sum c_i tau^i` of Z[tau], where tau is the p-th power map.
/// Composition of operators is multiplication in Z[tau] since tau is
/// central.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusOperator {
    coeffs: Vec<BigInt>,
}

impl FrobeniusOperator {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FrobeniusOperator { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        FrobeniusOperator { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::tau(0)
    }

    /// `tau^k`.
    pub fn tau(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        FrobeniusOperator { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in tau, `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn op_multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// The exact quotient `self / divisor` in Z[tau].
    pub fn op_divide_exact(&self, divisor: &Self) -> Result<Self> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision("division by the zero operator".into()));
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision(format!("{self} by {divisor}")))
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by {divisor}")));
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("{self} by {divisor}")));
        }
        Ok(Self::new(quot))
    }

    fn residue(c: &BigInt, p: u64) -> u64 {
        let r = c.mod_floor(&BigInt::from(p));
        r.try_into().expect("residue fits in u64")
    }

    /// `sum c_i f^(p^i)` over F_p.
    pub fn apply(&self, f: &ModUniPoly) -> ModUniPoly {
        let p = f.modulus();
        let mut acc = ModUniPoly::zero(p);
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = Self::residue(c, p);
            if c == 0 {
                continue;
            }
            let q = (p as usize).pow(i as u32);
            let mut powered = vec![0u64; (f.coeffs().len().max(1) - 1) * q + 1];
            for (e, &a) in f.coeffs().iter().enumerate() {
                powered[e * q] = a;
            }
            let term = ModUniPoly::new(p, powered).mul(&ModUniPoly::new(p, vec![c]));
            acc = acc.add(&term);
        }
        acc
    }

    /// The same action on a polynomial in two variables.
    pub fn apply_bivar(&self, f: &ModBivarPoly) -> ModBivarPoly {
        let p = f.modulus();
        let mut acc = ModBivarPoly::zero(p);
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = Self::residue(c, p);
            if c != 0 {
                acc = &acc + &f.frobenius_power(i as u32).scale(c);
            }
        }
        acc
    }
}

/// `tau^d (tau^n - 1)(tau^m - 1) / (tau^d - 1)` with `d = gcd(n, m)`.
pub fn sum_product_operator(n: usize, m: usize) -> FrobeniusOperator {
    let d = n.gcd(&m);
    let minus_one = FrobeniusOperator::from_i64(&[-1]);
    let tn = &FrobeniusOperator::tau(n) + &minus_one;
    let tm = &FrobeniusOperator::tau(m) + &minus_one;
    let td = &FrobeniusOperator::tau(d) + &minus_one;
    let num = FrobeniusOperator::tau(d).op_multiply(&tn).op_multiply(&tm);
    num.op_divide_exact(&td).expect("tau^d - 1 divides tau^m - 1 when d | m")
}

/// `tau^d (tau^k - 1) / (tau^d - 1) = tau^d + tau^2d + ... + tau^k`.
pub fn geometric_operator(k: usize, d: usize) -> FrobeniusOperator {
    let minus_one = FrobeniusOperator::from_i64(&[-1]);
    let num = FrobeniusOperator::tau(d).op_multiply(&(&FrobeniusOperator::tau(k) + &minus_one));
    num.op_divide_exact(&(&FrobeniusOperator::tau(d) + &minus_one)).expect("d divides k")
}

impl<'a> Add<&'a FrobeniusOperator> for &'a FrobeniusOperator {
    type Output = FrobeniusOperator;
    fn add(self, rhs: &FrobeniusOperator) -> FrobeniusOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        FrobeniusOperator::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Neg for &FrobeniusOperator {
    type Output = FrobeniusOperator;
    fn neg(self) -> FrobeniusOperator {
        FrobeniusOperator::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<'a> Sub<&'a FrobeniusOperator> for &'a FrobeniusOperator {
    type Output = FrobeniusOperator;
    fn sub(self, rhs: &FrobeniusOperator) -> FrobeniusOperator {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FrobeniusOperator> for &'a FrobeniusOperator {
    type Output = FrobeniusOperator;
    fn mul(self, rhs: &FrobeniusOperator) -> FrobeniusOperator {
        self.op_multiply(rhs)
    }
}

impl fmt::Display for FrobeniusOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "tau".to_string(),
                _ => format!("tau^{i}"),
            };
            crate::exactpoly::write_term(f, first, c.is_negative(), &c.abs().to_string(), &mono)?;
            first = false;
        }
        Ok(())
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::{check_modulus, reduce_bigint};
use super::{graded_lex_desc, monomial_string, write_term, Degree, Exponents, ModBivarPoly, UniPoly, Var};
use crate::error::{Error, Result};

/// Dense accumulators above this many cells fall back to a sparse map.
const DENSE_PRODUCT_CELLS: usize = 1 << 23;
/// Term-pair count above which products go through Kronecker packing.
const KRONECKER_PAIRS: usize = 1 << 16;
/// Cell limit for the Kronecker path.
const KRONECKER_CELLS: usize = 1 << 24;

/// Polynomial in `x` and `y` with arbitrary-precision integer coefficients.
///
/// Terms are kept in canonical form: no stored coefficient is zero, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    pub fn monomial(c: BigInt, ex: u32, ey: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ex, ey), c);
        }
        BivarPoly { terms }
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut map: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        BivarPoly { terms: map }
    }

    pub fn from_i64_terms(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    /// Embeds a polynomial in `y` alone.
    pub fn from_y_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| ((0, e as u32), c.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> BigInt {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn degree_by(&self, w: impl Fn(&Exponents) -> u64) -> Degree {
        self.terms.keys().map(w).max().map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn deg_x(&self) -> Degree {
        self.degree_by(|e| e.0 as u64)
    }

    pub fn deg_y(&self) -> Degree {
        self.degree_by(|e| e.1 as u64)
    }

    pub fn total_degree(&self) -> Degree {
        self.degree_by(|e| e.0 as u64 + e.1 as u64)
    }

    pub fn weighted_degree(&self, wx: u64, wy: u64) -> Degree {
        self.degree_by(|e| wx * e.0 as u64 + wy * e.1 as u64)
    }

    /// The polynomial in `y` multiplying `x^e`.
    pub fn coefficient_in_x(&self, e: u32) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(_, ey), c) in self.terms.range((e, 0)..=(e, u32::MAX)) {
            let ey = ey as usize;
            if coeffs.len() <= ey {
                coeffs.resize(ey + 1, BigInt::zero());
            }
            coeffs[ey] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// All x-coefficients, index `e` holding the coefficient of `x^e`.
    pub fn x_coefficients(&self) -> Vec<UniPoly> {
        match self.deg_x() {
            Degree::MinusInfinity => Vec::new(),
            Degree::Finite(d) => (0..=d as u32).map(|e| self.coefficient_in_x(e)).collect(),
        }
    }

    /// Leading coefficient with respect to `x`, as a polynomial in `y`.
    pub fn leading_coefficient_x(&self) -> UniPoly {
        match self.deg_x() {
            Degree::MinusInfinity => UniPoly::zero(),
            Degree::Finite(d) => self.coefficient_in_x(d as u32),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect() }
    }

    /// Multiplies by the monomial `x^ex * y^ey`.
    pub fn shift(&self, ex: u32, ey: u32) -> Self {
        BivarPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + ex, b + ey), c.clone())).collect() }
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

    /// The image under `x -> -x`.
    pub fn reflect_x(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, if e.0 % 2 == 1 { -c } else { c.clone() })).collect(),
        }
    }

    /// Exact composition: replaces `var` by `replacement` (Horner scheme in
    /// the substituted variable).
    pub fn substitute(&self, var: Var, replacement: &BivarPoly) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let identity = match var {
            Var::X => BivarPoly::x(),
            Var::Y => BivarPoly::y(),
        };
        if *replacement == identity {
            return self.clone();
        }
        // group by exponent of `var`; coefficients are polynomials in the other variable
        let mut groups: BTreeMap<u32, Vec<(Exponents, BigInt)>> = BTreeMap::new();
        for (&(ex, ey), c) in &self.terms {
            let (k, rest) = match var {
                Var::X => (ex, (0, ey)),
                Var::Y => (ey, (ex, 0)),
            };
            groups.entry(k).or_default().push((rest, c.clone()));
        }
        let top = *groups.keys().next_back().unwrap();
        let mut acc = BivarPoly::zero();
        for k in (0..=top).rev() {
            if !acc.is_zero() {
                acc = &acc * replacement;
            }
            if let Some(ts) = groups.remove(&k) {
                acc = &acc + &BivarPoly::from_terms(ts);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: Var) -> Self {
        BivarPoly::from_terms(self.terms.iter().filter_map(|(&(ex, ey), c)| match var {
            Var::X if ex > 0 => Some(((ex - 1, ey), c * BigInt::from(ex))),
            Var::Y if ey > 0 => Some(((ex, ey - 1), c * BigInt::from(ey))),
            _ => None,
        }))
    }

    /// Coefficientwise reduction modulo the prime `q`.
    pub fn reduce_mod(&self, q: u64) -> Result<ModBivarPoly> {
        check_modulus(q)?;
        Ok(ModBivarPoly::from_terms(q, self.terms.iter().map(|(&e, c)| (e, reduce_bigint(c, q)))))
    }

    /// `(self - c) / q` when every coefficient of `self - c` is divisible
    /// by `q`; otherwise the first offending monomial (graded-lex order).
    pub fn divide_by_integer(&self, q: &BigInt) -> std::result::Result<Self, (Exponents, BigInt)> {
        let mut out = BTreeMap::new();
        for (e, c) in self.sorted_terms() {
            let (quot, rem) = num_integer::Integer::div_rem(c, q);
            if !rem.is_zero() {
                return Err((e, c.clone()));
            }
            out.insert(e, quot);
        }
        Ok(BivarPoly { terms: out })
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for row in self.x_coefficients().iter().rev() {
            acc = acc * x + row.eval(y);
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for row in self.x_coefficients().iter().rev() {
            acc = acc * x + row.eval_complex(y);
        }
        acc
    }

    /// Terms in the canonical graded-lex descending order.
    pub fn sorted_terms(&self) -> Vec<(Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&e, c)| (e, c)).collect();
        v.sort_by(|a, b| graded_lex_desc(&a.0, &b.0));
        v
    }

    /// Largest coefficient bit length, zero for the zero polynomial.
    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Sum of absolute values of the coefficients as an `f64`.
    pub fn l1_norm_f64(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }
}

/// Packs both operands into single integers (one slot of `digits` 64-bit
/// limbs per cell, laid out with the row width of the product), multiplies
/// once, and reads the slots back as balanced signed values.
fn kronecker_product(
    ta: &[(Exponents, &BigInt)],
    tb: &[(Exponents, &BigInt)],
    width: usize,
    cells: usize,
) -> BivarPoly {
    let max_bits = |t: &[(Exponents, &BigInt)]| t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let count = ta.len().min(tb.len()) as u64;
    let bound = max_bits(ta) + max_bits(tb) + (64 - count.leading_zeros() as u64) + 2;
    let digits = bound.div_ceil(64) as usize;
    let pack = |t: &[(Exponents, &BigInt)]| -> Integer {
        let top = t.iter().map(|&((ex, ey), _)| ex as usize * width + ey as usize).max().unwrap();
        let mut pos = vec![0u64; (top + 1) * digits];
        let mut neg = vec![0u64; (top + 1) * digits];
        for &((ex, ey), c) in t {
            let slot = (ex as usize * width + ey as usize) * digits;
            let words = c.magnitude().to_u64_digits();
            let buf = if c.is_negative() { &mut neg } else { &mut pos };
            buf[slot..slot + words.len()].copy_from_slice(&words);
        }
        Integer::from(Natural::from_owned_limbs_asc(pos)) - Integer::from(Natural::from_owned_limbs_asc(neg))
    };
    let prod = pack(ta) * pack(tb);
    let mut offset = vec![0u64; cells * digits];
    for i in 0..cells {
        offset[i * digits + digits - 1] = 1 << 63;
    }
    let shifted = Natural::try_from(prod + Integer::from(Natural::from_owned_limbs_asc(offset)))
        .expect("offset keeps the packed product nonnegative");
    let words = shifted.to_limbs_asc();
    let half = BigInt::from(BigUint::one() << (64 * digits - 1));
    let mut terms = BTreeMap::new();
    for idx in 0..cells {
        let lo = (idx * digits).min(words.len());
        let hi = ((idx + 1) * digits).min(words.len());
        let mut slot = BigUint::zero();
        for &w in words[lo..hi].iter().rev() {
            slot = (slot << 64u32) + w;
        }
        let c = BigInt::from(slot) - &half;
        if !c.is_zero() {
            terms.insert(((idx / width) as u32, (idx % width) as u32), c);
        }
    }
    BivarPoly { terms }
}

fn product(a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
    if a.is_zero() || b.is_zero() {
        return BivarPoly::zero();
    }
    let dx = a.deg_x().finite().unwrap() + b.deg_x().finite().unwrap();
    let dy = a.deg_y().finite().unwrap() + b.deg_y().finite().unwrap();
    let width = dy as usize + 1;
    let cells = (dx as usize + 1).saturating_mul(width);
    let ta: Vec<(Exponents, &BigInt)> = a.terms.iter().map(|(&e, c)| (e, c)).collect();
    let tb: Vec<(Exponents, &BigInt)> = b.terms.iter().map(|(&e, c)| (e, c)).collect();
    if ta.len().saturating_mul(tb.len()) > KRONECKER_PAIRS && cells <= KRONECKER_CELLS {
        return kronecker_product(&ta, &tb, width, cells);
    }
    if cells > DENSE_PRODUCT_CELLS {
        let mut map: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for &((ax, ay), ca) in &ta {
            for &((bx, by), cb) in &tb {
                *map.entry((ax + bx, ay + by)).or_default() += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        return BivarPoly { terms: map };
    }
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); cells];
    for &((ax, ay), ca) in &ta {
        let base = ax as usize * width + ay as usize;
        for &((bx, by), cb) in &tb {
            acc[base + bx as usize * width + by as usize] += ca * cb;
        }
    }
    let mut terms = BTreeMap::new();
    for (idx, c) in acc.into_iter().enumerate() {
        if !c.is_zero() {
            terms.insert(((idx / width) as u32, (idx % width) as u32), c);
        }
    }
    BivarPoly { terms }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        product(self, rhs)
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            let slot = terms.entry(e).or_default();
            *slot += c;
            if slot.is_zero() {
                terms.remove(&e);
            }
        }
        BivarPoly { terms }
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            let slot = terms.entry(e).or_default();
            *slot -= c;
            if slot.is_zero() {
                terms.remove(&e);
            }
        }
        BivarPoly { terms }
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono = monomial_string(e, ["x", "y"]);
            write_term(f, i == 0, c.is_negative(), &c.abs().to_string(), &mono)?;
        }
        Ok(())
    }
}

/// One entry of the JSON encoding: `{ex, ey, coeff}` with the coefficient
/// as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub ex: u32,
    pub ey: u32,
    pub coeff: String,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .sorted_terms()
            .into_iter()
            .map(|((ex, ey), c)| TermRecord { ex, ey, coeff: c.to_string() })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let c: BigInt = r
                .coeff
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", r.coeff)))?;
            terms.push(((r.ex, r.ey), c));
        }
        Ok(BivarPoly::from_terms(terms))
    }
}

impl TryFrom<&BivarPoly> for UniPoly {
    type Error = Error;

    /// Views a polynomial free of `x` as a polynomial in `y`.
    fn try_from(p: &BivarPoly) -> Result<UniPoly> {
        if p.deg_x() > Degree::Finite(0) {
            return Err(Error::InvalidArgument(format!("{p} depends on x")));
        }
        Ok(p.coefficient_in_x(0))
    }
}

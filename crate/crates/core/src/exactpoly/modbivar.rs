use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{inv_mod, mul_mod, pow_mod, ExactRing};
use super::{graded_lex_desc, monomial_string, write_term, Degree, Exponents, Var};
use crate::error::{Error, Result};

const DENSE_CELLS: usize = 1 << 22;

/// Polynomial in two variables over the prime field F_p.
///
/// The variables print as `x`, `y` by default; the finite-field lemmas reuse
/// the same type for `F_p[T]` (`T` in the x slot) and `F_p[A, B]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModBivarPoly {
    p: u64,
    terms: BTreeMap<Exponents, u64>,
}

impl ModBivarPoly {
    pub fn zero(p: u64) -> Self {
        ModBivarPoly { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::monomial(p, c, 0, 0)
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(p, 1, 1, 0)
    }

    pub fn y(p: u64) -> Self {
        Self::monomial(p, 1, 0, 1)
    }

    pub fn monomial(p: u64, c: u64, ex: u32, ey: u32) -> Self {
        Self::from_terms(p, [((ex, ey), c)])
    }

    /// Sums the given terms modulo `p`.
    pub fn from_terms<I>(p: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, u64)>,
    {
        let mut map: BTreeMap<Exponents, u64> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert(0);
            *slot = (*slot + c % p) % p;
        }
        map.retain(|_, c| *c != 0);
        ModBivarPoly { p, terms: map }
    }

    /// Builds from signed coefficients, reducing into `{0, ..., p-1}`.
    pub fn from_i64_terms(p: u64, terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(p, terms.iter().map(|&(e, c)| (e, super::ring::reduce_i64(c, p))))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, u64> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> u64 {
        self.terms.get(&(ex, ey)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial, `None` if a variable occurs.
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&(0, 0)).copied(),
            _ => None,
        }
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

    fn ensure_same_ring(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::RingMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        let p = self.p;
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            let slot = terms.entry(e).or_insert(0);
            *slot = (*slot + c) % p;
            if *slot == 0 {
                terms.remove(&e);
            }
        }
        Ok(ModBivarPoly { p, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        Ok(product(self, other))
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_terms(p, self.terms.iter().map(|(&e, &a)| (e, mul_mod(a, c % p, p))))
    }

    pub fn shift(&self, ex: u32, ey: u32) -> Self {
        ModBivarPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&(a, b), &c)| ((a + ex, b + ey), c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = product(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = product(&base, &base);
            }
        }
        acc
    }

    /// `self^(p^i)`, computed as the Frobenius power map: in characteristic
    /// p this multiplies every exponent by `p^i` and fixes the coefficients.
    pub fn frobenius_power(&self, i: u32) -> Self {
        let q = (self.p as u32).pow(i);
        ModBivarPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&(a, b), &c)| ((a * q, b * q), c)).collect(),
        }
    }

    pub fn partial_derivative(&self, var: Var) -> Self {
        let p = self.p;
        Self::from_terms(
            p,
            self.terms.iter().filter_map(|(&(ex, ey), &c)| match var {
                Var::X if ex > 0 => Some(((ex - 1, ey), mul_mod(c, ex as u64 % p, p))),
                Var::Y if ey > 0 => Some(((ex, ey - 1), mul_mod(c, ey as u64 % p, p))),
                _ => None,
            }),
        )
    }

    pub fn substitute(&self, var: Var, replacement: &Self) -> Result<Self> {
        self.ensure_same_ring(replacement)?;
        let p = self.p;
        let mut groups: BTreeMap<u32, Vec<(Exponents, u64)>> = BTreeMap::new();
        for (&(ex, ey), &c) in &self.terms {
            let (k, rest) = match var {
                Var::X => (ex, (0, ey)),
                Var::Y => (ey, (ex, 0)),
            };
            groups.entry(k).or_default().push((rest, c));
        }
        let Some(&top) = groups.keys().next_back() else {
            return Ok(Self::zero(p));
        };
        let mut acc = Self::zero(p);
        for k in (0..=top).rev() {
            if !acc.is_zero() {
                acc = product(&acc, replacement);
            }
            if let Some(ts) = groups.remove(&k) {
                acc = &acc + &Self::from_terms(p, ts);
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (&(ex, ey), &c)| {
            let t = mul_mod(c, mul_mod(pow_mod(x, ex as u64, p), pow_mod(y, ey as u64, p), p), p);
            (acc + t) % p
        })
    }

    /// Leading term in lexicographic order (x first).
    pub fn lex_leading_term(&self) -> Option<(Exponents, u64)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    /// Exact division in F_p[x, y] by lexicographic leading-term reduction.
    pub fn checked_div(&self, divisor: &Self) -> Result<Option<Self>> {
        self.ensure_same_ring(divisor)?;
        Ok(quotient(self, divisor))
    }

    pub fn sorted_terms(&self) -> Vec<(Exponents, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&e, &c)| (e, c)).collect();
        v.sort_by(|a, b| graded_lex_desc(&a.0, &b.0));
        v
    }

    /// Text form with custom variable names, e.g. `["A", "B"]` or `["T", "_"]`.
    pub fn display_with(&self, names: [&str; 2]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        struct Named<'a>(&'a ModBivarPoly, [&'a str; 2]);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (e, c)) in self.0.sorted_terms().into_iter().enumerate() {
                    let mono = monomial_string(e, self.1);
                    write_term(f, i == 0, false, &c.to_string(), &mono)?;
                }
                Ok(())
            }
        }
        Named(self, names).to_string()
    }
}

fn dense_shape(a: &ModBivarPoly, b: &ModBivarPoly) -> (usize, usize) {
    let ax = a.deg_x().finite().unwrap_or(0) as usize;
    let ay = a.deg_y().finite().unwrap_or(0) as usize;
    let bx = b.deg_x().finite().unwrap_or(0) as usize;
    let by = b.deg_y().finite().unwrap_or(0) as usize;
    (ax + bx + 1, ay + by + 1)
}

fn product(a: &ModBivarPoly, b: &ModBivarPoly) -> ModBivarPoly {
    let p = a.p;
    if a.is_zero() || b.is_zero() {
        return ModBivarPoly::zero(p);
    }
    let (rows, width) = dense_shape(a, b);
    if rows.saturating_mul(width) > DENSE_CELLS {
        let mut map: BTreeMap<Exponents, u64> = BTreeMap::new();
        for (&(ax, ay), &ca) in &a.terms {
            for (&(bx, by), &cb) in &b.terms {
                let slot = map.entry((ax + bx, ay + by)).or_insert(0);
                *slot = (*slot + ca * cb) % p;
            }
        }
        map.retain(|_, c| *c != 0);
        return ModBivarPoly { p, terms: map };
    }
    let mut acc = vec![0u64; rows * width];
    let tb: Vec<(usize, u64)> =
        b.terms.iter().map(|(&(bx, by), &c)| (bx as usize * width + by as usize, c)).collect();
    for (&(ax, ay), &ca) in &a.terms {
        let base = ax as usize * width + ay as usize;
        for &(off, cb) in &tb {
            let slot = &mut acc[base + off];
            *slot = (*slot + ca * cb) % p;
        }
    }
    collect_dense(p, acc, width)
}

fn collect_dense(p: u64, acc: Vec<u64>, width: usize) -> ModBivarPoly {
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(i, c)| (((i / width) as u32, (i % width) as u32), c))
        .collect();
    ModBivarPoly { p, terms }
}

fn quotient(a: &ModBivarPoly, d: &ModBivarPoly) -> Option<ModBivarPoly> {
    let p = a.p;
    let ((lx, ly), lc) = d.lex_leading_term()?;
    if a.is_zero() {
        return Some(ModBivarPoly::zero(p));
    }
    let inv = inv_mod(lc, p);
    let ax = a.deg_x().finite().unwrap() as usize;
    let ay = a.deg_y().finite().unwrap() as usize;
    let width = ay + 1;
    if (ax + 1).saturating_mul(width) > DENSE_CELLS {
        let mut rem = a.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((&(ex, ey), &c)) = rem.iter().next_back() {
            if ex < lx || ey < ly {
                return None;
            }
            let t = ((ex - lx, ey - ly), mul_mod(c, inv, p));
            for (&(bx, by), &cb) in &d.terms {
                let e = (bx + t.0 .0, by + t.0 .1);
                let slot = rem.entry(e).or_insert(0);
                *slot = (*slot + p - mul_mod(t.1, cb, p)) % p;
                if *slot == 0 {
                    rem.remove(&e);
                }
            }
            q.insert(t.0, t.1);
        }
        return Some(ModBivarPoly { p, terms: q });
    }
    let mut rem = vec![0u64; (ax + 1) * width];
    for (&(ex, ey), &c) in &a.terms {
        rem[ex as usize * width + ey as usize] = c;
    }
    let td: Vec<(usize, usize, u64)> =
        d.terms.iter().map(|(&(bx, by), &c)| (bx as usize, by as usize, p - c)).collect();
    let mut q = BTreeMap::new();
    for idx in (0..rem.len()).rev() {
        let c = rem[idx];
        if c == 0 {
            continue;
        }
        let (ex, ey) = (idx / width, idx % width);
        if ex < lx as usize || ey < ly as usize {
            return None;
        }
        let (sx, sy) = (ex - lx as usize, ey - ly as usize);
        let qc = mul_mod(c, inv, p);
        for &(bx, by, neg_cb) in &td {
            let by = by + sy;
            if by >= width {
                return None;
            }
            let slot = &mut rem[(bx + sx) * width + by];
            *slot = (*slot + qc * neg_cb) % p;
        }
        q.insert((sx as u32, sy as u32), qc);
    }
    Some(ModBivarPoly { p, terms: q })
}

impl<'a> Add<&'a ModBivarPoly> for &'a ModBivarPoly {
    type Output = ModBivarPoly;
    /// Panics on mismatched moduli; see [`ModBivarPoly::checked_add`].
    fn add(self, rhs: &ModBivarPoly) -> ModBivarPoly {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a ModBivarPoly> for &'a ModBivarPoly {
    type Output = ModBivarPoly;
    fn sub(self, rhs: &ModBivarPoly) -> ModBivarPoly {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a ModBivarPoly> for &'a ModBivarPoly {
    type Output = ModBivarPoly;
    fn mul(self, rhs: &ModBivarPoly) -> ModBivarPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ModBivarPoly {
    type Output = ModBivarPoly;
    fn neg(self) -> ModBivarPoly {
        ModBivarPoly { p: self.p, terms: self.terms.iter().map(|(&e, &c)| (e, self.p - c)).collect() }
    }
}

impl ExactRing for ModBivarPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }
    fn one_like(&self) -> Self {
        Self::one(self.p)
    }
    fn ring_is_zero(&self) -> bool {
        self.terms.is_empty()
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
        self.checked_div(divisor).ok().flatten()
    }
    fn weight(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for ModBivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["x", "y"]))
    }
}

//! Seeded generators and algebraic law checks shared by the property suites
//! and the acceptance harness.
#![allow(dead_code)]

use cubic_pcf::exactpoly::{BivarPoly, ModBivarPoly, ModUniPoly, Var};
use cubic_pcf::frobres::FrobeniusOperator;
use num_bigint::{BigInt, Sign};
use rand::Rng;

pub fn random_bigint<R: Rng>(rng: &mut R, bits: u64) -> BigInt {
    let bytes: Vec<u8> = (0..bits.div_ceil(8)).map(|_| rng.gen()).collect();
    let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
    BigInt::from_bytes_le(sign, &bytes) >> (bytes.len() as u64 * 8 - bits)
}

pub fn random_bivar<R: Rng>(rng: &mut R, terms: usize, max_deg: u32, bits: u64) -> BivarPoly {
    BivarPoly::from_terms((0..terms).map(|_| {
        let e = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
        (e, random_bigint(rng, bits))
    }))
}

pub fn random_mod_bivar<R: Rng>(rng: &mut R, p: u64, terms: usize, max_deg: u32) -> ModBivarPoly {
    ModBivarPoly::from_terms(
        p,
        (0..terms).map(|_| ((rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg)), rng.gen_range(0..p))),
    )
}

pub fn random_mod_uni<R: Rng>(rng: &mut R, p: u64, max_deg: usize) -> ModUniPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    ModUniPoly::new(p, (0..len).map(|_| rng.gen_range(0..p)).collect())
}

pub fn random_operator<R: Rng>(rng: &mut R, max_len: usize) -> FrobeniusOperator {
    let len = rng.gen_range(0..=max_len);
    FrobeniusOperator::from_i64(&(0..len).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>())
}

fn check(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

pub fn ring_laws_z(a: &BivarPoly, b: &BivarPoly, c: &BivarPoly) -> Result<(), String> {
    check(&(a + b) + c == a + &(b + c), "addition is associative")?;
    check(a + b == b + a, "addition is commutative")?;
    check((a + &-a).is_zero() && a + &BivarPoly::zero() == *a, "additive identity and inverse")?;
    check(&(a * b) * c == a * &(b * c), "multiplication is associative")?;
    check(a * b == b * a, "multiplication is commutative")?;
    check(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    check(a * &BivarPoly::one() == *a, "multiplicative identity")
}

pub fn ring_laws_fp(a: &ModBivarPoly, b: &ModBivarPoly, c: &ModBivarPoly) -> Result<(), String> {
    let p = a.modulus();
    check(&(a + b) + c == a + &(b + c), "addition is associative")?;
    check(a + b == b + a, "addition is commutative")?;
    check((a + &-a).is_zero(), "additive inverse")?;
    check(&(a * b) * c == a * &(b * c), "multiplication is associative")?;
    check(a * b == b * a, "multiplication is commutative")?;
    check(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    check(a * &ModBivarPoly::one(p) == *a, "multiplicative identity")?;
    // Frobenius is a ring endomorphism in characteristic p.
    check((a + b).pow(p) == &a.pow(p) + &b.pow(p), "freshman's dream")
}

pub fn reduction_homomorphism(a: &BivarPoly, b: &BivarPoly, p: u64) -> Result<(), String> {
    let r = |x: &BivarPoly| x.reduce_mod(p).map_err(|e| e.to_string());
    check(r(&(a + b))? == &r(a)? + &r(b)?, "reduction preserves sums")?;
    check(r(&(a * b))? == &r(a)? * &r(b)?, "reduction preserves products")?;
    check(r(&-a)? == -&r(a)?, "reduction preserves negation")
}

/// `(a o r) o s = a o (r o s)` for substitution into x.
pub fn substitution_composition(a: &BivarPoly, r: &BivarPoly, s: &BivarPoly) -> Result<(), String> {
    let lhs = a.substitute(Var::X, r).substitute(Var::X, s);
    let rhs = a.substitute(Var::X, &r.substitute(Var::X, s));
    check(lhs == rhs, "substitution composes")
}

pub fn leibniz(a: &BivarPoly, b: &BivarPoly) -> Result<(), String> {
    for var in [Var::X, Var::Y] {
        let lhs = (a * b).partial_derivative(var);
        let rhs = &(&a.partial_derivative(var) * b) + &(a * &b.partial_derivative(var));
        check(lhs == rhs, "Leibniz rule")?;
    }
    Ok(())
}

/// Operator action: additive in the polynomial, and a ring homomorphism
/// from Z[tau] to additive maps (sums and products of operators act as sums
/// and compositions).
pub fn operator_action(
    s: &FrobeniusOperator,
    t: &FrobeniusOperator,
    f: &ModUniPoly,
    g: &ModUniPoly,
) -> Result<(), String> {
    check(s.apply(&f.add(g)) == s.apply(f).add(&s.apply(g)), "action is additive")?;
    check((s + t).apply(f) == s.apply(f).add(&t.apply(f)), "sum of operators acts as the sum")?;
    check((s * t).apply(f) == s.apply(&t.apply(f)), "product of operators acts as the composition")
}

pub fn floor_inequality(t: [f64; 3]) -> Result<(), String> {
    let lhs = t[0].floor() + t[1].floor() + t[2].floor();
    check(lhs <= (t[0] + t[1] + t[2]).floor(), "floor is superadditive")
}

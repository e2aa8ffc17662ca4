//! Exact polynomial rings: bivariate polynomials over the integers and over
//! prime fields, plus dense univariate helpers used as matrix entries.

mod bivar;
mod modbivar;
mod moduni;
pub mod ring;
mod unipoly;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use bivar::{BivarPoly, TermRecord};
pub use modbivar::ModBivarPoly;
pub use moduni::ModUniPoly;
pub use ring::{is_prime, valuation, ExactRing};
pub use unipoly::UniPoly;

/// Exponent pair `(e_x, e_y)` of a monomial `x^e_x * y^e_y`.
pub type Exponents = (u32, u32);

/// Polynomial variable selector for substitution and differentiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `self <= bound` where a negative bound only admits the zero polynomial.
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::MinusInfinity => true,
            Degree::Finite(d) => bound >= 0 && d <= bound as u64,
        }
    }

    pub(crate) fn of_len(len: usize) -> Degree {
        if len == 0 {
            Degree::MinusInfinity
        } else {
            Degree::Finite(len as u64 - 1)
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<u64>::deserialize(d)? {
            Some(v) => Degree::Finite(v),
            None => Degree::MinusInfinity,
        })
    }
}

/// Graded-lex descending order (x before y) used for printing and JSON.
pub(crate) fn graded_lex_desc(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let ta = a.0 as u64 + a.1 as u64;
    let tb = b.0 as u64 + b.1 as u64;
    tb.cmp(&ta).then(b.0.cmp(&a.0))
}

pub(crate) fn monomial_string(e: Exponents, names: [&str; 2]) -> String {
    let mut parts = Vec::new();
    for (exp, name) in [(e.0, names[0]), (e.1, names[1])] {
        match exp {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{exp}")),
        }
    }
    parts.join("*")
}

/// Writes one term of a sum in the canonical text format.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    negative: bool,
    magnitude: &str,
    monomial: &str,
) -> fmt::Result {
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    match (magnitude == "1", monomial.is_empty()) {
        (_, true) => f.write_str(magnitude),
        (true, false) => f.write_str(monomial),
        (false, false) => write!(f, "{magnitude}*{monomial}"),
    }
}

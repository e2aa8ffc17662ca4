use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{degree_bound, expected_leading_coefficient};
use crate::exactpoly::{BivarPoly, Degree, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub k: u64,
    pub a_k: UniPoly,
    pub bound: i64,
    pub actual_degree: Degree,
}

impl ProfileEntry {
    pub fn within_bound(&self) -> bool {
        self.actual_degree.at_most(self.bound)
    }

    /// Whether the degree equals the bound exactly (a negative bound counts
    /// as met by the zero polynomial).
    pub fn meets_bound_exactly(&self) -> bool {
        match self.actual_degree {
            Degree::MinusInfinity => self.bound < 0,
            Degree::Finite(d) => d as i64 == self.bound,
        }
    }
}

/// JSON row `{n, k, bound, actual_degree, ok}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: u32,
    pub k: u64,
    pub bound: i64,
    pub actual_degree: Degree,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaFailure {
    BoundExceeded { k: u64, degree: Degree, bound: i64 },
    LeadingCoefficient { expected: BigInt, found: UniPoly },
    ConstantTerm { found: UniPoly },
}

impl std::fmt::Display for LemmaFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LemmaFailure::BoundExceeded { k, degree, bound } => {
                write!(f, "deg a_{k} = {degree} exceeds bound {bound}")
            }
            LemmaFailure::LeadingCoefficient { expected, found } => {
                write!(f, "a_0 = {found}, expected {expected}")
            }
            LemmaFailure::ConstantTerm { found } => {
                write!(f, "top coefficient {found} is not monic of the expected degree")
            }
        }
    }
}

/// The coefficients of `f^n(x)` as a polynomial in x over Z[y].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientProfile {
    pub n: u32,
    pub entries: Vec<ProfileEntry>,
}

impl CoefficientProfile {
    pub(crate) fn from_iterate(n: u32, iterate: &BivarPoly) -> Self {
        let top = 3u64.pow(n);
        let entries = (0..=top)
            .map(|k| {
                let a_k = iterate.coefficient_in_x((top - k) as u32);
                ProfileEntry { k, bound: degree_bound(k), actual_degree: a_k.degree(), a_k }
            })
            .collect();
        CoefficientProfile { n, entries }
    }

    /// Checks the three coefficient facts: every `deg a_k` within
    /// `4 floor(k/3) - k`, `a_0 = (-2)^(3^(n-1))`, and `a_(3^n)` monic in y
    /// of degree `3^(n-1)`.
    pub fn check(&self) -> Result<(), LemmaFailure> {
        for e in &self.entries {
            if !e.within_bound() {
                return Err(LemmaFailure::BoundExceeded { k: e.k, degree: e.actual_degree, bound: e.bound });
            }
        }
        let expected = expected_leading_coefficient(self.n);
        let a0 = &self.entries[0].a_k;
        if *a0 != UniPoly::constant(expected.clone()) {
            return Err(LemmaFailure::LeadingCoefficient { expected, found: a0.clone() });
        }
        let last = &self.entries.last().unwrap().a_k;
        let want = Degree::Finite(3u64.pow(self.n - 1));
        if last.degree() != want || !last.leading_coefficient().is_some_and(|c| c.is_one()) {
            return Err(LemmaFailure::ConstantTerm { found: last.clone() });
        }
        Ok(())
    }

    pub fn rows(&self) -> Vec<ProfileRow> {
        self.entries
            .iter()
            .map(|e| ProfileRow {
                n: self.n,
                k: e.k,
                bound: e.bound,
                actual_degree: e.actual_degree,
                ok: e.within_bound(),
            })
            .collect()
    }

    /// Indices where `deg a_k` differs from the bound. Observational only:
    /// the expected exception is `k = 3^n - 1` with `a_k = 0`.
    pub fn equality_exceptions(&self) -> Vec<u64> {
        self.entries.iter().filter(|e| !e.meets_bound_exactly()).map(|e| e.k).collect()
    }

    /// True when the only index off the bound is `k = 3^n - 1`, where the
    /// coefficient vanishes.
    pub fn equality_pattern_observed(&self) -> bool {
        let special = 3u64.pow(self.n) - 1;
        let exceptions = self.equality_exceptions();
        exceptions.iter().all(|&k| k == special) && self.entries[special as usize].a_k.is_zero()
    }
}

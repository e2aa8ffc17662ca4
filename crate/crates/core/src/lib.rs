//! Exact arithmetic for the critical-orbit polynomials of the marked cubic
//! family `f(z) = z^3 - 3x^2 z + y`.
//!
//! The crate builds the periodic and tail-one preperiodic orbit curves
//! exactly, computes their x-resultants and Jacobians, and packages the
//! algebraic facts that make the curves meet transversally as checkable
//! certificates: a mod-3 Jacobian identity, a resultant degree and unit
//! leading coefficient, 3-adic integrality of the intersection points, and a
//! numeric exhibit of every intersection point with its Jacobian value.
//!
//! Modules:
//! - [`exactpoly`]: polynomial rings over Z and F_p.
//! - [`cubicdyn`]: orbit polynomials and their coefficient structure.
//! - [`frobres`]: Frobenius operators, extension fields and the
//!   Artin–Schreier resultant identities.
//! - [`sylvester`]: Sylvester matrices and exact determinants.
//! - [`rigidity`]: certificates, numeric solving and reports.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod cubicdyn;
pub mod error;
pub mod exactpoly;
pub mod frobres;
pub mod rigidity;
pub mod sylvester;

pub use error::{Error, Result};

/// Resource caps shared by the builders and certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest iterate depth for any orbit polynomial.
    pub max_n: u32,
    /// Largest `n + m` for which resultants are computed exactly over Z.
    pub max_exact_sum: u32,
    /// Largest `n + m` accepted at all; beyond the exact range only mod-3
    /// checks run.
    pub max_mod_sum: u32,
    /// Largest Sylvester matrix dimension over Z[y].
    pub max_size: usize,
    /// Largest `p^(n+m)` for field enumeration oracles.
    pub enum_budget: u64,
    /// Largest `p^n + p^m` for the Artin–Schreier Sylvester oracle.
    pub sylvester_budget: u64,
    /// Largest resultant degree handed to the numeric solver.
    pub numeric_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 7,
            max_exact_sum: 6,
            max_mod_sum: 8,
            max_size: 256,
            enum_budget: 100_000,
            sylvester_budget: 200,
            numeric_degree: 2000,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
        if value > limit {
            return Err(Error::ResourceLimit { what, value, limit });
        }
        Ok(())
    }
}

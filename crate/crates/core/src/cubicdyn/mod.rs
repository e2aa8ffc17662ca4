//! Critical-orbit polynomials of `f(z) = z^3 - 3x^2 z + y`.
//!
//! The marked critical points are `+x` and `-x`. The periodic curves are
//! `F_n = f^n(x) - x` and `G_m = f^m(-x) + x`; the tail-one curves are
//! `f^n(x) + 2x` and `f^m(-x) - 2x`, the cofactors left after dividing
//! `f^(n+1)(x) - f(x)` by the square `(f^n(x) - x)^2`.

mod profile;
mod zpoly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactpoly::{BivarPoly, ModBivarPoly};
use crate::Limits;

pub use profile::{CoefficientProfile, LemmaFailure, ProfileEntry, ProfileRow};
use zpoly::ZPoly;

/// Which marked critical point the orbit starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CriticalPoint {
    Plus,
    Minus,
}

impl CriticalPoint {
    pub fn sign(self) -> i64 {
        match self {
            CriticalPoint::Plus => 1,
            CriticalPoint::Minus => -1,
        }
    }
}

/// `f^n(sign * x)` as a polynomial in x and y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalOrbitPoly {
    pub n: u32,
    pub sign: CriticalPoint,
    pub poly: BivarPoly,
}

/// The dynamical polynomials with a known closed form modulo 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Iterate,
    F,
    G,
    FTail,
    GTail,
}

/// Result of an exact polynomial identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub n: u32,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    /// `lhs - rhs` when the identity fails.
    pub difference: Option<BivarPoly>,
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        self.difference.is_none()
    }
}

/// Builds orbit polynomials by repeated substitution into the one-step map,
/// caching the iterates at `+x`.
#[derive(Debug)]
pub struct OrbitBuilder {
    limits: Limits,
    cache: Mutex<HashMap<u32, Arc<BivarPoly>>>,
}

impl Default for OrbitBuilder {
    fn default() -> Self {
        Self::new(Limits::default())
    }
}

impl OrbitBuilder {
    pub fn new(limits: Limits) -> Self {
        OrbitBuilder { limits, cache: Mutex::new(HashMap::new()) }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check_depth(&self, n: u32) -> Result<()> {
        Limits::check("iterate depth n", n as u64, self.limits.max_n as u64)
    }

    /// `f^n(x)`, built from the deepest cached iterate.
    fn plus_iterate(&self, n: u32) -> Result<Arc<BivarPoly>> {
        self.check_depth(n)?;
        let (mut k, mut current) = {
            let cache = self.cache.lock().unwrap();
            if let Some(p) = cache.get(&n) {
                return Ok(p.clone());
            }
            cache
                .iter()
                .filter(|(&k, _)| k < n)
                .max_by_key(|(&k, _)| k)
                .map(|(&k, p)| (k, p.clone()))
                .unwrap_or((0, Arc::new(BivarPoly::x())))
        };
        let step = ZPoly::one_step();
        while k < n {
            current = Arc::new(step.substitute_z(&current));
            k += 1;
            self.cache.lock().unwrap().insert(k, current.clone());
        }
        Ok(current)
    }

    /// `f^n(sign * x)`. The minus orbit is the plus orbit under `x -> -x`,
    /// since `f` only involves `x^2`.
    pub fn iterate_critical(&self, n: u32, sign: CriticalPoint) -> Result<CriticalOrbitPoly> {
        let plus = self.plus_iterate(n)?;
        let poly = match sign {
            CriticalPoint::Plus => (*plus).clone(),
            CriticalPoint::Minus => plus.reflect_x(),
        };
        Ok(CriticalOrbitPoly { n, sign, poly })
    }

    /// `f^n(sign * x)` computed by iterating from `sign * x` directly,
    /// without the reflection shortcut.
    pub fn iterate_direct(&self, n: u32, sign: CriticalPoint) -> Result<BivarPoly> {
        self.check_depth(n)?;
        let step = ZPoly::one_step();
        let mut current = BivarPoly::x().scale(&BigInt::from(sign.sign()));
        for _ in 0..n {
            current = step.substitute_z(&current);
        }
        Ok(current)
    }

    /// `F_n = f^n(x) - x`.
    pub fn build_f(&self, n: u32) -> Result<BivarPoly> {
        self.variant(OrbitKind::F, n)
    }

    /// `G_m = f^m(-x) + x`.
    pub fn build_g(&self, m: u32) -> Result<BivarPoly> {
        self.variant(OrbitKind::G, m)
    }

    /// `f^n(x) + 2x`.
    pub fn build_f_tail(&self, n: u32) -> Result<BivarPoly> {
        self.variant(OrbitKind::FTail, n)
    }

    /// `f^m(-x) - 2x`.
    pub fn build_g_tail(&self, m: u32) -> Result<BivarPoly> {
        self.variant(OrbitKind::GTail, m)
    }

    pub fn variant(&self, kind: OrbitKind, n: u32) -> Result<BivarPoly> {
        if n == 0 && kind != OrbitKind::Iterate {
            return Err(crate::Error::InvalidArgument(format!("{kind:?} needs n >= 1")));
        }
        let linear = |c: i64| BivarPoly::monomial(BigInt::from(c), 1, 0);
        Ok(match kind {
            OrbitKind::Iterate => (*self.plus_iterate(n)?).clone(),
            OrbitKind::F => &*self.plus_iterate(n)? - &linear(1),
            OrbitKind::FTail => &*self.plus_iterate(n)? + &linear(2),
            OrbitKind::G => &self.plus_iterate(n)?.reflect_x() + &linear(1),
            OrbitKind::GTail => &self.plus_iterate(n)?.reflect_x() - &linear(2),
        })
    }

    /// Checks `f^(n+1)(x) - f(x) = (f^n(x) - x)^2 (f^n(x) + 2x)` exactly.
    pub fn verify_factor_identity(&self, n: u32) -> Result<IdentityVerdict> {
        let next = self.plus_iterate(n + 1)?;
        let first = self.plus_iterate(1)?;
        let lhs = &*next - &*first;
        let f = self.build_f(n)?;
        let tail = self.build_f_tail(n)?;
        let rhs = &(&f * &f) * &tail;
        let difference = (lhs != rhs).then(|| &lhs - &rhs);
        Ok(IdentityVerdict { n, lhs_terms: lhs.num_terms(), rhs_terms: rhs.num_terms(), difference })
    }

    /// Checks that the full iterate `f^n(z)`, a polynomial in x, y and z,
    /// is unchanged by `x -> -x`.
    pub fn verify_odd_symmetry(&self, n: u32) -> Result<bool> {
        self.check_depth(n)?;
        let step = ZPoly::one_step();
        let mut full = ZPoly::identity();
        for _ in 0..n {
            full = step.compose(&full);
        }
        Ok(full.is_even_in_x())
    }

    /// Coefficients `a_k(y)` of `f^n(x) = sum_k a_k(y) x^(3^n - k)` with
    /// their degree bounds.
    pub fn coefficient_profile(&self, n: u32) -> Result<CoefficientProfile> {
        if n == 0 {
            return Err(crate::Error::InvalidArgument("profile needs n >= 1".into()));
        }
        let iterate = self.plus_iterate(n)?;
        Ok(CoefficientProfile::from_iterate(n, &iterate))
    }
}

/// `y + y^3 + y^9 + ... + y^(3^(n-1))` over F_3.
pub fn y_sum_mod3(n: u32) -> ModBivarPoly {
    ModBivarPoly::from_terms(3, (0..n).map(|i| ((0, 3u32.pow(i)), 1)))
}

/// The closed form of an orbit polynomial modulo 3, written down directly.
pub fn mod3_closed_form(kind: OrbitKind, n: u32) -> ModBivarPoly {
    let top = 3u32.pow(n);
    let ys = y_sum_mod3(n);
    // f^n(x) = x^(3^n) + Y_n, f^n(-x) = -x^(3^n) + Y_n; +2x = -x mod 3
    let (lead, linear): (i64, i64) = match kind {
        OrbitKind::Iterate => (1, 0),
        OrbitKind::F | OrbitKind::FTail => (1, -1),
        OrbitKind::G | OrbitKind::GTail => (-1, 1),
    };
    let head = ModBivarPoly::from_i64_terms(3, &[((top, 0), lead), ((1, 0), linear)]);
    &head + &ys
}

/// `(-2)^(3^(n-1))`, the leading x-coefficient of `f^n(x)` for `n >= 1`.
pub fn expected_leading_coefficient(n: u32) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    BigInt::from(-2).pow(3u32.pow(n - 1))
}

/// `4 * floor(k / 3) - k`.
pub fn degree_bound(k: u64) -> i64 {
    4 * (k / 3) as i64 - k as i64
}

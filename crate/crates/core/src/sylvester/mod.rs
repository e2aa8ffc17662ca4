//! Sylvester matrices of two polynomials in x and their determinants.
//!
//! Sign convention: the first polynomial's coefficients fill the top rows,
//! so `Res_x(f, g) = lc(f)^deg(g) * prod g(roots of f)`.

mod determinant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use determinant::{bareiss_determinant, eval_interp_determinant, interpolate_integer, sample_points};

use crate::error::{Error, Result};
use crate::exactpoly::{valuation, BivarPoly, ExactRing, ModUniPoly, UniPoly};
use crate::Limits;

/// Matrices up to this size use fraction-free elimination in
/// [`resultant_x`]; larger ones go through evaluation and interpolation.
pub const FRACTION_FREE_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterMatrix<E> {
    deg_f: usize,
    deg_g: usize,
    rows: Vec<Vec<E>>,
}

impl<E: ExactRing> SylvesterMatrix<E> {
    /// Builds the matrix from coefficient lists ordered from the leading
    /// coefficient down to the constant term. The first `deg g` rows carry
    /// `f`, the remaining `deg f` rows carry `g`.
    pub fn from_coefficients(f: &[E], g: &[E]) -> Result<Self> {
        if f.len() < 2 || g.len() < 2 {
            return Err(Error::Degenerate("both polynomials must have positive degree".into()));
        }
        let (deg_f, deg_g) = (f.len() - 1, g.len() - 1);
        let size = deg_f + deg_g;
        let zero = f[0].zero_like();
        let band = |coeffs: &[E], shift: usize| {
            let mut row = vec![zero.clone(); size];
            row[shift..shift + coeffs.len()].clone_from_slice(coeffs);
            row
        };
        let rows = (0..deg_g).map(|i| band(f, i)).chain((0..deg_f).map(|i| band(g, i))).collect();
        Ok(SylvesterMatrix { deg_f, deg_g, rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn deg_f(&self) -> usize {
        self.deg_f
    }

    pub fn deg_g(&self) -> usize {
        self.deg_g
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn map<F, T>(&self, f: F) -> SylvesterMatrix<T>
    where
        F: Fn(&E) -> T,
    {
        SylvesterMatrix {
            deg_f: self.deg_f,
            deg_g: self.deg_g,
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn determinant(&self) -> Result<E> {
        bareiss_determinant(self.rows.clone())
    }
}

impl SylvesterMatrix<UniPoly> {
    /// Entrywise reduction modulo a prime. The determinant commutes with the
    /// reduction, even when a leading coefficient vanishes mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<SylvesterMatrix<ModUniPoly>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.reduce_mod(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SylvesterMatrix { deg_f: self.deg_f, deg_g: self.deg_g, rows })
    }

    /// A degree bound for the determinant: every permutation picks `deg g`
    /// entries from the f-rows and `deg f` from the g-rows.
    pub fn generic_degree_bound(&self) -> usize {
        let row_deg =
            |r: &[UniPoly]| r.iter().filter_map(|e| e.degree().finite()).max().unwrap_or(0) as usize;
        row_deg(&self.rows[0]) * self.deg_g + row_deg(&self.rows[self.deg_g]) * self.deg_f
    }
}

fn x_coefficients_desc(p: &BivarPoly) -> Result<Vec<UniPoly>> {
    let deg = match p.deg_x().finite() {
        Some(d) if d >= 1 => d as u32,
        _ => return Err(Error::Degenerate(format!("{p} is constant in x"))),
    };
    Ok((0..=deg).rev().map(|e| p.coefficient_in_x(e)).collect())
}

/// Sylvester matrix of `f` and `g` in x over Z[y].
pub fn build_sylvester(f: &BivarPoly, g: &BivarPoly) -> Result<SylvesterMatrix<UniPoly>> {
    build_sylvester_with(f, g, &Limits::default())
}

pub fn build_sylvester_with(
    f: &BivarPoly,
    g: &BivarPoly,
    limits: &Limits,
) -> Result<SylvesterMatrix<UniPoly>> {
    let (cf, cg) = (x_coefficients_desc(f)?, x_coefficients_desc(g)?);
    let size = (cf.len() + cg.len() - 2) as u64;
    Limits::check("Sylvester size", size, limits.max_size as u64)?;
    SylvesterMatrix::from_coefficients(&cf, &cg)
}

pub fn determinant_fraction_free(s: &SylvesterMatrix<UniPoly>) -> Result<UniPoly> {
    s.determinant()
}

pub fn determinant_eval_interp(s: &SylvesterMatrix<UniPoly>, degree_bound: usize) -> Result<UniPoly> {
    eval_interp_determinant(s.rows(), degree_bound)
}

/// Determinant over F_p[y] of the reduced matrix.
pub fn determinant_mod_p(s: &SylvesterMatrix<UniPoly>, p: u64) -> Result<ModUniPoly> {
    s.reduce_mod(p)?.determinant()
}

/// `Res_x(f, g)` with the generic degree bound.
pub fn resultant_x(f: &BivarPoly, g: &BivarPoly) -> Result<UniPoly> {
    resultant_x_bounded(f, g, None)
}

/// `Res_x(f, g)`; above [`FRACTION_FREE_MAX`] the determinant is
/// interpolated, using `degree_bound` when supplied.
pub fn resultant_x_bounded(f: &BivarPoly, g: &BivarPoly, degree_bound: Option<usize>) -> Result<UniPoly> {
    let s = build_sylvester(f, g)?;
    if s.size() <= FRACTION_FREE_MAX {
        determinant_fraction_free(&s)
    } else {
        let bound = degree_bound.unwrap_or_else(|| s.generic_degree_bound());
        determinant_eval_interp(&s, bound)
    }
}

/// Degree, leading coefficient and its 3-adic valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingData {
    pub degree: u64,
    #[serde(with = "bigint_string")]
    pub lead: BigInt,
    pub ord3: u32,
}

pub fn leading_data(r: &UniPoly) -> Result<LeadingData> {
    let (Some(degree), Some(lead)) = (r.degree().finite(), r.leading_coefficient()) else {
        return Err(Error::Degenerate("zero polynomial has no leading data".into()));
    };
    Ok(LeadingData {
        degree,
        lead: lead.clone(),
        ord3: valuation(lead, 3).expect("leading coefficient is nonzero"),
    })
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roots::{aberth, integer_roots};
use super::{curve_pair, jacobian, Tails};
use crate::cubicdyn::OrbitBuilder;
use crate::error::{Error, Result};
use crate::exactpoly::{BivarPoly, UniPoly, Var};
use crate::Limits;

/// Default matching tolerance for `|G(alpha, beta)|`.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Threshold on `|J|` for the numeric exhibit.
pub const TRANSVERSALITY_THRESHOLD: f64 = 1e-6;
/// Target on the relative residuals after refinement.
pub const RESIDUAL_TARGET: f64 = 1e-8;

/// A complex number in the JSON reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PCFSolution {
    pub alpha: ComplexValue,
    pub beta: ComplexValue,
    /// `|F(alpha, beta)|` relative to the sum of the term magnitudes.
    #[serde(rename = "residual_F")]
    pub residual_f: f64,
    #[serde(rename = "residual_G")]
    pub residual_g: f64,
    pub jacobian_value: ComplexValue,
    /// Multiplicity of beta as a root of the resultant.
    pub multiplicity_hint: usize,
    /// False when a tail-one condition degenerates to a periodic one
    /// (`f^n(alpha) = alpha`); always true for periodic variants.
    pub strict: bool,
}

impl PCFSolution {
    pub fn abs_jacobian(&self) -> f64 {
        Complex64::from(self.jacobian_value).norm()
    }
}

/// The solutions together with the root-count bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub solutions: Vec<PCFSolution>,
    /// Every root beta of multiplicity k carries exactly k solutions.
    pub root_count_consistent: bool,
}

/// Value and the sum of the term magnitudes, for relative residuals.
fn eval_scaled(p: &BivarPoly, x: Complex64, y: Complex64) -> (Complex64, f64) {
    let (ax, ay) = (x.norm(), y.norm());
    let scale = p
        .terms()
        .iter()
        .map(|(&(ex, ey), c)| {
            let c: f64 = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::MAX);
            c.abs() * ax.powi(ex as i32) * ay.powi(ey as i32)
        })
        .sum::<f64>();
    (p.eval_complex(x, y), scale)
}

fn relative_residual(p: &BivarPoly, x: Complex64, y: Complex64) -> f64 {
    let (v, scale) = eval_scaled(p, x, y);
    v.norm() / (1.0 + scale)
}

struct System {
    f: BivarPoly,
    g: BivarPoly,
    fx: BivarPoly,
    fy: BivarPoly,
    gx: BivarPoly,
    gy: BivarPoly,
}

impl System {
    fn new(f: BivarPoly, g: BivarPoly) -> Self {
        System {
            fx: f.partial_derivative(Var::X),
            fy: f.partial_derivative(Var::Y),
            gx: g.partial_derivative(Var::X),
            gy: g.partial_derivative(Var::Y),
            f,
            g,
        }
    }

    /// Newton's method on `(F, G) = 0` in two complex unknowns.
    fn refine(&self, mut a: Complex64, mut b: Complex64) -> (Complex64, Complex64) {
        for _ in 0..50 {
            let fv = self.f.eval_complex(a, b);
            let gv = self.g.eval_complex(a, b);
            let (j11, j12) = (self.fx.eval_complex(a, b), self.fy.eval_complex(a, b));
            let (j21, j22) = (self.gx.eval_complex(a, b), self.gy.eval_complex(a, b));
            let det = j11 * j22 - j12 * j21;
            if det.norm() == 0.0 {
                break;
            }
            let da = (fv * j22 - gv * j12) / det;
            let db = (j11 * gv - j21 * fv) / det;
            if !da.is_finite() || !db.is_finite() {
                break;
            }
            a -= da;
            b -= db;
            if da.norm() + db.norm() <= 1e-15 * (1.0 + a.norm() + b.norm()) {
                break;
            }
        }
        (a, b)
    }
}

fn clean(z: Complex64) -> Complex64 {
    let eps = 1e-14 * (1.0 + z.norm());
    let snap = |v: f64| if v.abs() < eps { 0.0 } else { v };
    Complex64::new(snap(z.re), snap(z.im))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + a.norm().max(b.norm()))
}

/// Candidate first coordinates: roots of `F(x, beta)`.
fn alpha_candidates(f: &BivarPoly, beta: Complex64) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = f.x_coefficients().iter().map(|c: &UniPoly| c.eval_complex(beta)).collect();
    aberth(&coeffs)
}

/// All solutions of `F = G = 0` for the selected variants, via the roots
/// of the x-resultant `r`.
pub fn solve_system(
    builder: &OrbitBuilder,
    n: u32,
    m: u32,
    tails: Tails,
    r: &UniPoly,
    tol: f64,
) -> Result<SolveOutcome> {
    let limits: &Limits = builder.limits();
    let degree =
        r.degree().finite().ok_or_else(|| Error::Degenerate("resultant vanishes identically".into()))?;
    Limits::check("resultant degree", degree, limits.numeric_degree)?;
    let (f, g) = curve_pair(builder, n, m, tails)?;
    let j = jacobian(builder, n, m, tails)?;
    let iterate_f = builder.build_f(n)?;
    let iterate_g = builder.build_g(m)?;
    let system = System::new(f, g);

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in r.squarefree_decomposition() {
        if factor.degree().finite().unwrap_or(0) == 0 {
            continue;
        }
        for beta in integer_roots(&factor)? {
            clusters.push((beta, mult));
        }
    }

    let per_beta: Vec<(Vec<PCFSolution>, bool)> = clusters
        .par_iter()
        .map(|&(beta, mult)| -> Result<(Vec<PCFSolution>, bool)> {
            let mut found: Vec<(Complex64, Complex64)> = Vec::new();
            let g_at_beta: Vec<f64> =
                system.g.x_coefficients().iter().map(|c| c.eval_complex(beta).norm()).collect();
            let accept = |found: &mut Vec<(Complex64, Complex64)>, alpha: Complex64| {
                let (a, b) = system.refine(alpha, beta);
                let (a, b) = (clean(a), clean(b));
                let genuine = (b - beta).norm() <= tol.sqrt() * (1.0 + beta.norm())
                    && relative_residual(&system.f, a, b) <= RESIDUAL_TARGET
                    && relative_residual(&system.g, a, b) <= RESIDUAL_TARGET;
                if genuine && !found.iter().any(|&(fa, fb)| close(fa, a) && close(fb, b)) {
                    found.push((a, b));
                }
            };
            let candidates = alpha_candidates(&system.f, beta)?;
            let mut rest = Vec::new();
            for alpha in candidates {
                let scale: f64 =
                    g_at_beta.iter().enumerate().map(|(e, c)| c * alpha.norm().max(1.0).powi(e as i32)).sum();
                if system.g.eval_complex(alpha, beta).norm() <= tol * (1.0 + scale) {
                    accept(&mut found, alpha);
                } else {
                    rest.push(alpha);
                }
            }
            // A prefilter miss (beta known only to limited precision) is
            // recovered when refinement lands on a solution over this beta.
            for alpha in rest {
                if found.len() >= mult {
                    break;
                }
                accept(&mut found, alpha);
            }
            let consistent = found.len() == mult;
            let sols = found
                .into_iter()
                .map(|(a, b)| {
                    let strict = match tails {
                        Tails { i: 0, j: 0 } => true,
                        _ => {
                            // F-variant with tail: f^n(alpha) = alpha would make it periodic.
                            let ok_f = tails.i == 0 || relative_residual(&iterate_f, a, b) > RESIDUAL_TARGET;
                            let ok_g = tails.j == 0 || relative_residual(&iterate_g, a, b) > RESIDUAL_TARGET;
                            ok_f && ok_g
                        }
                    };
                    PCFSolution {
                        alpha: a.into(),
                        beta: b.into(),
                        residual_f: relative_residual(&system.f, a, b),
                        residual_g: relative_residual(&system.g, a, b),
                        jacobian_value: clean(j.eval_complex(a, b)).into(),
                        multiplicity_hint: mult,
                        strict,
                    }
                })
                .collect();
            Ok((sols, consistent))
        })
        .collect::<Result<_>>()?;

    let per_cluster_ok = per_beta.iter().all(|(_, c)| *c);
    let mut solutions: Vec<PCFSolution> = Vec::new();
    for s in per_beta.into_iter().flat_map(|(s, _)| s) {
        let (a, b) = (Complex64::from(s.alpha), Complex64::from(s.beta));
        let seen = solutions.iter().any(|t| close(t.alpha.into(), a) && close(t.beta.into(), b));
        if !seen {
            solutions.push(s);
        }
    }
    let root_count_consistent = per_cluster_ok && solutions.len() as u64 == degree;
    solutions.sort_by(|x, y| {
        let key = |s: &PCFSolution| (s.beta.re, s.beta.im, s.alpha.re, s.alpha.im);
        key(x).partial_cmp(&key(y)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(SolveOutcome { solutions, root_count_consistent })
}

use crate::error::Result;
use crate::exactpoly::{is_prime, ModUniPoly};
use crate::Error;

/// An element of F_p[t]/(mu), stored as its coefficient vector of length k
/// (constant term first).
pub type FieldElement = Vec<u64>;

/// The field with `p^k` elements realized as F_p[t]/(mu), where mu is the
/// lexicographically smallest monic irreducible of degree k, comparing
/// coefficients from t^(k-1) down to the constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u64,
    k: u32,
    modulus: ModUniPoly,
}

impl FieldTower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let count = p.checked_pow(k).ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} overflows")))?;
        // Enumerate tails (c_(k-1), ..., c_0) in lexicographic order.
        for code in 0..count {
            let mut coeffs = vec![0u64; k as usize + 1];
            let mut rest = code;
            for c in coeffs.iter_mut().take(k as usize) {
                *c = rest % p;
                rest /= p;
            }
            coeffs[k as usize] = 1;
            let mu = ModUniPoly::new(p, coeffs);
            if mu.is_irreducible() {
                return Ok(FieldTower { p, k, modulus: mu });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &ModUniPoly {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    fn pack(&self, poly: &ModUniPoly) -> FieldElement {
        (0..self.k as usize).map(|i| poly.coeff(i)).collect()
    }

    fn unpack(&self, a: &[u64]) -> ModUniPoly {
        ModUniPoly::new(self.p, a.to_vec())
    }

    /// Every element, in the order of the base-p digits of its index.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order())
            .map(|mut code| {
                (0..self.k)
                    .map(|_| {
                        let d = code % self.p;
                        code /= self.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut v = vec![0; self.k as usize];
        v[0] = c % self.p;
        v
    }

    pub fn zero(&self) -> FieldElement {
        vec![0; self.k as usize]
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FieldElement {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> FieldElement {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FieldElement {
        self.pack(&self.unpack(a).mul(&self.unpack(b)).rem(&self.modulus))
    }

    pub fn pow(&self, a: &[u64], e: u64) -> FieldElement {
        self.pack(&self.unpack(a).pow_mod(e, &self.modulus))
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: &[u64], i: u32) -> FieldElement {
        let mut out = a.to_vec();
        for _ in 0..i {
            out = self.pow(&out, self.p);
        }
        out
    }

    /// The subfield with `p^d` elements: the fixed points of `c -> c^(p^d)`.
    pub fn subfield(&self, d: u32) -> Result<Vec<FieldElement>> {
        if d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::InvalidArgument(format!(
                "F_{}^{d} is not a subfield of F_{}^{}",
                self.p, self.p, self.k
            )));
        }
        Ok(self.elements().into_iter().filter(|a| self.frobenius(a, d) == *a).collect())
    }

    /// Returns the F_p value of an element lying in the prime field.
    pub fn as_base(&self, a: &[u64]) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }
}

/// Product of two polynomials in T over the tower, lowest degree first.
pub(crate) fn poly_mul(field: &FieldTower, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

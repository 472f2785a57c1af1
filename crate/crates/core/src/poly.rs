//! Dense univariate polynomials, coefficients stored low degree first.

use crate::field::{Elem, FieldCtx};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Elem::ONE] }
    }

    /// `x - root`.
    pub fn linear(f: &FieldCtx, root: Elem) -> Self {
        Poly { coeffs: vec![f.neg(root), Elem::ONE] }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn eval(&self, f: &FieldCtx, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul(&self, f: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, f: &FieldCtx, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Applies `x ↦ x^q` to every coefficient (the polynomial written `F` for `f^q`
    /// on points of GF(q)).
    pub fn conj(&self, f: &FieldCtx) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.conj(a)).collect())
    }

    /// `Π (x - r)` over the given roots.
    pub fn from_roots(f: &FieldCtx, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| acc.mul(f, &Poly::linear(f, r)))
    }
}

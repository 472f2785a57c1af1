//! Euclidean and Hermitian hulls, `C ∩ C^⊥`, computed two independent ways.
//!
//! The Gram route uses `dim Hull(C) = k − rank(G σ(G)ᵀ)` (and the same
//! relation on a parity-check matrix), where `σ` is the identity or the
//! entrywise Frobenius `x ↦ x^q`. The intersection route builds the dual
//! explicitly from a kernel and intersects row spaces. A certificate is only
//! issued when all of them agree.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::grs::GrsCode;
use crate::matrix::{GfMatrix, MatrixData};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

impl fmt::Display for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerProduct::Euclidean => "euclidean",
            InnerProduct::Hermitian => "hermitian",
        })
    }
}

impl FromStr for InnerProduct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "e" => Ok(InnerProduct::Euclidean),
            "hermitian" | "h" => Ok(InnerProduct::Hermitian),
            other => Err(Error::pre(format!("unknown inner product {other:?}"))),
        }
    }
}

/// `Σ x_i σ(y_i)`. Hermitian requires a quadratic-extension field.
pub fn inner_product(f: &FieldCtx, kind: InnerProduct, x: &[Elem], y: &[Elem]) -> Elem {
    match kind {
        InnerProduct::Euclidean => f.dot(x, y),
        InnerProduct::Hermitian => f.sum(x.iter().zip(y).map(|(&a, &b)| f.mul(a, f.conj(b)))),
    }
}

fn sigma(m: &GfMatrix, kind: InnerProduct) -> Result<GfMatrix> {
    match kind {
        InnerProduct::Euclidean => Ok(m.clone()),
        InnerProduct::Hermitian => m.conj(),
    }
}

/// `M σ(M)ᵀ`.
pub fn gram_matrix(m: &GfMatrix, kind: InnerProduct) -> Result<GfMatrix> {
    m.mul(&sigma(m, kind)?.transpose())
}

/// Generator matrix of the dual code under `kind`.
pub fn dual_generator(g: &GfMatrix, kind: InnerProduct) -> Result<GfMatrix> {
    sigma(&g.kernel(), kind)
}

/// Gram-rank hull dimensions, from the generator and from a parity-check matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GramDims {
    pub by_generator: usize,
    pub by_parity: usize,
}

pub fn hull_dim_gram(g: &GfMatrix, kind: InnerProduct) -> Result<GramDims> {
    let g = g.row_space_basis();
    let k = g.rows();
    let by_generator = k - gram_matrix(&g, kind)?.rank();
    let h = g.kernel();
    let by_parity = g.cols() - k - gram_matrix(&h, kind)?.rank();
    Ok(GramDims { by_generator, by_parity })
}

/// Hull dimension by explicit intersection with the dual, plus a canonical basis.
pub fn hull_dim_intersect(g: &GfMatrix, kind: InnerProduct) -> Result<(usize, GfMatrix)> {
    let dual = dual_generator(g, kind)?;
    let dim = g.rowspace_intersection_dim(&dual)?;
    let basis = g.rowspace_intersection(&dual)?;
    if basis.rows() != dim {
        return Err(Error::Invariant(format!(
            "intersection basis has {} rows, rank formula gives {dim}",
            basis.rows()
        )));
    }
    Ok((dim, basis))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCertificate {
    pub kind: InnerProduct,
    pub dim_by_gram: usize,
    pub dim_by_intersection: usize,
    pub basis: GfMatrix,
}

/// Wire form: `{ "kind", "dim", "basis" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateData {
    pub kind: InnerProduct,
    pub dim: usize,
    pub basis: MatrixData,
}

impl HullCertificate {
    pub fn dim(&self) -> usize {
        self.dim_by_gram
    }

    pub fn to_data(&self) -> CertificateData {
        CertificateData { kind: self.kind, dim: self.dim(), basis: self.basis.to_data() }
    }

    /// Checks a serialized certificate against this (freshly computed) one.
    pub fn check_against(&self, claimed: &CertificateData) -> Result<()> {
        if claimed.kind != self.kind {
            return Err(Error::CertificateMismatch(format!("claimed {} hull, computed {}", claimed.kind, self.kind)));
        }
        if claimed.dim != self.dim() {
            return Err(Error::CertificateMismatch(format!(
                "claimed dimension {}, computed {}",
                claimed.dim,
                self.dim()
            )));
        }
        if claimed.basis != self.basis.to_data() {
            return Err(Error::CertificateMismatch("hull basis differs".into()));
        }
        Ok(())
    }
}

/// Runs every hull method on the code generated by `g` and checks them
/// against each other and, if given, against `expected`.
pub fn certify_matrix(g: &GfMatrix, kind: InnerProduct, expected: Option<usize>) -> Result<HullCertificate> {
    if kind == InnerProduct::Hermitian {
        g.field().sub_order()?;
    }
    let gram = hull_dim_gram(g, kind)?;
    let (dim_by_intersection, basis) = hull_dim_intersect(g, kind)?;
    if gram.by_generator != gram.by_parity || gram.by_generator != dim_by_intersection {
        return Err(Error::HullMethodsDisagree {
            kind,
            gram: gram.by_generator,
            gram_parity: gram.by_parity,
            intersection: dim_by_intersection,
        });
    }
    if let Some(expected) = expected {
        if expected != dim_by_intersection {
            return Err(Error::HullMismatch { kind, expected, actual: dim_by_intersection });
        }
    }
    Ok(HullCertificate { kind, dim_by_gram: gram.by_generator, dim_by_intersection, basis })
}

pub fn certify(code: &GrsCode, kind: InnerProduct, expected: Option<usize>) -> Result<HullCertificate> {
    certify_matrix(&code.generator_matrix(), kind, expected)
}

/// Rebuilds a certificate's basis matrix over `field`.
pub fn basis_from_data(field: Arc<FieldCtx>, data: &CertificateData) -> Result<GfMatrix> {
    GfMatrix::from_data(field, &data.basis)
}

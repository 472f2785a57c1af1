//! GRS and extended GRS codes with prescribed Euclidean or Hermitian hull
//! dimension, hull certification, and entanglement-assisted quantum code
//! parameters derived from them.

pub mod construct;
pub mod eaqecc;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod grs;
pub mod hull;
pub mod matrix;
pub mod oracle;
pub mod points;
pub mod poly;

pub use construct::{construct, verify_object, CodeObject, Construction, ConstructionSpec, Theorem};
pub use eaqecc::{derive_params, generate_table, EaqeccParams, Table, TableFamily, TableRequest};
pub use error::{Error, Result};
pub use field::{Elem, FieldCtx, FieldDescriptor};
pub use fixtures::Fixture;
pub use grs::{CodeData, GrsCode};
pub use hull::{certify, CertificateData, HullCertificate, InnerProduct};
pub use matrix::{GfMatrix, MatrixData};
pub use oracle::Budget;
pub use points::PointSetData;
pub use poly::Poly;

//! Entanglement-assisted quantum code parameters from Hermitian hulls, and
//! table generation over construction families.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{construct, CodeObject, ConstructionSpec, Theorem};
use crate::error::{Error, Result};
use crate::grs::GrsCode;
use crate::hull::{dual_generator, gram_matrix, hull_dim_intersect, HullCertificate, InnerProduct};

/// `[[n, kappa, d; c]]_q`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub q: u64,
    pub n: usize,
    pub kappa: usize,
    pub d: usize,
    pub c: usize,
    pub mds: bool,
}

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.kappa, self.d, self.c, self.q)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Singleton {
    Equality,
    Strict,
    Violated,
    NotApplicable,
}

/// Quantum Singleton bound `n + c − kappa ≥ 2(d − 1)`, stated for `d ≤ (n+2)/2`.
pub fn singleton_check(n: usize, kappa: usize, d: usize, c: usize) -> Singleton {
    if 2 * d > n + 2 {
        return Singleton::NotApplicable;
    }
    let lhs = (n + c) as i64 - kappa as i64;
    let rhs = 2 * (d as i64 - 1);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Equal => Singleton::Equality,
        std::cmp::Ordering::Greater => Singleton::Strict,
        std::cmp::Ordering::Less => Singleton::Violated,
    }
}

/// The entanglement count computed three independent ways on the Hermitian
/// dual `D` of the code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EbitChecks {
    /// `k − ℓ`.
    pub from_hull: usize,
    /// `rank(H H†)` for a parity-check matrix `H` of `D`.
    pub from_rank: usize,
    /// `N − dim D − dim Hull_H(D)`.
    pub from_dual_hull: usize,
}

impl EbitChecks {
    pub fn agree(&self) -> bool {
        self.from_hull == self.from_rank && self.from_rank == self.from_dual_hull
    }
}

pub fn ebit_checks(code: &GrsCode, cert: &HullCertificate) -> Result<EbitChecks> {
    let g = code.generator_matrix();
    let k = code.dimension();
    let n = code.length();
    let dual = dual_generator(&g, InnerProduct::Hermitian)?;
    let h = dual.kernel();
    let from_rank = gram_matrix(&h, InnerProduct::Hermitian)?.rank();
    let (dual_hull, _) = hull_dim_intersect(&dual, InnerProduct::Hermitian)?;
    let from_dual_hull = n - dual.rank() - dual_hull;
    let from_hull = k.checked_sub(cert.dim()).ok_or_else(|| Error::Invariant("hull larger than code".into()))?;
    Ok(EbitChecks { from_hull, from_rank, from_dual_hull })
}

/// `[[N, N−k−ℓ, k+1; k−ℓ]]_q` from a Hermitian-certified MDS code over GF(q²).
pub fn derive_params(code: &GrsCode, cert: &HullCertificate) -> Result<(EaqeccParams, EbitChecks)> {
    if cert.kind != InnerProduct::Hermitian {
        return Err(Error::pre("entanglement-assisted parameters need a Hermitian certificate"));
    }
    let q = code.field().sub_order()? as u64;
    let k = code.dimension();
    let n = code.length();
    if 2 * k > n {
        return Err(Error::pre(format!("need k <= N/2, got k = {k}, N = {n}")));
    }
    let ell = cert.dim();
    let checks = ebit_checks(code, cert)?;
    if !checks.agree() {
        return Err(Error::Invariant(format!("ebit counts disagree: {checks:?}")));
    }
    let (kappa, d, c) = (n - k - ell, k + 1, k - ell);
    let mds = singleton_check(n, kappa, d, c) == Singleton::Equality;
    Ok((EaqeccParams { q, n, kappa, d, c, mds }, checks))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TableFamily {
    T4_6,
    T4_8i,
    T4_8ii,
    T4_9i,
    T4_9ii,
    T4_9iii,
    T4_10,
}

impl TableFamily {
    pub const ALL: [TableFamily; 7] = [
        TableFamily::T4_6,
        TableFamily::T4_8i,
        TableFamily::T4_8ii,
        TableFamily::T4_9i,
        TableFamily::T4_9ii,
        TableFamily::T4_9iii,
        TableFamily::T4_10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableFamily::T4_6 => "t4.6",
            TableFamily::T4_8i => "t4.8i",
            TableFamily::T4_8ii => "t4.8ii",
            TableFamily::T4_9i => "t4.9i",
            TableFamily::T4_9ii => "t4.9ii",
            TableFamily::T4_9iii => "t4.9iii",
            TableFamily::T4_10 => "t4.10",
        }
    }

    /// The code construction behind the family.
    pub fn theorem(self) -> Theorem {
        match self {
            TableFamily::T4_6 => Theorem::T3_5,
            TableFamily::T4_8i => Theorem::T3_6i,
            TableFamily::T4_8ii => Theorem::T3_6ii,
            TableFamily::T4_9i => Theorem::T3_8,
            TableFamily::T4_9ii => Theorem::T3_9,
            TableFamily::T4_9iii => Theorem::T3_10,
            TableFamily::T4_10 => Theorem::T3_11,
        }
    }
}

impl fmt::Display for TableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace(['_', '-'], ".");
        let norm = if norm.starts_with('t') { norm } else { format!("t{norm}") };
        TableFamily::ALL
            .into_iter()
            .find(|f| f.name() == norm || f.name().replace('.', "") == norm.replace('.', ""))
            .ok_or_else(|| Error::pre(format!("unknown table family {s:?}")))
    }
}

/// Family, shape parameters and the `(k, ℓ)` window of a table.
///
/// Unset bounds default to the full family range, except that `ℓ = 0` and
/// `ℓ = k` are left out unless asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRequest {
    pub family: TableFamily,
    pub q: u64,
    pub r: Option<u32>,
    pub z: Option<u32>,
    pub t: Option<u32>,
    pub n: Option<usize>,
    pub n_prime: Option<u32>,
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
    pub ell_min: Option<usize>,
    pub ell_max: Option<usize>,
    /// Explicit `(k, ℓ)` list; overrides the window when set.
    pub pairs: Option<Vec<(usize, usize)>>,
}

impl TableRequest {
    pub fn new(family: TableFamily, q: u64) -> Self {
        TableRequest {
            family,
            q,
            r: None,
            z: None,
            t: None,
            n: None,
            n_prime: None,
            k_min: None,
            k_max: None,
            ell_min: None,
            ell_max: None,
            pairs: None,
        }
    }

    fn spec(&self, k: usize, ell: usize) -> ConstructionSpec {
        ConstructionSpec {
            theorem: self.family.theorem(),
            q: self.q,
            r: self.r,
            z: self.z,
            t: self.t,
            n: self.n,
            n_prime: self.n_prime,
            k,
            ell,
        }
    }

    /// The `(k, ℓ)` pairs the table will contain, ascending.
    pub fn pairs(&self) -> Result<Vec<(usize, usize)>> {
        if let Some(p) = &self.pairs {
            let mut p = p.clone();
            p.sort_unstable();
            p.dedup();
            return Ok(p);
        }
        let len =
            self.spec(1, 0).length().ok_or_else(|| Error::pre(format!("{}: missing shape parameters", self.family)))?;
        let (k_lo, k_hi) = if self.family == TableFamily::T4_10 {
            (self.q as usize, self.q as usize)
        } else {
            (self.k_min.unwrap_or(1), self.k_max.unwrap_or(len))
        };
        let mut out = Vec::new();
        for k in k_lo..=k_hi {
            let lo = self.ell_min.unwrap_or(1);
            let hi = self.ell_max.map_or(k.saturating_sub(1), |h| h.min(k));
            for ell in lo..=hi {
                if ell <= hi && crate::construct::precondition_holds(&self.spec(k, ell)) {
                    out.push((k, ell));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub k: usize,
    pub ell: usize,
    pub hull_by_gram: usize,
    pub hull_by_intersection: usize,
    pub params: EaqeccParams,
    pub ebits: EbitChecks,
    pub singleton: Singleton,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeObject>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table {
    pub family: String,
    pub q: u64,
    pub rows: Vec<TableRow>,
}

/// Builds, certifies and converts every row. Any failing row aborts the table.
pub fn generate_table(req: &TableRequest, keep_codes: bool) -> Result<Table> {
    let pairs = req.pairs()?;
    let rows = pairs
        .par_iter()
        .map(|&(k, ell)| {
            let built = construct(&req.spec(k, ell))?;
            let (params, ebits) = derive_params(&built.code, &built.certificate)?;
            let singleton = singleton_check(params.n, params.kappa, params.d, params.c);
            Ok(TableRow {
                k,
                ell,
                hull_by_gram: built.certificate.dim_by_gram,
                hull_by_intersection: built.certificate.dim_by_intersection,
                params,
                ebits,
                singleton,
                code: keep_codes.then(|| built.to_object()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { family: req.family.name().to_string(), q: req.q, rows })
}

pub const CSV_HEADER: &str = "k,ell,n,kappa,d,c,q";

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let p = &r.params;
            s.push_str(&format!("{},{},{},{},{},{},{}\n", r.k, r.ell, p.n, p.kappa, p.d, p.c, p.q));
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| k | ℓ | EAQECC |\n|---|---|---|\n");
        for r in &self.rows {
            s.push_str(&format!("| {} | {} | {} |\n", r.k, r.ell, r.params));
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.rows).map_err(|e| Error::Invariant(e.to_string()))
    }
}

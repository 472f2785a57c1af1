//! GRS and extended GRS codes with a prescribed hull dimension.
//!
//! Each [`Theorem`] variant names one construction family. A
//! [`ConstructionSpec`] carries the family and its parameters, and
//! [`construct`] builds the code and certifies that its hull has exactly the
//! requested dimension.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, FieldCtx};
use crate::grs::{compute_u, CodeData, GrsCode};
use crate::hull::{certify, CertificateData, HullCertificate, InnerProduct};
use crate::points::{build_additive, build_multiplicative, nonvanishing_monic, PointSetData};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    T3_3i,
    T3_3ii,
    T3_3iii,
    T3_4,
    T3_5,
    T3_6i,
    T3_6ii,
    T3_8,
    T3_9,
    T3_10,
    T3_11,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::T3_3i,
        Theorem::T3_3ii,
        Theorem::T3_3iii,
        Theorem::T3_4,
        Theorem::T3_5,
        Theorem::T3_6i,
        Theorem::T3_6ii,
        Theorem::T3_8,
        Theorem::T3_9,
        Theorem::T3_10,
        Theorem::T3_11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T3_3i => "t3.3i",
            Theorem::T3_3ii => "t3.3ii",
            Theorem::T3_3iii => "t3.3iii",
            Theorem::T3_4 => "t3.4",
            Theorem::T3_5 => "t3.5",
            Theorem::T3_6i => "t3.6i",
            Theorem::T3_6ii => "t3.6ii",
            Theorem::T3_8 => "t3.8",
            Theorem::T3_9 => "t3.9",
            Theorem::T3_10 => "t3.10",
            Theorem::T3_11 => "t3.11",
        }
    }

    pub fn kind(self) -> InnerProduct {
        match self {
            Theorem::T3_3i | Theorem::T3_3ii | Theorem::T3_3iii | Theorem::T3_4 => InnerProduct::Euclidean,
            _ => InnerProduct::Hermitian,
        }
    }

    pub fn is_extended(self) -> bool {
        matches!(
            self,
            Theorem::T3_3ii | Theorem::T3_3iii | Theorem::T3_4 | Theorem::T3_6ii | Theorem::T3_10 | Theorem::T3_11
        )
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace(['_', '-'], ".");
        let norm = norm.strip_prefix("thm").map(|x| format!("t{x}")).unwrap_or(norm);
        let norm = if norm.starts_with('t') { norm } else { format!("t{norm}") };
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == norm || t.name().replace('.', "") == norm.replace('.', ""))
            .ok_or_else(|| Error::pre(format!("unknown construction {s:?}")))
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Theorem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Construction family plus its parameters. Unused shape fields stay `None`.
///
/// `q` is the code alphabet for Euclidean families and the square root of the
/// alphabet (codes over GF(q²)) for Hermitian ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub theorem: Theorem,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_prime: Option<u32>,
    pub k: usize,
    pub ell: usize,
}

impl ConstructionSpec {
    pub fn new(theorem: Theorem, q: u64, k: usize, ell: usize) -> Self {
        ConstructionSpec { theorem, q, r: None, z: None, t: None, n: None, n_prime: None, k, ell }
    }

    pub fn additive(theorem: Theorem, q: u64, r: u32, z: u32, t: u32, k: usize, ell: usize) -> Self {
        ConstructionSpec { r: Some(r), z: Some(z), t: Some(t), ..Self::new(theorem, q, k, ell) }
    }

    pub fn multiplicative(theorem: Theorem, q: u64, n_prime: u32, t: u32, k: usize, ell: usize) -> Self {
        ConstructionSpec { n_prime: Some(n_prime), t: Some(t), ..Self::new(theorem, q, k, ell) }
    }

    pub fn with_n(theorem: Theorem, q: u64, n: usize, k: usize, ell: usize) -> Self {
        ConstructionSpec { n: Some(n), ..Self::new(theorem, q, k, ell) }
    }

    /// Code length implied by the parameters, without building anything.
    pub fn length(&self) -> Option<usize> {
        let ext = self.theorem.is_extended() as usize;
        let base = match self.theorem {
            Theorem::T3_3i | Theorem::T3_3ii | Theorem::T3_3iii | Theorem::T3_6i | Theorem::T3_6ii => {
                self.t? as usize * (self.r? as usize).checked_pow(self.z?)?
            }
            Theorem::T3_4 | Theorem::T3_5 => self.n?,
            Theorem::T3_8 => self.t? as usize * self.n_prime? as usize,
            Theorem::T3_9 | Theorem::T3_10 => self.t? as usize * self.n_prime? as usize + 1,
            Theorem::T3_11 => (self.q * self.q) as usize,
        };
        Some(base + ext)
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub code: GrsCode,
    pub certificate: HullCertificate,
    pub point_set: Option<PointSetData>,
}

/// Wire form of a construction: the code fields plus provenance and certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeObject {
    #[serde(flatten)]
    pub code: CodeData,
    pub theorem: Theorem,
    pub spec: ConstructionSpec,
    pub certificate: CertificateData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_set: Option<PointSetData>,
}

impl Construction {
    pub fn to_object(&self) -> CodeObject {
        CodeObject {
            code: self.code.to_data(),
            theorem: self.spec.theorem,
            spec: self.spec.clone(),
            certificate: self.certificate.to_data(),
            point_set: self.point_set.clone(),
        }
    }
}

/// Re-checks a serialized construction: the code must rebuild from its spec,
/// and a fresh certificate must match the stored one.
pub fn verify_object(obj: &CodeObject) -> Result<HullCertificate> {
    if obj.theorem != obj.spec.theorem {
        return Err(Error::CertificateMismatch(format!(
            "theorem {} differs from spec theorem {}",
            obj.theorem, obj.spec.theorem
        )));
    }
    let code = GrsCode::from_data(&obj.code)?;
    let kind = obj.theorem.kind();
    let cert = certify(&code, kind, Some(obj.spec.ell))?;
    cert.check_against(&obj.certificate)?;
    let rebuilt = construct(&obj.spec)?;
    if rebuilt.code.to_data() != obj.code {
        return Err(Error::CertificateMismatch("code differs from the one its spec produces".into()));
    }
    Ok(cert)
}

fn need<T>(x: Option<T>, name: &str, theorem: Theorem) -> Result<T> {
    x.ok_or_else(|| Error::pre(format!("{theorem} needs parameter {name}")))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

/// Smallest-index nonzero `α` with `α² ≠ 1`.
fn euclid_alpha(f: &FieldCtx) -> Option<Elem> {
    f.elements().skip(1).find(|&x| f.mul(x, x) != Elem::ONE)
}

/// Smallest-index nonzero `α` with `α^{q+1} ≠ 1`.
fn herm_alpha(f: &FieldCtx) -> Result<Option<Elem>> {
    for x in f.elements().skip(1) {
        if f.norm(x)? != Elem::ONE {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn scale_first(f: &FieldCtx, v: &mut [Elem], s: usize, alpha: Option<Elem>) -> Result<()> {
    if s == 0 {
        return Ok(());
    }
    let alpha = alpha.ok_or_else(|| Error::pre("field has no scaling element α"))?;
    if s > v.len() {
        return Err(Error::pre(format!("cannot scale {s} of {} coordinates", v.len())));
    }
    for x in &mut v[..s] {
        *x = f.mul(*x, alpha);
    }
    Ok(())
}

fn sqrt_all(f: &FieldCtx, xs: impl IntoIterator<Item = Elem>) -> Result<Vec<Elem>> {
    xs.into_iter().map(|x| f.sqrt(x).ok_or_else(|| Error::Invariant(format!("{x} has no square root")))).collect()
}

fn norm_roots(f: &FieldCtx, xs: impl IntoIterator<Item = Elem>) -> Result<Vec<Elem>> {
    xs.into_iter().map(|x| f.norm_preimage(x)).collect()
}

fn check_k_ell(spec: &ConstructionSpec, k_max: usize, ell_max: usize) -> Result<()> {
    let th = spec.theorem;
    check(spec.k >= 1 && spec.k <= k_max, || format!("{th}: need 1 <= k <= {k_max}, got k = {}", spec.k))?;
    check(spec.ell <= ell_max, || format!("{th}: need 0 <= ell <= {ell_max}, got ell = {}", spec.ell))
}

/// Builds and certifies the code described by `spec`.
pub fn construct(spec: &ConstructionSpec) -> Result<Construction> {
    let (code, point_set) = match spec.theorem {
        Theorem::T3_3i | Theorem::T3_3ii | Theorem::T3_3iii => euclid_additive(spec)?,
        Theorem::T3_4 => euclid_mult_zero(spec)?,
        Theorem::T3_5 => herm_smallfield(spec)?,
        Theorem::T3_6i | Theorem::T3_6ii => herm_additive(spec)?,
        Theorem::T3_8 | Theorem::T3_9 | Theorem::T3_10 => herm_mult(spec)?,
        Theorem::T3_11 => herm_full(spec)?,
    };
    let certificate = certify(&code, spec.theorem.kind(), Some(spec.ell))?;
    Ok(Construction { spec: spec.clone(), code, certificate, point_set })
}

type Built = (GrsCode, Option<PointSetData>);

fn euclid_additive(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    check(q > 2, || format!("{th}: need q > 2"))?;
    let f = Arc::new(FieldCtx::of_order(q)?);
    let r = need(spec.r, "r", th)?;
    let z = need(spec.z, "z", th)?;
    let t = need(spec.t, "t", th)?;
    let (p, m) = prime_power(q)?;
    let (pr, e) = prime_power(r as u64).map_err(|_| Error::pre(format!("r = {r} is not a prime power")))?;
    check(pr == p && m % e == 0, || format!("{th}: r = {r} must be p^e with e | m for q = {q}"))?;
    check((m / e) % 2 == 0, || format!("{th}: m/e = {} must be even", m / e))?;
    check(z >= 1 && z < m / e, || format!("{th}: need 1 <= z <= {}", m / e - 1))?;
    let set = build_additive(&f, r, z, t)?;
    let n = set.len();
    let u = compute_u(&f, &set.points)?;
    let alpha = euclid_alpha(&f);
    let (mut v, s, extended) = match th {
        Theorem::T3_3i => {
            check_k_ell(spec, n / 2, spec.k)?;
            let v = sqrt_all(&f, u.iter().map(|&x| f.mul(set.epsilon, x)))?;
            (v, spec.k - spec.ell, false)
        }
        Theorem::T3_3ii => {
            check(n % 2 == 0, || format!("{th}: n = {n} must be even"))?;
            check_k_ell(spec, n / 2, spec.k.saturating_sub(1))?;
            let v = sqrt_all(&f, u.iter().map(|&x| f.mul(set.epsilon, x)))?;
            (v, spec.k - 1 - spec.ell, true)
        }
        _ => {
            check(n % 2 == 1, || format!("{th}: n = {n} must be odd"))?;
            check((n as u64) < q, || format!("{th}: need n = {n} < q = {q}"))?;
            check_k_ell(spec, n.div_ceil(2), spec.k)?;
            let pi = nonvanishing_monic(&f, &set.points, (n + 1 - 2 * spec.k) / 2)?;
            let roots = sqrt_all(&f, u.iter().map(|&x| f.neg(x)))?;
            let v = roots.iter().zip(&set.points).map(|(&w, &a)| f.mul(w, pi.eval(&f, a))).collect();
            (v, spec.k - spec.ell, true)
        }
    };
    scale_first(&f, &mut v, s, alpha)?;
    let code = GrsCode::new(f, set.points.clone(), v, spec.k, extended)?;
    Ok((code, Some(set.to_data())))
}

fn euclid_mult_zero(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    let f = Arc::new(FieldCtx::of_order(q)?);
    let n = need(spec.n, "n", th)?;
    check(n >= 3 && n % 2 == 1, || format!("{th}: n = {n} must be odd and at least 3"))?;
    check((n as u64) < q, || format!("{th}: need n = {n} < q = {q}"))?;
    check((q - 1).is_multiple_of(n as u64 - 1), || format!("{th}: n − 1 = {} must divide q − 1", n - 1))?;
    check(f.sqrt(f.from_int(1 - n as i64)).is_some(), || format!("{th}: 1 − n is not a square in GF({q})"))?;
    check_k_ell(spec, n.div_ceil(2), spec.k)?;
    let step = ((q - 1) / (n as u64 - 1)) as i64;
    let mut a: Vec<Elem> = (1..n as i64).map(|i| f.exp(i * step)).collect();
    a.push(Elem::ZERO);
    let u = compute_u(&f, &a)?;
    let pi = nonvanishing_monic(&f, &a, (n + 1 - 2 * spec.k) / 2)?;
    let roots = sqrt_all(&f, u.iter().map(|&x| f.neg(x)))?;
    let mut v: Vec<Elem> = roots.iter().zip(&a).map(|(&w, &x)| f.mul(w, pi.eval(&f, x))).collect();
    scale_first(&f, &mut v, spec.k - spec.ell, euclid_alpha(&f))?;
    Ok((GrsCode::new(f, a, v, spec.k, true)?, None))
}

fn herm_smallfield(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    check(q > 2, || format!("{th}: need q > 2"))?;
    let f = Arc::new(FieldCtx::quadratic(q)?);
    let n = need(spec.n, "n", th)?;
    check(n >= 2 && n as u64 <= q, || format!("{th}: need 2 <= n <= q = {q}, got n = {n}"))?;
    check_k_ell(spec, n / 2, spec.k)?;
    let a: Vec<Elem> = f.subfield_elements()?[..n].to_vec();
    let u = compute_u(&f, &a)?;
    let mut v = norm_roots(&f, u)?;
    scale_first(&f, &mut v, spec.k - spec.ell, herm_alpha(&f)?)?;
    Ok((GrsCode::new(f, a, v, spec.k, false)?, None))
}

fn herm_additive(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    check(q >= 3, || format!("{th}: need q >= 3"))?;
    let f = Arc::new(FieldCtx::quadratic(q)?);
    let r = need(spec.r, "r", th)?;
    let z = need(spec.z, "z", th)?;
    let t = need(spec.t, "t", th)?;
    let (p, m) = prime_power(q)?;
    let (pr, e) = prime_power(r as u64).map_err(|_| Error::pre(format!("r = {r} is not a prime power")))?;
    check(pr == p && m % e == 0, || format!("{th}: r = {r} must be p^e with e | m for q = {q}"))?;
    check(z >= 1 && z < 2 * m / e, || format!("{th}: need 1 <= z <= {}", 2 * m / e - 1))?;
    let set = build_additive(&f, r, z, t)?;
    let n = set.len();
    let k_max = (n - 1 + q as usize) / (q as usize + 1);
    let extended = th == Theorem::T3_6ii;
    check_k_ell(spec, k_max, if extended { spec.k.saturating_sub(1) } else { spec.k })?;
    let u = compute_u(&f, &set.points)?;
    let mut v = norm_roots(&f, u.iter().map(|&x| f.mul(set.epsilon, x)))?;
    let s = spec.k - spec.ell - extended as usize;
    scale_first(&f, &mut v, s, herm_alpha(&f)?)?;
    let code = GrsCode::new(f, set.points.clone(), v, spec.k, extended)?;
    Ok((code, Some(set.to_data())))
}

fn herm_mult(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    check(q > 2, || format!("{th}: need q > 2"))?;
    let f = Arc::new(FieldCtx::quadratic(q)?);
    let n_prime = need(spec.n_prime, "n_prime", th)?;
    let t = need(spec.t, "t", th)?;
    let include_zero = th != Theorem::T3_8;
    let set = build_multiplicative(&f, n_prime, t, include_zero)?;
    let n = (t * n_prime) as usize;
    let k_max = (n + q as usize) / (q as usize + 1);
    let ell_max = if th == Theorem::T3_9 { spec.k } else { spec.k.saturating_sub(1) };
    check_k_ell(spec, k_max, ell_max)?;
    let u = compute_u(&f, &set.points)?;
    let mut v = if th == Theorem::T3_8 {
        let w = u.iter().zip(&set.points).map(|(&x, &a)| f.div(x, a)).collect::<Result<Vec<_>>>()?;
        norm_roots(&f, w)?
    } else {
        norm_roots(&f, u)?
    };
    let s = if th == Theorem::T3_9 { spec.k - spec.ell } else { spec.k - 1 - spec.ell };
    scale_first(&f, &mut v, s, herm_alpha(&f)?)?;
    let code = GrsCode::new(f, set.points.clone(), v, spec.k, th == Theorem::T3_10)?;
    Ok((code, Some(set.to_data())))
}

fn herm_full(spec: &ConstructionSpec) -> Result<Built> {
    let th = spec.theorem;
    let q = spec.q;
    check(q > 2, || format!("{th}: need q > 2"))?;
    check(spec.k as u64 == q, || format!("{th}: dimension is fixed to k = q = {q}, got k = {}", spec.k))?;
    check(spec.ell as u64 <= q, || format!("{th}: need 0 <= ell <= q = {q}, got ell = {}", spec.ell))?;
    let f = Arc::new(FieldCtx::quadratic(q)?);
    let a: Vec<Elem> = f.elements().collect();
    let mut v = vec![Elem::ONE; a.len()];
    scale_first(&f, &mut v, spec.k - spec.ell, herm_alpha(&f)?)?;
    Ok((GrsCode::new(f, a, v, spec.k, true)?, None))
}

fn prime_powers(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_ok())
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Every in-precondition spec of `theorem` with field parameter `q <= max_q`
/// and code length at most `max_len`.
pub fn enumerate_specs(theorem: Theorem, max_q: u64, max_len: usize) -> Vec<ConstructionSpec> {
    let mut shapes: Vec<ConstructionSpec> = Vec::new();
    match theorem {
        Theorem::T3_3i | Theorem::T3_3ii | Theorem::T3_3iii | Theorem::T3_6i | Theorem::T3_6ii => {
            let herm = theorem.kind() == InnerProduct::Hermitian;
            for q in prime_powers(3, max_q) {
                let (p, m) = prime_power(q).unwrap();
                for e in (1..=m).filter(|e| m % e == 0) {
                    let r = p.pow(e);
                    let z_max = if herm {
                        2 * m / e - 1
                    } else if (m / e) % 2 == 0 {
                        m / e - 1
                    } else {
                        0
                    };
                    for z in 1..=z_max {
                        for t in 1..=r {
                            shapes.push(ConstructionSpec::additive(theorem, q, r, z, t, 0, 0));
                        }
                    }
                }
            }
        }
        Theorem::T3_4 | Theorem::T3_5 => {
            for q in prime_powers(3, max_q) {
                for n in 2..=q as usize {
                    shapes.push(ConstructionSpec::with_n(theorem, q, n, 0, 0));
                }
            }
        }
        Theorem::T3_8 | Theorem::T3_9 | Theorem::T3_10 => {
            for q in prime_powers(3, max_q) {
                for n_prime in divisors(q * q - 1) {
                    let n2 = divisors(q + 1).into_iter().filter(|d| n_prime % d == 0).max().unwrap();
                    let n1 = n_prime / n2;
                    for t in 1..=(q - 1) / n1 {
                        shapes.push(ConstructionSpec::multiplicative(theorem, q, n_prime as u32, t as u32, 0, 0));
                    }
                }
            }
        }
        Theorem::T3_11 => {
            for q in prime_powers(3, max_q) {
                shapes.push(ConstructionSpec::new(theorem, q, q as usize, 0));
            }
        }
    }
    let mut out = Vec::new();
    for shape in shapes {
        match shape.length() {
            Some(len) if len <= max_len => {}
            _ => continue,
        }
        let k_range: Vec<usize> =
            if theorem == Theorem::T3_11 { vec![shape.q as usize] } else { (1..=shape.length().unwrap()).collect() };
        for &k in &k_range {
            for ell in 0..=k {
                let spec = ConstructionSpec { k, ell, ..shape.clone() };
                if precondition_holds(&spec) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// True iff `spec` satisfies its family's preconditions (checked without
/// running the hull computation).
pub fn precondition_holds(spec: &ConstructionSpec) -> bool {
    let built = match spec.theorem {
        Theorem::T3_3i | Theorem::T3_3ii | Theorem::T3_3iii => euclid_additive(spec),
        Theorem::T3_4 => euclid_mult_zero(spec),
        Theorem::T3_5 => herm_smallfield(spec),
        Theorem::T3_6i | Theorem::T3_6ii => herm_additive(spec),
        Theorem::T3_8 | Theorem::T3_9 | Theorem::T3_10 => herm_mult(spec),
        Theorem::T3_11 => herm_full(spec),
    };
    match built {
        Ok(_) => true,
        Err(e) if e.is_precondition() => false,
        Err(e) => panic!("construction failed for {spec:?}: {e}"),
    }
}

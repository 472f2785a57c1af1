//! Finite fields GF(p^m) driven by discrete-logarithm tables.
//!
//! An element with polynomial coefficients `(c_0, ..., c_{m-1})` over GF(p)
//! is encoded as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, so `0` and
//! `1` are the field's zero and one and the prime subfield occupies the
//! indices `0..p`. The modulus is the primitive polynomial with the smallest
//! such encoding, which makes `ω = x` a generator and every table canonical.
//!
//! Addition goes through Zech logarithms, so every operation is a handful of
//! table lookups. A field of even degree `2m'` doubles as the quadratic
//! extension GF(q²) of GF(q), q = p^{m'}; see [`FieldCtx::conj`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its base-p digit encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Wire form of a field: characteristic, degree and modulus digits `c_0..c_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

pub struct FieldCtx {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[j] = ω^j` for `0 <= j < 2(q-1)`, doubled so sums of two logs need no reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    /// `zech[j] = log(1 + ω^j)`, or `NO_LOG` when `1 + ω^j = 0`.
    zech: Vec<u32>,
    /// `p^{m/2}` when the degree is even.
    half: Option<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx").field("p", &self.p).field("m", &self.m).field("modulus", &self.modulus).finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^m` into `(p, m)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut m) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, m))
}

fn checked_order(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::pre("extension degree must be at least 1"));
    }
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge { p: p as u64, m, max: MAX_ORDER });
        }
    }
    Ok(q as u32)
}

/// Powers of `x` modulo `modulus`, if `x` has multiplicative order exactly `q - 1`.
fn power_table(p: u32, m: u32, q: u32, modulus: &[u32]) -> Option<Vec<Elem>> {
    let m = m as usize;
    let mut digits = vec![0u32; m];
    digits[0] = 1;
    let mut exp = Vec::with_capacity(2 * (q as usize - 1));
    exp.push(Elem::ONE);
    for j in 1..q {
        // multiply by x and reduce the overflow coefficient with the monic modulus
        let top = digits[m - 1];
        for i in (1..m).rev() {
            digits[i] = digits[i - 1];
        }
        digits[0] = 0;
        if top != 0 {
            for (d, &c) in digits.iter_mut().zip(modulus) {
                *d = (*d + (p - c) * top) % p;
            }
        }
        let index = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if index == 1 {
            return (j == q - 1).then_some(exp);
        }
        if index == 0 {
            return None;
        }
        exp.push(Elem(index));
    }
    None
}

impl FieldCtx {
    /// GF(p^m) with the canonical (smallest-encoding) primitive modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        let q = checked_order(p, m)?;
        // monic candidates, in increasing integer encoding
        for low in 0..q {
            let mut modulus = Vec::with_capacity(m as usize + 1);
            let mut rest = low;
            for _ in 0..m {
                modulus.push(rest % p);
                rest /= p;
            }
            modulus.push(1);
            if let Some(exp) = power_table(p, m, q, &modulus) {
                return Ok(Self::from_tables(p, m, q, modulus, exp));
            }
        }
        Err(Error::Invariant(format!("no primitive polynomial of degree {m} over GF({p})")))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q)?;
        Self::new(p, m)
    }

    /// GF(q²), viewed as a quadratic extension of GF(q).
    pub fn quadratic(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q)?;
        Self::new(p, 2 * m)
    }

    /// Rebuilds a field from its descriptor, checking that the modulus is primitive.
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let (p, m) = (desc.p, desc.m);
        let q = checked_order(p, m)?;
        let bad = || Error::NotPrimitive { p, m, modulus: desc.modulus.clone() };
        if desc.modulus.len() != m as usize + 1 || desc.modulus[m as usize] != 1 || desc.modulus.iter().any(|&c| c >= p)
        {
            return Err(bad());
        }
        let exp = power_table(p, m, q, &desc.modulus).ok_or_else(bad)?;
        Ok(Self::from_tables(p, m, q, desc.modulus.clone(), exp))
    }

    fn from_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>, mut exp: Vec<Elem>) -> Self {
        let n = q as usize - 1;
        let mut log = vec![NO_LOG; q as usize];
        for (j, e) in exp.iter().enumerate() {
            log[e.0 as usize] = j as u32;
        }
        // 1 + y only touches the constant digit
        let zech = exp
            .iter()
            .map(|e| {
                let c0 = e.0 % p;
                let sum = e.0 - c0 + (c0 + 1) % p;
                log[sum as usize]
            })
            .collect();
        exp.extend_from_within(0..n);
        let half = m.is_multiple_of(2).then(|| p.pow(m / 2));
        FieldCtx { p, m, order: q, modulus, exp, log, zech, half }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, m: self.m, modulus: self.modulus.clone() }
    }

    /// The primitive element ω, the class of `x`.
    pub fn generator(&self) -> Elem {
        self.exp[1 % (self.order as usize - 1).max(1)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.order {
            Ok(Elem(index))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.order })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// `ω^j`, for any integer exponent.
    #[inline]
    pub fn exp(&self, j: i64) -> Elem {
        self.exp[j.rem_euclid(self.order as i64 - 1) as usize]
    }

    /// Discrete logarithm to base ω, `None` for zero.
    #[inline]
    pub fn log(&self, x: Elem) -> Option<u32> {
        let l = self.log[x.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    #[inline]
    fn log_nz(&self, x: Elem) -> usize {
        self.log[x.0 as usize] as usize
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.order as usize - 1;
        let (la, lb) = (self.log_nz(a), self.log_nz(b));
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d] {
            NO_LOG => Elem::ZERO,
            z => self.exp[la + z as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let n = self.order as usize - 1;
        self.exp[self.log_nz(a) + n / 2]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        self.exp[self.log_nz(a) + self.log_nz(b)]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.order as usize - 1;
        Ok(self.exp[(n - self.log_nz(a)) % n])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = self.order as u64 - 1;
        let l = (self.log_nz(a) as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    pub fn sum(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }

    /// Inner product `Σ a_i b_i`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        self.sum(a.iter().zip(b).map(|(&x, &y)| self.mul(x, y)))
    }

    /// Order of the subfield GF(p^e), if `e` divides the degree.
    pub fn subfield_order(&self, e: u32) -> Result<u32> {
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(Error::pre(format!("GF({}^{e}) is not a subfield of GF({}^{})", self.p, self.p, self.m)));
        }
        Ok(self.p.pow(e))
    }

    pub fn in_subfield(&self, x: Elem, e: u32) -> Result<bool> {
        let r = self.subfield_order(e)?;
        Ok(match self.log(x) {
            None => true,
            Some(l) => l % ((self.order - 1) / (r - 1)) == 0,
        })
    }

    /// Elements of GF(p^e) inside this field, in index order.
    pub fn subfield(&self, e: u32) -> Result<Vec<Elem>> {
        let r = self.subfield_order(e)?;
        let step = (self.order - 1) / (r - 1);
        let mut out: Vec<Elem> =
            std::iter::once(Elem::ZERO).chain((0..r - 1).map(|j| self.exp[(j * step) as usize])).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `q` when this field is GF(q²).
    pub fn sub_order(&self) -> Result<u32> {
        self.half.ok_or(Error::NotQuadratic { p: self.p, m: self.m })
    }

    /// `x^q` in GF(q²); the identity on fields of odd degree is never wanted,
    /// so callers must have checked [`FieldCtx::sub_order`] first.
    #[inline]
    pub fn conj(&self, x: Elem) -> Elem {
        let q = self.half.expect("conjugation needs a quadratic extension") as usize;
        if x.is_zero() {
            return x;
        }
        let n = self.order as usize - 1;
        self.exp[(self.log_nz(x) * q) % n]
    }

    /// Checked form of [`FieldCtx::conj`].
    pub fn frobenius_q(&self, x: Elem) -> Result<Elem> {
        self.sub_order()?;
        Ok(self.conj(x))
    }

    /// The subfield GF(q) of GF(q²), in index order.
    pub fn subfield_elements(&self) -> Result<Vec<Elem>> {
        self.sub_order()?;
        self.subfield(self.m / 2)
    }

    pub fn in_base_field(&self, x: Elem) -> Result<bool> {
        self.sub_order()?;
        self.in_subfield(x, self.m / 2)
    }

    /// `x^{q+1}`.
    pub fn norm(&self, x: Elem) -> Result<Elem> {
        let q = self.sub_order()?;
        Ok(self.pow(x, q as u64 + 1))
    }

    /// Smallest-index `v` with `v^{q+1} = u`, for `u` in GF(q)*.
    pub fn norm_preimage(&self, u: Elem) -> Result<Elem> {
        let q = self.sub_order()? as usize;
        let l = self.log(u).ok_or(Error::NotInSubfield(u.0))? as usize;
        if !l.is_multiple_of(q + 1) {
            return Err(Error::NotInSubfield(u.0));
        }
        let t = l / (q + 1);
        let n = self.order as usize - 1;
        // all preimages differ by (q+1)-th roots of unity, ω^{j(q-1)}
        let best = (0..=q).map(|j| self.exp[(t + j * (q - 1)) % n]).min().expect("q + 1 candidates");
        Ok(best)
    }

    /// Smallest-index square root of `u`, if one exists.
    pub fn sqrt(&self, u: Elem) -> Option<Elem> {
        if u.is_zero() {
            return Some(u);
        }
        let n = self.order as usize - 1;
        let l = self.log_nz(u);
        if self.p == 2 {
            // squaring is a bijection; the unique root is u^{q/2}
            return Some(self.pow(u, self.order as u64 / 2));
        }
        if l % 2 == 1 {
            return None;
        }
        let r = self.exp[l / 2];
        Some(r.min(self.exp[l / 2 + n / 2]))
    }
}

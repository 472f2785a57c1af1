//! Structured evaluation-point sets whose `u_i` have a closed form.
//!
//! * Additive: a union of `t` cosets `H + β_j η` of a `z`-dimensional
//!   GF(r)-subspace `H`, with labels `β_j` in GF(r). Every `ε u_i` then lies
//!   in GF(r)*.
//! * Multiplicative: a union of `t` cosets `β_b G` of the order-`n'` subgroup
//!   `G` inside `H = ⟨ω^{(q+1)/n₂}⟩ ⊂ GF(q²)*`, optionally with 0 adjoined.
//!   Every `a_i^{-1} u_i` lies in GF(q)*.
//!
//! All choices (basis of `H`, `η`, labels, coset leaders, enumeration order)
//! are pinned so that constructions are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::poly::Poly;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extension degree `e` of `r = p^e` over the prime field.
fn subfield_degree(f: &FieldCtx, r: u32) -> Result<u32> {
    let p = f.characteristic();
    let mut e = 0;
    let mut acc = 1u64;
    while acc < r as u64 {
        acc *= p as u64;
        e += 1;
    }
    if acc != r as u64 || e == 0 {
        return Err(Error::pre(format!("r = {r} is not a power of the characteristic {p}")));
    }
    f.subfield_order(e)?;
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePointSet {
    pub r: u32,
    pub z: u32,
    pub t: u32,
    /// `1, ω, ..., ω^{z-1}`: spans `H` over GF(r).
    pub basis: Vec<Elem>,
    pub eta: Elem,
    pub beta: Vec<Elem>,
    pub points: Vec<Elem>,
    /// Index `b` of the coset containing each point.
    pub coset: Vec<usize>,
    pub epsilon: Elem,
    subspace: Vec<Elem>,
}

/// Builds `⋃_{j<t} (H + β_j η)` in the field `f`.
///
/// Within a coset, points follow the GF(r)-digit order of their coordinates
/// in `basis`, with the first coordinate varying fastest.
pub fn build_additive(f: &FieldCtx, r: u32, z: u32, t: u32) -> Result<AdditivePointSet> {
    let e = subfield_degree(f, r)?;
    let dim = f.degree() / e;
    if z < 1 || z >= dim {
        return Err(Error::pre(format!("subspace dimension z = {z} outside 1..={}", dim - 1)));
    }
    if t < 1 || t > r {
        return Err(Error::pre(format!("coset count t = {t} outside 1..={r}")));
    }
    let fr = f.subfield(e)?;
    let basis: Vec<Elem> = (0..z).map(|i| f.exp(i as i64)).collect();
    let size = (r as usize).pow(z);
    let subspace: Vec<Elem> = (0..size)
        .map(|mut j| {
            let mut h = Elem::ZERO;
            for &b in &basis {
                h = f.add(h, f.mul(fr[j % r as usize], b));
                j /= r as usize;
            }
            h
        })
        .collect();
    let mut in_h = vec![false; f.order() as usize];
    for h in &subspace {
        in_h[h.0 as usize] = true;
    }
    let eta = f
        .elements()
        .find(|x| !in_h[x.0 as usize])
        .ok_or_else(|| Error::Invariant("subspace covers the whole field".into()))?;
    let beta: Vec<Elem> = fr[..t as usize].to_vec();
    let mut points = Vec::with_capacity(t as usize * size);
    let mut coset = Vec::with_capacity(points.capacity());
    for (b, &bj) in beta.iter().enumerate() {
        let shift = f.mul(bj, eta);
        for &h in &subspace {
            points.push(f.add(h, shift));
            coset.push(b);
        }
    }
    let nonzero_product = f.product(subspace.iter().copied().filter(|h| !h.is_zero()));
    let eta_product = f.product(subspace.iter().map(|&g| f.sub(eta, g)));
    let epsilon = f.mul(nonzero_product, f.pow(eta_product, t as u64 - 1));
    Ok(AdditivePointSet { r, z, t, basis, eta, beta, points, coset, epsilon, subspace })
}

impl AdditivePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Elements of `H` in enumeration order.
    pub fn subspace(&self) -> &[Elem] {
        &self.subspace
    }

    /// `u_i = (Π_{h≠0} h)^{-1} (Π_{g∈H} (η − g))^{1−t} Π_{j≠b} (β_b − β_j)^{-1}`.
    pub fn closed_form_u(&self, f: &FieldCtx) -> Result<Vec<Elem>> {
        let nonzero_product = f.product(self.subspace.iter().copied().filter(|h| !h.is_zero()));
        let eta_product = f.product(self.subspace.iter().map(|&g| f.sub(self.eta, g)));
        let common = f.div(f.inv(nonzero_product)?, f.pow(eta_product, self.t as u64 - 1))?;
        let per_coset: Vec<Elem> = (0..self.beta.len())
            .map(|b| {
                let prod = f.product(
                    self.beta.iter().enumerate().filter(|&(j, _)| j != b).map(|(_, &bj)| f.sub(self.beta[b], bj)),
                );
                f.div(common, prod)
            })
            .collect::<Result<_>>()?;
        Ok(self.coset.iter().map(|&b| per_coset[b]).collect())
    }

    pub fn to_data(&self) -> PointSetData {
        PointSetData::Additive {
            r: self.r,
            z: self.z,
            t: self.t,
            eta: self.eta,
            beta: self.beta.clone(),
            points: self.points.clone(),
            epsilon: self.epsilon,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativePointSet {
    pub q: u32,
    pub n_prime: u32,
    pub t: u32,
    pub n1: u32,
    pub n2: u32,
    /// Generator `ω^{(q²-1)/n'}` of `G`.
    pub theta: Elem,
    pub leaders: Vec<Elem>,
    /// `t n'` coset points, then 0 if `include_zero`.
    pub points: Vec<Elem>,
    pub coset: Vec<usize>,
    pub include_zero: bool,
}

/// Builds `⋃_{b<t} β_b G` in GF(q²), points listed as `β_b θ^1, ..., β_b θ^{n'}`.
///
/// Coset leaders are the first `t` distinct cosets met while scanning
/// `ω^{j(q+1)/n₂}`, `j = 0, 1, ...`.
pub fn build_multiplicative(f: &FieldCtx, n_prime: u32, t: u32, include_zero: bool) -> Result<MultiplicativePointSet> {
    let q = f.sub_order()?;
    let big = f.order() - 1;
    if n_prime == 0 || !big.is_multiple_of(n_prime) {
        return Err(Error::pre(format!("n' = {n_prime} does not divide q² − 1 = {big}")));
    }
    let n2 = gcd(n_prime as u64, q as u64 + 1) as u32;
    let n1 = n_prime / n2;
    let max_t = (q - 1) / n1;
    if t < 1 || t > max_t {
        return Err(Error::pre(format!("coset count t = {t} outside 1..={max_t}")));
    }
    let cofactor = big / n_prime;
    let theta = f.exp(cofactor as i64);
    let h_step = (q + 1) / n2;
    let mut leaders: Vec<Elem> = Vec::with_capacity(t as usize);
    let mut seen = Vec::new();
    for j in 0..(q - 1) * n2 {
        if leaders.len() == t as usize {
            break;
        }
        let l = j * h_step;
        let key = l % cofactor;
        if !seen.contains(&key) {
            seen.push(key);
            leaders.push(f.exp(l as i64));
        }
    }
    if leaders.len() != t as usize {
        return Err(Error::Invariant(format!("found only {} cosets of G in H", leaders.len())));
    }
    let mut points = Vec::with_capacity((t * n_prime) as usize + include_zero as usize);
    let mut coset = Vec::with_capacity(points.capacity());
    for (b, &beta) in leaders.iter().enumerate() {
        let mut x = beta;
        for _ in 0..n_prime {
            x = f.mul(x, theta);
            points.push(x);
            coset.push(b);
        }
    }
    if include_zero {
        points.push(Elem::ZERO);
        coset.push(usize::MAX);
    }
    Ok(MultiplicativePointSet { q, n_prime, t, n1, n2, theta, leaders, points, coset, include_zero })
}

impl MultiplicativePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `u_i = (1/n') a_i β_b^{-n'} Π_{s≠b} (β_b^{n'} − β_s^{n'})^{-1}` on the
    /// cosets; with 0 adjoined, coset points pick up a factor `a_i^{-1}` and
    /// the point 0 gets `(−1)^t Π_j β_j^{-n'}`.
    pub fn closed_form_u(&self, f: &FieldCtx) -> Result<Vec<Elem>> {
        let np = self.n_prime as u64;
        let powers: Vec<Elem> = self.leaders.iter().map(|&b| f.pow(b, np)).collect();
        let inv_np = f.inv(f.from_int(self.n_prime as i64))?;
        let per_coset: Vec<Elem> = (0..powers.len())
            .map(|b| {
                let others =
                    f.product(powers.iter().enumerate().filter(|&(s, _)| s != b).map(|(_, &ps)| f.sub(powers[b], ps)));
                f.div(inv_np, f.mul(powers[b], others))
            })
            .collect::<Result<_>>()?;
        let mut u: Vec<Elem> = self
            .points
            .iter()
            .zip(&self.coset)
            .filter(|&(_, &b)| b != usize::MAX)
            .map(|(&a, &b)| {
                let ui = f.mul(per_coset[b], a);
                if self.include_zero {
                    f.div(ui, a).expect("coset points are nonzero")
                } else {
                    ui
                }
            })
            .collect();
        if self.include_zero {
            // Π_{g∈G} g = (−1)^{n'+1}, so the sign (−1)^{n + t(n'+1)} reduces to (−1)^t
            let sign = if self.t.is_multiple_of(2) { Elem::ONE } else { f.neg(Elem::ONE) };
            let inv_prod = f.inv(f.product(powers.iter().copied()))?;
            u.push(f.mul(sign, inv_prod));
        }
        Ok(u)
    }

    pub fn to_data(&self) -> PointSetData {
        PointSetData::Multiplicative {
            n_prime: self.n_prime,
            t: self.t,
            n1: self.n1,
            n2: self.n2,
            leaders: self.leaders.clone(),
            include_zero: self.include_zero,
            points: self.points.clone(),
        }
    }
}

/// Point-set serialization with its structural metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointSetData {
    Additive { r: u32, z: u32, t: u32, eta: Elem, beta: Vec<Elem>, points: Vec<Elem>, epsilon: Elem },
    Multiplicative { n_prime: u32, t: u32, n1: u32, n2: u32, leaders: Vec<Elem>, include_zero: bool, points: Vec<Elem> },
}

/// A monic polynomial of exact degree `degree` with no root in `avoid`.
///
/// Degree 0 gives `1`, degree 1 gives `x − δ` for the smallest-index `δ`
/// outside `avoid`, and higher degrees scan the lower coefficients in
/// increasing order (constant term fastest) until one works.
pub fn nonvanishing_monic(f: &FieldCtx, avoid: &[Elem], degree: usize) -> Result<Poly> {
    let mut blocked = vec![false; f.order() as usize];
    for a in avoid {
        blocked[f.elem(a.0)?.0 as usize] = true;
    }
    let Some(delta) = f.elements().find(|x| !blocked[x.0 as usize]) else {
        return Err(Error::pre("the avoided set is the whole field"));
    };
    match degree {
        0 => return Ok(Poly::one()),
        1 => return Ok(Poly::linear(f, delta)),
        _ => {}
    }
    let q = f.order();
    let mut low = vec![0u32; degree];
    loop {
        let mut coeffs: Vec<Elem> = low.iter().map(|&c| Elem(c)).collect();
        coeffs.push(Elem::ONE);
        let pi = Poly::new(coeffs);
        if avoid.iter().all(|&a| !pi.eval(f, a).is_zero()) {
            return Ok(pi);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == degree {
                return Err(Error::Invariant("no nonvanishing monic polynomial found".into()));
            }
            low[i] += 1;
            if low[i] < q {
                break;
            }
            low[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::compute_u;

    #[test]
    fn additive_gf9_single_coset() {
        let f = FieldCtx::new(3, 2).unwrap();
        let s = build_additive(&f, 3, 1, 1).unwrap();
        assert_eq!(s.points, vec![Elem(0), Elem(1), Elem(2)]);
        assert_eq!(s.epsilon, Elem(2));
    }

    #[test]
    fn additive_gf9_two_cosets() {
        let f = FieldCtx::new(3, 2).unwrap();
        let s = build_additive(&f, 3, 1, 2).unwrap();
        let eta = s.eta;
        assert_eq!(eta, Elem(3));
        let expected: Vec<Elem> = [Elem(0), Elem(1), Elem(2)]
            .iter()
            .chain([Elem(0), Elem(1), Elem(2)].iter().map(|_| &eta))
            .copied()
            .collect::<Vec<_>>();
        assert_eq!(&s.points[..3], &expected[..3]);
        assert_eq!(s.points[3], eta);
        assert_eq!(s.points[4], f.add(Elem(1), eta));
        assert_eq!(s.points[5], f.add(Elem(2), eta));
        // ε = 2 (η³ − η), using Π_{g ∈ F_3} (x − g) = x³ − x
        let eps = f.mul(Elem(2), f.sub(f.pow(eta, 3), eta));
        assert_eq!(s.epsilon, eps);
        let u = compute_u(&f, &s.points).unwrap();
        for &ui in &u {
            let x = f.mul(s.epsilon, ui);
            assert!(!x.is_zero() && f.in_subfield(x, 1).unwrap());
        }
        assert_eq!(s.closed_form_u(&f).unwrap(), u);
    }

    #[test]
    fn additive_rejects_bad_parameters() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert!(build_additive(&f, 3, 2, 1).is_err());
        assert!(build_additive(&f, 3, 1, 4).is_err());
        assert!(build_additive(&f, 2, 1, 1).is_err());
        assert!(build_additive(&f, 9, 1, 1).is_err());
    }

    #[test]
    fn multiplicative_roots_of_unity() {
        // t = 1, n' = q + 1: the (q+1)-th roots of unity, u_i = a_i / n'
        let q = 5;
        let f = FieldCtx::quadratic(q).unwrap();
        let s = build_multiplicative(&f, q as u32 + 1, 1, false).unwrap();
        assert_eq!(s.leaders, vec![Elem::ONE]);
        let u = compute_u(&f, &s.points).unwrap();
        let inv = f.inv(f.from_int(q as i64 + 1)).unwrap();
        for (&a, &ui) in s.points.iter().zip(&u) {
            assert_eq!(ui, f.mul(inv, a));
        }
        assert_eq!(s.closed_form_u(&f).unwrap(), u);
    }

    #[test]
    fn multiplicative_table_two_shape() {
        let f = FieldCtx::quadratic(11).unwrap();
        let s = build_multiplicative(&f, 12, 8, false).unwrap();
        assert_eq!(s.len(), 96);
        assert_eq!((s.n1, s.n2), (1, 12));
        let u = compute_u(&f, &s.points).unwrap();
        assert_eq!(s.closed_form_u(&f).unwrap(), u);
        for (&a, &ui) in s.points.iter().zip(&u) {
            assert!(f.in_base_field(f.div(ui, a).unwrap()).unwrap());
        }
        let z = build_multiplicative(&f, 12, 8, true).unwrap();
        assert_eq!(z.len(), 97);
        let uz = compute_u(&f, &z.points).unwrap();
        assert_eq!(z.closed_form_u(&f).unwrap(), uz);
        assert!(f.in_base_field(uz[96]).unwrap() && !uz[96].is_zero());
        assert!(build_multiplicative(&f, 12, 11, false).is_err());
        assert!(build_multiplicative(&f, 7, 1, false).is_err());
    }

    #[test]
    fn nonvanishing_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(nonvanishing_monic(&f, &[Elem(0)], 0).unwrap(), Poly::one());
        let p = nonvanishing_monic(&f, &[Elem(0), Elem(1)], 1).unwrap();
        assert_eq!(p.coeffs(), &[Elem(3), Elem(1)]);
        let avoid = [Elem(0), Elem(1), Elem(2), Elem(3)];
        let p = nonvanishing_monic(&f, &avoid, 2).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_monic());
        assert!(avoid.iter().all(|&a| !p.eval(&f, a).is_zero()));
        // first candidate in scan order: x^2 + 0x + c fails for c = 0 (root 0) ...
        let brute = (0..25u32)
            .map(|i| Poly::new(vec![Elem(i % 5), Elem(i / 5), Elem::ONE]))
            .find(|p| avoid.iter().all(|&a| !p.eval(&f, a).is_zero()))
            .unwrap();
        assert_eq!(p, brute);
        let all: Vec<Elem> = f.elements().collect();
        assert!(nonvanishing_monic(&f, &all, 2).is_err());
    }
}

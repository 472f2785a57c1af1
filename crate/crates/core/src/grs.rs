//! Generalized Reed–Solomon codes `GRS_k(a, v)` and their extensions
//! `GRS_k(a, v, ∞)`, whose extra coordinate carries the coefficient of `x^{k-1}`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, FieldDescriptor};
use crate::hull::{inner_product, InnerProduct};
use crate::matrix::GfMatrix;
use crate::poly::Poly;

/// `u_i = Π_{j≠i} (a_i − a_j)^{-1}`, the weights that make
/// `Σ u_i f(a_i) = 0` for every `f` of degree below `n − 1`.
pub fn compute_u(f: &FieldCtx, a: &[Elem]) -> Result<Vec<Elem>> {
    check_distinct(a)?;
    a.iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = f.product(a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| f.sub(ai, aj)));
            f.inv(prod)
        })
        .collect()
}

fn check_distinct(a: &[Elem]) -> Result<()> {
    let mut seen = HashSet::with_capacity(a.len());
    for &x in a {
        if !seen.insert(x) {
            return Err(Error::RepeatedPoint(x.0));
        }
    }
    Ok(())
}

/// Serialized code object: `{ "field", "a", "v", "k", "extended" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeData {
    pub field: FieldDescriptor,
    pub a: Vec<Elem>,
    pub v: Vec<Elem>,
    pub k: usize,
    pub extended: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: Arc<FieldCtx>,
    a: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
    extended: bool,
}

impl GrsCode {
    pub fn new(field: Arc<FieldCtx>, a: Vec<Elem>, v: Vec<Elem>, k: usize, extended: bool) -> Result<Self> {
        if a.len() != v.len() {
            return Err(Error::Shape(format!("{} points but {} scalings", a.len(), v.len())));
        }
        if a.is_empty() {
            return Err(Error::pre("a GRS code needs at least one evaluation point"));
        }
        for &x in a.iter().chain(&v) {
            field.elem(x.0)?;
        }
        check_distinct(&a)?;
        if v.iter().any(|x| x.is_zero()) {
            return Err(Error::pre("column multipliers must be nonzero"));
        }
        let len = a.len() + extended as usize;
        if k == 0 || k > len {
            return Err(Error::pre(format!("dimension k = {k} outside 1..={len}")));
        }
        Ok(GrsCode { field, a, v, k, extended })
    }

    pub fn from_data(data: &CodeData) -> Result<Self> {
        let field = Arc::new(FieldCtx::from_descriptor(&data.field)?);
        Self::new(field, data.a.clone(), data.v.clone(), data.k, data.extended)
    }

    pub fn to_data(&self) -> CodeData {
        CodeData {
            field: self.field.descriptor(),
            a: self.a.clone(),
            v: self.v.clone(),
            k: self.k,
            extended: self.extended,
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.a
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.v
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Number of evaluation points `n`.
    pub fn n_points(&self) -> usize {
        self.a.len()
    }

    /// Code length `N = n + [extended]`.
    pub fn length(&self) -> usize {
        self.a.len() + self.extended as usize
    }

    pub fn u(&self) -> Vec<Elem> {
        compute_u(&self.field, &self.a).expect("points are distinct")
    }

    /// Row `i < k` is `(v_1 a_1^i, ..., v_n a_n^i)`, followed by `[i = k-1]`
    /// when extended.
    pub fn generator_matrix(&self) -> GfMatrix {
        let f = &*self.field;
        let len = self.length();
        let mut g = GfMatrix::zeros(self.field.clone(), self.k, len);
        let mut cur = self.v.clone();
        for i in 0..self.k {
            for (j, &x) in cur.iter().enumerate() {
                g.set(i, j, x);
            }
            for (x, &aj) in cur.iter_mut().zip(&self.a) {
                *x = f.mul(*x, aj);
            }
        }
        if self.extended {
            g.set(self.k - 1, self.a.len(), Elem::ONE);
        }
        g
    }

    /// A parity-check matrix: a basis of the Euclidean dual.
    pub fn parity_check_matrix(&self) -> GfMatrix {
        self.generator_matrix().kernel()
    }

    /// `(v_1 f(a_1), ..., v_n f(a_n)[, f_{k-1}])` for `f = Σ coeffs[i] x^i`.
    pub fn encode(&self, coeffs: &[Elem]) -> Result<Vec<Elem>> {
        if coeffs.len() > self.k {
            return Err(Error::pre(format!("{} message coefficients for dimension {}", coeffs.len(), self.k)));
        }
        let f = &*self.field;
        let poly = Poly::new(coeffs.to_vec());
        let mut c: Vec<Elem> = self.a.iter().zip(&self.v).map(|(&a, &v)| f.mul(v, poly.eval(f, a))).collect();
        if self.extended {
            c.push(poly.coeff(self.k - 1));
        }
        Ok(c)
    }

    /// Membership of `c` in the dual code, straight from the definition.
    pub fn dual_membership(&self, c: &[Elem], kind: InnerProduct) -> Result<bool> {
        if c.len() != self.length() {
            return Err(Error::Shape(format!("word of length {} for a code of length {}", c.len(), self.length())));
        }
        if kind == InnerProduct::Hermitian {
            self.field.sub_order()?;
        }
        let g = self.generator_matrix();
        let ok = g.row_vecs().all(|row| inner_product(&self.field, kind, c, row).is_zero());
        Ok(ok)
    }

    /// Checks a given witness `g` for the dual-membership criterion of the
    /// codeword of `f`:
    ///
    /// * Euclidean: `v_i² f(a_i) = u_i g(a_i)` for all `i`;
    /// * Hermitian: `v_i^{q+1} f(a_i)^q = u_i g(a_i)` for all `i`;
    ///
    /// with `deg g <= n-k-1`, and for extended codes `deg g <= n-k` together
    /// with `f_{k-1} = -g_{n-k}` (`f_{k-1}^q` in the Hermitian case).
    pub fn witness_check(&self, fpoly: &Poly, gpoly: &Poly, kind: InnerProduct) -> Result<bool> {
        let f = &*self.field;
        let n = self.a.len();
        if fpoly.degree().is_some_and(|d| d + 1 > self.k) {
            return Err(Error::pre(format!("deg f exceeds k - 1 = {}", self.k - 1)));
        }
        let g_cap = if self.extended { (n + 1).checked_sub(self.k) } else { n.checked_sub(self.k) };
        if let Some(d) = gpoly.degree() {
            if g_cap.is_none_or(|cap| d + 1 > cap) {
                return Err(Error::pre("deg g exceeds the witness bound".to_string()));
            }
        }
        let sigma = |x: Elem| match kind {
            InnerProduct::Euclidean => x,
            InnerProduct::Hermitian => f.conj(x),
        };
        let weight = |v: Elem| match kind {
            InnerProduct::Euclidean => f.mul(v, v),
            InnerProduct::Hermitian => f.mul(v, f.conj(v)),
        };
        if kind == InnerProduct::Hermitian {
            f.sub_order()?;
        }
        let u = self.u();
        let body = (0..n).all(|i| {
            let lhs = f.mul(weight(self.v[i]), sigma(fpoly.eval(f, self.a[i])));
            let rhs = f.mul(u[i], gpoly.eval(f, self.a[i]));
            lhs == rhs
        });
        if !self.extended {
            return Ok(body);
        }
        let g_top = n.checked_sub(self.k).map_or(Elem::ZERO, |d| gpoly.coeff(d));
        let tail = sigma(fpoly.coeff(self.k - 1)) == f.neg(g_top);
        Ok(body && tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    fn e(xs: &[u32]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem(x)).collect()
    }

    /// Direct product formula, kept separate from `compute_u`.
    fn u_oracle(f: &FieldCtx, a: &[Elem], i: usize) -> Elem {
        let mut denom = Elem::ONE;
        for (j, &aj) in a.iter().enumerate() {
            if j != i {
                denom = f.mul(denom, f.sub(a[i], aj));
            }
        }
        f.elements().find(|&x| f.mul(x, denom) == Elem::ONE).unwrap()
    }

    #[test]
    fn u_examples() {
        let f = gf(5, 1);
        assert_eq!(compute_u(&f, &e(&[0, 1])).unwrap(), e(&[4, 1]));
        let a = e(&[0, 1, 2]);
        let oracle: Vec<Elem> = (0..3).map(|i| u_oracle(&f, &a, i)).collect();
        assert_eq!(oracle, e(&[3, 4, 3]));
        assert_eq!(compute_u(&f, &a).unwrap(), oracle);
        assert!(matches!(compute_u(&f, &e(&[1, 2, 1])), Err(Error::RepeatedPoint(1))));
    }

    #[test]
    fn u_over_whole_field_is_minus_one() {
        for q in [3u64, 4, 5] {
            let f = FieldCtx::quadratic(q).unwrap();
            let all: Vec<Elem> = f.elements().collect();
            let minus_one = f.neg(Elem::ONE);
            assert!(compute_u(&f, &all).unwrap().iter().all(|&u| u == minus_one));
        }
    }

    #[test]
    fn lagrange_identity() {
        let f = gf(3, 3);
        let a = e(&[0, 2, 5, 7, 11, 13, 20]);
        let u = compute_u(&f, &a).unwrap();
        let n = a.len();
        for s in 0..n {
            let total = f.sum(u.iter().zip(&a).map(|(&ui, &ai)| f.mul(ui, f.pow(ai, s as u64))));
            let expected = if s == n - 1 { Elem::ONE } else { Elem::ZERO };
            assert_eq!(total, expected, "s = {s}");
        }
    }

    #[test]
    fn generator_examples() {
        let f = gf(5, 1);
        let c = GrsCode::new(f.clone(), e(&[0, 1, 2]), e(&[1, 1, 1]), 1, false).unwrap();
        assert_eq!(c.generator_matrix().entries(), e(&[1, 1, 1]).as_slice());
        let c = GrsCode::new(f.clone(), e(&[0, 1, 2]), e(&[1, 1, 1]), 1, true).unwrap();
        assert_eq!(c.generator_matrix().entries(), e(&[1, 1, 1, 1]).as_slice());
        let c = GrsCode::new(f.clone(), e(&[0, 1, 2]), e(&[1, 1, 1]), 2, false).unwrap();
        assert_eq!(c.generator_matrix().entries(), e(&[1, 1, 1, 0, 1, 2]).as_slice());
        assert_eq!(c.generator_matrix().rank(), 2);
    }

    #[test]
    fn encode_examples() {
        let f = gf(5, 1);
        let c = GrsCode::new(f.clone(), e(&[0, 1, 2]), e(&[1, 1, 1]), 2, false).unwrap();
        assert_eq!(c.encode(&[]).unwrap(), e(&[0, 0, 0]));
        assert_eq!(c.encode(&e(&[1])).unwrap(), e(&[1, 1, 1]));
        assert_eq!(c.encode(&e(&[0, 1])).unwrap(), e(&[0, 1, 2]));
        assert!(c.encode(&e(&[0, 1, 1])).is_err());
        let x = GrsCode::new(f, e(&[0, 1, 2]), e(&[1, 1, 1]), 2, true).unwrap();
        assert_eq!(x.encode(&e(&[1])).unwrap(), e(&[1, 1, 1, 0]));
        // encoding agrees with the generator matrix
        let msg = e(&[3, 4]);
        assert_eq!(x.encode(&msg).unwrap(), x.generator_matrix().vec_mul(&msg).unwrap());
    }

    #[test]
    fn invalid_codes_rejected() {
        let f = gf(5, 1);
        assert!(GrsCode::new(f.clone(), e(&[0, 0]), e(&[1, 1]), 1, false).is_err());
        assert!(GrsCode::new(f.clone(), e(&[0, 1]), e(&[1, 0]), 1, false).is_err());
        assert!(GrsCode::new(f.clone(), e(&[0, 1]), e(&[1, 1]), 0, false).is_err());
        assert!(GrsCode::new(f.clone(), e(&[0, 1]), e(&[1, 1]), 3, false).is_err());
        assert!(GrsCode::new(f, e(&[0, 9]), e(&[1, 1]), 1, false).is_err());
    }

    #[test]
    fn dual_membership_basics() {
        let f = gf(5, 1);
        let c = GrsCode::new(f.clone(), e(&[0, 1, 2, 3]), e(&[1, 1, 1, 1]), 2, false).unwrap();
        assert!(c.dual_membership(&e(&[0, 0, 0, 0]), InnerProduct::Euclidean).unwrap());
        // <(1,0,0,0), g_0> = 1
        assert!(!c.dual_membership(&e(&[1, 0, 0, 0]), InnerProduct::Euclidean).unwrap());
        assert!(c.dual_membership(&e(&[1, 0]), InnerProduct::Euclidean).is_err());
        // parity checks are dual codewords
        for h in c.parity_check_matrix().row_vecs() {
            assert!(c.dual_membership(h, InnerProduct::Euclidean).unwrap());
        }
        assert!(c.dual_membership(&e(&[0, 0, 0, 0]), InnerProduct::Hermitian).is_err());
    }

    #[test]
    fn witness_for_self_orthogonal_hermitian_code() {
        // points in GF(5) inside GF(25), v_i^{q+1} = u_i: every codeword is a dual
        // codeword with witness g = F (coefficients conjugated)
        let f = Arc::new(FieldCtx::quadratic(5).unwrap());
        let a: Vec<Elem> = f.subfield_elements().unwrap();
        let u = compute_u(&f, &a).unwrap();
        let v: Vec<Elem> = u.iter().map(|&x| f.norm_preimage(x).unwrap()).collect();
        let code = GrsCode::new(f.clone(), a, v, 2, false).unwrap();
        let fpoly = Poly::new(vec![f.exp(7), f.exp(3)]);
        let g = fpoly.conj(&f);
        assert!(code.witness_check(&fpoly, &g, InnerProduct::Hermitian).unwrap());
        assert!(code.dual_membership(&code.encode(fpoly.coeffs()).unwrap(), InnerProduct::Hermitian).unwrap());
        let bad = Poly::new(vec![f.add(g.coeff(0), Elem::ONE), g.coeff(1)]);
        assert!(!code.witness_check(&fpoly, &bad, InnerProduct::Hermitian).unwrap());
        assert!(code.witness_check(&Poly::zero(), &Poly::zero(), InnerProduct::Hermitian).unwrap());
        // degree bound: n - k - 1 = 2
        let too_big = Poly::new(vec![Elem::ONE; 4]);
        assert!(code.witness_check(&fpoly, &too_big, InnerProduct::Hermitian).is_err());
    }

    #[test]
    fn data_round_trip() {
        let f = gf(7, 1);
        let c = GrsCode::new(f, e(&[1, 2, 3, 4]), e(&[1, 3, 5, 6]), 2, true).unwrap();
        let json = serde_json::to_string(&c.to_data()).unwrap();
        let back: CodeData = serde_json::from_str(&json).unwrap();
        assert_eq!(GrsCode::from_data(&back).unwrap(), c);
    }
}

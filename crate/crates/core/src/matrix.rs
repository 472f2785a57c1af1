//! Dense matrices over a [`FieldCtx`] and the exact linear algebra the hull
//! computations need.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Wire form of a matrix: shape and row-major element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

#[derive(Clone)]
pub struct GfMatrix {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for GfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for GfMatrix {}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r).iter().map(|e| e.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn new(field: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| e.0 >= field.order()) {
            return Err(Error::ElementOutOfRange { index: bad.0, order: field.order() });
        }
        Ok(GfMatrix { field, rows, cols, data })
    }

    pub fn zeros(field: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        GfMatrix { field, rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Elem::ONE;
        }
        m
    }

    /// Stacks row vectors of length `cols`.
    pub fn from_rows(field: Arc<FieldCtx>, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn from_data(field: Arc<FieldCtx>, data: &MatrixData) -> Result<Self> {
        Self::new(field, data.rows, data.cols, data.entries.iter().map(|&i| Elem(i)).collect())
    }

    pub fn to_data(&self) -> MatrixData {
        MatrixData { rows: self.rows, cols: self.cols, entries: self.data.iter().map(|e| e.0).collect() }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &*self.field;
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::Shape(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let f = &*self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(r)) {
                *d = f.add(*d, f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Entrywise `x ↦ x^q` (only over GF(q²)).
    pub fn conj(&self) -> Result<Self> {
        self.field.sub_order()?;
        let f = &*self.field;
        Ok(GfMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.conj(x)).collect(),
        })
    }

    /// `M† = (m_ji^q)`.
    pub fn conj_transpose(&self) -> Result<Self> {
        Ok(self.conj()?.transpose())
    }

    pub fn vstack(&self, other: &GfMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("cannot stack {} columns on {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        GfMatrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    /// Canonical reduced row echelon form (pivots 1, zero above and below,
    /// zero rows last) and the pivot columns.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = &*self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        let mut scratch = vec![Elem::ZERO; cols];
        for c in 0..cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if sel != prow {
                for j in c..cols {
                    m.data.swap(sel * cols + j, prow * cols + j);
                }
            }
            let inv = f.inv(m.get(prow, c)).expect("pivot is nonzero");
            for j in c..cols {
                let x = m.get(prow, j);
                m.set(prow, j, f.mul(x, inv));
            }
            scratch[c..].copy_from_slice(&m.data[prow * cols + c..(prow + 1) * cols]);
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                let row = &mut m.data[r * cols + c..(r + 1) * cols];
                for (d, &s) in row.iter_mut().zip(&scratch[c..]) {
                    if !s.is_zero() {
                        *d = f.add(*d, f.mul(neg, s));
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> GfMatrix {
        let (mut r, pivots) = self.rref();
        r.rows = pivots.len();
        r.data.truncate(r.rows * r.cols);
        r
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`, one vector
    /// per free column with a 1 there.
    pub fn kernel(&self) -> GfMatrix {
        let f = &*self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = GfMatrix::zeros(self.field.clone(), free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            k.set(i, fc, Elem::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                k.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        k
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &[Elem]) -> Result<bool> {
        let stacked = self.vstack(&GfMatrix::from_rows(self.field.clone(), self.cols, &[v.to_vec()])?)?;
        Ok(stacked.rank() == self.rank())
    }

    /// `dim(rowspace(A) ∩ rowspace(B)) = rank A + rank B − rank [A; B]`.
    pub fn rowspace_intersection_dim(&self, other: &GfMatrix) -> Result<usize> {
        let stacked = self.vstack(other)?;
        Ok(self.rank() + other.rank() - stacked.rank())
    }

    /// Canonical (RREF) basis of `rowspace(A) ∩ rowspace(B)`.
    pub fn rowspace_intersection(&self, other: &GfMatrix) -> Result<GfMatrix> {
        let a = self.row_space_basis();
        let b = other.row_space_basis();
        let stacked = a.vstack(&b)?;
        // (y, z) with y A + z B = 0 gives y A = -z B in both spaces
        let left = stacked.transpose().kernel();
        let ya = left.select_columns(&(0..a.rows).collect::<Vec<_>>());
        if ya.rows == 0 {
            return Ok(GfMatrix::zeros(self.field.clone(), 0, self.cols));
        }
        Ok(ya.mul(&a)?.row_space_basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, 1).unwrap())
    }

    fn mat(f: &Arc<FieldCtx>, rows: &[&[u32]]) -> GfMatrix {
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect();
        GfMatrix::from_rows(f.clone(), rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(5);
        let id = GfMatrix::identity(f.clone(), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = GfMatrix::zeros(f.clone(), 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        assert_eq!(mat(&f, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(5);
        assert_eq!(GfMatrix::identity(f.clone(), 3).kernel().rows(), 0);
        assert_eq!(GfMatrix::zeros(f.clone(), 2, 4).kernel().rows(), 4);
        // enumerate all 25 vectors of GF(5)^2 orthogonal to (1, 2)
        let m = mat(&f, &[&[1, 2]]);
        let sols: Vec<(u32, u32)> = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| (a + 2 * b) % 5 == 0 && (a, b) != (0, 0))
            .collect();
        assert_eq!(sols.len(), 4);
        let k = m.kernel();
        assert_eq!(k.to_data().entries, vec![3, 1]);
        assert!(sols.contains(&(3, 1)));
    }

    #[test]
    fn rref_is_idempotent_and_rank_transpose_invariant() {
        let f = Arc::new(FieldCtx::new(3, 2).unwrap());
        let m = mat(&f, &[&[1, 2, 3, 4], &[5, 6, 7, 8], &[0, 1, 0, 1]]);
        let (r, _) = m.rref();
        assert_eq!(r.rref().0, r);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn intersection_examples() {
        let f = gf(7);
        let a = mat(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(a.rowspace_intersection_dim(&a).unwrap(), 2);
        let b = mat(&f, &[&[0, 0, 1]]);
        assert_eq!(a.rowspace_intersection_dim(&b).unwrap(), 0);
        let c = mat(&f, &[&[1, 1, 0], &[0, 0, 1]]);
        let basis = a.rowspace_intersection(&c).unwrap();
        assert_eq!(basis.to_data().entries, vec![1, 1, 0]);
        assert!(a.rowspace_intersection_dim(&GfMatrix::zeros(f, 1, 4)).is_err());
    }
}

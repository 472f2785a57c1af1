//! Brute-force checks that share no code path with the fast algorithms:
//! codeword enumeration and determinant minors.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::grs::GrsCode;
use crate::hull::{inner_product, InnerProduct};
use crate::matrix::GfMatrix;

pub const BUDGET_ENV: &str = "HULLFORGE_BUDGET";

/// Size limits for the brute-force checks.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest codebook `Q^k` for minimum-distance enumeration.
    pub enumeration: u128,
    /// Largest length `N` for the minor check.
    pub minor_length: usize,
    /// Largest codebook `Q^k` for hull enumeration.
    pub hull: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { enumeration: 100_000, minor_length: 14, hull: 10_000 }
    }
}

impl Budget {
    /// Parses `enum=N,minor=N,hull=N` (any subset) or a bare integer, which
    /// sets the enumeration budget.
    pub fn parse(s: &str) -> Result<Budget> {
        let mut b = Budget::default();
        let s = s.trim();
        if let Ok(n) = s.parse::<u128>() {
            b.enumeration = n;
            return Ok(b);
        }
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) =
                part.split_once('=').ok_or_else(|| Error::pre(format!("budget entry {part:?} is not key=value")))?;
            let val: u128 = val.trim().parse().map_err(|_| Error::pre(format!("bad budget value {val:?}")))?;
            match key.trim() {
                "enum" | "enumeration" => b.enumeration = val,
                "minor" | "minors" => b.minor_length = val as usize,
                "hull" => b.hull = val,
                other => return Err(Error::pre(format!("unknown budget key {other:?}"))),
            }
        }
        Ok(b)
    }

    /// Defaults, overridden by the environment variable if it is set.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }
}

fn codebook_size(code: &GrsCode) -> u128 {
    (code.field().order() as u128).saturating_pow(code.dimension() as u32)
}

/// Calls `visit` on every message vector in `F^k`, last coordinate fastest.
fn for_each_message(order: u32, k: usize, mut visit: impl FnMut(&[Elem])) {
    let mut m = vec![Elem::ZERO; k];
    loop {
        visit(&m);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            m[i].0 += 1;
            if m[i].0 < order {
                break;
            }
            m[i] = Elem::ZERO;
        }
    }
}

/// Minimum Hamming weight over nonzero codewords, by enumeration.
///
/// Only messages whose first nonzero entry is 1 are visited, since scaling
/// does not change the weight.
pub fn min_distance_enum(code: &GrsCode, budget: &Budget) -> Result<usize> {
    let size = codebook_size(code);
    if size > budget.enumeration {
        return Err(Error::BudgetExceeded { what: "codeword enumeration", needed: size, budget: budget.enumeration });
    }
    let f = code.field();
    let g = code.generator_matrix();
    let k = code.dimension();
    let n = code.length();
    let mut best = n;
    for lead in 0..k {
        let rest = k - lead - 1;
        for_each_message(f.order(), rest, |tail| {
            let mut word: Vec<Elem> = g.row(lead).to_vec();
            for (j, &c) in tail.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let row = g.row(lead + 1 + j);
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(c, x));
                }
            }
            let wt = word.iter().filter(|x| !x.is_zero()).count();
            best = best.min(wt);
        });
    }
    Ok(best)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Determinant by cofactor-free Gaussian elimination on a copy.
fn det_is_nonzero(m: &GfMatrix) -> bool {
    let f = m.field().clone();
    let n = m.rows();
    let mut a: Vec<Vec<Elem>> = m.row_vecs().map(|r| r.to_vec()).collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, p);
        let inv = f.inv(a[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(a[r][col], inv);
            let (top, bottom) = a.split_at_mut(r);
            for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
    }
    true
}

/// True iff every `k × k` minor of the generator matrix is nonzero.
pub fn mds_minor_check(code: &GrsCode, budget: &Budget) -> Result<bool> {
    let g = code.generator_matrix();
    mds_minor_check_matrix(&g, budget)
}

pub fn mds_minor_check_matrix(g: &GfMatrix, budget: &Budget) -> Result<bool> {
    let n = g.cols();
    let k = g.rows();
    if n > budget.minor_length {
        return Err(Error::BudgetExceeded {
            what: "minor check",
            needed: n as u128,
            budget: budget.minor_length as u128,
        });
    }
    if k > n {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !det_is_nonzero(&g.select_columns(&idx)) {
            return Ok(false);
        }
        if !next_combination(&mut idx, n) {
            return Ok(true);
        }
    }
}

/// Hull dimension by counting the codewords orthogonal to every generator row.
pub fn hull_enum(code: &GrsCode, kind: InnerProduct, budget: &Budget) -> Result<usize> {
    let size = codebook_size(code);
    if size > budget.hull {
        return Err(Error::BudgetExceeded { what: "hull enumeration", needed: size, budget: budget.hull });
    }
    let f = code.field();
    if kind == InnerProduct::Hermitian {
        f.sub_order()?;
    }
    let g = code.generator_matrix();
    let mut count: u128 = 0;
    for_each_message(f.order(), code.dimension(), |m| {
        let word = g.vec_mul(m).expect("message has k entries");
        if g.row_vecs().all(|row| inner_product(f, kind, &word, row).is_zero()) {
            count += 1;
        }
    });
    let order = f.order() as u128;
    let mut dim = 0;
    let mut acc = 1u128;
    while acc < count {
        acc *= order;
        dim += 1;
    }
    if acc != count {
        return Err(Error::Invariant(format!("{count} hull codewords is not a power of {order}")));
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use std::sync::Arc;

    fn gf5_code(n: usize, k: usize, extended: bool) -> GrsCode {
        let f = Arc::new(FieldCtx::new(5, 1).unwrap());
        let a = (0..n as u32).map(Elem).collect();
        GrsCode::new(f, a, vec![Elem::ONE; n], k, extended).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        let b = Budget::default();
        assert_eq!(min_distance_enum(&gf5_code(4, 1, false), &b).unwrap(), 4);
        assert_eq!(min_distance_enum(&gf5_code(4, 2, false), &b).unwrap(), 3);
        assert_eq!(min_distance_enum(&gf5_code(4, 2, true), &b).unwrap(), 4);
    }

    #[test]
    fn minor_examples() {
        let b = Budget::default();
        assert!(mds_minor_check(&gf5_code(5, 2, true), &b).unwrap());
        let f = Arc::new(FieldCtx::new(5, 1).unwrap());
        let rows = vec![vec![Elem(1), Elem(1), Elem(2)], vec![Elem(3), Elem(3), Elem(1)]];
        let g = GfMatrix::from_rows(f, 3, &rows).unwrap();
        assert!(!mds_minor_check_matrix(&g, &b).unwrap());
    }

    #[test]
    fn budgets() {
        let tight = Budget { enumeration: 10, minor_length: 3, hull: 10 };
        let c = gf5_code(4, 2, false);
        assert!(matches!(min_distance_enum(&c, &tight), Err(Error::BudgetExceeded { needed: 25, .. })));
        assert!(matches!(mds_minor_check(&c, &tight), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(hull_enum(&c, InnerProduct::Euclidean, &tight), Err(Error::BudgetExceeded { .. })));
        assert_eq!(Budget::parse("7").unwrap().enumeration, 7);
        let b = Budget::parse("enum=5, minor=9,hull=3").unwrap();
        assert_eq!(b, Budget { enumeration: 5, minor_length: 9, hull: 3 });
        assert!(Budget::parse("speed=1").is_err());
    }

    #[test]
    fn hull_counts() {
        use crate::construct::{construct, ConstructionSpec, Theorem};
        let b = Budget::default();
        for ell in 0..=2 {
            let c = construct(&ConstructionSpec::with_n(Theorem::T3_5, 5, 5, 2, ell)).unwrap();
            assert_eq!(hull_enum(&c.code, InnerProduct::Hermitian, &b).unwrap(), ell);
        }
    }
}

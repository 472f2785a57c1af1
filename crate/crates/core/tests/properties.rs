use std::sync::Arc;

use hullforge::eaqecc::ebit_checks;
use hullforge::hull::{certify_matrix, dual_generator};
use hullforge::oracle::{hull_enum, min_distance_enum};
use hullforge::{certify, Budget, Elem, FieldCtx, GfMatrix, GrsCode, InnerProduct};
use proptest::prelude::*;
use proptest::sample::subsequence;

const FIELDS: [(u32, u32); 6] = [(2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (13, 1)];

fn field(i: usize) -> Arc<FieldCtx> {
    let (p, m) = FIELDS[i];
    Arc::new(FieldCtx::new(p, m).unwrap())
}

fn random_matrix(f: &Arc<FieldCtx>, rows: usize, cols: usize, seed: &[u32]) -> GfMatrix {
    let data = (0..rows * cols).map(|i| Elem(seed[i % seed.len()].wrapping_mul(i as u32 + 7) % f.order())).collect();
    GfMatrix::new(f.clone(), rows, cols, data).unwrap()
}

/// Random GRS code: distinct points from `pick`, multipliers from `mult`.
fn random_code(f: Arc<FieldCtx>, pick: Vec<u32>, mult: &[u32], k: usize, extended: bool) -> GrsCode {
    let n = pick.len();
    let a = pick.into_iter().map(Elem).collect();
    let v = (0..n).map(|i| Elem(1 + mult[i % mult.len()] % (f.order() - 1))).collect();
    let k = k.clamp(1, n);
    GrsCode::new(f, a, v, k, extended).unwrap()
}

fn code_strategy(fields: &'static [usize]) -> impl Strategy<Value = GrsCode> {
    proptest::sample::select(fields).prop_flat_map(|fi| {
        let f = field(fi);
        let order = f.order();
        (
            subsequence((0..order).collect::<Vec<_>>(), 2..=(order as usize).min(12)),
            prop::collection::vec(any::<u32>(), 1..8),
            1usize..7,
            any::<bool>(),
        )
            .prop_map(move |(pick, mult, k, ext)| random_code(f.clone(), pick, &mult, k, ext))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(fi in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(fi);
        let (a, b, c) = (Elem(a % f.order()), Elem(b % f.order()), Elem(c % f.order()));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), Elem::ONE);
        }
        if f.sub_order().is_ok() {
            prop_assert_eq!(f.conj(f.conj(a)), a);
            prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
        }
    }

    #[test]
    fn kernel_and_rank(fi in 0..FIELDS.len(), rows in 1usize..7, cols in 1usize..9, seed in prop::collection::vec(any::<u32>(), 1..6)) {
        let f = field(fi);
        let m = random_matrix(&f, rows, cols, &seed);
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        let ker = m.kernel();
        prop_assert_eq!(ker.rows(), cols - r);
        if ker.rows() > 0 {
            prop_assert!(m.mul(&ker.transpose()).unwrap().is_zero());
        }
        let (e, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), r);
        prop_assert_eq!(e.rref().0, e);
    }

    #[test]
    fn euclidean_hull_methods_agree(code in code_strategy(&[0, 1, 2, 3, 4, 5])) {
        let cert = certify(&code, InnerProduct::Euclidean, None).unwrap();
        let (k, n) = (code.dimension(), code.length());
        prop_assert!(cert.dim() <= k.min(n - k));
        let dual = dual_generator(&code.generator_matrix(), InnerProduct::Euclidean).unwrap();
        if dual.rows() > 0 {
            prop_assert_eq!(certify_matrix(&dual, InnerProduct::Euclidean, None).unwrap().dim(), cert.dim());
        }
    }

    #[test]
    fn hermitian_hull_methods_agree(code in code_strategy(&[0, 1, 3, 4])) {
        let cert = certify(&code, InnerProduct::Hermitian, None).unwrap();
        let (k, n) = (code.dimension(), code.length());
        prop_assert!(cert.dim() <= k.min(n - k));
        let dual = dual_generator(&code.generator_matrix(), InnerProduct::Hermitian).unwrap();
        if dual.rows() > 0 {
            prop_assert_eq!(certify_matrix(&dual, InnerProduct::Hermitian, None).unwrap().dim(), cert.dim());
        }
        if 2 * k <= n {
            let checks = ebit_checks(&code, &cert).unwrap();
            prop_assert!(checks.agree(), "{:?}", checks);
            prop_assert_eq!(checks.from_hull, k - cert.dim());
        }
    }

    #[test]
    fn small_codes_match_enumeration(code in code_strategy(&[1, 3])) {
        let budget = Budget::default();
        let (k, n) = (code.dimension(), code.length());
        if let Ok(d) = min_distance_enum(&code, &budget) {
            prop_assert_eq!(d, n - k + 1);
        }
        for kind in [InnerProduct::Euclidean, InnerProduct::Hermitian] {
            if let Ok(h) = hull_enum(&code, kind, &budget) {
                prop_assert_eq!(h, certify(&code, kind, None).unwrap().dim());
            }
        }
    }
}

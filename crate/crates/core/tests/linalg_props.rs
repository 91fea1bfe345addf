use num_traits::{One, Zero};
use proptest::prelude::*;
use wexc::catalog::{catalog_get, Params};
use wexc::linalg::echelon::{rref, rref_fraction_free};
use wexc::linalg::{eigenspace, kernel};
use wexc::{CycMatrix, CycSubspace, Cyclotomic};

fn entry() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u32, 3, 4, 5]), 0i64..8, -3i64..=3, -2i64..=2).prop_map(|(n, k, a, b)| {
        Cyclotomic::from_integer(a) * Cyclotomic::root_of_unity(n, k) + Cyclotomic::from_integer(b)
    })
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = CycMatrix> {
    prop::collection::vec(entry(), r * c).prop_map(move |e| CycMatrix::new(r, c, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eliminations_agree(m in matrix(3, 5), dup in 0usize..3) {
        let mut rows = m.row_vecs();
        let copy: Vec<Cyclotomic> = rows[dup].iter().map(|x| x * &Cyclotomic::from_integer(2)).collect();
        rows.push(copy);
        let (a, pa) = rref(rows.clone(), 5);
        let (b, pb) = rref_fraction_free(rows, 5);
        prop_assert_eq!(pa, pb);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(3, 3)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_identity());
        prop_assert!((&inv * &a).is_identity());
    }

    #[test]
    fn kernel_is_annihilated_and_rank_nullity_holds(m in matrix(3, 4)) {
        let k = kernel(&m);
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(k.dim() + wexc::linalg::rank(&m), 4);
    }
}

#[test]
fn eigenspaces_for_distinct_eigenvalues_meet_trivially() {
    for name in ["sl3/G648", "sl3/K168", "sl4/eg-prim", "sl4/S5-cubic"] {
        let g = catalog_get(name, &Params::new()).unwrap();
        for m in g.elements().iter().step_by(7).take(40) {
            let order = g.element_order(g.index_of(m).unwrap()) as i64;
            let spaces: Vec<(i64, CycSubspace)> = (0..order)
                .map(|k| (k, eigenspace(m, &Cyclotomic::root_of_unity(order as u32, k)).unwrap()))
                .filter(|(_, s)| !s.is_zero())
                .collect();
            let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
            assert_eq!(total, g.dim(), "{name}: finite-order elements are diagonalizable");
            for (i, (_, a)) in spaces.iter().enumerate() {
                for (_, b) in &spaces[i + 1..] {
                    assert!(a.intersect(b).unwrap().is_zero(), "{name}");
                }
            }
        }
    }
}

#[test]
fn identity_determinant_and_scalars() {
    let i = CycMatrix::identity(4);
    assert_eq!(i.determinant().unwrap(), Cyclotomic::one());
    let w = CycMatrix::scalar(3, Cyclotomic::root_of_unity(3, 1));
    assert_eq!(w.determinant().unwrap(), Cyclotomic::one());
    assert_eq!(w.as_scalar(), Some(Cyclotomic::root_of_unity(3, 1)));
}

use num_bigint::BigInt;
use proptest::prelude::*;

use hochtrace::linalg::{is_inverse_pair, smith_normal_form, ChainComplex, FPAbelianGroup, HomologyStructure, Matrix, SparseMatrix};
use hochtrace::ring::{Integers, ModRing, Ring};

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn to_matrix<R: Ring>(ring: &R, rows: &[Vec<i64>]) -> Matrix<R::Elem> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect()).unwrap()
}

fn check_snf<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<(), TestCaseError> {
    let f = smith_normal_form(ring, m).unwrap();
    let (u, u_inv, v, v_inv) = (f.u.clone().unwrap(), f.u_inv.clone().unwrap(), f.v.clone().unwrap(), f.v_inv.clone().unwrap());
    prop_assert!(is_inverse_pair(ring, &u, &u_inv));
    prop_assert!(is_inverse_pair(ring, &v, &v_inv));
    prop_assert_eq!(&u.mul(ring, m).unwrap().mul(ring, &v).unwrap(), &f.s);
    for i in 0..f.s.rows() {
        for j in 0..f.s.cols() {
            prop_assert!(i == j || ring.is_zero(f.s.get(i, j)));
        }
    }
    let d = f.invariant_factors();
    prop_assert_eq!(d.len(), f.rank);
    for (i, x) in d.iter().enumerate() {
        prop_assert!(!ring.is_zero(x));
        prop_assert!(ring.is_one(&ring.normalizing_unit(x)), "{:?} is not a canonical associate", x);
        if let Some(y) = d.get(i + 1) {
            prop_assert!(ring.exact_div(y, x).is_some(), "{:?} does not divide {:?}", x, y);
        }
    }
    for i in f.rank..f.s.rows().min(f.s.cols()) {
        prop_assert!(ring.is_zero(f.s.get(i, i)));
    }
    Ok(())
}

/// `0 -> R^c --m--> R^r -> 0`, padded with a zero module in degree 2 so `H_1` is defined.
fn two_term<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> ChainComplex<R> {
    let d = SparseMatrix::from_dense(ring, m);
    ChainComplex::new(ring.clone(), vec![m.rows(), m.cols(), 0], vec![d, SparseMatrix::zero(m.cols(), 0)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_over_integers(rows in int_matrix(5, 6)) {
        check_snf(&Integers, &to_matrix(&Integers, &rows))?;
    }

    #[test]
    fn smith_form_over_residue_rings(rows in int_matrix(4, 5), m in prop::sample::select(vec![2u64, 5, 4, 8, 9])) {
        let ring = ModRing::new(m).unwrap();
        check_snf(&ring, &to_matrix(&ring, &rows))?;
    }

    #[test]
    fn smith_form_is_deterministic(rows in int_matrix(4, 4)) {
        let m = to_matrix(&Integers, &rows);
        let a = smith_normal_form(&Integers, &m).unwrap();
        let b = smith_normal_form(&Integers, &m).unwrap();
        prop_assert_eq!(a.u, b.u);
        prop_assert_eq!(a.v, b.v);
    }

    #[test]
    fn cokernel_and_kernel_of_an_integer_matrix(rows in int_matrix(4, 5)) {
        let m = to_matrix(&Integers, &rows);
        let f = smith_normal_form(&Integers, &m).unwrap();
        let c = two_term(&Integers, &m);
        let mut orders: Vec<BigInt> = f.invariant_factors();
        orders.extend(std::iter::repeat(BigInt::from(0)).take(m.rows() - f.rank));
        let expected = FPAbelianGroup::from_cyclic_orders(&orders);
        prop_assert_eq!(c.homology(0).unwrap().structure(), HomologyStructure::Abelian(expected));
        prop_assert_eq!(c.homology(1).unwrap().structure(), HomologyStructure::Abelian(FPAbelianGroup::free(m.cols() - f.rank)));
    }

    #[test]
    fn redundant_relations_do_not_change_homology(rows in int_matrix(4, 4), k in 1i64..4) {
        // Appending k times each column must present the same cokernel.
        let m = to_matrix(&Integers, &rows);
        let doubled: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().copied().chain(r.iter().map(|x| k * x)).collect()).collect();
        let a = two_term(&Integers, &m).homology(0).unwrap().structure();
        let b = two_term(&Integers, &to_matrix(&Integers, &doubled)).homology(0).unwrap().structure();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn coordinates_of_representatives_and_boundaries(rows in int_matrix(4, 5), x in prop::collection::vec(-5i64..=5, 5)) {
        let m = to_matrix(&Integers, &rows);
        let h = two_term(&Integers, &m).homology(0).unwrap();
        for (k, z) in h.representatives().iter().enumerate() {
            let mut unit = vec![BigInt::from(0); h.num_generators()];
            unit[k] = BigInt::from(1);
            let expected: Vec<BigInt> = unit.iter().zip(h.orders()).map(|(u, d)| Integers.reduce_mod(u, d)).collect();
            prop_assert_eq!(h.coordinates(z).unwrap(), expected);
        }
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let boundary = m.mul_vec(&Integers, &x).unwrap();
        let sparse: Vec<(usize, BigInt)> = boundary.into_iter().enumerate().filter(|(_, v)| *v != BigInt::from(0)).collect();
        prop_assert!(h.is_boundary(&sparse).unwrap());
    }

    #[test]
    fn abelian_groups_round_trip_through_json(free in 0usize..4, orders in prop::collection::vec(2u32..50, 0..4)) {
        let orders: Vec<BigInt> = orders.into_iter().map(BigInt::from).chain(std::iter::repeat(BigInt::from(0)).take(free)).collect();
        let g = FPAbelianGroup::from_cyclic_orders(&orders);
        prop_assert!(g.is_canonical());
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<FPAbelianGroup>(&text).unwrap(), g);
    }
}

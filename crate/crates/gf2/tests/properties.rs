use cosimp_gf2::{BitMatrix, BitVec, ColumnReduction, QuotientPresentation, SpMat, SparseVec, Subspace};
use proptest::prelude::*;

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let rows = bits.chunks(c).map(BitVec::from_bools).collect();
            BitMatrix::from_rows(c, rows)
        })
    })
}

fn bits(n: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| BitVec::from_bools(&b))
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(8, 10)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for b in k.basis() {
            prop_assert!(m.mul_vec(b).is_zero());
        }
    }

    #[test]
    fn rank_of_transpose(m in matrix(7, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_is_exact(m in matrix(6, 8), seed in bits(8)) {
        let b = m.mul_vec(&seed.slice(0, m.cols()));
        let x = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn solve_reports_inconsistency(m in matrix(6, 4), b in bits(6)) {
        let b = b.slice(0, m.rows());
        let in_image = m.column_space().contains(&b);
        prop_assert_eq!(m.solve(&b).is_some(), in_image);
    }

    #[test]
    fn quotient_reduce_separates_cosets(
        gens in proptest::collection::vec(bits(6), 0..4),
        v1 in bits(6),
        v2 in bits(6),
    ) {
        let amb = Subspace::full(6);
        let modulus = Subspace::from_spanning(6, gens);
        let q = QuotientPresentation::new(amb, modulus.clone()).unwrap();
        let r1 = q.reduce(&v1).unwrap();
        let r2 = q.reduce(&v2).unwrap();
        let mut sum = v1.clone();
        sum.xor_assign(&v2);
        prop_assert_eq!(r1 == r2, modulus.contains(&sum));
        prop_assert_eq!(q.reduce(&r1).unwrap(), r1.clone());
        let mut rs = r1.clone();
        rs.xor_assign(&r2);
        prop_assert_eq!(q.reduce(&sum).unwrap(), rs);
        prop_assert_eq!(q.dim() + modulus.dim(), 6);
    }

    #[test]
    fn sparse_reduction_matches_dense(m in matrix(9, 9)) {
        let sp = SpMat::from_dense(&m);
        let red = ColumnReduction::new(&sp);
        prop_assert_eq!(red.rank(), m.rank());
        for k in red.kernel() {
            prop_assert!(sp.mul_vec(&k).is_zero());
        }
        for j in 0..m.cols() {
            let b = sp.col(j).clone();
            let x = red.solve(&b).unwrap();
            prop_assert_eq!(sp.mul_vec(&x), b);
        }
    }

    #[test]
    fn sparse_product_matches_dense(a in matrix(5, 6), b in matrix(6, 4)) {
        let a = BitMatrix::from_rows(a.cols(), (0..a.rows()).map(|i| a.row(i).clone()).collect());
        let b = BitMatrix::from_rows(
            b.cols(),
            (0..a.cols()).map(|i| if i < b.rows() { b.row(i).clone() } else { BitVec::zeros(b.cols()) }).collect(),
        );
        let p = SpMat::from_dense(&a).compose(&SpMat::from_dense(&b));
        prop_assert_eq!(p.to_dense(), a.mul(&b));
    }
}

#[test]
fn random_six_by_eight_kernel() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let rows = (0..6)
            .map(|_| BitVec::from_bools(&(0..8).map(|_| rng.gen::<bool>()).collect::<Vec<_>>()))
            .collect();
        let m = BitMatrix::from_rows(8, rows);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 8 - m.rank());
        assert!(k.basis().iter().all(|b| m.mul_vec(b).is_zero()));
    }
}

#[test]
fn sparse_from_indices_cancels_pairs() {
    assert_eq!(SparseVec::from_indices([4, 1, 4, 2, 1, 1]), SparseVec::from_indices([1, 2]));
}

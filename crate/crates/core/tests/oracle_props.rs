use dqdet::matrix::random_hermitian;
use dqdet::oracle::{brute_det, cofactor_det, complex_adjoint, standard_spectrum, BruteDef};
use dqdet::permutation::KyrcheiMode;
use dqdet::scalar::dq_rel_err;
use dqdet::{chen_det, hermitian_eig, kyrchei_det, moore_det, DQMatrix, DualQuaternion};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn brute_force_matches_the_determinant_module(n in 1usize..=5, seed in any::<u64>()) {
        let a = random_hermitian(n, seed, 1.0);
        prop_assert!(dq_rel_err(brute_det(&a, BruteDef::Moore).unwrap(), moore_det(&a).unwrap().value) < 1e-10);
        prop_assert!(dq_rel_err(brute_det(&a, BruteDef::Chen).unwrap(), chen_det(&a).unwrap().value) < 1e-10);
        for k in 1..=n {
            let row = kyrchei_det(&a, KyrcheiMode::Row, k).unwrap().value;
            let col = kyrchei_det(&a, KyrcheiMode::Column, k).unwrap().value;
            prop_assert!(dq_rel_err(brute_det(&a, BruteDef::KyrcheiRow(k)).unwrap(), row) < 1e-10);
            prop_assert!(dq_rel_err(brute_det(&a, BruteDef::KyrcheiColumn(k)).unwrap(), col) < 1e-10);
        }
    }

    #[test]
    fn brute_force_matches_on_general_matrices(n in 1usize..=4, seed in any::<u64>()) {
        // Hermitian symmetry hides ordering mistakes; general input does not
        let h = random_hermitian(n, seed, 1.0);
        let g = random_hermitian(n, seed ^ 1, 1.0);
        let a = &h * &g;
        prop_assert!(dq_rel_err(brute_det(&a, BruteDef::Moore).unwrap(), moore_det(&a).unwrap().value) < 1e-10);
        prop_assert!(dq_rel_err(brute_det(&a, BruteDef::Chen).unwrap(), chen_det(&a).unwrap().value) < 1e-10);
        for k in 1..=n {
            let row = kyrchei_det(&a, KyrcheiMode::Row, k).unwrap().value;
            let col = kyrchei_det(&a, KyrcheiMode::Column, k).unwrap().value;
            prop_assert!(dq_rel_err(brute_det(&a, BruteDef::KyrcheiRow(k)).unwrap(), row) < 1e-10);
            prop_assert!(dq_rel_err(brute_det(&a, BruteDef::KyrcheiColumn(k)).unwrap(), col) < 1e-10);
        }
    }

    #[test]
    fn adjoint_spectrum_pairs_and_matches(n in 1usize..=5, seed in any::<u64>()) {
        let a = random_hermitian(n, seed, 1.0);
        let h = complex_adjoint(&a.std_part()).unwrap();
        prop_assert!(h.is_hermitian(1e-12));
        let (values, pairing) = standard_spectrum(&a).unwrap();
        prop_assert!(pairing < 1e-8);
        let ours = hermitian_eig(&a, false).unwrap().eigenvalues;
        for (l, o) in ours.iter().zip(&values) {
            prop_assert!((l.s - o).abs() < 1e-8);
        }
    }

    #[test]
    fn adjoint_is_multiplicative(seed in any::<u64>()) {
        let a = random_hermitian(3, seed, 1.0).std_part();
        let b = (&random_hermitian(3, seed ^ 1, 1.0) * &a).std_part();
        let lhs = complex_adjoint(&(&a * &b)).unwrap();
        let rhs = complex_adjoint(&a).unwrap().matmul(&complex_adjoint(&b).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn real_symmetric_matrices_have_ordinary_determinants(n in 1usize..=6, entries in prop::collection::vec(-2.0f64..2.0, 36)) {
        let m: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| entries[i.min(j) * 6 + i.max(j)]).collect())
            .collect();
        let a = DQMatrix::from_fn(n, n, |i, j| DualQuaternion::real(m[i][j]));
        let got = moore_det(&a).unwrap().value;
        prop_assert!(dq_rel_err(got, DualQuaternion::real(cofactor_det(&m))) < 1e-9);
    }
}

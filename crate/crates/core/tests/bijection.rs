use magoglab::bijection::{column_partial_sums, magog_triangle_to_matrix, matrix_to_magog_triangle};
use magoglab::enumerate::{magog_matrices, magog_triangles};
use magoglab::validate::{classify, validate_magog};
use magoglab::{MagogTriangle, SignMatrix};
use proptest::prelude::*;

// Reads the one positions of each partial-sum row directly.
fn triangle_by_hand(m: &SignMatrix) -> Vec<Vec<i64>> {
    let n = m.order();
    let mut sums = vec![0i64; n];
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            sums[j] += m.get(i, j) as i64;
        }
        rows.push((0..n).filter(|&j| sums[j] == 1).map(|j| j as i64 + 1).collect());
    }
    rows
}

#[test]
fn worked_example_bit_exact() {
    let a = SignMatrix::from_rows(&[[0, 0, 0, 1], [0, 1, 1, -1], [1, 0, 0, 0], [0, 0, 0, 1]]).unwrap();
    assert!(validate_magog(&a).is_valid());
    assert_eq!(
        column_partial_sums(&a).unwrap().to_rows(),
        vec![vec![0, 0, 0, 1], vec![0, 1, 1, 0], vec![1, 1, 1, 0], vec![1, 1, 1, 1]]
    );
    let t = matrix_to_magog_triangle(&a).unwrap();
    assert_eq!(t.to_rows(), vec![vec![4], vec![2, 3], vec![1, 2, 3], vec![1, 2, 3, 4]]);
    assert_eq!(magog_triangle_to_matrix(&t), a);
}

#[test]
fn round_trip_exhaustive_up_to_five() {
    for n in 1..=5 {
        let matrices: Vec<SignMatrix> = magog_matrices(n).unwrap().collect();
        let triangles: Vec<MagogTriangle> = magog_triangles(n).unwrap().collect();
        assert_eq!(matrices.len(), triangles.len());
        for m in &matrices {
            let t = matrix_to_magog_triangle(m).unwrap();
            assert_eq!(t.to_rows(), triangle_by_hand(m));
            assert_eq!(&magog_triangle_to_matrix(&t), m);
        }
        for t in &triangles {
            let m = magog_triangle_to_matrix(t);
            assert!(classify(&m).magog);
            assert_eq!(&matrix_to_magog_triangle(&m).unwrap(), t);
        }
    }
}

fn order_and_index() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=6).prop_flat_map(|n| {
        let total: usize = [1, 2, 7, 42, 429, 7436][n - 1];
        (Just(n), 0..total)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_inverts_on_random_triangles((n, k) in order_and_index()) {
        let t = magog_triangles(n).unwrap().nth(k).unwrap();
        let m = magog_triangle_to_matrix(&t);
        prop_assert!(validate_magog(&m).is_valid());
        prop_assert_eq!(matrix_to_magog_triangle(&m).unwrap(), t);
    }
}

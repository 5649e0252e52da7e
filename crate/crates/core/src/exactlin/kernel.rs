use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;

/// Basis of `{x : a * x = 0}` read off the reduced row echelon form: one
/// vector per free column, in increasing column order, with a 1 in that
/// column.
pub fn rational_kernel(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let (r, pivots) = a.rref();
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![BigRational::zero(); cols];
            x[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, free)].clone();
            }
            x
        })
        .collect()
}

/// Dimension of the affine hull of a point set; `-1` for no points.
pub fn affine_dim(points: &[Vec<BigRational>]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| {
            assert_eq!(p.len(), first.len(), "points of different lengths");
            p.iter().zip(first).map(|(x, y)| x - y).collect()
        })
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    RatMatrix::from_rows_with_cols(&diffs, first.len()).rank() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntMatrix;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn check_kernel(a: &RatMatrix, basis: &[Vec<BigRational>]) {
        for b in basis {
            assert!(a.mul_vec(b).iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            assert_eq!(RatMatrix::from_rows(basis).rank(), basis.len());
        }
        assert_eq!(basis.len() + a.rank(), a.cols());
    }

    #[test]
    fn injective_map_has_empty_kernel() {
        let a = RatMatrix::identity(3);
        let k = rational_kernel(&a);
        assert!(k.is_empty());
    }

    #[test]
    fn one_by_two() {
        let a = IntMatrix::from_rows(&[vec![1, -1]]).to_rational();
        let k = rational_kernel(&a);
        assert_eq!(k, vec![qv(&[1, 1])]);
        check_kernel(&a, &k);
    }

    #[test]
    fn projective_plane_ray_matrix() {
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).to_rational();
        let k = rational_kernel(&a);
        assert!(k.is_empty());
        // transpose has the relation v1 + v2 + v3 = 0
        let t = IntMatrix::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]).to_rational();
        let kt = rational_kernel(&t);
        assert_eq!(kt, vec![qv(&[1, 1, 1])]);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let a = RatMatrix::zeros(2, 3);
        let k = rational_kernel(&a);
        check_kernel(&a, &k);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_dim(&[]), -1);
        assert_eq!(affine_dim(&[qv(&[1, 2]), qv(&[1, 2])]), 0);
        assert_eq!(affine_dim(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[-1, 0])]), 1);
        assert_eq!(affine_dim(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])]), 2);
    }
}

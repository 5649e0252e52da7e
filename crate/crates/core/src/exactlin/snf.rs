//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{abs_cmp, IntMatrix};

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by unimodular row and column operations.
///
/// The pivot at each stage is the entry of least absolute value in the
/// remaining block. After its row and column are cleared, any entry it fails
/// to divide is folded into the pivot row and the stage repeats, which yields
/// the divisibility chain directly.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a nonzero remainder is smaller than the pivot; promote it
                let (pi, pj) = min_abs_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { s, u, v }
}

fn min_abs_entry(s: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    (r0..s.rows())
        .flat_map(|i| (c0..s.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !s[(i, j)].is_zero())
        .min_by(|&a, &b| abs_cmp(&s[a], &s[b]))
}

fn min_abs_in_cross(s: &IntMatrix, t: usize) -> (usize, usize) {
    let col = (t..s.rows()).map(|i| (i, t));
    let row = (t + 1..s.cols()).map(|j| (t, j));
    col.chain(row)
        .filter(|&p| !s[p].is_zero())
        .min_by(|&a, &b| abs_cmp(&s[a], &s[b]))
        .expect("pivot cross is nonzero")
}

/// Row-style Hermite normal form of an integer matrix with linearly
/// independent rows: echelon shape, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Depends only on the row lattice.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut p = 0;
    for c in 0..cols {
        if p == rows {
            break;
        }
        // Euclid on column c among rows p..
        loop {
            let Some(best) = (p..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| abs_cmp(&h[(a, c)], &h[(b, c)]))
            else {
                break;
            };
            h.swap_rows(p, best);
            let mut done = true;
            for i in p + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(p, c)]);
                h.add_row_multiple(i, p, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(p, c)].is_zero() {
            continue;
        }
        if h[(p, c)].is_negative() {
            h.negate_row(p);
        }
        for i in 0..p {
            let q = -h[(i, c)].div_floor(&h[(p, c)]);
            h.add_row_multiple(i, p, &q);
        }
        p += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Smith {
        let sm = smith_normal_form(a);
        assert_eq!(sm.u.mul(a).mul(&sm.v), sm.s, "U*A*V != S");
        assert_eq!(sm.u.determinant().abs(), BigInt::from(1));
        assert_eq!(sm.v.determinant().abs(), BigInt::from(1));
        for i in 0..sm.s.rows() {
            for j in 0..sm.s.cols() {
                if i != j {
                    assert!(sm.s[(i, j)].is_zero());
                }
            }
        }
        let d = sm.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(d.iter().all(|x| x.is_positive()));
        sm
    }

    #[test]
    fn identity_is_fixed() {
        let sm = check(&IntMatrix::identity(2));
        assert_eq!(sm.s, IntMatrix::identity(2));
        assert_eq!(sm.u, IntMatrix::identity(2));
        assert_eq!(sm.v, IntMatrix::identity(2));
    }

    #[test]
    fn diag_two_three() {
        let sm = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(sm.s, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let sm = check(&z);
        assert_eq!(sm.s, z);
    }

    #[test]
    fn projective_plane_rays() {
        let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        let sm = check(&a);
        assert_eq!(sm.invariant_factors(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn torsion_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let sm = check(&a);
        assert_eq!(
            sm.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn hermite_is_canonical() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let b = IntMatrix::from_rows(&[vec![-1, -1, 2, 2], vec![0, 0, -1, -1]]);
        assert_eq!(hermite_normal_form(&a), a);
        assert_eq!(hermite_normal_form(&b), a);
        let c = IntMatrix::from_rows(&[vec![2, 3], vec![4, 1]]);
        assert_eq!(hermite_normal_form(&c), IntMatrix::from_rows(&[vec![2, 3], vec![0, 5]]));
    }
}

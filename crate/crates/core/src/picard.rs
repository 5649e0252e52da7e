//! The Picard group `Z^n / {(w·v_i)_i : w ∈ Z^m}` with canonical class
//! coordinates.
//!
//! Smith reduction of the `n x m` ray matrix `R` gives a unimodular `U` with
//! `U R` zero below row `m` and diagonal `d_1 | ... | d_m` on top. The rows
//! of `U` below `m` span the integer left kernel of `R`; they are replaced by
//! their Hermite normal form so the free coordinates depend only on the fan.
//! A class `a` then has free coordinates `(U a)_{m..n}` and torsion
//! coordinates `(U a)_i mod d_i` for each `d_i > 1`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::ComputeError;
use crate::exactlin::{hermite_normal_form, smith_normal_form, IntMatrix};
use crate::fan::StackyFan;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalClass {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl CanonicalClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

/// A line bundle `O(Σ a_i E_i)` with its canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LineBundleClass {
    pub raw: Vec<i64>,
    pub canonical: CanonicalClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicStructure {
    n: usize,
    m: usize,
    /// Invariant factors of the ray matrix, all `m` of them.
    factors: Vec<BigInt>,
    /// Unimodular reduction matrix, `n x n`.
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl PicStructure {
    pub fn new(fan: &StackyFan) -> Self {
        let (n, m) = (fan.n(), fan.rank());
        let smith = smith_normal_form(&fan.ray_matrix());
        let factors = smith.invariant_factors();
        assert_eq!(factors.len(), m, "rays of a complete fan span the lattice over Q");
        let mut rows = smith.u.to_rows();
        if n > m {
            let kernel = IntMatrix::from_rows_with_cols(&rows[m..], n);
            let h = hermite_normal_form(&kernel);
            rows.truncate(m);
            rows.extend(h.to_rows());
        }
        let u = IntMatrix::from_rows_with_cols(&rows, n);
        let u_inv = u
            .to_rational()
            .inverse()
            .and_then(|inv| inv.to_integer())
            .expect("reduction matrix is unimodular");
        PicStructure {
            n,
            m,
            factors,
            u,
            u_inv,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.n - self.m
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Number of rays the structure was built for.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Linear forms (rows over `a`) giving the free coordinates.
    pub fn free_coordinate_forms(&self) -> Vec<Vec<BigInt>> {
        (self.m..self.n).map(|i| self.u.row(i).to_vec()).collect()
    }

    /// Linear forms giving the torsion coordinates, each paired with its
    /// modulus.
    pub fn torsion_coordinate_forms(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        (0..self.m)
            .filter(|&i| !self.factors[i].is_one())
            .map(|i| (self.u.row(i).to_vec(), self.factors[i].clone()))
            .collect()
    }

    pub fn canonical(&self, a: &[i64]) -> Result<CanonicalClass, ComputeError> {
        if a.len() != self.n {
            return Err(ComputeError::Length {
                got: a.len(),
                expected: self.n,
            });
        }
        let a: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let y = self.u.mul_vec(&a);
        let free = y[self.m..].iter().map(small).collect();
        let torsion = (0..self.m)
            .filter(|&i| !self.factors[i].is_one())
            .map(|i| small(&y[i].mod_floor(&self.factors[i])))
            .collect();
        Ok(CanonicalClass { free, torsion })
    }

    pub fn class_of(&self, a: &[i64]) -> Result<LineBundleClass, ComputeError> {
        Ok(LineBundleClass {
            raw: a.to_vec(),
            canonical: self.canonical(a)?,
        })
    }

    /// A coefficient vector whose class has the given coordinates.
    pub fn lift(&self, class: &CanonicalClass) -> Vec<i64> {
        assert_eq!(class.free.len(), self.free_rank(), "free coordinate count");
        let mut y = vec![BigInt::zero(); self.n];
        let mut torsion = class.torsion.iter();
        for (i, d) in self.factors.iter().enumerate() {
            if !d.is_one() {
                y[i] = BigInt::from(*torsion.next().expect("torsion coordinate count"));
            }
        }
        assert!(torsion.next().is_none(), "torsion coordinate count");
        for (k, &f) in class.free.iter().enumerate() {
            y[self.m + k] = BigInt::from(f);
        }
        self.u_inv.mul_vec(&y).iter().map(small).collect()
    }

    /// All torsion residue vectors in lexicographic order.
    pub fn torsion_residues(&self) -> Vec<Vec<i64>> {
        let torsion = self.torsion();
        if torsion.is_empty() {
            return vec![Vec::new()];
        }
        torsion
            .iter()
            .map(|d| 0..small(d))
            .multi_cartesian_product()
            .collect()
    }
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("class coordinate exceeds i64")
}

/// `(w·v_i)_i`, the principal divisor of the character `w`.
pub fn principal(fan: &StackyFan, w: &[i64]) -> Vec<i64> {
    fan.rays()
        .iter()
        .map(|v| v.iter().zip(w).map(|(x, y)| x * y).sum())
        .collect()
}

/// Whether `a - b` is `(w·v_i)_i` for an integer `w`. Solves for `w` on the
/// first maximal cone, then checks integrality and the remaining rays.
pub fn classes_equal(fan: &StackyFan, a: &[i64], b: &[i64]) -> bool {
    assert!(a.len() == fan.n() && b.len() == fan.n(), "coefficient length");
    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let cone = &fan.max_cones()[0];
    let inv = fan.cone_inverse(0);
    let m = fan.rank();
    let w: Vec<BigRational> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| &inv[(i, j)] * BigRational::from_integer(diff[cone[j]].into()))
                .sum()
        })
        .collect();
    if !w.iter().all(|x| x.is_integer()) {
        return false;
    }
    let w: Vec<i64> = w.iter().map(|x| small(&x.to_integer())).collect();
    principal(fan, &w) == diff
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> StackyFan {
        StackyFan::new(
            rank,
            rays.iter().map(|r| r.to_vec()).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
        .unwrap()
    }

    fn p2() -> StackyFan {
        fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
    }

    fn p1p1() -> StackyFan {
        fan(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
            &[&[0, 2], &[2, 1], &[1, 3], &[3, 0]],
        )
    }

    #[test]
    fn structure_examples() {
        let pic = PicStructure::new(&p2());
        assert_eq!((pic.free_rank(), pic.torsion().len()), (1, 0));
        let pic = PicStructure::new(&p1p1());
        assert_eq!((pic.free_rank(), pic.torsion().len()), (2, 0));
        let stacky = fan(1, &[&[2], &[-1]], &[&[0], &[1]]);
        let pic = PicStructure::new(&stacky);
        assert_eq!((pic.free_rank(), pic.torsion().len()), (1, 0));
        let torsion = fan(1, &[&[2], &[-2]], &[&[0], &[1]]);
        let pic = PicStructure::new(&torsion);
        assert_eq!(pic.torsion(), vec![BigInt::from(2)]);
        assert_eq!(pic.torsion_residues(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn degree_coordinates() {
        let pic = PicStructure::new(&p2());
        assert_eq!(pic.canonical(&[1, 0, 0]).unwrap(), pic.canonical(&[0, 1, 0]).unwrap());
        assert_eq!(pic.canonical(&[2, -1, 4]).unwrap().free, vec![5]);
        assert!(pic.canonical(&[0, 0, 0]).unwrap().is_zero());
        let pic = PicStructure::new(&p1p1());
        assert_eq!(pic.canonical(&[1, 1, 0, 0]).unwrap(), pic.canonical(&[2, 0, 0, 0]).unwrap());
        assert_eq!(pic.canonical(&[1, 1, 0, -1]).unwrap().free, vec![2, -1]);
    }

    #[test]
    fn lift_round_trips() {
        let torsion = fan(1, &[&[2], &[-2]], &[&[0], &[1]]);
        for f in [p2(), p1p1(), torsion] {
            let pic = PicStructure::new(&f);
            for a in [vec![3i64; f.n()], (0..f.n() as i64).collect::<Vec<_>>()] {
                let c = pic.canonical(&a).unwrap();
                let b = pic.lift(&c);
                assert_eq!(pic.canonical(&b).unwrap(), c);
                assert!(classes_equal(&f, &a, &b));
            }
        }
    }

    #[test]
    fn equality_examples() {
        let f = p2();
        assert!(classes_equal(&f, &[3, 0, 0], &[0, 3, 0]));
        assert!(!classes_equal(&f, &[1, 0, 0], &[0, 0, 0]));
        assert!(classes_equal(&f, &[4, -2, 7], &[4, -2, 7]));
        let stacky = fan(1, &[&[2], &[-1]], &[&[0], &[1]]);
        // w = 1 gives (2, -1); half of it is not principal
        assert!(classes_equal(&stacky, &[2, -1], &[0, 0]));
        assert!(!classes_equal(&stacky, &[1, 0], &[0, 0]));
    }

    #[test]
    fn wrong_length_is_an_error() {
        let pic = PicStructure::new(&p2());
        assert_eq!(
            pic.canonical(&[1, 2]),
            Err(ComputeError::Length { got: 2, expected: 3 })
        );
    }
}

//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: `BigInt` for lattices and normal
//! forms, `BigRational` for kernels and inequality systems.

mod fm;
mod kernel;
mod lattice;
mod matrix;
mod snf;

pub use fm::{feasible, fm_eliminate, Constraint, LinearSystem, Relation};
pub use kernel::{affine_dim, rational_kernel};
pub use lattice::{
    box_points, first_integer_point, integer_points, recession_direction, LatticePoints,
    DEFAULT_POINT_CAP,
};
pub use matrix::{common_denominator, primitive_integer_vector, rank_small, IntMatrix, RatMatrix};
pub use snf::{hermite_normal_form, smith_normal_form, Smith};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rat_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn to_rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

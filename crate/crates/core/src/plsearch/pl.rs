use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::ComputeError;
use crate::exactlin::{affine_dim, common_denominator, rational_kernel, RatMatrix};
use crate::exec::{self, Execution};
use crate::fan::{pair, StackyFan};
use crate::picard::{LineBundleClass, PicStructure};

/// A linear form on `N ⊗ Q`, i.e. a point of `M ⊗ Q`.
pub type LinearForm = Vec<BigRational>;

/// A piecewise-linear function on a simplicial fan, stored by its values
/// at the rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    pub values: Vec<BigRational>,
}

impl PlFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        PlFunction { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        PlFunction {
            values: values
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        }
    }

    /// The values as integers, if they all are.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten())
            .collect()
    }

    /// `w` restricted to the rays.
    pub fn linear(fan: &StackyFan, w: &[BigRational]) -> Self {
        PlFunction {
            values: fan.rays().iter().map(|v| pair(v, w)).collect(),
        }
    }
}

/// The linear form agreeing with `psi` on the rays of maximal cone `cone`.
pub fn cone_linear_part(fan: &StackyFan, psi: &PlFunction, cone: usize) -> LinearForm {
    let rays = &fan.max_cones()[cone];
    let inv = fan.cone_inverse(cone);
    let m = fan.rank();
    (0..m)
        .map(|i| (0..m).map(|j| &inv[(i, j)] * &psi.values[rays[j]]).sum())
        .collect()
}

/// The per-cone linear parts of a PL function and the dimension of their
/// convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPolytope {
    pub forms: Vec<LinearForm>,
    pub dim: i64,
}

pub fn lambda_polytope(fan: &StackyFan, psi: &PlFunction) -> LambdaPolytope {
    let forms: Vec<LinearForm> = (0..fan.max_cones().len())
        .map(|c| cone_linear_part(fan, psi, c))
        .collect();
    let dim = affine_dim(&forms);
    LambdaPolytope { forms, dim }
}

/// Whether `psi` is the restriction of a global linear form.
pub fn is_linear(fan: &StackyFan, psi: &PlFunction) -> bool {
    let w = cone_linear_part(fan, psi, 0);
    PlFunction::linear(fan, &w) == *psi
}

/// Row `c ↦ ψ_σ(v_s)` for every maximal cone σ.
fn evaluation_rows(fan: &StackyFan, s: usize) -> Vec<Vec<BigRational>> {
    let m = fan.rank();
    let vs = fan.ray(s);
    fan.max_cones()
        .iter()
        .enumerate()
        .map(|(c, rays)| {
            // ψ_σ(v_s) = v_s · inv · c_σ
            let inv = fan.cone_inverse(c);
            let mut row = vec![BigRational::zero(); fan.n()];
            for (j, &ray) in rays.iter().enumerate() {
                let lambda: BigRational = (0..m)
                    .map(|i| &inv[(i, j)] * BigRational::from_integer(BigInt::from(vs[i])))
                    .sum();
                row[ray] = lambda;
            }
            row
        })
        .collect()
}

/// Basis of `K_s`, the PL functions whose every linear part vanishes at
/// `v_s`, and its dimension.
pub fn degenerate_space(fan: &StackyFan, s: usize) -> (Vec<Vec<BigRational>>, usize) {
    let rows = evaluation_rows(fan, s);
    let basis = rational_kernel(&RatMatrix::from_rows_with_cols(&rows, fan.n()));
    let dim = basis.len();
    (basis, dim)
}

/// Whether every linear part of `psi` vanishes at `v_s`.
pub fn in_degenerate_space(fan: &StackyFan, psi: &PlFunction, s: usize) -> bool {
    evaluation_rows(fan, s).iter().all(|row| {
        row.iter()
            .zip(&psi.values)
            .map(|(a, b)| a * b)
            .sum::<BigRational>()
            .is_zero()
    })
}

/// A non-linear integer PL function whose linear parts all vanish at ray `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneratePsi {
    pub ray: usize,
    pub psi: Vec<i64>,
}

/// The non-linear element of `K_s` picked for ray `s`, if `K_s` is larger
/// than the linear forms vanishing at `v_s`.
pub fn degenerate_psi_at(fan: &StackyFan, s: usize) -> Option<Vec<i64>> {
    let (basis, dim) = degenerate_space(fan, s);
    if dim < fan.rank() {
        return None;
    }
    basis.into_iter().find_map(|b| {
        let f = PlFunction::new(b.clone());
        if is_linear(fan, &f) {
            return None;
        }
        let d = BigRational::from_integer(common_denominator(&b));
        PlFunction::new(b.iter().map(|x| x * &d).collect()).to_ints()
    })
}

/// The lowest ray `s` admitting a degenerate ψ, with that ψ.
pub fn find_degenerate_psi(fan: &StackyFan, exec: Execution) -> Option<DegeneratePsi> {
    let rays: Vec<usize> = (0..fan.n()).collect();
    exec::find_map_first(exec, &rays, |&s| {
        degenerate_psi_at(fan, s).map(|psi| DegeneratePsi { ray: s, psi })
    })
}

/// The class of `Σ_{i≠s} r·ψ(v_i)·E_i − E_s`.
pub fn family_class(
    fan: &StackyFan,
    pic: &PicStructure,
    s: usize,
    psi: &[i64],
    r: i64,
) -> Result<LineBundleClass, ComputeError> {
    if psi.len() != fan.n() {
        return Err(ComputeError::Length {
            got: psi.len(),
            expected: fan.n(),
        });
    }
    if s >= fan.n() {
        return Err(ComputeError::Precondition(format!("ray {s} does not exist")));
    }
    let f = PlFunction::from_ints(psi);
    if !in_degenerate_space(fan, &f, s) {
        return Err(ComputeError::Precondition(format!(
            "psi has a linear part that does not vanish at ray {}",
            s + 1
        )));
    }
    if is_linear(fan, &f) {
        return Err(ComputeError::Precondition("psi is linear".into()));
    }
    let a: Vec<i64> = psi
        .iter()
        .enumerate()
        .map(|(i, &p)| if i == s { -1 } else { r * p })
        .collect();
    pic.class_of(&a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_vec;

    fn p1p1() -> StackyFan {
        StackyFan::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn p2() -> StackyFan {
        StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn linear_parts() {
        let f = p1p1();
        let psi = PlFunction::from_ints(&[1, 1, 0, 0]);
        // cones are stored sorted: [0,2], [1,2], [1,3], [0,3]
        assert_eq!(cone_linear_part(&f, &psi, 0), rat_vec(&[1, 0]));
        assert_eq!(cone_linear_part(&f, &psi, 1), rat_vec(&[-1, 0]));
        let lp = lambda_polytope(&f, &psi);
        assert_eq!(lp.dim, 1);
        let w = rat_vec(&[3, -2]);
        let lin = PlFunction::linear(&f, &w);
        assert!(is_linear(&f, &lin));
        let lp = lambda_polytope(&f, &lin);
        assert_eq!(lp.dim, 0);
        assert!(lp.forms.iter().all(|x| *x == w));
    }

    #[test]
    fn degenerate_spaces() {
        let f = p2();
        for s in 0..3 {
            assert_eq!(degenerate_space(&f, s).1, 1);
        }
        assert_eq!(find_degenerate_psi(&f, Execution::Sequential), None);
        let g = p1p1();
        assert_eq!(degenerate_space(&g, 2).1, 2);
        assert!(in_degenerate_space(&g, &PlFunction::from_ints(&[1, 1, 0, 0]), 2));
        let found = find_degenerate_psi(&g, Execution::Sequential).unwrap();
        assert_eq!(found.ray, 0);
        let psi = PlFunction::from_ints(&found.psi);
        assert!(!is_linear(&g, &psi));
        assert!(lambda_polytope(&g, &psi).dim < 2);
    }

    #[test]
    fn family_examples() {
        let g = p1p1();
        let pic = PicStructure::new(&g);
        let c = family_class(&g, &pic, 2, &[1, 1, 0, 0], 2).unwrap();
        assert_eq!(c.canonical.free, vec![4, -1]);
        let c = family_class(&g, &pic, 2, &[1, 1, 0, 0], 0).unwrap();
        assert_eq!(c.raw, vec![0, 0, -1, 0]);
        assert!(family_class(&g, &pic, 0, &[1, 1, 0, 0], 1).is_err());
        assert!(family_class(&g, &pic, 2, &[1, -1, 0, 0], 1).is_err());
    }
}

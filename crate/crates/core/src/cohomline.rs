//! Line bundle cohomology by lattice-point counting over Δ, H-triviality,
//! and the strict-sign interiors of the cones `Z_I`.
//!
//! For a representative `r = a + (f·v_i)_i` the sign pattern of `r` fixes the
//! complex `Supp(r)`: it is `C_I` for `I = {i : r_i >= 0}`. So
//! `h^j(a) = Σ_{I ∈ Δ} #{f ∈ Z^m : sign pattern I} · b̃_{m-j-1}(C_I)`, and
//! every polyhedron in the sum is bounded for a complete fan.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::ComputeError;
use crate::exactlin::{feasible, first_integer_point, integer_points, Constraint, LatticePoints, LinearSystem};
use crate::exec::{self, Execution};
use crate::fan::StackyFan;
use crate::homology::DeltaFamily;
use crate::picard::{CanonicalClass, LineBundleClass, PicStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// `r_i >= 0` on `I`, `r_i <= -1` off `I`, for integer points.
    Weak,
    /// `r_i > 0` on `I`, `r_i < 0` off `I`, over the rationals.
    Strict,
}

/// `h^0, ..., h^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CohomologyVector {
    pub h: Vec<u64>,
}

impl CohomologyVector {
    pub fn is_zero(&self) -> bool {
        self.h.iter().all(|&x| x == 0)
    }
}

/// The polyhedron of `f ∈ M ⊗ Q` for which `a + (f·v_i)_i` has sign pattern
/// `I`.
pub fn sign_polyhedron(
    fan: &StackyFan,
    a: &[i64],
    index_set: &[usize],
    strictness: Strictness,
) -> LinearSystem {
    assert_eq!(a.len(), fan.n(), "coefficient length");
    let mut sys = LinearSystem::new(fan.rank());
    let q = |x: i64| BigRational::from_integer(x.into());
    for (i, &ai) in a.iter().enumerate() {
        let v = fan.ray_rational(i);
        let neg: Vec<BigRational> = v.iter().map(|x| -x).collect();
        let row = match (index_set.contains(&i), strictness) {
            (true, Strictness::Weak) => Constraint::ge(v, q(-ai)),
            (true, Strictness::Strict) => Constraint::gt(v, q(-ai)),
            (false, Strictness::Weak) => Constraint::ge(neg, q(ai + 1)),
            (false, Strictness::Strict) => Constraint::gt(neg, q(ai)),
        };
        sys.push(row);
    }
    sys
}

fn check_len(fan: &StackyFan, a: &[i64]) -> Result<(), ComputeError> {
    if a.len() != fan.n() {
        return Err(ComputeError::Length {
            got: a.len(),
            expected: fan.n(),
        });
    }
    Ok(())
}

/// Number of integer points in the weak sign polyhedron of `I`.
pub fn lattice_count(
    fan: &StackyFan,
    a: &[i64],
    index_set: &[usize],
    cap: u64,
) -> Result<u64, ComputeError> {
    match integer_points(&sign_polyhedron(fan, a, index_set, Strictness::Weak), cap) {
        LatticePoints::Points(p) => Ok(p.len() as u64),
        LatticePoints::Infeasible => Ok(0),
        LatticePoints::CapExceeded { cap } => Err(ComputeError::CapExceeded { cap }),
        LatticePoints::UnboundedWithLatticePoint { .. } => Err(ComputeError::InfiniteContribution {
            index_set: index_set.to_vec(),
        }),
    }
}

pub fn cohomology(
    fan: &StackyFan,
    delta: &DeltaFamily,
    a: &[i64],
    cap: u64,
    exec: Execution,
) -> Result<CohomologyVector, ComputeError> {
    check_len(fan, a)?;
    let m = fan.rank();
    let counts = exec::map(exec, delta.members(), |member| {
        lattice_count(fan, a, &member.index_set, cap)
    });
    let mut h = vec![0u64; m + 1];
    for (member, count) in delta.members().iter().zip(counts) {
        let count = count?;
        if count == 0 {
            continue;
        }
        for (j, hj) in h.iter_mut().enumerate() {
            *hj += count * member.betti.get(m as isize - j as isize - 1);
        }
    }
    Ok(CohomologyVector { h })
}

/// First `I ∈ Δ` (in Δ order) whose weak sign polyhedron has an integer
/// point, if any.
pub fn first_violation(
    fan: &StackyFan,
    delta: &DeltaFamily,
    a: &[i64],
    cap: u64,
    exec: Execution,
) -> Result<Option<Vec<usize>>, ComputeError> {
    check_len(fan, a)?;
    let hit = exec::find_map_first(exec, delta.members(), |member| {
        let sys = sign_polyhedron(fan, a, &member.index_set, Strictness::Weak);
        match first_integer_point(&sys, cap) {
            LatticePoints::Infeasible => None,
            LatticePoints::Points(p) if p.is_empty() => None,
            LatticePoints::Points(_) => Some(Ok(member.index_set.clone())),
            LatticePoints::CapExceeded { cap } => Some(Err(ComputeError::CapExceeded { cap })),
            LatticePoints::UnboundedWithLatticePoint { .. } => {
                Some(Err(ComputeError::InfiniteContribution {
                    index_set: member.index_set.clone(),
                }))
            }
        }
    });
    hit.transpose()
}

/// All cohomology of `O(Σ a_i E_i)` vanishes.
pub fn is_h_trivial(
    fan: &StackyFan,
    delta: &DeltaFamily,
    a: &[i64],
    cap: u64,
    exec: Execution,
) -> Result<bool, ComputeError> {
    Ok(first_violation(fan, delta, a, cap, exec)?.is_none())
}

/// Some representative of `a` has strict sign pattern `I`.
pub fn in_interior_zi(fan: &StackyFan, a: &[i64], index_set: &[usize]) -> bool {
    feasible(&sign_polyhedron(fan, a, index_set, Strictness::Strict)).is_some()
}

pub fn outside_all_interiors(fan: &StackyFan, delta: &DeltaFamily, a: &[i64]) -> bool {
    delta
        .index_sets()
        .all(|set| !in_interior_zi(fan, a, set))
}

/// All classes with free coordinates in `bounds` (one inclusive range per
/// free coordinate) and any torsion, in lexicographic order of canonical
/// coordinates.
pub fn classes_in_box(pic: &PicStructure, bounds: &[(i64, i64)]) -> Result<Vec<CanonicalClass>, ComputeError> {
    if bounds.len() != pic.free_rank() {
        return Err(ComputeError::Precondition(format!(
            "box has {} ranges, the Picard group has free rank {}",
            bounds.len(),
            pic.free_rank()
        )));
    }
    if let Some(&(lo, hi)) = bounds.iter().find(|(lo, hi)| lo > hi) {
        return Err(ComputeError::Precondition(format!("empty range {lo}:{hi}")));
    }
    let mut frees: Vec<Vec<i64>> = vec![Vec::new()];
    for &(lo, hi) in bounds {
        frees = frees
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let residues = pic.torsion_residues();
    Ok(frees
        .into_iter()
        .flat_map(|free| {
            residues.iter().map(move |t| CanonicalClass {
                free: free.clone(),
                torsion: t.clone(),
            })
        })
        .collect())
}

/// H-trivial classes in a box of canonical coordinates.
pub fn scan_h_trivial(
    fan: &StackyFan,
    pic: &PicStructure,
    delta: &DeltaFamily,
    bounds: &[(i64, i64)],
    cap: u64,
    exec: Execution,
) -> Result<Vec<LineBundleClass>, ComputeError> {
    let classes = classes_in_box(pic, bounds)?;
    let verdicts = exec::map(exec, &classes, |c| {
        let raw = pic.lift(c);
        is_h_trivial(fan, delta, &raw, cap, Execution::Sequential).map(|t| (t, raw))
    });
    let mut out = Vec::new();
    for (c, v) in classes.into_iter().zip(verdicts) {
        let (trivial, raw) = v?;
        if trivial {
            out.push(LineBundleClass { raw, canonical: c });
        }
    }
    Ok(out)
}

/// Per-class report. `violating` holds the first forbidden index set hit,
/// rendered 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub raw: Vec<i64>,
    pub canonical: CanonicalClass,
    pub cohomology: CohomologyVector,
    pub h_trivial: bool,
    pub violating: Option<Vec<usize>>,
}

pub fn class_report(
    fan: &StackyFan,
    pic: &PicStructure,
    delta: &DeltaFamily,
    a: &[i64],
    cap: u64,
    exec: Execution,
) -> Result<ClassReport, ComputeError> {
    let canonical = pic.canonical(a)?;
    let cohomology = cohomology(fan, delta, a, cap, exec)?;
    let violating = first_violation(fan, delta, a, cap, exec)?;
    debug_assert_eq!(
        cohomology.is_zero(),
        violating.is_none(),
        "cohomology and the H-triviality test disagree"
    );
    Ok(ClassReport {
        raw: a.to_vec(),
        canonical,
        h_trivial: violating.is_none(),
        violating: violating.map(|s| s.iter().map(|i| i + 1).collect()),
        cohomology,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{delta_set, DEFAULT_DELTA_CAP};
    use crate::exactlin::DEFAULT_POINT_CAP;

    const SEQ: Execution = Execution::Sequential;

    fn p2() -> StackyFan {
        StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    fn p1p1() -> StackyFan {
        StackyFan::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn h(fan: &StackyFan, a: &[i64]) -> Vec<u64> {
        let d = delta_set(fan, DEFAULT_DELTA_CAP, SEQ).unwrap();
        cohomology(fan, &d, a, DEFAULT_POINT_CAP, SEQ).unwrap().h
    }

    #[test]
    fn projective_plane_cohomology() {
        let f = p2();
        assert_eq!(h(&f, &[1, 0, 0]), vec![3, 0, 0]);
        assert_eq!(h(&f, &[-3, 0, 0]), vec![0, 0, 1]);
        assert_eq!(h(&f, &[0, 0, 0]), vec![1, 0, 0]);
        assert_eq!(h(&f, &[-1, 0, 0]), vec![0, 0, 0]);
        assert_eq!(h(&f, &[-5, 0, 0]), vec![0, 0, 6]);
    }

    #[test]
    fn projective_line_cohomology() {
        let f = StackyFan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(h(&f, &[-2, 0]), vec![0, 1]);
        assert_eq!(h(&f, &[3, 0]), vec![4, 0]);
    }

    #[test]
    fn weak_polyhedron_examples() {
        let f = p2();
        let sys = sign_polyhedron(&f, &[0, 0, 0], &[0, 1, 2], Strictness::Weak);
        match integer_points(&sys, 100) {
            LatticePoints::Points(p) => assert_eq!(p.len(), 1),
            other => panic!("{other:?}"),
        }
        let sys = sign_polyhedron(&f, &[-1, -1, -1], &[], Strictness::Weak);
        let origin = vec![BigRational::from_integer(0.into()); 2];
        assert!(sys.is_satisfied_by(&origin));
    }

    #[test]
    fn interior_examples() {
        let f = p2();
        assert!(in_interior_zi(&f, &[1, 0, 0], &[0, 1, 2]));
        assert!(!in_interior_zi(&f, &[0, 0, 0], &[0, 1, 2]));
        assert!(!in_interior_zi(&f, &[0, 0, 0], &[]));
        let d = delta_set(&f, DEFAULT_DELTA_CAP, SEQ).unwrap();
        assert!(!outside_all_interiors(&f, &d, &[1, 0, 0]));
        assert!(!outside_all_interiors(&f, &d, &[-5, 0, 0]));
        let g = p1p1();
        let d = delta_set(&g, DEFAULT_DELTA_CAP, SEQ).unwrap();
        assert!(outside_all_interiors(&g, &d, &[0, 0, -1, 0]));
    }

    #[test]
    fn scan_projective_plane() {
        let f = p2();
        let pic = PicStructure::new(&f);
        let d = delta_set(&f, DEFAULT_DELTA_CAP, SEQ).unwrap();
        let found = scan_h_trivial(&f, &pic, &d, &[(-12, 12)], DEFAULT_POINT_CAP, SEQ).unwrap();
        let degrees: Vec<i64> = found.iter().map(|c| c.canonical.free[0]).collect();
        assert_eq!(degrees, vec![-2, -1]);
        assert!(scan_h_trivial(&f, &pic, &d, &[(0, 1), (0, 1)], 10, SEQ).is_err());
    }

    #[test]
    fn report_renders_one_based_sets() {
        let f = p2();
        let pic = PicStructure::new(&f);
        let d = delta_set(&f, DEFAULT_DELTA_CAP, SEQ).unwrap();
        let r = class_report(&f, &pic, &d, &[0, 0, 0], DEFAULT_POINT_CAP, SEQ).unwrap();
        assert!(!r.h_trivial);
        assert_eq!(r.violating, Some(vec![1, 2, 3]));
        assert_eq!(r.cohomology.h, vec![1, 0, 0]);
    }

    #[test]
    fn cap_surfaces_as_error() {
        let f = p2();
        let d = delta_set(&f, DEFAULT_DELTA_CAP, SEQ).unwrap();
        let err = cohomology(&f, &d, &[20, 0, 0], 5, SEQ).unwrap_err();
        assert_eq!(err, ComputeError::CapExceeded { cap: 5 });
    }
}

//! Complete simplicial stacky fans.
//!
//! A fan is given by its lattice rank, one chosen lattice point per ray, and
//! its maximal cones as sets of ray indices. Validation checks that the
//! cones are simplicial, that every facet is shared by exactly two maximal
//! cones lying on opposite sides of it, and that a fixed set of
//! pseudo-random directions is covered.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::FanError;
use crate::exactlin::{rational_kernel, IntMatrix, RatMatrix};

/// Seed for the coverage spot check when none is given.
pub const DEFAULT_COVERAGE_SEED: u64 = 0x5eed_f00d;
const COVERAGE_DIRECTIONS: usize = 64;
const COVERAGE_RANGE: i64 = 1000;

#[derive(Clone, Debug)]
pub struct StackyFan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    /// Inverse of the matrix whose rows are the rays of each maximal cone.
    cone_inverses: Vec<RatMatrix>,
}

impl PartialEq for StackyFan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for StackyFan {}

/// Rays sharing a two-dimensional cone with a center ray. For rank 3 the
/// members also come ordered around the center as a closed cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayNeighborhood {
    pub center: usize,
    pub members: Vec<usize>,
    pub cycle: Option<Vec<usize>>,
}

impl StackyFan {
    pub fn new(
        rank: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        Self::with_seed(rank, rays, max_cones, DEFAULT_COVERAGE_SEED)
    }

    /// Builds and validates a fan; `seed` drives the coverage spot check.
    pub fn with_seed(
        rank: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
        seed: u64,
    ) -> Result<Self, FanError> {
        let max_cones: Vec<Vec<usize>> = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        check_rays(rank, &rays)?;
        let cone_inverses = check_cones(rank, &rays, &max_cones)?;
        let fan = StackyFan {
            rank,
            rays,
            max_cones,
            cone_inverses,
        };
        fan.check_facets()?;
        fan.check_coverage(seed)?;
        if fan.rank == 3 {
            for s in 0..fan.n() {
                fan.neighborhood(s)?;
            }
        }
        Ok(fan)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of rays.
    pub fn n(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn ray_rational(&self, i: usize) -> Vec<BigRational> {
        self.rays[i]
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    /// Maximal cones, each a sorted list of ray indices.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Inverse of the matrix whose rows are the rays of maximal cone `c`.
    pub fn cone_inverse(&self, c: usize) -> &RatMatrix {
        &self.cone_inverses[c]
    }

    /// The `n x m` matrix with rows `v_i`.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(&self.rays, self.rank)
    }

    /// Whether some maximal cone contains all the listed rays.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| rays.iter().all(|r| c.binary_search(r).is_ok()))
    }

    /// Pairs `(i, j)`, `i < j`, with `v_i` and `v_j` on one line through the
    /// origin. For a valid fan such rays point in opposite directions.
    pub fn collinear_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if parallel(&self.rays[i], &self.rays[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Rays that span a two-dimensional cone with ray `s`.
    pub fn neighborhood(&self, s: usize) -> Result<RayNeighborhood, FanError> {
        let mut members = BTreeSet::new();
        let mut link: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for cone in &self.max_cones {
            if cone.binary_search(&s).is_err() {
                continue;
            }
            let others: Vec<usize> = cone.iter().copied().filter(|&r| r != s).collect();
            members.extend(others.iter().copied());
            if self.rank == 3 {
                let (a, b) = (others[0], others[1]);
                link.entry(a).or_default().push(b);
                link.entry(b).or_default().push(a);
            }
        }
        let members: Vec<usize> = members.into_iter().collect();
        let cycle = if self.rank == 3 {
            Some(walk_cycle(s, &members, &link)?)
        } else {
            None
        };
        Ok(RayNeighborhood {
            center: s,
            members,
            cycle,
        })
    }

    /// Compact canonical JSON used for fingerprints: each cone sorted, and
    /// the cone list sorted lexicographically.
    pub fn to_json(&self) -> String {
        let mut cones = self.max_cones.clone();
        cones.sort();
        serde_json::json!({
            "rank": self.rank,
            "rays": self.rays,
            "max_cones": cones,
        })
        .to_string()
    }

    /// SHA-256 of [`StackyFan::to_json`], hex encoded.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    fn check_facets(&self) -> Result<(), FanError> {
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for cone in &self.max_cones {
            for (k, &opposite) in cone.iter().enumerate() {
                let mut facet = cone.clone();
                facet.remove(k);
                facets.entry(facet).or_default().push(opposite);
            }
        }
        for (facet, opposite) in facets {
            if opposite.len() != 2 {
                return Err(FanError::FacetUnpaired {
                    facet,
                    count: opposite.len(),
                });
            }
            let rows: Vec<Vec<BigRational>> =
                facet.iter().map(|&r| self.ray_rational(r)).collect();
            let normal = rational_kernel(&RatMatrix::from_rows_with_cols(&rows, self.rank));
            debug_assert_eq!(normal.len(), 1);
            let side = |r: usize| -> BigRational {
                self.ray_rational(r)
                    .iter()
                    .zip(&normal[0])
                    .map(|(a, b)| a * b)
                    .sum()
            };
            let (a, b) = (side(opposite[0]), side(opposite[1]));
            if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
                return Err(FanError::FacetSameSide { facet });
            }
        }
        Ok(())
    }

    fn check_coverage(&self, seed: u64) -> Result<(), FanError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tested = 0;
        while tested < COVERAGE_DIRECTIONS {
            let d: Vec<i64> = (0..self.rank)
                .map(|_| rng.random_range(-COVERAGE_RANGE..=COVERAGE_RANGE))
                .collect();
            if d.iter().all(|&x| x == 0) {
                continue;
            }
            tested += 1;
            if self.cone_containing(&d).is_none() {
                return Err(FanError::NotComplete { direction: d });
            }
        }
        Ok(())
    }

    /// Index of a maximal cone containing the point `x`, if any.
    pub fn cone_containing(&self, x: &[i64]) -> Option<usize> {
        let x: Vec<BigRational> = x
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        (0..self.max_cones.len()).find(|&c| {
            // x = sum_i lambda_i v_i  <=>  lambda = inv^T x
            let inv = &self.cone_inverses[c];
            (0..self.rank).all(|i| {
                let lambda: BigRational = (0..self.rank).map(|j| &inv[(j, i)] * &x[j]).sum();
                !lambda.is_negative()
            })
        })
    }
}

fn check_rays(rank: usize, rays: &[Vec<i64>]) -> Result<(), FanError> {
    if rank == 0 {
        return Err(FanError::ZeroRank);
    }
    if rays.is_empty() {
        return Err(FanError::NoRays);
    }
    for (i, r) in rays.iter().enumerate() {
        if r.len() != rank {
            return Err(FanError::RayLength {
                ray: i,
                len: r.len(),
                rank,
            });
        }
        if r.iter().all(|&x| x == 0) {
            return Err(FanError::ZeroRay(i));
        }
    }
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            if parallel(&rays[i], &rays[j]) && same_direction(&rays[i], &rays[j]) {
                return Err(FanError::DuplicateRay(i, j));
            }
        }
    }
    Ok(())
}

fn check_cones(
    rank: usize,
    rays: &[Vec<i64>],
    cones: &[Vec<usize>],
) -> Result<Vec<RatMatrix>, FanError> {
    let mut seen: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    let mut used = vec![false; rays.len()];
    let mut inverses = Vec::with_capacity(cones.len());
    for (c, cone) in cones.iter().enumerate() {
        if cone.len() != rank {
            return Err(FanError::ConeSize {
                cone: c,
                len: cone.len(),
                rank,
            });
        }
        if let Some(&r) = cone.iter().find(|&&r| r >= rays.len()) {
            return Err(FanError::ConeIndex { cone: c, ray: r });
        }
        if cone.windows(2).any(|w| w[0] == w[1]) {
            return Err(FanError::ConeRepeatsRay(c));
        }
        if let Some(&prev) = seen.get(cone) {
            return Err(FanError::DuplicateCone(prev, c));
        }
        seen.insert(cone, c);
        let rows: Vec<Vec<i64>> = cone.iter().map(|&r| rays[r].clone()).collect();
        let inv = IntMatrix::from_rows_with_cols(&rows, rank)
            .to_rational()
            .inverse()
            .ok_or(FanError::NotSimplicial(c))?;
        inverses.push(inv);
        for &r in cone {
            used[r] = true;
        }
    }
    if let Some(r) = used.iter().position(|&u| !u) {
        return Err(FanError::UnusedRay(r));
    }
    Ok(inverses)
}

fn walk_cycle(
    s: usize,
    members: &[usize],
    link: &BTreeMap<usize, Vec<usize>>,
) -> Result<Vec<usize>, FanError> {
    let bad = || FanError::LinkNotCycle { ray: s };
    if members.len() < 3 || link.values().any(|adj| adj.len() != 2) {
        return Err(bad());
    }
    let start = members[0];
    let mut adj0 = link[&start].clone();
    adj0.sort_unstable();
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, adj0[0]);
    while cur != start {
        if cycle.len() > members.len() {
            return Err(bad());
        }
        cycle.push(cur);
        let adj = &link[&cur];
        let next = if adj[0] == prev { adj[1] } else { adj[0] };
        prev = cur;
        cur = next;
    }
    if cycle.len() != members.len() {
        return Err(bad());
    }
    Ok(cycle)
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if (a[i] as i128) * (b[j] as i128) != (a[j] as i128) * (b[i] as i128) {
                return false;
            }
        }
    }
    true
}

fn same_direction(a: &[i64], b: &[i64]) -> bool {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x as i128) * (y as i128))
        .sum::<i128>()
        > 0
}

/// Parses the JSON fan format (`rank`, `rays`, `max_cones` with 0-based
/// indices) and validates the result.
pub fn load_fan(text: &[u8]) -> Result<StackyFan, FanError> {
    load_fan_with_seed(text, DEFAULT_COVERAGE_SEED)
}

pub fn load_fan_with_seed(text: &[u8], seed: u64) -> Result<StackyFan, FanError> {
    let value: Value =
        serde_json::from_slice(text).map_err(|e| FanError::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| FanError::Parse("expected a JSON object".into()))?;
    let field = |name: &str| {
        obj.get(name)
            .ok_or_else(|| FanError::Parse(format!("missing field {name:?}")))
    };
    let rank = field("rank")?
        .as_u64()
        .ok_or_else(|| FanError::Parse("\"rank\" must be a non-negative integer".into()))?
        as usize;
    let rays = int_rows(field("rays")?, "rays", |v| v.as_i64())?;
    let cones = int_rows(field("max_cones")?, "max_cones", |v| {
        v.as_u64().map(|x| x as usize)
    })?;
    StackyFan::with_seed(rank, rays, cones, seed)
}

fn int_rows<T>(
    v: &Value,
    name: &str,
    conv: impl Fn(&Value) -> Option<T>,
) -> Result<Vec<Vec<T>>, FanError> {
    let outer = v
        .as_array()
        .ok_or_else(|| FanError::Parse(format!("{name:?} must be an array of arrays")))?;
    outer
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| FanError::Parse(format!("{name}[{i}] must be an array")))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    if !(x.is_i64() || x.is_u64()) {
                        return Err(FanError::Parse(format!(
                            "{name}[{i}][{j}] must be an exact integer, got {x}"
                        )));
                    }
                    conv(x).ok_or_else(|| {
                        FanError::Parse(format!("{name}[{i}][{j}] is out of range: {x}"))
                    })
                })
                .collect()
        })
        .collect()
}

/// `v · w` for an integer ray and a rational linear form.
pub fn pair(v: &[i64], w: &[BigRational]) -> BigRational {
    v.iter()
        .zip(w)
        .map(|(&a, b)| b * BigRational::from_integer(BigInt::from(a)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = r#"{"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}"#;

    #[test]
    fn loads_projective_plane() {
        let fan = load_fan(P2.as_bytes()).unwrap();
        assert_eq!(fan.n(), 3);
        assert_eq!(fan.rank(), 2);
        assert_eq!(fan.ray(2), &[-1, -1]);
    }

    #[test]
    fn missing_cone_is_unpaired_facet() {
        let text = r#"{"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2]]}"#;
        let err = load_fan(text.as_bytes()).unwrap_err();
        assert!(matches!(err, FanError::FacetUnpaired { .. }), "{err}");
        assert!(err.to_string().contains("facet unpaired"));
    }

    #[test]
    fn rank_one_stacky() {
        let text = r#"{"rank": 1, "rays": [[2],[-1]], "max_cones": [[0],[1]]}"#;
        let fan = load_fan(text.as_bytes()).unwrap();
        assert_eq!(fan.n(), 2);
        assert_eq!(fan.neighborhood(0).unwrap().members, Vec::<usize>::new());
    }

    #[test]
    fn rejects_floats_and_bad_shapes() {
        let text = r#"{"rank": 2, "rays": [[1.0,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]]}"#;
        assert!(matches!(load_fan(text.as_bytes()), Err(FanError::Parse(_))));
        let text = r#"{"rank": 2, "rays": [[1,0],[0,1],[-1,-1]]}"#;
        assert!(matches!(load_fan(text.as_bytes()), Err(FanError::Parse(_))));
        let text = r#"{"rank": 2, "rays": [[1,0],[2,0],[0,1],[-1,-1]], "max_cones": [[0,2],[2,3],[3,0]]}"#;
        assert!(matches!(
            load_fan(text.as_bytes()),
            Err(FanError::DuplicateRay(0, 1))
        ));
        let text = r#"{"rank": 2, "rays": [[1,0],[0,1],[-1,0],[0,-1]], "max_cones": [[0,2],[1,3]]}"#;
        assert!(load_fan(text.as_bytes()).is_err());
    }

    #[test]
    fn overlapping_fan_fails_side_check() {
        // both cones on the same side of the facet spanned by (1,0)
        let fan = StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        );
        assert!(fan.is_err());
    }

    #[test]
    fn collinear_pairs_examples() {
        let p2 = load_fan(P2.as_bytes()).unwrap();
        assert!(p2.collinear_pairs().is_empty());
        let p1p1 = StackyFan::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(p1p1.collinear_pairs(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn neighborhood_in_rank_three() {
        // P1 x P2: e1, -e1, e2, e3, -e2-e3
        let fan = StackyFan::new(
            3,
            vec![
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, -1, -1],
            ],
            vec![
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 2],
                vec![1, 2, 3],
                vec![1, 3, 4],
                vec![1, 4, 2],
            ],
        )
        .unwrap();
        assert_eq!(fan.collinear_pairs(), vec![(0, 1)]);
        let nb = fan.neighborhood(2).unwrap();
        assert_eq!(nb.members, vec![0, 1, 3, 4]);
        assert_eq!(nb.cycle, Some(vec![0, 3, 1, 4]));
        let p2 = load_fan(P2.as_bytes()).unwrap();
        assert_eq!(p2.neighborhood(0).unwrap().members, vec![1, 2]);
        assert_eq!(p2.neighborhood(0).unwrap().cycle, None);
    }

    #[test]
    fn fingerprint_is_stable_under_cone_order() {
        let a = load_fan(P2.as_bytes()).unwrap();
        let b = StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![2, 1], vec![0, 2], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(a.fingerprint().len(), 64);
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = StackyFan::new(
            2,
            vec![vec![0, 1], vec![1, 0], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }
}

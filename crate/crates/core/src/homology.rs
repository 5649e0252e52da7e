//! The complexes `Supp(r)` and `C_I`, their reduced Betti numbers over the
//! rationals, and the family Δ of index sets whose complex `C_I` has
//! nonzero reduced homology.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::ComputeError;
use crate::exactlin::rank_small;
use crate::exec::{self, Execution};
use crate::fan::StackyFan;

/// Largest `n` accepted by [`delta_set`] unless overridden.
pub const DEFAULT_DELTA_CAP: usize = 16;

/// An abstract simplicial complex on ray indices. Faces are sorted index
/// lists, stored in (size, lexicographic) order; the empty face is always
/// present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of `generators`.
    pub fn from_generators(generators: &[Vec<usize>]) -> Self {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert(Vec::new());
        for g in generators {
            let mut g = g.clone();
            g.sort_unstable();
            g.dedup();
            for mask in 1u64..(1u64 << g.len()) {
                let face: Vec<usize> = (0..g.len())
                    .filter(|&k| mask >> k & 1 == 1)
                    .map(|k| g[k])
                    .collect();
                faces.insert(face);
            }
        }
        let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let vertices = faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        SimplicialComplex { vertices, faces }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Faces with `k + 1` vertices.
    pub fn faces_of_dim(&self, k: isize) -> impl Iterator<Item = &Vec<usize>> {
        self.faces
            .iter()
            .filter(move |f| f.len() as isize == k + 1)
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.iter().any(|f| f == face)
    }

    /// Number of connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(&self.vertices);
        for e in self.faces_of_dim(1) {
            uf.union(e[0], e[1]);
        }
        uf.count()
    }
}

/// Reduced Betti numbers `b̃_{-1}, b̃_0, ..., b̃_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiVector {
    ranks: Vec<u64>,
}

impl BettiVector {
    /// `ranks[0]` is `b̃_{-1}`.
    pub fn from_ranks(ranks: Vec<u64>) -> Self {
        BettiVector { ranks }
    }

    /// `b̃_j` for `-1 <= j`; zero past the stored range.
    pub fn get(&self, j: isize) -> u64 {
        usize::try_from(j + 1)
            .ok()
            .and_then(|k| self.ranks.get(k).copied())
            .unwrap_or(0)
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// `{J : r_i >= 0 on J and the rays of J lie in a common cone}`.
pub fn supp(fan: &StackyFan, r: &[i64]) -> SimplicialComplex {
    assert_eq!(r.len(), fan.n(), "sign vector length");
    let generators: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| c.iter().copied().filter(|&i| r[i] >= 0).collect())
        .collect();
    SimplicialComplex::from_generators(&generators)
}

/// `Supp(r)` for `r_i = 0` on `index_set` and `r_i = -1` elsewhere.
pub fn complex_ci(fan: &StackyFan, index_set: &[usize]) -> SimplicialComplex {
    let mut r = vec![-1; fan.n()];
    for &i in index_set {
        r[i] = 0;
    }
    supp(fan, &r)
}

/// Reduced Betti numbers over Q from the augmented chain complex, indices
/// `-1..m-1`.
pub fn reduced_betti(cx: &SimplicialComplex, m: usize) -> BettiVector {
    // chain group sizes c[k + 1] for k = -1..m-1, and ranks of
    // boundary maps d_k : C_k -> C_{k-1} for k = 0..m-1
    let dims: Vec<usize> = (-1..m as isize)
        .map(|k| cx.faces_of_dim(k).count())
        .collect();
    let mut boundary_rank = vec![0usize; m + 2];
    for k in 0..m as isize {
        let lower: Vec<&Vec<usize>> = cx.faces_of_dim(k - 1).collect();
        let rows: Vec<Vec<i64>> = cx
            .faces_of_dim(k)
            .map(|face| {
                let mut row = vec![0i64; lower.len()];
                for drop in 0..face.len() {
                    let mut sub = face.clone();
                    sub.remove(drop);
                    let col = lower
                        .binary_search_by(|f| f.as_slice().cmp(sub.as_slice()))
                        .expect("complex is closed under faces");
                    row[col] = if drop % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        boundary_rank[(k + 1) as usize] = if rows.is_empty() || lower.is_empty() {
            0
        } else {
            rank_small(&rows)
        };
    }
    // b_k = dim C_k - rank d_k - rank d_{k+1}
    let ranks = (0..=m)
        .map(|idx| (dims[idx] - boundary_rank[idx] - boundary_rank[idx + 1]) as u64)
        .collect();
    BettiVector { ranks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaMember {
    /// 0-based ray indices, sorted.
    pub index_set: Vec<usize>,
    pub betti: BettiVector,
}

/// Index sets `I` with nonzero reduced homology of `C_I`, in
/// (cardinality, lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaFamily {
    members: Vec<DeltaMember>,
}

impl DeltaFamily {
    pub fn members(&self) -> &[DeltaMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index_set: &[usize]) -> bool {
        let mut key = index_set.to_vec();
        key.sort_unstable();
        self.members.iter().any(|m| m.index_set == key)
    }

    pub fn get(&self, index_set: &[usize]) -> Option<&DeltaMember> {
        let mut key = index_set.to_vec();
        key.sort_unstable();
        self.members.iter().find(|m| m.index_set == key)
    }

    pub fn index_sets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.members.iter().map(|m| &m.index_set)
    }
}

/// All subsets of `0..n` in (cardinality, lexicographic) order.
pub fn subsets_in_order(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

pub fn complement(index_set: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !index_set.contains(i)).collect()
}

/// Δ by exhaustive subset enumeration, for `n <= cap`.
pub fn delta_set(fan: &StackyFan, cap: usize, exec: Execution) -> Result<DeltaFamily, ComputeError> {
    let n = fan.n();
    if n > cap || n >= 63 {
        return Err(ComputeError::DeltaCap { n, cap });
    }
    let subsets = subsets_in_order(n);
    let members = exec::map(exec, &subsets, |set| {
        let betti = reduced_betti(&complex_ci(fan, set), fan.rank());
        (!betti.is_zero()).then(|| DeltaMember {
            index_set: set.clone(),
            betti,
        })
    });
    Ok(DeltaFamily {
        members: members.into_iter().flatten().collect(),
    })
}

/// Δ for rank 2 and 3 via connectivity: `I` is in Δ when it is empty, is
/// everything, `C_I` is disconnected, or (rank 3) the complex of the
/// complement is disconnected. Betti numbers come from component counts and
/// the Euler characteristic.
pub fn delta_fast_lowdim(
    fan: &StackyFan,
    cap: usize,
    exec: Execution,
) -> Result<DeltaFamily, ComputeError> {
    let m = fan.rank();
    if m != 2 && m != 3 {
        return Err(ComputeError::Precondition(format!(
            "the connectivity shortcut needs rank 2 or 3, fan has rank {m}"
        )));
    }
    let n = fan.n();
    if n > cap || n >= 63 {
        return Err(ComputeError::DeltaCap { n, cap });
    }
    let subsets = subsets_in_order(n);
    let components: Vec<usize> = exec::map(exec, &subsets, |set| complex_ci(fan, set).components());
    let index_of = |set: &[usize]| -> usize {
        subsets
            .binary_search_by(|s| s.len().cmp(&set.len()).then_with(|| s.as_slice().cmp(set)))
            .expect("subset listed")
    };
    let members = exec::map(exec, &subsets, |set| {
        let k = set.len();
        let disconnected = |idx: usize| components[idx] > 1;
        let in_delta = k == 0
            || k == n
            || disconnected(index_of(set))
            || (m == 3 && disconnected(index_of(&complement(set, n))));
        if !in_delta {
            return None;
        }
        let cx = complex_ci(fan, set);
        Some(DeltaMember {
            index_set: set.clone(),
            betti: betti_from_euler(&cx, m, components[index_of(set)], k == n),
        })
    });
    Ok(DeltaFamily {
        members: members.into_iter().flatten().collect(),
    })
}

/// Betti numbers of a complex of dimension < m inside the boundary sphere of
/// a complete fan: top homology only for the whole sphere, and the one
/// remaining unknown (rank 3, `b̃_1`) from the reduced Euler characteristic.
fn betti_from_euler(cx: &SimplicialComplex, m: usize, components: usize, whole: bool) -> BettiVector {
    let mut ranks = vec![0u64; m + 1];
    let empty = cx.faces().len() == 1;
    ranks[0] = u64::from(empty);
    if !empty {
        ranks[1] = (components - 1) as u64;
    }
    if whole {
        ranks[m] = 1;
    }
    if m == 3 {
        // chi~ = sum_k (-1)^k f_k = sum_k (-1)^k b~_k over k = -1..2
        let chi: i64 = (-1..=2isize)
            .map(|k| {
                let f = cx.faces_of_dim(k).count() as i64;
                if k.rem_euclid(2) == 0 {
                    f
                } else {
                    -f
                }
            })
            .sum();
        let b1 = ranks[1] as i64 + ranks[3] as i64 - ranks[0] as i64 - chi;
        ranks[2] = b1 as u64;
    }
    BettiVector { ranks }
}

struct UnionFind {
    labels: Vec<usize>,
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(labels: &[usize]) -> Self {
        UnionFind {
            labels: labels.to_vec(),
            parent: (0..labels.len()).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ia = self.labels.binary_search(&a).expect("vertex");
        let ib = self.labels.binary_search(&b).expect("vertex");
        let (ra, rb) = (self.find(ia), self.find(ib));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn supp_examples() {
        let fan = p2();
        let full = supp(&fan, &[0, 1, 2]);
        assert_eq!(full.faces().len(), 1 + 3 + 3);
        assert_eq!(supp(&fan, &[-1, -2, -1]).faces(), &[Vec::<usize>::new()]);
        let two = supp(&p1p1(), &[0, 0, -1, -1]);
        assert_eq!(two.faces(), &[vec![], vec![0], vec![1]]);
        assert_eq!(complex_ci(&p1p1(), &[0, 1]), two);
    }

    #[test]
    fn betti_examples() {
        let empty = SimplicialComplex::from_generators(&[]);
        assert_eq!(reduced_betti(&empty, 2).ranks(), &[1, 0, 0]);
        let circle = complex_ci(&p2(), &[0, 1, 2]);
        assert_eq!(reduced_betti(&circle, 2).ranks(), &[0, 0, 1]);
        let points = complex_ci(&p1p1(), &[0, 1]);
        assert_eq!(reduced_betti(&points, 2).ranks(), &[0, 1, 0]);
        let edge = complex_ci(&p2(), &[0, 1]);
        assert!(reduced_betti(&edge, 2).is_zero());
    }

    #[test]
    fn delta_examples() {
        let d = delta_set(&p2(), DEFAULT_DELTA_CAP, Execution::Sequential).unwrap();
        let sets: Vec<_> = d.index_sets().cloned().collect();
        assert_eq!(sets, vec![vec![], vec![0, 1, 2]]);
        let d = delta_set(&p1p1(), DEFAULT_DELTA_CAP, Execution::Sequential).unwrap();
        let sets: Vec<_> = d.index_sets().cloned().collect();
        assert_eq!(sets, vec![vec![], vec![0, 1], vec![2, 3], vec![0, 1, 2, 3]]);
        assert_eq!(delta_fast_lowdim(&p1p1(), 16, Execution::Sequential).unwrap(), d);
    }

    #[test]
    fn delta_cap_is_enforced() {
        let err = delta_set(&p2(), 2, Execution::Sequential).unwrap_err();
        assert_eq!(err, ComputeError::DeltaCap { n: 3, cap: 2 });
    }

    #[test]
    fn betti_accessor() {
        let b = BettiVector::from_ranks(vec![0, 2, 1]);
        assert_eq!(b.get(-1), 0);
        assert_eq!(b.get(0), 2);
        assert_eq!(b.get(1), 1);
        assert_eq!(b.get(5), 0);
        assert_eq!(b.get(-3), 0);
    }
}

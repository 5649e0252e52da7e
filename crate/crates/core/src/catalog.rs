//! Named example fans in ranks 1 to 3, including stacky variants with
//! non-primitive ray generators or torsion in the Picard group.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::FanError;
use crate::fan::StackyFan;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> StackyFan,
}

impl CatalogEntry {
    pub fn fan(&self) -> StackyFan {
        (self.build)()
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        entry("P1", "projective line", || rank_one(&[1, -1])),
        entry("P(1,2)", "weighted projective line, rays 2 and -1", || rank_one(&[2, -1])),
        entry("P1-gerbe", "rays 2 and -2; Picard group Z + Z/2", || rank_one(&[2, -2])),
        entry("P2", "projective plane", || {
            planar(&[[1, 0], [0, 1], [-1, -1]])
        }),
        entry("P2-stacky", "projective plane with ray generator (2,0)", || {
            planar(&[[2, 0], [0, 1], [-1, -1]])
        }),
        entry("P1xP1", "product of two projective lines", || {
            planar(&[[1, 0], [-1, 0], [0, 1], [0, -1]])
        }),
        entry("P1xP1-stacky", "P1xP1 with ray generators (2,0) and (0,3)", || {
            planar(&[[2, 0], [-1, 0], [0, 3], [0, -1]])
        }),
        entry("P1-gerbe-x-P1", "rays (2,0),(-2,0),(0,1),(0,-1); torsion Z/2", || {
            planar(&[[2, 0], [-2, 0], [0, 1], [0, -1]])
        }),
        entry("F1", "Hirzebruch surface F1, one collinear pair", || {
            planar(&[[1, 0], [0, 1], [-1, 1], [0, -1]])
        }),
        entry("pentagon", "five rays, no collinear pair", || {
            planar(&[[1, 0], [1, 2], [-1, 1], [-2, -1], [1, -2]])
        }),
        entry("hexagon", "six rays, three collinear pairs", || {
            planar(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]])
        }),
        entry("one-pair-stacky", "rays (1,0),(0,1),(-3,0),(1,-2)", || {
            planar(&[[1, 0], [0, 1], [-3, 0], [1, -2]])
        }),
        entry("P3", "projective space of dimension 3", || {
            simplex3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]])
        }),
        entry("P3-stacky", "P3 with ray generator (2,0,0)", || {
            simplex3(&[[2, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]])
        }),
        entry("P(1,1,2,3)", "weighted projective 3-space", || {
            simplex3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -2, -3]])
        }),
        entry("P1xP2", "product of a line and a plane", p1xp2),
        entry("P1xP1xP1", "product of three projective lines", p1xp1xp1),
        entry("Bl-pt-P3", "P3 blown up at a torus-fixed point; one collinear pair", || {
            star_subdivide_p3(&[1, 1, 1], &[0, 1, 2])
        }),
        entry("Bl-line-P3", "P3 blown up along a torus-invariant line", || {
            star_subdivide_p3(&[1, 1, 0], &[0, 1])
        }),
        entry("Bl-pt-P3-weighted", "weighted blowup of P3, new ray (1,1,2)", || {
            star_subdivide_p3(&[1, 1, 2], &[0, 1, 2])
        }),
    ]
}

fn entry(name: &'static str, description: &'static str, build: fn() -> StackyFan) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        build,
    }
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn by_name(name: &str) -> Result<StackyFan, FanError> {
    entries()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .map(|e| e.fan())
        .ok_or_else(|| FanError::UnknownCatalog(name.to_string()))
}

fn rank_one(rays: &[i64]) -> StackyFan {
    StackyFan::new(
        1,
        rays.iter().map(|&r| vec![r]).collect(),
        (0..rays.len()).map(|i| vec![i]).collect(),
    )
    .expect("catalog fan")
}

/// A complete planar fan whose cones join angularly adjacent rays. Ray
/// order is kept as given.
pub fn planar(rays: &[[i64; 2]]) -> StackyFan {
    let mut order: Vec<usize> = (0..rays.len()).collect();
    order.sort_by(|&a, &b| angle_cmp(rays[a], rays[b]));
    let k = order.len();
    let cones = (0..k).map(|j| vec![order[j], order[(j + 1) % k]]).collect();
    StackyFan::new(2, rays.iter().map(|r| r.to_vec()).collect(), cones).expect("catalog fan")
}

fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    let half = |v: [i64; 2]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

fn simplex3(rays: &[[i64; 3]; 4]) -> StackyFan {
    StackyFan::new(
        3,
        rays.iter().map(|r| r.to_vec()).collect(),
        combinations(4, 3),
    )
    .expect("catalog fan")
}

fn p1xp2() -> StackyFan {
    let rays = vec![
        vec![1, 0, 0],
        vec![-1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![0, -1, -1],
    ];
    let mut cones = Vec::new();
    for a in [0, 1] {
        for pair in combinations(3, 2) {
            cones.push(vec![a, pair[0] + 2, pair[1] + 2]);
        }
    }
    StackyFan::new(3, rays, cones).expect("catalog fan")
}

fn p1xp1xp1() -> StackyFan {
    let rays = vec![
        vec![1, 0, 0],
        vec![-1, 0, 0],
        vec![0, 1, 0],
        vec![0, -1, 0],
        vec![0, 0, 1],
        vec![0, 0, -1],
    ];
    let mut cones = Vec::new();
    for x in 0..2 {
        for y in 2..4 {
            for z in 4..6 {
                cones.push(vec![x, y, z]);
            }
        }
    }
    StackyFan::new(3, rays, cones).expect("catalog fan")
}

/// Star subdivision of the P3 fan at a new ray `u` in the relative interior
/// of the cone spanned by the given rays of P3.
fn star_subdivide_p3(u: &[i64; 3], face: &[usize]) -> StackyFan {
    let mut rays = vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![-1, -1, -1],
    ];
    rays.push(u.to_vec());
    let new = rays.len() - 1;
    let mut cones = Vec::new();
    for cone in combinations(4, 3) {
        if !face.iter().all(|f| cone.contains(f)) {
            cones.push(cone);
            continue;
        }
        for &drop in face {
            let mut c: Vec<usize> = cone.iter().copied().filter(|&r| r != drop).collect();
            c.push(new);
            cones.push(c);
        }
    }
    StackyFan::new(3, rays, cones).expect("catalog fan")
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

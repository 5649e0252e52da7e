//! Independent oracles: cohomology by brute force over characters in a box,
//! with its own complex construction and modular rank, and closed forms for
//! projective spaces and products.

#![allow(dead_code)]

use htriv_core::StackyFan;

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank modulo a large prime; equals the rational rank for the small
/// boundary matrices used here.
pub fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c].rem_euclid(P) != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], P - 2);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][c].rem_euclid(P) * inv % P;
                if f != 0 {
                    for k in 0..cols {
                        rows[i][k] = (rows[i][k] - f * rows[rank][k]).rem_euclid(P);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers (indices -1..m-1) of the complex of subsets of
/// `support` lying in some maximal cone.
pub fn betti_of_support(fan: &StackyFan, support: &[usize]) -> Vec<usize> {
    let m = fan.rank();
    let cones = fan.max_cones();
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m + 1];
    let k = support.len();
    for mask in 0u32..(1 << k) {
        let face: Vec<usize> = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| support[b]).collect();
        if face.len() <= m && cones.iter().any(|c| face.iter().all(|x| c.contains(x))) {
            by_size[face.len()].push(face);
        }
    }
    for v in &mut by_size {
        v.sort();
    }
    let mut ranks = vec![0usize; m + 2];
    for size in 1..=m {
        let rows: Vec<Vec<i64>> = by_size[size]
            .iter()
            .map(|f| {
                let mut row = vec![0i64; by_size[size - 1].len()];
                for d in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(d);
                    let col = by_size[size - 1].iter().position(|g| *g == sub).unwrap();
                    row[col] = if d % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[size] = if rows.is_empty() { 0 } else { rank_mod_p(rows) };
    }
    (0..=m)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// `h^j` from the sum over all characters `f` with `|f|_inf <= radius`.
/// Panics if a character on the box boundary contributes, since then the
/// box may be too small.
pub fn brute_cohomology(fan: &StackyFan, a: &[i64], radius: i64) -> Vec<u64> {
    let m = fan.rank();
    let mut h = vec![0u64; m + 1];
    let side = (2 * radius + 1) as usize;
    for idx in 0..side.pow(m as u32) {
        let mut rem = idx;
        let f: Vec<i64> = (0..m)
            .map(|_| {
                let x = (rem % side) as i64 - radius;
                rem /= side;
                x
            })
            .collect();
        let support: Vec<usize> = (0..fan.n())
            .filter(|&i| a[i] + fan.ray(i).iter().zip(&f).map(|(v, w)| v * w).sum::<i64>() >= 0)
            .collect();
        let betti = betti_of_support(fan, &support);
        if betti.iter().all(|&b| b == 0) {
            continue;
        }
        assert!(
            f.iter().all(|x| x.abs() < radius),
            "contribution on the box boundary at f = {f:?}; enlarge the radius"
        );
        for j in 0..=m {
            h[j] += betti[m - j] as u64;
        }
    }
    h
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `h^*(P^k, O(d))`.
pub fn projective_space(k: usize, d: i64) -> Vec<u64> {
    let k_i = k as i64;
    let mut h = vec![0u64; k + 1];
    if d >= 0 {
        h[0] = binom(d + k_i, k_i);
    } else if d <= -k_i - 1 {
        h[k] = binom(-d - 1, k_i);
    }
    h
}

/// Cohomology of an exterior tensor product.
pub fn kunneth(x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut h = vec![0u64; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            h[i + j] += a * b;
        }
    }
    h
}

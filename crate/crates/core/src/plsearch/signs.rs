use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::pl::PlFunction;
use crate::error::ComputeError;
use crate::exactlin::{rat, rational_kernel, RatMatrix};
use crate::fan::{pair, StackyFan};

/// `f − (μ·v_i)_i` for a linear form `μ` with `μ·v_s = f(v_s)`, chosen so the
/// result is nonzero at every ray off the line through `v_s`.
///
/// `μ` runs over `μ0 + Σ_k t_k b_k` with `t = (k, k², ...)`, `k = 0, 1, ...`,
/// where `b` spans the forms vanishing at `v_s`. Each constraint
/// `μ·v_i ≠ f(v_i)` fails for at most `m − 1` values of `k`, so the search
/// stops within `(n − 1)(m − 1) + 1` steps.
pub fn normalize_at_ray(fan: &StackyFan, f: &PlFunction, s: usize) -> PlFunction {
    assert_eq!(f.values.len(), fan.n(), "value count");
    let vs = fan.ray_rational(s);
    let norm: BigRational = vs.iter().map(|x| x * x).sum();
    let scale = &f.values[s] / norm;
    let mu0: Vec<BigRational> = vs.iter().map(|x| x * &scale).collect();
    let directions = rational_kernel(&RatMatrix::from_rows(&[vs]));
    let pairs = fan.collinear_pairs();
    let off_line: Vec<usize> = (0..fan.n())
        .filter(|&i| i != s && !pairs.contains(&(i.min(s), i.max(s))))
        .collect();
    let mut k = 0i64;
    loop {
        let mut mu = mu0.clone();
        let mut t = rat(1);
        for b in &directions {
            t *= rat(k);
            for (x, y) in mu.iter_mut().zip(b) {
                *x += &t * y;
            }
        }
        let g = PlFunction::new(
            (0..fan.n())
                .map(|i| &f.values[i] - pair(fan.ray(i), &mu))
                .collect(),
        );
        if off_line.iter().all(|&i| !g.values[i].is_zero()) {
            return g;
        }
        k += 1;
    }
}

/// Sign changes of `g` around the link cycle of ray `s` in a rank-3 fan,
/// with `>= 0` and `< 0` as the two signs.
pub fn sign_changes(fan: &StackyFan, g: &PlFunction, s: usize) -> Result<usize, ComputeError> {
    if fan.rank() != 3 {
        return Err(ComputeError::Precondition(format!(
            "sign changes are counted around link cycles of rank-3 fans, fan has rank {}",
            fan.rank()
        )));
    }
    if !g.values[s].is_zero() {
        return Err(ComputeError::Precondition(format!(
            "g does not vanish at ray {}",
            s + 1
        )));
    }
    let cycle = fan
        .neighborhood(s)
        .ok()
        .and_then(|nb| nb.cycle)
        .ok_or_else(|| ComputeError::Precondition(format!("ray {} has no link cycle", s + 1)))?;
    if let Some(&i) = cycle.iter().find(|&&i| g.values[i].is_zero()) {
        return Err(ComputeError::Precondition(format!(
            "g vanishes at ray {}, which spans a 2-cone with ray {}",
            i + 1,
            s + 1
        )));
    }
    let negative: Vec<bool> = cycle.iter().map(|&i| g.values[i].is_negative()).collect();
    let k = negative.len();
    Ok((0..k).filter(|&j| negative[j] != negative[(j + 1) % k]).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1p2() -> StackyFan {
        StackyFan::new(
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
        .unwrap()
    }

    #[test]
    fn normalization_examples() {
        let p2 = StackyFan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let g = normalize_at_ray(&p2, &PlFunction::from_ints(&[1, 0, 0]), 0);
        assert!(g.values[0].is_zero());
        assert!(!g.values[1].is_zero() && !g.values[2].is_zero());

        let p1p1 = StackyFan::new(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        )
        .unwrap();
        let g = normalize_at_ray(&p1p1, &PlFunction::from_ints(&[1, 1, 0, 0]), 0);
        assert!(g.values[0].is_zero());
        assert_eq!(g.values[1], rat(2));

        let fan = p1p2();
        let w = vec![rat(2), rat(-1), rat(5)];
        let g = normalize_at_ray(&fan, &PlFunction::linear(&fan, &w), 2);
        // still linear, now vanishing at ray 2 and nowhere off its line
        assert!(super::super::pl::is_linear(&fan, &g));
        assert!(g.values[2].is_zero());
        assert_eq!(g.values.iter().filter(|x| x.is_zero()).count(), 1);
    }

    #[test]
    fn counting_examples() {
        let fan = p1p2();
        // cycle around ray 2 is (0, 3, 1, 4)
        let g = PlFunction::from_ints(&[1, -1, 0, 1, -1]);
        assert_eq!(sign_changes(&fan, &g, 2).unwrap(), 2);
        let g = PlFunction::from_ints(&[1, 1, 0, 1, 1]);
        assert_eq!(sign_changes(&fan, &g, 2).unwrap(), 0);
        let g = PlFunction::from_ints(&[1, 1, 0, -1, -1]);
        assert_eq!(sign_changes(&fan, &g, 2).unwrap(), 4);
        let g = PlFunction::from_ints(&[1, 1, 1, -1, -1]);
        assert!(sign_changes(&fan, &g, 2).is_err());
        let g = PlFunction::from_ints(&[1, 1, 0, 0, -1]);
        assert!(sign_changes(&fan, &g, 2).is_err());
    }
}

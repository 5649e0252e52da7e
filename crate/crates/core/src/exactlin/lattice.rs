//! Integer points of rational polyhedra given by non-strict systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::fm::{feasible, fm_eliminate, Bounds, Constraint, LinearSystem, Relation};
use super::matrix::{common_denominator, primitive_integer_vector};

/// Default enumeration guardrail.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticePoints {
    /// Every integer point, in lexicographic order. Never empty.
    Points(Vec<Vec<BigInt>>),
    Infeasible,
    CapExceeded { cap: u64 },
    /// The polyhedron contains `point` and is closed under adding
    /// non-negative multiples of the integer vector `direction`.
    UnboundedWithLatticePoint {
        point: Vec<BigInt>,
        direction: Vec<BigInt>,
    },
}

impl LatticePoints {
    /// Number of points for the two finite outcomes.
    pub fn count(&self) -> Option<usize> {
        match self {
            LatticePoints::Points(p) => Some(p.len()),
            LatticePoints::Infeasible => Some(0),
            _ => None,
        }
    }
}

/// All integer points of `sys` (which must not contain strict rows).
///
/// The polyhedron is projected onto each prefix of its variables once. The
/// enumeration then walks the integers admitted by the exact bounds on
/// `x_0`, substitutes, reads the bounds on `x_1` from the next projection,
/// and so on. Every integer tried at any depth counts against `cap`.
///
/// An unbounded polyhedron is first tested for a lattice point inside a box
/// large enough to contain one whenever any exists; if it has one it has
/// infinitely many, which is reported as `UnboundedWithLatticePoint`.
pub fn integer_points(sys: &LinearSystem, cap: u64) -> LatticePoints {
    search(sys, cap, Mode::All)
}

/// Like [`integer_points`] but stops at the lexicographically first point.
pub fn first_integer_point(sys: &LinearSystem, cap: u64) -> LatticePoints {
    search(sys, cap, Mode::First)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    First,
}

fn search(sys: &LinearSystem, cap: u64, mode: Mode) -> LatticePoints {
    assert!(
        !sys.has_strict(),
        "integer_points expects non-strict relations only"
    );
    if cap == 0 {
        return LatticePoints::CapExceeded { cap };
    }
    if feasible(sys).is_none() {
        return LatticePoints::Infeasible;
    }
    match recession_direction(sys) {
        None => {
            let walker = Walker::new(sys);
            match walker.run(cap, mode) {
                Walk::Done(points) if points.is_empty() => LatticePoints::Infeasible,
                Walk::Done(points) => LatticePoints::Points(points),
                Walk::Cap => LatticePoints::CapExceeded { cap },
            }
        }
        Some(direction) => {
            let boxed = with_box(sys, &lattice_search_radius(sys));
            match Walker::new(&boxed).run(cap, Mode::First) {
                Walk::Done(mut points) => match points.pop() {
                    Some(point) => LatticePoints::UnboundedWithLatticePoint { point, direction },
                    None => LatticePoints::Infeasible,
                },
                Walk::Cap => LatticePoints::CapExceeded { cap },
            }
        }
    }
}

/// A nonzero primitive integer vector `d` with `sys` closed under `+ d`,
/// or `None` when the (nonempty) polyhedron is bounded.
pub fn recession_direction(sys: &LinearSystem) -> Option<Vec<BigInt>> {
    let hom = sys.homogenized();
    let m = sys.vars();
    for j in 0..m {
        for sign in [1i64, -1] {
            let mut probe = hom.clone();
            let mut unit = vec![BigRational::zero(); m];
            unit[j] = BigRational::from_integer(sign.into());
            probe.push(Constraint::ge(unit, BigRational::one()));
            if let Some(d) = feasible(&probe) {
                return Some(primitive_integer_vector(&d));
            }
        }
    }
    None
}

/// Radius `(m + 1) * D`, where `D` bounds every subdeterminant of the
/// integer-scaled constraint matrix `[A | b]` (Hadamard bound over the
/// largest rows). An integer polyhedron that has a lattice point has one
/// within this sup-norm radius.
fn lattice_search_radius(sys: &LinearSystem) -> BigInt {
    let m = sys.vars();
    let mut norms: Vec<BigInt> = sys
        .rows()
        .iter()
        .map(|r| {
            let mut all = r.coeffs.clone();
            all.push(r.rhs.clone());
            let den = common_denominator(&all);
            let sq: BigInt = all
                .iter()
                .map(|x| {
                    let v = (x * BigRational::from_integer(den.clone())).to_integer();
                    &v * &v
                })
                .sum();
            let root = sq.sqrt();
            let norm = if &root * &root == sq { root } else { root + 1 };
            norm.max(BigInt::one())
        })
        .collect();
    norms.sort_by(|a, b| b.cmp(a));
    let det_bound: BigInt = norms.iter().take(m + 1).product();
    BigInt::from(m as u64 + 1) * det_bound.max(BigInt::one())
}

fn with_box(sys: &LinearSystem, radius: &BigInt) -> LinearSystem {
    let m = sys.vars();
    let mut out = sys.clone();
    let r = BigRational::from_integer(radius.clone());
    for j in 0..m {
        let mut unit = vec![BigRational::zero(); m];
        unit[j] = BigRational::one();
        out.push(Constraint::ge(unit.clone(), -r.clone()));
        out.push(Constraint::le(unit, r.clone()));
    }
    out
}

enum Walk {
    Done(Vec<Vec<BigInt>>),
    Cap,
}

/// Depth-first walk over the integer points of a bounded polyhedron.
struct Walker {
    /// `prefix[k]` is the projection onto variables `0..=k`.
    prefix: Vec<LinearSystem>,
    vars: usize,
}

impl Walker {
    fn new(sys: &LinearSystem) -> Self {
        let m = sys.vars();
        let mut prefix = Vec::with_capacity(m);
        let mut cur = sys.clone();
        for k in (1..m).rev() {
            let next = fm_eliminate(&cur, k);
            prefix.push(std::mem::replace(&mut cur, next));
        }
        if m > 0 {
            prefix.push(cur);
        }
        prefix.reverse();
        Self { prefix, vars: m }
    }

    fn run(&self, cap: u64, mode: Mode) -> Walk {
        let mut points = Vec::new();
        let mut budget = cap;
        if self.vars == 0 {
            // the empty point; feasibility was checked by the caller
            points.push(Vec::new());
            return Walk::Done(points);
        }
        let mut point = Vec::with_capacity(self.vars);
        match self.descend(&mut point, &mut points, &mut budget, mode) {
            Ok(()) => Walk::Done(points),
            Err(()) => Walk::Cap,
        }
    }

    /// Returns `Err` when the budget runs out.
    fn descend(
        &self,
        point: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
        budget: &mut u64,
        mode: Mode,
    ) -> Result<(), ()> {
        let k = point.len();
        let Some((lo, hi)) = self.range(k, point) else {
            return Ok(());
        };
        let mut x = lo;
        while x <= hi {
            if *budget == 0 {
                return Err(());
            }
            *budget -= 1;
            point.push(x.clone());
            if k + 1 == self.vars {
                out.push(point.clone());
            } else {
                self.descend(point, out, budget, mode)?;
            }
            point.pop();
            if mode == Mode::First && !out.is_empty() {
                return Ok(());
            }
            x += 1;
        }
        Ok(())
    }

    /// Integer range of `x_k` given fixed `x_0..x_{k-1}`; `None` if empty.
    fn range(&self, k: usize, fixed: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let mut bounds = Bounds::default();
        for r in self.prefix[k].rows() {
            let mut rest = r.rhs.clone();
            for (j, val) in fixed.iter().enumerate() {
                if !r.coeffs[j].is_zero() {
                    rest -= &r.coeffs[j] * BigRational::from_integer(val.clone());
                }
            }
            let c = &r.coeffs[k];
            if c.is_zero() {
                let zero = BigRational::zero();
                let ok = match r.relation {
                    Relation::Ge => zero >= rest,
                    Relation::Gt => zero > rest,
                    Relation::Eq => zero == rest,
                };
                if !ok {
                    return None;
                }
                continue;
            }
            bounds.add(c, r.relation, &rest);
        }
        let lo = bounds.int_lower().expect("bounded polyhedron has a lower bound");
        let hi = bounds.int_upper().expect("bounded polyhedron has an upper bound");
        (lo <= hi).then_some((lo, hi))
    }
}

/// Naive enumeration over an explicit integer box; test oracle.
pub fn box_points(sys: &LinearSystem, lo: &[i64], hi: &[i64]) -> Vec<Vec<BigInt>> {
    let m = sys.vars();
    assert_eq!(lo.len(), m);
    assert_eq!(hi.len(), m);
    let mut out = Vec::new();
    let mut cur: Vec<i64> = lo.to_vec();
    if m == 0 {
        if sys.is_satisfied_by(&[]) {
            out.push(Vec::new());
        }
        return out;
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    loop {
        let q: Vec<BigRational> = cur
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        if sys.is_satisfied_by(&q) {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = lo[j];
                }
                break;
            }
        }
    }
}

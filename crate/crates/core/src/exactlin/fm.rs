//! Linear inequality systems over the rationals and Fourier–Motzkin
//! elimination.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::dot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `coeffs · x >= rhs`
    Ge,
    /// `coeffs · x > rhs`
    Gt,
    /// `coeffs · x = rhs`
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }

    fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// One row `coeffs · x (>=|>|=) rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn ge(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn gt(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self::new(coeffs, Relation::Gt, rhs)
    }

    pub fn eq(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// `coeffs · x <= rhs`, stored as `-coeffs · x >= -rhs`.
    pub fn le(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self::ge(negate(&coeffs), -rhs)
    }

    /// `coeffs · x < rhs`, stored as `-coeffs · x > -rhs`.
    pub fn lt(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Self::gt(negate(&coeffs), -rhs)
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Gt
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        self.relation.holds(&dot(&self.coeffs, x), &self.rhs)
    }

    /// For a constant row, whether `0 (rel) rhs` holds.
    fn constant_holds(&self) -> bool {
        self.relation.holds(&BigRational::zero(), &self.rhs)
    }

    fn without(&self, var: usize) -> Constraint {
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(var);
        Constraint::new(coeffs, self.relation, self.rhs.clone())
    }

    /// Scales the row so its first nonzero coefficient has absolute value 1
    /// (or exactly 1 for equalities).
    fn normalized(mut self) -> Constraint {
        let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return self;
        };
        let scale = if self.relation == Relation::Eq {
            lead.recip()
        } else {
            lead.abs().recip()
        };
        if scale.is_one() {
            return self;
        }
        for c in &mut self.coeffs {
            *c *= &scale;
        }
        self.rhs *= &scale;
        self
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}] {} {}", coeffs.join(", "), self.relation.symbol(), self.rhs)
    }
}

fn negate(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|x| -x).collect()
}

/// A finite conjunction of rational linear constraints in `vars` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(vars: usize, rows: Vec<Constraint>) -> Self {
        let mut sys = Self::new(vars);
        for r in rows {
            sys.push(r);
        }
        sys
    }

    pub fn push(&mut self, row: Constraint) {
        assert_eq!(
            row.coeffs.len(),
            self.vars,
            "constraint length must equal the variable count"
        );
        self.rows.push(row);
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn has_strict(&self) -> bool {
        self.rows.iter().any(Constraint::is_strict)
    }

    /// True when some row has no variables left and is false.
    pub fn has_contradiction(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.is_constant() && !r.constant_holds())
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.vars && self.rows.iter().all(|r| r.is_satisfied_by(x))
    }

    /// Fixes `x[var] = value` and drops that column.
    pub fn substitute(&self, var: usize, value: &BigRational) -> LinearSystem {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = r.without(var);
                out.rhs -= &r.coeffs[var] * value;
                out
            })
            .collect();
        LinearSystem {
            vars: self.vars - 1,
            rows: simplify(rows),
        }
    }

    /// The homogeneous system `coeffs · d (rel) 0` with every relation made
    /// non-strict; its solutions are the recession directions of the closure.
    pub fn homogenized(&self) -> LinearSystem {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let rel = if r.relation == Relation::Eq {
                    Relation::Eq
                } else {
                    Relation::Ge
                };
                Constraint::new(r.coeffs.clone(), rel, BigRational::zero())
            })
            .collect();
        LinearSystem {
            vars: self.vars,
            rows,
        }
    }
}

/// Normalizes rows, drops tautologies, and keeps only the tightest row for
/// each coefficient direction. A contradiction collapses the system to one
/// false row.
fn simplify(rows: Vec<Constraint>) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::with_capacity(rows.len());
    let mut seen: HashMap<(Vec<BigRational>, bool), usize> = HashMap::new();
    for row in rows {
        if row.is_constant() {
            if row.constant_holds() {
                continue;
            }
            return vec![row];
        }
        let row = row.normalized();
        let is_eq = row.relation == Relation::Eq;
        match seen.get(&(row.coeffs.clone(), is_eq)) {
            None => {
                seen.insert((row.coeffs.clone(), is_eq), out.len());
                out.push(row);
            }
            Some(&idx) => {
                let kept = &mut out[idx];
                if is_eq {
                    if kept.rhs != row.rhs {
                        let width = row.coeffs.len();
                        return vec![Constraint::eq(
                            vec![BigRational::zero(); width],
                            BigRational::one(),
                        )];
                    }
                } else if row.rhs > kept.rhs || (row.rhs == kept.rhs && row.is_strict()) {
                    *kept = row;
                }
            }
        }
    }
    out
}

/// Projects out variable `var`: the result, in one fewer variable, is
/// satisfiable exactly when `sys` is satisfiable for some real value of
/// `var`. An equality involving `var` is used for substitution; otherwise
/// every lower bound is paired with every upper bound, and a pair involving a
/// strict row stays strict.
pub fn fm_eliminate(sys: &LinearSystem, var: usize) -> LinearSystem {
    assert!(var < sys.vars, "variable index out of range");
    let rows = &sys.rows;

    if let Some(pivot) = rows
        .iter()
        .position(|r| r.relation == Relation::Eq && !r.coeffs[var].is_zero())
    {
        let eq = &rows[pivot];
        let out = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, r)| {
                let factor = &r.coeffs[var] / &eq.coeffs[var];
                let coeffs = r
                    .coeffs
                    .iter()
                    .zip(&eq.coeffs)
                    .map(|(a, b)| a - &factor * b)
                    .collect();
                Constraint::new(coeffs, r.relation, &r.rhs - &factor * &eq.rhs).without(var)
            })
            .collect();
        return LinearSystem {
            vars: sys.vars - 1,
            rows: simplify(out),
        };
    }

    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for r in rows {
        let c = &r.coeffs[var];
        if c.is_zero() {
            out.push(r.without(var));
        } else if c.is_positive() {
            lower.push(r);
        } else {
            upper.push(r);
        }
    }
    for lo in &lower {
        for up in &upper {
            let a = &lo.coeffs[var];
            let b = -&up.coeffs[var];
            let coeffs: Vec<BigRational> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(x, y)| x * &b + y * a)
                .collect();
            let rhs = &lo.rhs * &b + &up.rhs * a;
            let rel = if lo.is_strict() || up.is_strict() {
                Relation::Gt
            } else {
                Relation::Ge
            };
            out.push(Constraint::new(coeffs, rel, rhs).without(var));
        }
    }
    LinearSystem {
        vars: sys.vars - 1,
        rows: simplify(out),
    }
}

/// Exact feasibility over the rationals. Returns a witness satisfying every
/// row (strict rows strictly) when the system is feasible.
///
/// Variables are eliminated one at a time, always choosing the one that
/// appears in the fewest strict rows (lowest index on ties); the witness is
/// then rebuilt by back-substitution through the saved projections.
pub fn feasible(sys: &LinearSystem) -> Option<Vec<BigRational>> {
    let mut current = LinearSystem {
        vars: sys.vars,
        rows: simplify(sys.rows.clone()),
    };
    let mut columns: Vec<usize> = (0..sys.vars).collect();
    let mut stack: Vec<(LinearSystem, Vec<usize>, usize)> = Vec::with_capacity(sys.vars);

    while current.vars > 0 {
        if current.has_contradiction() {
            return None;
        }
        let pos = (0..current.vars)
            .min_by_key(|&p| {
                let strict = current
                    .rows
                    .iter()
                    .filter(|r| r.is_strict() && !r.coeffs[p].is_zero())
                    .count();
                (strict, columns[p])
            })
            .expect("at least one variable");
        let next = fm_eliminate(&current, pos);
        let mut next_columns = columns.clone();
        next_columns.remove(pos);
        stack.push((current, columns, pos));
        current = next;
        columns = next_columns;
    }
    if current.has_contradiction() {
        return None;
    }

    let mut values: Vec<Option<BigRational>> = vec![None; sys.vars];
    while let Some((s, cols, pos)) = stack.pop() {
        let mut bounds = Bounds::default();
        for r in &s.rows {
            let c = &r.coeffs[pos];
            let mut rest = r.rhs.clone();
            for (j, coeff) in r.coeffs.iter().enumerate() {
                if j != pos && !coeff.is_zero() {
                    rest -= coeff * values[cols[j]].as_ref().expect("assigned later variable");
                }
            }
            if c.is_zero() {
                debug_assert!(r.relation.holds(&BigRational::zero(), &rest));
                continue;
            }
            bounds.add(c, r.relation, &rest);
        }
        values[cols[pos]] = Some(bounds.pick());
    }
    let witness: Vec<BigRational> = values
        .into_iter()
        .map(|v| v.expect("every variable assigned"))
        .collect();
    debug_assert!(sys.is_satisfied_by(&witness));
    Some(witness)
}

/// Accumulated bounds on a single variable.
#[derive(Default, Debug)]
pub(crate) struct Bounds {
    pub(crate) lower: Option<(BigRational, bool)>,
    pub(crate) upper: Option<(BigRational, bool)>,
    pub(crate) fixed: Option<BigRational>,
}

impl Bounds {
    /// Adds `c * x (rel) rhs` with `c != 0`.
    pub(crate) fn add(&mut self, c: &BigRational, rel: Relation, rhs: &BigRational) {
        let v = rhs / c;
        match rel {
            Relation::Eq => {
                self.tighten_lower(v.clone(), false);
                self.tighten_upper(v.clone(), false);
                self.fixed = Some(v);
            }
            Relation::Ge | Relation::Gt => {
                let strict = rel == Relation::Gt;
                if c.is_positive() {
                    self.tighten_lower(v, strict);
                } else {
                    self.tighten_upper(v, strict);
                }
            }
        }
    }

    fn tighten_lower(&mut self, v: BigRational, strict: bool) {
        match &self.lower {
            Some((cur, cur_strict)) if *cur > v || (*cur == v && (*cur_strict || !strict)) => {}
            _ => self.lower = Some((v, strict)),
        }
    }

    fn tighten_upper(&mut self, v: BigRational, strict: bool) {
        match &self.upper {
            Some((cur, cur_strict)) if *cur < v || (*cur == v && (*cur_strict || !strict)) => {}
            _ => self.upper = Some((v, strict)),
        }
    }

    /// Smallest admissible integer, if the lower bound is finite.
    pub(crate) fn int_lower(&self) -> Option<num_bigint::BigInt> {
        self.lower.as_ref().map(|(v, strict)| {
            if *strict {
                v.floor().to_integer() + 1
            } else {
                v.ceil().to_integer()
            }
        })
    }

    /// Largest admissible integer, if the upper bound is finite.
    pub(crate) fn int_upper(&self) -> Option<num_bigint::BigInt> {
        self.upper.as_ref().map(|(v, strict)| {
            if *strict {
                v.ceil().to_integer() - 1
            } else {
                v.floor().to_integer()
            }
        })
    }

    /// A value inside the bounds: the admissible integer nearest zero when
    /// one exists, otherwise the midpoint. Only called on non-empty ranges.
    fn pick(&self) -> BigRational {
        if let Some(v) = &self.fixed {
            return v.clone();
        }
        let lo = self.int_lower();
        let hi = self.int_upper();
        let int_ok = match (&lo, &hi) {
            (Some(l), Some(h)) => l <= h,
            _ => true,
        };
        if int_ok {
            let zero = num_bigint::BigInt::zero();
            let mut x = zero;
            if let Some(l) = &lo {
                if &x < l {
                    x = l.clone();
                }
            }
            if let Some(h) = &hi {
                if &x > h {
                    x = h.clone();
                }
            }
            return BigRational::from_integer(x);
        }
        let (l, _) = self.lower.as_ref().expect("bounded");
        let (h, _) = self.upper.as_ref().expect("bounded");
        (l + h) / BigRational::from_integer(2.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn contradictory_bounds_eliminate_to_false_row() {
        let sys = LinearSystem::from_rows(
            1,
            vec![Constraint::ge(qv(&[1]), q(0)), Constraint::le(qv(&[1]), q(-1))],
        );
        let out = fm_eliminate(&sys, 0);
        assert_eq!(out.vars(), 0);
        assert!(out.has_contradiction());
        assert_eq!(out.rows(), &[Constraint::ge(vec![], q(1))]);
    }

    #[test]
    fn pairwise_combination() {
        // x + y >= 0, -x >= 0  ->  y >= 0
        let sys = LinearSystem::from_rows(
            2,
            vec![Constraint::ge(qv(&[1, 1]), q(0)), Constraint::ge(qv(&[-1, 0]), q(0))],
        );
        let out = fm_eliminate(&sys, 0);
        assert_eq!(out.rows(), &[Constraint::ge(qv(&[1]), q(0))]);
    }

    #[test]
    fn equality_substitution() {
        // x = 2, x + y > 3  ->  y > 1
        let sys = LinearSystem::from_rows(
            2,
            vec![Constraint::eq(qv(&[1, 0]), q(2)), Constraint::gt(qv(&[1, 1]), q(3))],
        );
        let out = fm_eliminate(&sys, 0);
        assert_eq!(out.rows(), &[Constraint::gt(qv(&[1]), q(1))]);
    }

    #[test]
    fn strictness_propagates() {
        let sys = LinearSystem::from_rows(
            1,
            vec![Constraint::gt(qv(&[1]), q(0)), Constraint::lt(qv(&[1]), q(0))],
        );
        assert!(fm_eliminate(&sys, 0).has_contradiction());
        assert!(feasible(&sys).is_none());
    }

    #[test]
    fn feasible_examples() {
        let sys = LinearSystem::from_rows(1, vec![Constraint::gt(qv(&[1]), q(0))]);
        let w = feasible(&sys).unwrap();
        assert_eq!(w, qv(&[1]));

        // f . v_i > 0 on the rays of the projective plane: they sum to zero
        let rays = [[1, 0], [0, 1], [-1, -1]];
        let sys = LinearSystem::from_rows(
            2,
            rays.iter().map(|v| Constraint::gt(qv(v), q(0))).collect(),
        );
        assert!(feasible(&sys).is_none());
    }

    #[test]
    fn witness_satisfies_strict_rows() {
        // 1 + f1 > 0, f2 > 0, -f1 - f2 > 0
        let sys = LinearSystem::from_rows(
            2,
            vec![
                Constraint::gt(qv(&[1, 0]), q(-1)),
                Constraint::gt(qv(&[0, 1]), q(0)),
                Constraint::gt(qv(&[-1, -1]), q(0)),
            ],
        );
        let w = feasible(&sys).unwrap();
        assert!(sys.is_satisfied_by(&w));
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = LinearSystem::new(3);
        assert_eq!(feasible(&sys).unwrap(), qv(&[0, 0, 0]));
    }
}

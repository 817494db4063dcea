//! Dense two-phase simplex over exact rationals.
//!
//! Problems are in equality standard form: maximize `c·x` subject to
//! `A x = b`, `x ≥ 0`. Bland's rule is used in both phases, so the solver
//! terminates on degenerate problems; ties in the ratio test go to the
//! smallest basic column index.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ser, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    #[serde(serialize_with = "ser::rational_opt")]
    pub value: Option<Rational>,
    #[serde(serialize_with = "ser::rational_vec")]
    pub primal: Vec<Rational>,
    /// Basic columns in row order; rows found redundant are omitted.
    pub basis: Vec<usize>,
    /// One price per constraint row of the input.
    #[serde(serialize_with = "ser::rational_vec")]
    pub dual: Vec<Rational>,
}

impl LpSolution {
    /// Columns with a strictly positive primal value.
    pub fn support(&self) -> Vec<usize> {
        self.primal.iter().enumerate().filter(|(_, x)| x.is_positive()).map(|(j, _)| j).collect()
    }
}

/// Per-column dual slacks `(yᵀA − c)_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackReport {
    #[serde(serialize_with = "ser::rational_vec")]
    pub slacks: Vec<Rational>,
    pub feasible: bool,
    /// Columns whose slack is exactly zero.
    pub tight: Vec<usize>,
    #[serde(serialize_with = "ser::rational")]
    pub dual_objective: Rational,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>, constraints: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        let lp = LinearProgram { objective, constraints, rhs };
        lp.validate()?;
        Ok(lp)
    }

    pub fn columns(&self) -> usize {
        self.objective.len()
    }

    pub fn rows(&self) -> usize {
        self.constraints.len()
    }

    fn validate(&self) -> Result<()> {
        if self.rhs.len() != self.constraints.len() {
            return Err(Error::Structural(format!(
                "{} constraint rows but {} right-hand sides",
                self.constraints.len(),
                self.rhs.len()
            )));
        }
        if let Some((i, row)) = self.constraints.iter().enumerate().find(|(_, r)| r.len() != self.objective.len()) {
            return Err(Error::Structural(format!(
                "row {i} has {} entries, objective has {}",
                row.len(),
                self.objective.len()
            )));
        }
        Ok(())
    }

    /// Same feasible region, objective `−c`.
    pub fn negated(&self) -> LinearProgram {
        LinearProgram { objective: self.objective.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// `A x = b` and `x ≥ 0`, exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.columns()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().zip(&self.rhs).all(|(row, b)| &dot(row, x) == b)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    /// Row `i` holds `B⁻¹[S A | I]` and the right-hand side last.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    columns: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().unwrap()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (i, row) in self.rows.iter().enumerate() {
            if !row[j].is_zero() {
                r -= &cost[self.basis[i]] * &row[j];
            }
        }
        r
    }

    /// Primal simplex with Bland's rule over columns `0..allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Phase {
        loop {
            let entering =
                (0..allowed).filter(|j| !self.basis.contains(j)).find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(col) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Phase::Unbounded,
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let m = lp.rows();
    let n = lp.columns();
    let signs: Vec<bool> = lp.rhs.iter().map(|b| b.is_negative()).collect();
    let rows = (0..m)
        .map(|i| {
            let flip = |v: &Rational| if signs[i] { -v } else { v.clone() };
            let mut row: Vec<Rational> = lp.constraints[i].iter().map(flip).collect();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(flip(&lp.rhs[i]));
            row
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), columns: n + m };

    // Phase 1: maximize −Σ artificials.
    let phase1: Vec<Rational> =
        (0..t.columns).map(|j| if j < n { Rational::zero() } else { -Rational::one() }).collect();
    t.run(&phase1, t.columns);
    let infeasibility: Rational = (0..m).filter(|&i| t.basis[i] >= n).map(|i| t.rhs(i).clone()).sum();
    if infeasibility.is_positive() {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            primal: Vec::new(),
            basis: Vec::new(),
            dual: Vec::new(),
        });
    }
    // Drive zero-level artificials out of the basis; rows with no original
    // column left to pivot on are redundant and dropped.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = lp.objective.clone();
    cost.extend((0..m).map(|_| Rational::zero()));
    if let Phase::Unbounded = t.run(&cost, n) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            primal: Vec::new(),
            basis: t.basis,
            dual: Vec::new(),
        });
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &j) in t.basis.iter().enumerate() {
        primal[j] = t.rhs(i).clone();
    }
    // Prices of the sign-normalized rows sit in the artificial block.
    let dual: Vec<Rational> = (0..m)
        .map(|k| {
            let y: Rational = t.basis.iter().zip(&t.rows).map(|(&j, row)| &cost[j] * &row[n + k]).sum();
            if signs[k] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpSolution { status: LpStatus::Optimal, value: Some(lp.objective_value(&primal)), primal, basis: t.basis, dual })
}

/// Slack `(yᵀA − c)_j` for every column; the dual is feasible iff all are ≥ 0.
pub fn check_dual_feasible(lp: &LinearProgram, dual: &[Rational]) -> Result<SlackReport> {
    lp.validate()?;
    if dual.len() != lp.rows() {
        return Err(Error::Structural(format!("dual has {} entries for {} rows", dual.len(), lp.rows())));
    }
    let slacks: Vec<Rational> = (0..lp.columns())
        .map(|j| {
            let ya: Rational = dual.iter().zip(&lp.constraints).map(|(y, row)| y * &row[j]).sum();
            ya - &lp.objective[j]
        })
        .collect();
    Ok(SlackReport {
        feasible: slacks.iter().all(|s| !s.is_negative()),
        tight: slacks.iter().enumerate().filter(|(_, s)| s.is_zero()).map(|(j, _)| j).collect(),
        dual_objective: dot(dual, &lp.rhs),
        slacks,
    })
}

/// Solves the square system `M x = b` exactly; `None` when `M` is singular.
pub fn solve_square(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &pivot;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank by exact Gaussian elimination.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let mut a = matrix.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let prow = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &prow[c];
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn lp(c: &[i64], a: &[&[i64]], b: &[i64]) -> LinearProgram {
        LinearProgram::new(ints(c), a.iter().map(|r| ints(r)).collect(), ints(b)).unwrap()
    }

    fn assert_certified(p: &LinearProgram, s: &LpSolution) {
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(p.is_feasible(&s.primal));
        let report = check_dual_feasible(p, &s.dual).unwrap();
        assert!(report.feasible, "{report:?}");
        assert_eq!(&report.dual_objective, s.value.as_ref().unwrap());
        for &j in &s.basis {
            assert!(report.tight.contains(&j));
        }
    }

    #[test]
    fn single_constraint() {
        let p = lp(&[1, 1], &[&[1, 1]], &[1]);
        let s = solve(&p).unwrap();
        assert_eq!(s.value, Some(int(1)));
        assert_certified(&p, &s);
    }

    #[test]
    fn forced_solution() {
        let p = lp(&[1, 0], &[&[1, -1], &[1, 1]], &[0, 1]);
        let s = solve(&p).unwrap();
        assert_eq!(s.value, Some(rat(1, 2)));
        assert_eq!(s.primal, vec![rat(1, 2), rat(1, 2)]);
        assert_certified(&p, &s);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(&[1, 0], &[&[1, 1], &[1, 1]], &[1, 2]);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Infeasible);
        let p = lp(&[1, 0], &[&[1, -1]], &[1]);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        let p = lp(&[2, 1, 0], &[&[1, 1, 1], &[2, 2, 2], &[-1, 0, 1]], &[4, 8, -1]);
        let s = solve(&p).unwrap();
        // The third row forces x3 = x1 − 1, so 2x1 + x2 = 5 on the whole region.
        assert_eq!(s.value, Some(int(5)));
        assert_certified(&p, &s);
    }

    #[test]
    fn zero_dual_reports_negative_slack() {
        let p = lp(&[1, 2], &[&[1, 1]], &[1]);
        let r = check_dual_feasible(&p, &[int(0)]).unwrap();
        assert!(!r.feasible);
        assert_eq!(r.slacks, vec![int(-1), int(-2)]);
        assert!(check_dual_feasible(&p, &[]).is_err());
    }

    #[test]
    fn structural_errors() {
        assert!(LinearProgram::new(ints(&[1, 2]), vec![ints(&[1])], ints(&[1])).is_err());
        assert!(LinearProgram::new(ints(&[1]), vec![ints(&[1])], ints(&[])).is_err());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let c = vec![rat(3, 4), int(-150), rat(1, 50), int(-6), int(0), int(0), int(0)];
        let a = vec![
            vec![rat(1, 4), int(-60), rat(-1, 25), int(9), int(1), int(0), int(0)],
            vec![rat(1, 2), int(-90), rat(-1, 50), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let p = LinearProgram::new(c, a, ints(&[0, 0, 1])).unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.value, Some(rat(1, 20)));
        assert_certified(&p, &s);
    }

    #[test]
    fn square_solve_and_rank() {
        let m = vec![ints(&[2, 1]), ints(&[1, 3])];
        assert_eq!(solve_square(&m, &ints(&[3, 5])).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        assert!(solve_square(&[ints(&[1, 2]), ints(&[2, 4])], &ints(&[1, 1])).is_none());
        assert_eq!(rank(&[ints(&[1, 2, 3]), ints(&[2, 4, 6]), ints(&[0, 1, 1])]), 2);
    }

    fn random_lp() -> impl Strategy<Value = LinearProgram> {
        (1usize..4, 2usize..6).prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(-5i64..6, n),
                prop::collection::vec(prop::collection::vec(0i64..5, n), m),
                prop::collection::vec(0i64..8, m),
            )
                .prop_map(move |(c, a, b)| {
                    // A leading all-ones row keeps the region bounded.
                    let mut rows: Vec<Vec<Rational>> = vec![vec![int(1); n]];
                    rows.extend(a.iter().map(|r| ints(r)));
                    let mut rhs = vec![int(10)];
                    rhs.extend(ints(&b));
                    LinearProgram::new(ints(&c), rows, rhs).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn strong_duality_holds(p in random_lp()) {
            let s = solve(&p).unwrap();
            if s.status == LpStatus::Optimal {
                prop_assert!(p.is_feasible(&s.primal));
                let r = check_dual_feasible(&p, &s.dual).unwrap();
                prop_assert!(r.feasible);
                prop_assert_eq!(&r.dual_objective, s.value.as_ref().unwrap());
            } else {
                prop_assert_eq!(s.status, LpStatus::Infeasible);
            }
        }

        #[test]
        fn row_permutation_keeps_the_value(p in random_lp(), seed in 0usize..24) {
            let mut q = p.clone();
            let m = q.rows();
            let k = seed % m;
            q.constraints.rotate_left(k);
            q.rhs.rotate_left(k);
            if m > 1 {
                q.constraints.swap(0, m - 1);
                q.rhs.swap(0, m - 1);
            }
            prop_assert_eq!(solve(&p).unwrap().value, solve(&q).unwrap().value);
        }

        #[test]
        fn negated_objective_gives_the_minimum(p in random_lp()) {
            let max = solve(&p).unwrap();
            let min = solve(&p.negated()).unwrap();
            prop_assert_eq!(max.status, min.status);
            if let (Some(hi), Some(lo)) = (max.value, min.value) {
                let lo = -lo;
                prop_assert!(lo <= hi);
                prop_assert_eq!(lo, p.objective_value(&min.primal));
            }
        }
    }
}

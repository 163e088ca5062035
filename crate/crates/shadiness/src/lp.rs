//! Exact rational linear programming via two-phase tableau simplex.
//!
//! Bland's rule guarantees termination; every returned number is an exact
//! rational computed by pivoting, never a rounded value. Intended for the
//! small dense problems this crate produces (a handful of rows after
//! dualization, or a few equality rows for cone membership).

use num_traits::{One, Signed, Zero};

use crate::exact::linalg::RVec;
use crate::exact::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: RVec,
    pub rel: Rel,
    pub rhs: Rat,
}

/// Minimize `objective . x` subject to the constraints; `nonneg[i]` marks
/// variables restricted to `x_i >= 0`, all others are free.
#[derive(Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: RVec,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
}

#[derive(Clone, Debug)]
pub enum LpResult {
    Optimal { value: Rat, x: RVec },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn solve(&self) -> LpResult {
        assert_eq!(self.objective.len(), self.num_vars);
        assert_eq!(self.nonneg.len(), self.num_vars);
        Tableau::build(self).solve()
    }
}

struct Tableau {
    /// rows x (cols + 1), last column is the rhs.
    rows: Vec<RVec>,
    cols: usize,
    basis: Vec<usize>,
    /// Standard-form column index of each variable's positive part
    /// and (for free variables) negative part.
    var_cols: Vec<(usize, Option<usize>)>,
    first_artificial: usize,
    cost: RVec,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut next = 0;
        for &nn in &lp.nonneg {
            if nn {
                var_cols.push((next, None));
                next += 1;
            } else {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.rel != Rel::Eq)
            .count();
        let first_slack = next;
        let first_artificial = first_slack + num_slack;
        let cols = first_artificial + m;

        let mut rows = vec![vec![Rat::zero(); cols + 1]; m];
        let mut slack = first_slack;
        for (i, c) in lp.constraints.iter().enumerate() {
            assert_eq!(c.coeffs.len(), lp.num_vars);
            let flip = c.rhs.is_negative();
            let sgn = |x: &Rat| if flip { -x.clone() } else { x.clone() };
            for (v, (pc, nc)) in c.coeffs.iter().zip(&var_cols) {
                rows[i][*pc] = sgn(v);
                if let Some(nc) = nc {
                    rows[i][*nc] = -sgn(v);
                }
            }
            match c.rel {
                Rel::Le => {
                    rows[i][slack] = if flip { -Rat::one() } else { Rat::one() };
                    slack += 1;
                }
                Rel::Ge => {
                    rows[i][slack] = if flip { Rat::one() } else { -Rat::one() };
                    slack += 1;
                }
                Rel::Eq => {}
            }
            rows[i][first_artificial + i] = Rat::one();
            rows[i][cols] = sgn(&c.rhs);
        }

        let mut cost = vec![Rat::zero(); cols];
        for ((pc, nc), obj) in var_cols.iter().zip(&lp.objective) {
            cost[*pc] = obj.clone();
            if let Some(nc) = nc {
                cost[*nc] = -obj.clone();
            }
        }

        Tableau {
            rows,
            cols,
            basis: (first_artificial..first_artificial + m).collect(),
            var_cols,
            first_artificial,
            cost,
        }
    }

    fn solve(mut self) -> LpResult {
        // Phase 1: minimize the sum of artificials.
        let phase1_cost: RVec = (0..self.cols)
            .map(|j| {
                if j >= self.first_artificial {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        match self.optimize(&phase1_cost, self.cols) {
            SimplexOutcome::Optimal(v) if v.is_zero() => {}
            SimplexOutcome::Optimal(_) => return LpResult::Infeasible,
            SimplexOutcome::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        }
        // Phase 2 on the original cost, artificial columns barred from entering.
        let cost = self.cost.clone();
        match self.optimize(&cost, self.first_artificial) {
            SimplexOutcome::Optimal(value) => {
                let x = self.extract_solution();
                LpResult::Optimal { value, x }
            }
            SimplexOutcome::Unbounded => LpResult::Unbounded,
        }
    }

    fn optimize(&mut self, cost: &[Rat], enter_limit: usize) -> SimplexOutcome {
        loop {
            // Reduced costs: r_j = c_j - c_B . column_j.
            let mut entering = None;
            for j in 0..enter_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                if r.is_negative() {
                    entering = Some(j); // Bland: smallest improving index
                    break;
                }
            }
            let Some(e) = entering else {
                let mut value = Rat::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() {
                        value += &cost[b] * &self.rows[i][self.cols];
                    }
                }
                return SimplexOutcome::Optimal(value);
            };
            // Ratio test, ties broken by smallest basis index (Bland).
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rows[i][self.cols] / &self.rows[i][e];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((l, _)) = leave else {
                return SimplexOutcome::Unbounded;
            };
            self.pivot(l, e);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for j in 0..=self.cols {
                    let delta = &f * &self.rows[row][j];
                    self.rows[i][j] -= delta;
                }
            }
        }
        self.basis[row] = col;
    }

    fn column_value(&self, col: usize) -> Rat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rows[i][self.cols].clone())
            .unwrap_or_else(Rat::zero)
    }

    fn extract_solution(&self) -> RVec {
        self.var_cols
            .iter()
            .map(|(pc, nc)| {
                let mut v = self.column_value(*pc);
                if let Some(nc) = nc {
                    v -= self.column_value(*nc);
                }
                v
            })
            .collect()
    }
}

enum SimplexOutcome {
    Optimal(Rat),
    Unbounded,
}

/// Basic feasible point of `{y >= 0 : A y = b}`; at most `A.rows()` entries
/// are nonzero because the returned point is basic.
pub fn nonneg_basic_solution(a: &crate::exact::RMatrix, b: &[Rat]) -> Option<RVec> {
    assert_eq!(a.rows(), b.len());
    let lp = LinearProgram {
        num_vars: a.cols(),
        objective: vec![Rat::zero(); a.cols()],
        constraints: (0..a.rows())
            .map(|i| Constraint {
                coeffs: a.row(i).to_vec(),
                rel: Rel::Eq,
                rhs: b[i].clone(),
            })
            .collect(),
        nonneg: vec![true; a.cols()],
    };
    match lp.solve() {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};
    use crate::exact::RMatrix;

    fn v(xs: &[i64]) -> RVec {
        xs.iter().map(|&n| rat_int(n)).collect()
    }

    #[test]
    fn simple_bounded_lp() {
        // min -x - y  s.t. x + y <= 4, x <= 2, x,y >= 0  -> optimum -4 at y free-ish
        let lp = LinearProgram {
            num_vars: 2,
            objective: v(&[-1, -1]),
            constraints: vec![
                Constraint { coeffs: v(&[1, 1]), rel: Rel::Le, rhs: rat_int(4) },
                Constraint { coeffs: v(&[1, 0]), rel: Rel::Le, rhs: rat_int(2) },
            ],
            nonneg: vec![true, true],
        };
        match lp.solve() {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, rat_int(-4));
                assert_eq!(&x[0] + &x[1], rat_int(4));
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // min y s.t. y >= x - 1, y >= -x - 1 with x, y free -> optimum -1 at x = 0
        let lp = LinearProgram {
            num_vars: 2,
            objective: v(&[0, 1]),
            constraints: vec![
                Constraint { coeffs: v(&[1, -1]), rel: Rel::Le, rhs: rat_int(1) },
                Constraint { coeffs: v(&[-1, -1]), rel: Rel::Le, rhs: rat_int(1) },
            ],
            nonneg: vec![false, false],
        };
        match lp.solve() {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat_int(-1)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn infeasible_detected() {
        let lp = LinearProgram {
            num_vars: 1,
            objective: v(&[0]),
            constraints: vec![
                Constraint { coeffs: v(&[1]), rel: Rel::Ge, rhs: rat_int(2) },
                Constraint { coeffs: v(&[1]), rel: Rel::Le, rhs: rat_int(1) },
            ],
            nonneg: vec![true],
        };
        assert!(matches!(lp.solve(), LpResult::Infeasible));
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram {
            num_vars: 1,
            objective: v(&[-1]),
            constraints: vec![Constraint { coeffs: v(&[1]), rel: Rel::Ge, rhs: rat_int(0) }],
            nonneg: vec![true],
        };
        assert!(matches!(lp.solve(), LpResult::Unbounded));
    }

    #[test]
    fn exact_rational_optimum() {
        // min x s.t. 3x >= 1 -> x = 1/3 exactly
        let lp = LinearProgram {
            num_vars: 1,
            objective: v(&[1]),
            constraints: vec![Constraint { coeffs: v(&[3]), rel: Rel::Ge, rhs: rat_int(1) }],
            nonneg: vec![true],
        };
        match lp.solve() {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(1, 3)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn nonneg_basic_solution_is_sparse() {
        // y1*(1,0) + y2*(0,1) + y3*(1,1) = (2,3): a basic solution uses <= 2 rays
        let a = RMatrix::from_rows(vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
        let y = nonneg_basic_solution(&a, &v(&[2, 3])).unwrap();
        assert!(y.iter().all(|x| !x.is_negative()));
        assert!(y.iter().filter(|x| !x.is_zero()).count() <= 2);
        assert_eq!(a.matvec(&y), v(&[2, 3]));
        // infeasible target
        assert!(nonneg_basic_solution(&a, &v(&[-1, 0])).is_none());
    }
}

//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `min c·x  s.t.  A x ≤ b,  x ≥ 0` for the small problems that show
//! up in the approximation experiments (tens of variables and rows).

use thiserror::Error;

const PIVOT_EPS: f64 = 1e-12;
const FEASIBILITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("problem is infeasible (phase-one optimum {0:e})")]
    Infeasible(f64),
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("pivot limit {0} reached")]
    IterationLimit(usize),
    #[error("constraint matrix has inconsistent shape")]
    Shape,
}

/// `min c·x` subject to `a_ub x ≤ b_ub` and `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub a_ub: Vec<Vec<f64>>,
    pub b_ub: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Total pivots over both phases.
    pub iterations: usize,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        Self { objective, a_ub: Vec::new(), b_ub: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds the row `coeffs · x ≤ rhs`.
    pub fn le(&mut self, coeffs: Vec<f64>, rhs: f64) -> &mut Self {
        self.a_ub.push(coeffs);
        self.b_ub.push(rhs);
        self
    }

    /// Adds the bound `x_var ≤ upper`.
    pub fn upper_bound(&mut self, var: usize, upper: f64) -> &mut Self {
        let mut row = vec![0.0; self.num_vars()];
        row[var] = 1.0;
        self.le(row, upper)
    }

    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let n = self.num_vars();
        let m = self.a_ub.len();
        if self.b_ub.len() != m || self.a_ub.iter().any(|r| r.len() != n) {
            return Err(LpError::Shape);
        }
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    /// `rows[i]` holds the coefficients of every column, then the rhs.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    num_original: usize,
    /// Columns `first_artificial..` are artificials.
    first_artificial: usize,
    pivots: usize,
    max_pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.a_ub.len();
        let negative: Vec<usize> = (0..m).filter(|&i| lp.b_ub[i] < 0.0).collect();
        let first_artificial = n + m;
        let width = n + m + negative.len() + 1;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = first_artificial;
        for i in 0..m {
            let mut row = vec![0.0; width];
            let sign = if lp.b_ub[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                row[j] = sign * lp.a_ub[i][j];
            }
            row[n + i] = sign;
            row[width - 1] = sign * lp.b_ub[i];
            if sign < 0.0 {
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(n + i);
            }
            rows.push(row);
        }
        let max_pivots = 50 * (width + m).max(100);
        Self { rows, basis, num_original: n, first_artificial, pivots: 0, max_pivots }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.num_original + 1, |r| r.len())
    }

    fn run(mut self, objective: &[f64]) -> Result<LpSolution, LpError> {
        let cols = self.width() - 1;
        if cols > self.first_artificial {
            let phase_one: Vec<f64> = (0..cols).map(|j| if j >= self.first_artificial { 1.0 } else { 0.0 }).collect();
            self.optimize(&phase_one, cols)?;
            let infeasibility = self.objective_value(&phase_one);
            if infeasibility > FEASIBILITY_EPS {
                return Err(LpError::Infeasible(infeasibility));
            }
            self.drive_out_artificials();
        }
        let mut cost = vec![0.0; cols];
        cost[..self.num_original].copy_from_slice(objective);
        self.optimize(&cost, self.first_artificial)?;

        let mut x = vec![0.0; self.num_original];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_original {
                x[b] = self.rows[i][cols];
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution { x, objective: value, iterations: self.pivots })
    }

    fn objective_value(&self, cost: &[f64]) -> f64 {
        let rhs = self.width() - 1;
        self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rows[i][rhs]).sum()
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let dual: f64 = self.basis.iter().enumerate().map(|(i, &b)| cost[b] * self.rows[i][j]).sum();
        cost[j] - dual
    }

    /// Primal simplex over columns `0..allowed`, Bland's rule for entering
    /// and leaving variables.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<(), LpError> {
        let rhs = self.width() - 1;
        loop {
            let entering =
                (0..allowed).filter(|j| !self.basis.contains(j)).find(|&j| self.reduced_cost(cost, j) < -PIVOT_EPS);
            let Some(e) = entering else { return Ok(()) };

            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[e];
                if a > PIVOT_EPS {
                    let ratio = row[rhs] / a;
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - PIVOT_EPS
                                || ((ratio - lr).abs() <= PIVOT_EPS && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return Err(LpError::Unbounded) };
            self.pivot(r, e);
            if self.pivots >= self.max_pivots {
                return Err(LpError::IterationLimit(self.max_pivots));
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        self.pivots += 1;
        let p = self.rows[r][e];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[e];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[e] = 0.0;
            }
        }
        self.basis[r] = e;
    }

    /// Replaces basic artificials (at level zero) by structural columns;
    /// rows with no such column are redundant and dropped.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                let col = (0..self.first_artificial)
                    .filter(|j| !self.basis.contains(j))
                    .find(|&j| self.rows[i][j].abs() > 1e-9);
                match col {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), value 36.
        let mut lp = LinearProgram::new(vec![-3.0, -5.0]);
        lp.le(vec![1.0, 0.0], 4.0).le(vec![0.0, 2.0], 12.0).le(vec![3.0, 2.0], 18.0);
        let s = lp.solve().unwrap();
        assert!((s.objective + 36.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12 && (s.x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn needs_phase_one() {
        // min x + y s.t. x + y ≥ 2, x ≤ 3 → value 2.
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.le(vec![-1.0, -1.0], -2.0).upper_bound(0, 3.0);
        let s = lp.solve().unwrap();
        assert!((s.objective - 2.0).abs() < 1e-12);
    }

    #[test]
    fn minimax_absolute_deviation() {
        // min t s.t. |x - 0.3| ≤ t, |x - 0.9| ≤ t, 0 ≤ x ≤ 1 → x = 0.6, t = 0.3.
        let mut lp = LinearProgram::new(vec![0.0, 1.0]);
        for b in [0.3, 0.9] {
            lp.le(vec![1.0, -1.0], b).le(vec![-1.0, -1.0], -b);
        }
        lp.upper_bound(0, 1.0);
        let s = lp.solve().unwrap();
        assert!((s.objective - 0.3).abs() < 1e-12);
        assert!((s.x[0] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.le(vec![1.0], 1.0).le(vec![-1.0], -2.0);
        assert!(matches!(lp.solve(), Err(LpError::Infeasible(_))));

        let mut lp = LinearProgram::new(vec![-1.0, 0.0]);
        lp.le(vec![0.0, 1.0], 1.0);
        assert_eq!(lp.solve(), Err(LpError::Unbounded));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic Beale cycling example; Bland's rule must terminate.
        let mut lp = LinearProgram::new(vec![-0.75, 150.0, -0.02, 6.0]);
        lp.le(vec![0.25, -60.0, -0.04, 9.0], 0.0)
            .le(vec![0.5, -90.0, -0.02, 3.0], 0.0)
            .le(vec![0.0, 0.0, 1.0, 0.0], 1.0);
        let s = lp.solve().unwrap();
        assert!((s.objective + 0.05).abs() < 1e-12);
    }

    #[test]
    fn shape_is_checked() {
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.le(vec![1.0], 1.0);
        assert_eq!(lp.solve(), Err(LpError::Shape));
    }
}

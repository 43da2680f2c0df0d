//! Exact rational linear programming via two-phase simplex with Bland's rule.
//!
//! All feasibility and bound queries in the crate (cone line-freeness,
//! enumeration bounds, relative-interior tests) go through this solver; no
//! floating point is involved anywhere.

use crate::linalg::Rat;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub sense: Sense,
    pub rhs: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    /// Optimal value and a point attaining it (original variables).
    Optimal(Rat, Vec<Rat>),
    Infeasible,
    Unbounded,
}

/// A linear program over variables that are free by default.
///
/// Free variables are split into differences of nonnegative parts
/// internally; mark variables nonnegative to skip the split.
#[derive(Debug, Clone)]
pub struct Lp {
    n: usize,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl Lp {
    pub fn new(n_vars: usize) -> Self {
        Lp {
            n: n_vars,
            nonneg: vec![false; n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn set_nonneg(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) {
        assert_eq!(coeffs.len(), self.n);
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    /// Minimize `objective` over the feasible region.
    pub fn minimize(&self, objective: &[Rat]) -> LpOutcome {
        assert_eq!(objective.len(), self.n);
        // Map each original variable to one or two standard-form columns.
        let mut pos_col = vec![0usize; self.n];
        let mut neg_col = vec![usize::MAX; self.n];
        let mut cols = 0usize;
        for v in 0..self.n {
            pos_col[v] = cols;
            cols += 1;
            if !self.nonneg[v] {
                neg_col[v] = cols;
                cols += 1;
            }
        }
        let n_slack = self
            .constraints
            .iter()
            .filter(|c| c.sense != Sense::Eq)
            .count();
        let total = cols + n_slack;
        let m = self.constraints.len();
        let mut a = vec![vec![Rat::zero(); total]; m];
        let mut b = vec![Rat::zero(); m];
        let mut slack_at = cols;
        for (i, c) in self.constraints.iter().enumerate() {
            for v in 0..self.n {
                a[i][pos_col[v]] = c.coeffs[v].clone();
                if neg_col[v] != usize::MAX {
                    a[i][neg_col[v]] = -c.coeffs[v].clone();
                }
            }
            match c.sense {
                Sense::Le => {
                    a[i][slack_at] = Rat::one();
                    slack_at += 1;
                }
                Sense::Ge => {
                    a[i][slack_at] = -Rat::one();
                    slack_at += 1;
                }
                Sense::Eq => {}
            }
            b[i] = c.rhs.clone();
        }
        let mut cost = vec![Rat::zero(); total];
        for v in 0..self.n {
            cost[pos_col[v]] = objective[v].clone();
            if neg_col[v] != usize::MAX {
                cost[neg_col[v]] = -objective[v].clone();
            }
        }
        match simplex_standard(a, b, cost) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal(value, x) => {
                let point = (0..self.n)
                    .map(|v| {
                        let p = x[pos_col[v]].clone();
                        if neg_col[v] != usize::MAX {
                            p - &x[neg_col[v]]
                        } else {
                            p
                        }
                    })
                    .collect();
                LpOutcome::Optimal(value, point)
            }
        }
    }

    pub fn maximize(&self, objective: &[Rat]) -> LpOutcome {
        let neg: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal(v, x) => LpOutcome::Optimal(-v, x),
            other => other,
        }
    }

    /// Is the feasible region nonempty?
    pub fn feasible(&self) -> bool {
        !matches!(self.minimize(&vec![Rat::zero(); self.n]), LpOutcome::Infeasible)
    }
}

enum StdOutcome {
    Optimal(Rat, Vec<Rat>),
    Infeasible,
    Unbounded,
}

/// Minimize cost . x subject to A x = b, x >= 0.
fn simplex_standard(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>, cost: Vec<Rat>) -> StdOutcome {
    let m = a.len();
    let n = if m == 0 { cost.len() } else { a[0].len() };
    if m == 0 {
        // Minimum of a linear function over the nonnegative orthant.
        if cost.iter().any(|c| c.is_negative()) {
            return StdOutcome::Unbounded;
        }
        return StdOutcome::Optimal(Rat::zero(), vec![Rat::zero(); n]);
    }
    for i in 0..m {
        if b[i].is_negative() {
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    // Phase 1: artificial variables.
    let total = n + m;
    let mut t: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..total).collect();
    let phase1_cost: Vec<Rat> = (0..total)
        .map(|j| if j >= n { Rat::one() } else { Rat::zero() })
        .collect();
    if !run_simplex(&mut t, &mut basis, &phase1_cost, total) {
        unreachable!("phase 1 is always bounded below by zero");
    }
    let phase1_value: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= n)
        .map(|(i, _)| t[i][total].clone())
        .sum();
    if !phase1_value.is_zero() {
        return StdOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis or drop redundant rows.
    let mut drop_rows = Vec::new();
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                drop_rows.push(i);
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.remove(i);
        basis.remove(i);
    }
    // Remove artificial columns.
    for row in t.iter_mut() {
        let rhs = row.pop().unwrap();
        row.truncate(n);
        row.push(rhs);
    }
    // Phase 2.
    let mut phase2_cost = cost;
    phase2_cost.truncate(n);
    if !run_simplex(&mut t, &mut basis, &phase2_cost, n) {
        return StdOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        x[bj] = t[i][n].clone();
    }
    let value = phase2_cost
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .sum();
    StdOutcome::Optimal(value, x)
}

/// Run simplex iterations on the tableau. Returns false on unboundedness.
/// `width` is the number of structural columns (rhs is the last column).
fn run_simplex(t: &mut Vec<Vec<Rat>>, basis: &mut [usize], cost: &[Rat], width: usize) -> bool {
    loop {
        // Reduced costs: c_j - c_B . B^-1 A_j, computed directly from the
        // tableau (rows are already B^-1 A).
        let mut entering = None;
        for j in 0..width {
            if basis.contains(&j) {
                continue;
            }
            let mut red = cost[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                if !t[i][j].is_zero() && !cost[bj].is_zero() {
                    red -= &cost[bj] * &t[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else { return true };
        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][width] / &t[i][j];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((i, _)) = leave else { return false };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let f = t[i][col].clone();
            let prow = t[row].to_vec();
            for (x, y) in t[i].iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
    }
    basis[row] = col;
}

//! Two-phase tableau simplex over exact rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LpModel, LpSolution, LpStatus, Relation};

struct Tableau {
    /// `m` rows of `cols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs `c_j − c_B B⁻¹ A_j`, plus `−c_B B⁻¹ b` at the end.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for a in self.rows[row].iter_mut() {
            *a /= &p;
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<BigRational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, s) in target.iter_mut().zip(&pivot_row) {
                if !s.is_zero() {
                    *t -= &f * s;
                }
            }
        };
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.obj);
        self.basis[row] = col;
    }

    /// Maximizes with Bland's rule over the columns `allowed` admits.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> Outcome {
        loop {
            let Some(col) = (0..self.cols).find(|&j| allowed(j) && self.obj[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for (i, r) in self.rows.iter().enumerate() {
                if !r[col].is_positive() {
                    continue;
                }
                let ratio = &r[self.cols] / &r[col];
                let better = match &best {
                    None => true,
                    Some((b, _, var)) => ratio < *b || (ratio == *b && self.basis[i] < *var),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            match best {
                Some((_, row, _)) => self.pivot(row, col),
                None => return Outcome::Unbounded,
            }
        }
    }

    fn set_objective(&mut self, costs: &[BigRational]) {
        self.obj = costs.to_vec();
        self.obj.push(BigRational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let c = costs[b].clone();
            if c.is_zero() {
                continue;
            }
            for (o, a) in self.obj.iter_mut().zip(&self.rows[i]) {
                *o -= &c * a;
            }
        }
    }
}

/// Solves `maximize c·x, x ≥ 0` exactly. Duals accompany every optimum.
pub fn simplex_solve(model: &LpModel) -> LpSolution {
    let n = model.variables.len();
    let m = model.constraints.len();

    // Column layout: structural variables, one slack/surplus per inequality,
    // then one artificial per row that has no slack usable as a start basis.
    let mut slack_of = vec![None; m];
    let mut cols = n;
    for (i, c) in model.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            slack_of[i] = Some(cols);
            cols += 1;
        }
    }
    // Rows are negated when their right-hand side is negative.
    let flip: Vec<bool> = model.constraints.iter().map(|c| c.rhs.is_negative()).collect();
    let mut start = vec![0; m];
    let mut artificial = Vec::new();
    for (i, c) in model.constraints.iter().enumerate() {
        let slack_sign_positive = match c.relation {
            Relation::Le => !flip[i],
            Relation::Ge => flip[i],
            Relation::Eq => false,
        };
        if slack_sign_positive {
            start[i] = slack_of[i].unwrap();
        } else {
            start[i] = cols;
            artificial.push(cols);
            cols += 1;
        }
    }
    let is_artificial = |j: usize| j >= cols - artificial.len();

    let mut rows = vec![vec![BigRational::zero(); cols + 1]; m];
    for (i, c) in model.constraints.iter().enumerate() {
        let sign = if flip[i] {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let row = &mut rows[i];
        for (j, a) in &c.coeffs {
            row[*j] += a * &sign;
        }
        if let Some(s) = slack_of[i] {
            let coeff = if c.relation == Relation::Le {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            row[s] = coeff * &sign;
        }
        if is_artificial(start[i]) {
            row[start[i]] = BigRational::one();
        }
        row[cols] = &c.rhs * &sign;
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: start.clone(),
        cols,
    };

    if !artificial.is_empty() {
        let mut costs = vec![BigRational::zero(); cols];
        for &a in &artificial {
            costs[a] = -BigRational::one();
        }
        t.set_objective(&costs);
        t.optimize(|_| true);
        if t.obj[cols].is_positive() {
            return LpSolution {
                status: LpStatus::Infeasible,
                objective: BigRational::zero(),
                assignment: vec![BigRational::zero(); n],
                duals: vec![BigRational::zero(); m],
            };
        }
        // Drive zero-level artificials out of the basis where possible.
        for row in 0..m {
            if is_artificial(t.basis[row]) {
                if let Some(col) = (0..cols).find(|&j| !is_artificial(j) && !t.rows[row][j].is_zero()) {
                    t.pivot(row, col);
                }
            }
        }
    }

    let mut costs = vec![BigRational::zero(); cols];
    costs[..n].clone_from_slice(&model.objective);
    t.set_objective(&costs);
    if let Outcome::Unbounded = t.optimize(|j| !is_artificial(j)) {
        return LpSolution {
            status: LpStatus::Unbounded,
            objective: BigRational::zero(),
            assignment: vec![BigRational::zero(); n],
            duals: vec![BigRational::zero(); m],
        };
    }

    let mut assignment = vec![BigRational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            assignment[b] = t.rows[i][cols].clone();
        }
    }
    // The start-basis column of row i was e_i and costs 0, so its reduced
    // cost is −(c_B B⁻¹)_i.
    let duals = (0..m)
        .map(|i| {
            let y = -t.obj[start[i]].clone();
            if flip[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    LpSolution {
        status: LpStatus::Optimal,
        objective: -t.obj[cols].clone(),
        assignment,
        duals,
    }
}

//! A small dense linear-program solver over exact rational arithmetic.
//!
//! The polytopes in this crate are tiny (tens of variables), so a dense
//! two-phase tableau simplex is enough. Pivots follow Bland's rule, which
//! cannot cycle, and every number is a [`BigRational`], so results such as
//! polytope optima are exact. Finite `f64` inputs convert to rationals
//! without loss.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Exact rational for a finite float.
pub fn rat(x: f64) -> Rat {
    Rat::from_f64(x).expect("finite float")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Equal,
    GreaterEq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solved {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    obj: Vec<Rat>,
    obj_value: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= factor.clone();
        }
        self.rhs[row] /= factor.clone();

        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.rows[i].len() {
                let delta = &f * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
            let delta = &f * &self.rhs[row];
            self.rhs[i] -= delta;
        }

        let f = self.obj[col].clone();
        if !f.is_zero() {
            for j in 0..self.obj.len() {
                let delta = &f * &self.rows[row][j];
                self.obj[j] -= delta;
            }
            let delta = &f * &self.rhs[row];
            self.obj_value += delta;
        }
        self.basis[row] = col;
    }

    /// Installs a maximization objective and eliminates the basic columns.
    fn set_objective(&mut self, costs: &[Rat]) {
        self.obj = costs.to_vec();
        self.obj_value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let c = self.obj[b].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.obj.len() {
                let delta = &c * &self.rows[i][j];
                self.obj[j] -= delta;
            }
            let delta = &c * &self.rhs[i];
            self.obj_value += delta;
        }
    }

    /// Bland-rule simplex iterations; returns false when unbounded.
    fn run(&mut self, allowed_cols: usize) -> bool {
        loop {
            let entering = (0..allowed_cols).find(|&j| self.obj[j].is_positive());
            let entering = match entering {
                Some(j) => j,
                None => return true,
            };
            let mut leaving: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][entering].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][entering];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[i] < self.basis[leaving.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leaving = Some(i);
                    }
                }
            }
            match leaving {
                Some(row) => self.pivot(row, entering),
                None => return false,
            }
        }
    }
}

/// Maximizes `objective . x` subject to the constraints and `x >= 0`.
pub fn maximize(objective: &[Rat], constraints: &[Constraint]) -> Result<Solved> {
    let n = objective.len();
    let m = constraints.len();
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(Error::Solver(format!(
                "constraint has {} coefficients, expected {}",
                c.coeffs.len(),
                n
            )));
        }
    }

    // Normalize right-hand sides to be nonnegative.
    let mut rows: Vec<(Vec<Rat>, Relation, Rat)> = Vec::with_capacity(m);
    for c in constraints {
        if c.rhs.is_negative() {
            let coeffs: Vec<Rat> = c.coeffs.iter().map(|v| -v.clone()).collect();
            let relation = match c.relation {
                Relation::LessEq => Relation::GreaterEq,
                Relation::Equal => Relation::Equal,
                Relation::GreaterEq => Relation::LessEq,
            };
            rows.push((coeffs, relation, -c.rhs.clone()));
        } else {
            rows.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
        }
    }

    let n_slack = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::Equal)
        .count();
    let n_art = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::LessEq)
        .count();
    let ncols = n + n_slack + n_art;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        obj: vec![Rat::zero(); ncols],
        obj_value: Rat::zero(),
        basis: vec![0; m],
    };

    let mut slack_at = n;
    let mut art_at = n + n_slack;
    let mut artificial_cols = Vec::new();
    for (i, (coeffs, relation, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols];
        row[..n].clone_from_slice(coeffs);
        match relation {
            Relation::LessEq => {
                row[slack_at] = Rat::from_integer(1.into());
                tableau.basis[i] = slack_at;
                slack_at += 1;
            }
            Relation::GreaterEq => {
                row[slack_at] = Rat::from_integer((-1).into());
                slack_at += 1;
                row[art_at] = Rat::from_integer(1.into());
                tableau.basis[i] = art_at;
                artificial_cols.push(art_at);
                art_at += 1;
            }
            Relation::Equal => {
                row[art_at] = Rat::from_integer(1.into());
                tableau.basis[i] = art_at;
                artificial_cols.push(art_at);
                art_at += 1;
            }
        }
        tableau.rows.push(row);
        tableau.rhs.push(rhs.clone());
    }

    // Phase one: drive the artificial variables to zero.
    if !artificial_cols.is_empty() {
        let mut phase_costs = vec![Rat::zero(); ncols];
        for &j in &artificial_cols {
            phase_costs[j] = Rat::from_integer((-1).into());
        }
        tableau.set_objective(&phase_costs);
        tableau.run(ncols);
        if tableau.obj_value.is_negative() {
            return Ok(Solved::Infeasible);
        }
        // Pivot leftover artificial variables out of the basis.
        for i in 0..m {
            if artificial_cols.contains(&tableau.basis[i]) {
                if let Some(col) =
                    (0..n + n_slack).find(|&j| !tableau.rows[i][j].is_zero())
                {
                    tableau.pivot(i, col);
                }
            }
        }
    }

    // Phase two over the structural and slack columns only.
    let mut costs = vec![Rat::zero(); ncols];
    costs[..n].clone_from_slice(objective);
    tableau.set_objective(&costs);
    if !tableau.run(n + n_slack) {
        return Ok(Solved::Unbounded);
    }

    let mut solution = vec![Rat::zero(); n];
    for (i, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            solution[b] = tableau.rhs[i].clone();
        }
    }
    Ok(Solved::Optimal {
        value: tableau.obj_value,
        solution,
    })
}

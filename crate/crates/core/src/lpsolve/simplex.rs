//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0`. Rows with negative `b` are
//! negated internally; reported duals refer to the rows as given.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<Rat>,
    pub objective: Rat,
    /// Optimal duals `y` with `A^T y <= c` and `b.y = objective`.
    pub duals: Vec<Rat>,
    /// Every pivot as `(row, entering column)`, both phases.
    pub pivots: Vec<(usize, usize)>,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    pivots: Vec<(usize, usize)>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        self.basis[row] = col;
        self.pivots.push((row, col));
    }

    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut r = cost.to_vec();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            for (rj, aij) in r.iter_mut().zip(&self.rows[i]) {
                if !aij.is_zero() {
                    *rj -= cb * aij;
                }
            }
        }
        r
    }

    /// Runs Bland-rule iterations on `cost` over columns `< allowed`.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> Result<()> {
        loop {
            let reduced = self.reduced_costs(cost);
            let Some(col) = (0..allowed).find(|&j| reduced[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((row, _)) = best else {
                return Err(Error::Domain("linear program is unbounded".into()));
            };
            self.pivot(row, col);
        }
    }
}

pub fn solve_standard(lp: &StandardForm) -> Result<SimplexResult> {
    let m = lp.a.len();
    let nvar = lp.c.len();
    if lp.b.len() != m || lp.a.iter().any(|row| row.len() != nvar) {
        return Err(Error::Domain("inconsistent LP dimensions".into()));
    }
    let width = nvar + m;
    let mut sign = vec![Rat::from_integer(1.into()); m];
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, sign_i) in sign.iter_mut().enumerate() {
        let flip = lp.b[i].is_negative();
        if flip {
            *sign_i = -sign_i.clone();
        }
        let mut row: Vec<Rat> = lp.a[i]
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|j| if j == i { Rat::from_integer(1.into()) } else { Rat::zero() }));
        rows.push(row);
        rhs.push(lp.b[i].abs());
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (nvar..width).collect(),
        pivots: Vec::new(),
    };

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![Rat::zero(); width];
    for c in phase1.iter_mut().skip(nvar) {
        *c = Rat::from_integer(1.into());
    }
    t.optimize(&phase1, width)?;
    let infeasibility: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bi, _)| bi >= nvar)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        return Err(Error::Domain("linear program is infeasible".into()));
    }
    for row in 0..m {
        if t.basis[row] >= nvar {
            if let Some(col) = (0..nvar).find(|&j| !t.rows[row][j].is_zero()) {
                t.pivot(row, col);
            }
        }
    }

    // Phase 2 on the original objective; artificials may not re-enter.
    let mut cost = lp.c.clone();
    cost.extend((0..m).map(|_| Rat::zero()));
    t.optimize(&cost, nvar)?;

    let mut x = vec![Rat::zero(); nvar];
    for (row, &bi) in t.basis.iter().enumerate() {
        if bi < nvar {
            x[bi] = t.rhs[row].clone();
        }
    }
    let objective = x.iter().zip(&lp.c).map(|(xi, ci)| xi * ci).sum();
    // y = c_B B^{-1}; B^{-1} sits in the artificial columns.
    let duals = (0..m)
        .map(|i| {
            let y: Rat = t
                .basis
                .iter()
                .enumerate()
                .map(|(row, &bi)| &cost[bi] * &t.rows[row][nvar + i])
                .sum();
            y * &sign[i]
        })
        .collect();
    Ok(SimplexResult {
        x,
        objective,
        duals,
        pivots: t.pivots,
    })
}

//! Best separable mixtures of same-`k` partition states.
//!
//! Every partition `pi` of `n` qubits into `k` parties yields a separable
//! state with coherence `1/2^k` and interior diagonal `r_pi(i) / 2^k`,
//! `r_pi(i) = f_pi(i) / C(n, i)`. Mixing keeps the coherence, so the best
//! mixture minimizes the largest interior entry:
//!
//! ```text
//! minimize t  s.t.  sum_pi q_pi r_pi(i) <= t  (i = 1..n-1),  sum q = 1,  q >= 0
//! ```
//!
//! giving `tau = 1/t` and the sufficient threshold `p_s = tau/(tau + 2^{n-1})`.

pub mod golden;
pub mod simplex;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactmath::{format_rat, pow2_rat, Rat};
use crate::partitions::{enumerate_partitions, profile, PartitionType};
use crate::symstate::{mix, partition_average_state, SymState};

use simplex::{solve_standard, StandardForm};

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub n: usize,
    pub k: usize,
    pub partitions: Vec<PartitionType>,
    /// `columns[j][i-1] = r_{partitions[j]}(i)` for `i = 1..n-1`.
    pub columns: Vec<Vec<Rat>>,
}

impl LpProblem {
    pub fn rows(&self) -> usize {
        self.n - 1
    }

    /// Interior diagonal of the mixture, `(sum_j q_j r_j(i))_i`.
    pub fn row_values(&self, weights: &[Rat]) -> Vec<Rat> {
        (0..self.rows())
            .map(|i| {
                self.columns
                    .iter()
                    .zip(weights)
                    .map(|(col, q)| q * &col[i])
                    .sum()
            })
            .collect()
    }
}

pub fn build_problem(n: usize, k: usize) -> Result<LpProblem> {
    if k < 2 || k > n {
        return domain(format!("LP needs 2 <= k <= n, got n = {n}, k = {k}"));
    }
    let partitions = enumerate_partitions(n, k)?;
    let columns = partitions
        .iter()
        .map(|p| profile(p).normalized_interior())
        .collect();
    Ok(LpProblem {
        n,
        k,
        partitions,
        columns,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub n: usize,
    pub k: usize,
    /// Weight of every candidate partition, in enumeration order.
    pub weights: Vec<(PartitionType, Rat)>,
    /// Optimal largest normalized interior entry.
    pub t: Rat,
    pub tau: Rat,
    pub p_s: Rat,
    /// Dual row weights: a distribution over `i = 1..n-1` certifying `t`.
    pub row_weights: Vec<Rat>,
    /// Rows `i` (1-based Hamming weights) where the mixture attains `t`.
    pub binding: Vec<usize>,
    pub pivots: Vec<(usize, usize)>,
}

impl LpSolution {
    /// Partitions with positive weight.
    pub fn support(&self) -> Vec<(PartitionType, Rat)> {
        self.weights
            .iter()
            .filter(|(_, w)| w.is_positive())
            .cloned()
            .collect()
    }

    /// Support as `(partition, tau * weight)`, the form the table uses.
    pub fn tau_prob(&self) -> Vec<(PartitionType, Rat)> {
        self.support()
            .into_iter()
            .map(|(p, w)| (p, w * &self.tau))
            .collect()
    }

    /// The optimal separable mixture (before padding).
    pub fn mixed_state(&self) -> Result<SymState> {
        let support = self.support();
        let states = support
            .iter()
            .map(|(p, _)| partition_average_state(p))
            .collect::<Result<Vec<_>>>()?;
        let weights: Vec<Rat> = support.into_iter().map(|(_, w)| w).collect();
        mix(&states, &weights)
    }

    /// Checks, in exact arithmetic and without the solver, that the primal
    /// mixture is feasible with value `t` and that the dual row weights
    /// prove no mixture does better.
    pub fn verify_certificate(&self, problem: &LpProblem) -> std::result::Result<(), String> {
        let q: Vec<Rat> = self.weights.iter().map(|(_, w)| w.clone()).collect();
        if q.len() != problem.columns.len() {
            return Err("weight vector does not match problem".into());
        }
        if q.iter().any(|w| w.is_negative()) {
            return Err("negative mixture weight".into());
        }
        if q.iter().sum::<Rat>() != Rat::one() {
            return Err("mixture weights do not sum to 1".into());
        }
        let rows = problem.row_values(&q);
        if let Some(i) = rows.iter().position(|v| v > &self.t) {
            return Err(format!("row {} exceeds t", i + 1));
        }
        if !rows.iter().any(|v| v == &self.t) {
            return Err("no binding row".into());
        }
        let w = &self.row_weights;
        if w.len() != rows.len() || w.iter().any(|x| x.is_negative()) {
            return Err("dual row weights malformed or negative".into());
        }
        if w.iter().sum::<Rat>() != Rat::one() {
            return Err("dual row weights do not sum to 1".into());
        }
        for (j, col) in problem.columns.iter().enumerate() {
            let value: Rat = col.iter().zip(w).map(|(r, y)| r * y).sum();
            if value < self.t {
                return Err(format!(
                    "dual infeasible at partition {}: {} < t",
                    problem.partitions[j],
                    format_rat(&value)
                ));
            }
            if q[j].is_positive() && value != self.t {
                return Err(format!(
                    "complementary slackness fails at partition {}",
                    problem.partitions[j]
                ));
            }
        }
        for (i, (yi, ri)) in w.iter().zip(&rows).enumerate() {
            if yi.is_positive() && ri != &self.t {
                return Err(format!("dual weight on slack row {}", i + 1));
            }
        }
        Ok(())
    }
}

pub fn solve(problem: &LpProblem) -> Result<LpSolution> {
    let m = problem.columns.len();
    if m == 0 {
        return domain("LP has no candidate partitions");
    }
    let rows = problem.rows();
    // Variables: q_0..q_{m-1}, t, s_1..s_rows.
    let nvar = m + 1 + rows;
    let mut a = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        let mut row = vec![Rat::zero(); nvar];
        for (j, col) in problem.columns.iter().enumerate() {
            row[j] = col[i].clone();
        }
        row[m] = -Rat::one();
        row[m + 1 + i] = Rat::one();
        a.push(row);
    }
    let mut total = vec![Rat::zero(); nvar];
    for v in total.iter_mut().take(m) {
        *v = Rat::one();
    }
    a.push(total);
    let mut b = vec![Rat::zero(); rows];
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); nvar];
    c[m] = Rat::one();

    let res = solve_standard(&StandardForm { a, b, c })?;
    let t = res.x[m].clone();
    if !t.is_positive() {
        return Err(Error::Domain("degenerate LP optimum t = 0".into()));
    }
    let q = &res.x[..m];
    let row_vals = problem.row_values(q);
    let binding = row_vals
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == t)
        .map(|(i, _)| i + 1)
        .collect();
    let tau = Rat::one() / &t;
    let p_s = &tau / (&tau + pow2_rat(problem.n as u32 - 1));
    Ok(LpSolution {
        n: problem.n,
        k: problem.k,
        weights: problem
            .partitions
            .iter()
            .cloned()
            .zip(q.iter().cloned())
            .collect(),
        row_weights: res.duals[..rows].iter().map(|y| -y.clone()).collect(),
        t,
        tau,
        p_s,
        binding,
        pivots: res.pivots,
    })
}

/// `build_problem` followed by `solve`.
pub fn solve_nk(n: usize, k: usize) -> Result<LpSolution> {
    solve(&build_problem(n, k)?)
}

/// All `(n, k)` cells with `3 <= k <= floor(n/2)`, the range not settled by
/// the closed-form `n-j` criterion, solved in parallel and returned in order.
pub fn table1(n_range: std::ops::RangeInclusive<usize>) -> Result<Vec<LpSolution>> {
    let cells: Vec<(usize, usize)> = n_range
        .flat_map(|n| (3..=n / 2).map(move |k| (n, k)))
        .collect();
    cells.par_iter().map(|&(n, k)| solve_nk(n, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolutionJson {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub tau: String,
    pub p_s: String,
    pub weights: std::collections::BTreeMap<String, String>,
    pub binding_rows: Vec<usize>,
    pub row_weights: Vec<String>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl LpSolution {
    /// JSON form; only partitions with positive weight are listed.
    pub fn to_json(&self) -> LpSolutionJson {
        LpSolutionJson {
            schema_version: SCHEMA_VERSION,
            n: self.n,
            k: self.k,
            tau: format_rat(&self.tau),
            p_s: format_rat(&self.p_s),
            weights: self
                .support()
                .into_iter()
                .map(|(p, w)| (p.to_string(), format_rat(&w)))
                .collect(),
            binding_rows: self.binding.clone(),
            row_weights: self.row_weights.iter().map(format_rat).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn pt(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    #[test]
    fn build_examples() {
        let p = build_problem(6, 3).unwrap();
        let names: Vec<String> = p.partitions.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["1^2|4", "1|2|3", "2^3"]);
        let p = build_problem(12, 6).unwrap();
        assert!(p.partitions.contains(&pt("1|2^4|3")));
        assert!(p.partitions.contains(&pt("2^6")));
        let p = build_problem(5, 5).unwrap();
        assert_eq!(p.partitions, vec![pt("1^5")]);
        assert!(p.columns[0].iter().all(|r| r == &int(1)));
        assert!(build_problem(4, 1).is_err());
        assert!(build_problem(4, 5).is_err());
    }

    #[test]
    fn six_three() {
        let prob = build_problem(6, 3).unwrap();
        let s = solve(&prob).unwrap();
        assert_eq!((s.tau.clone(), s.p_s.clone()), (int(9), rat(9, 41)));
        assert_eq!(s.support(), vec![(pt("1|2|3"), rat(2, 3)), (pt("2^3"), rat(1, 3))]);
        s.verify_certificate(&prob).unwrap();
    }

    #[test]
    fn nine_four_and_eleven_three() {
        let s = solve_nk(9, 4).unwrap();
        assert_eq!((s.tau.clone(), s.p_s.clone()), (int(18), rat(9, 137)));
        let s = solve_nk(11, 3).unwrap();
        assert_eq!((s.tau, s.p_s), (rat(869, 4), rat(869, 4965)));
    }

    #[test]
    fn certificate_rejects_tampering() {
        let prob = build_problem(8, 4).unwrap();
        let mut s = solve(&prob).unwrap();
        s.verify_certificate(&prob).unwrap();
        let mut bad = s.clone();
        bad.t = &bad.t * rat(9, 10);
        assert!(bad.verify_certificate(&prob).is_err());
        s.row_weights.iter_mut().for_each(|w| *w = Rat::zero());
        assert!(s.verify_certificate(&prob).is_err());
    }

    #[test]
    fn deterministic() {
        let a = solve_nk(10, 4).unwrap();
        let b = solve_nk(10, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn padding_the_mixture_reproduces_p_s() {
        for (n, k) in [(6, 3), (8, 4), (10, 5), (7, 2)] {
            let s = solve_nk(n, k).unwrap();
            let padded = crate::symstate::pad_to_isotropic(&s.mixed_state().unwrap()).unwrap();
            assert_eq!(padded.p_s, s.p_s);
            assert_eq!(padded.tau, s.tau);
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(solve_nk(6, 3).unwrap().to_json()).unwrap();
        assert_eq!(v["tau"], "9/1");
        assert_eq!(v["p_s"], "9/41");
        assert_eq!(v["weights"]["2^3"], "1/3");
        assert_eq!(v["weights"]["1|2|3"], "2/3");
    }
}

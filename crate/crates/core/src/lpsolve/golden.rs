//! Published optimal mixtures for `6 <= n <= 12`, `3 <= k <= n/2`.
//!
//! Decimal entries of the published table are stored as exact fractions
//! (17.5 -> 35/2, 13.75 -> 55/4). Values are kept verbatim, including rows
//! that the exact solver does not reproduce.

use num_traits::Zero;

use crate::exactmath::{format_rat, parse_rat, Rat};
use crate::partitions::PartitionType;

use super::LpSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: usize,
    pub k: usize,
    /// Comma-separated partitions, aligned with `tau_prob`.
    pub partitions: &'static str,
    pub tau_prob: &'static str,
    pub tau: &'static str,
    pub p_s: &'static str,
}

macro_rules! row {
    ($n:expr, $k:expr, $parts:expr, $tp:expr, $tau:expr, $ps:expr) => {
        GoldenRow {
            n: $n,
            k: $k,
            partitions: $parts,
            tau_prob: $tp,
            tau: $tau,
            p_s: $ps,
        }
    };
}

pub const TABLE1: [GoldenRow; 16] = [
    row!(6, 3, "2^3,1|2|3", "3,6", "9", "9/41"),
    row!(7, 3, "2^2|3,1|3^2", "21/2,7", "35/2", "35/163"),
    row!(8, 3, "1|3|4,2|3^2,2^2|4", "8,24,2", "34", "17/81"),
    row!(8, 4, "1|2^2|3,2^4", "8,3", "11", "11/139"),
    row!(9, 3, "1|4^2,2|3|4,3^3", "16,36,9", "61", "61/327"),
    row!(9, 4, "1|2|3^2,2^3|3", "9,9", "18", "9/137"),
    row!(10, 3, "1|4|5,2|4^2,3^2|4", "10,45,60", "115", "115/627"),
    row!(10, 4, "1|3^3,2^2|3^2", "10,45/2", "65/2", "65/1089"),
    row!(10, 5, "1|2^3|3,2^5", "10,3", "13", "13/525"),
    row!(11, 3, "3|4^2,2|4|5,3^2|5,1|5^2", "275/2,55,55/4,11", "869/4", "869/4965"),
    row!(11, 4, "2^2|3|4,2|3^3,1|3^2|4", "22/5,231/5,11", "308/5", "77/1375"),
    row!(11, 5, "2^4|3,1^2|3^3", "11,11", "22", "11/523"),
    row!(12, 3, "4^3,3|4|5,2|5^2,1|5|6", "275/3,220,66,12", "1169/3", "1169/7313"),
    row!(12, 4, "3^4,2^2|4^2,1|3|4^2", "55,33,12", "100", "25/537"),
    row!(12, 5, "1|2|3^3,2^3|3^2", "12,18", "30", "15/1039"),
    row!(12, 6, "1|2^4|3,2^6", "12,3", "15", "15/2063"),
];

impl GoldenRow {
    pub fn tau(&self) -> Rat {
        parse_rat(self.tau).expect("golden tau")
    }

    pub fn p_s(&self) -> Rat {
        parse_rat(self.p_s).expect("golden p_s")
    }

    /// Published mixture as `(partition, weight)` with weight = (tau*prob)/tau.
    pub fn mixture(&self) -> Vec<(PartitionType, Rat)> {
        let tau = self.tau();
        self.partitions
            .split(',')
            .zip(self.tau_prob.split(','))
            .map(|(p, tp)| {
                (
                    p.parse().expect("golden partition"),
                    parse_rat(tp).expect("golden tau*prob") / &tau,
                )
            })
            .collect()
    }
}

pub fn golden_row(n: usize, k: usize) -> Option<&'static GoldenRow> {
    TABLE1.iter().find(|r| r.n == n && r.k == k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenComparison {
    pub n: usize,
    pub k: usize,
    pub expected_tau: Rat,
    pub expected_p_s: Rat,
    pub tau: Rat,
    pub p_s: Rat,
}

impl GoldenComparison {
    pub fn passed(&self) -> bool {
        self.tau == self.expected_tau && self.p_s == self.expected_p_s
    }

    pub fn describe(&self) -> String {
        format!(
            "({}, {}): tau {} vs published {}, p_s {} vs published {}",
            self.n,
            self.k,
            format_rat(&self.tau),
            format_rat(&self.expected_tau),
            format_rat(&self.p_s),
            format_rat(&self.expected_p_s)
        )
    }
}

pub fn compare(solution: &LpSolution) -> Option<GoldenComparison> {
    let row = golden_row(solution.n, solution.k)?;
    Some(GoldenComparison {
        n: solution.n,
        k: solution.k,
        expected_tau: row.tau(),
        expected_p_s: row.p_s(),
        tau: solution.tau.clone(),
        p_s: solution.p_s.clone(),
    })
}

/// Normalized per-projector interior maximum of a published mixture, i.e.
/// the `t` its weights actually achieve (`tau = 1/t`).
pub fn published_mixture_t(row: &GoldenRow) -> Rat {
    let mixture = row.mixture();
    let n = row.n;
    let mut best = Rat::zero();
    for i in 1..n {
        let v: Rat = mixture
            .iter()
            .map(|(p, w)| w * &crate::partitions::profile(p).normalized_interior()[i - 1])
            .sum();
        if v > best {
            best = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use num_traits::One;

    #[test]
    fn rows_are_well_formed() {
        for row in &TABLE1 {
            let mix = row.mixture();
            assert!(mix.iter().all(|(p, _)| p.n() == row.n && p.k() == row.k), "{row:?}");
            let total: Rat = mix.iter().map(|(_, w)| w.clone()).sum();
            assert_eq!(total, Rat::one(), "{row:?}");
        }
    }

    #[test]
    fn published_mixtures() {
        // Mixtures whose weights reproduce the stated tau.
        for (n, k) in [(6, 3), (8, 4), (9, 4), (10, 5), (11, 3), (12, 6)] {
            let row = golden_row(n, k).unwrap();
            assert_eq!(Rat::one() / published_mixture_t(row), row.tau(), "({n},{k})");
        }
        // (11,5) and (12,4) list weights that give a different tau.
        assert_eq!(Rat::one() / published_mixture_t(golden_row(11, 5).unwrap()), int(11));
        assert_eq!(
            Rat::one() / published_mixture_t(golden_row(12, 4).unwrap()),
            rat(2750, 29)
        );
    }

    #[test]
    fn stated_p_s_against_stated_tau() {
        // p_s = tau/(tau + 2^{n-1}) fails for the stated tau in two rows.
        let inconsistent: Vec<(usize, usize)> = TABLE1
            .iter()
            .filter(|r| {
                let tau = r.tau();
                let expect = &tau / (&tau + crate::exactmath::pow2_rat(r.n as u32 - 1));
                expect != r.p_s()
            })
            .map(|r| (r.n, r.k))
            .collect();
        assert_eq!(inconsistent, vec![(9, 3), (11, 4)]);
    }
}

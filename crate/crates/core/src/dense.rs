//! Small exact dense matrices for cross-checks (dimension up to a few hundred).

use num_traits::{Signed, Zero};

use crate::exactmath::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    dim: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(dim: usize) -> Self {
        RatMatrix {
            dim,
            data: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.data[row * self.dim + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rat) {
        self.data[row * self.dim + col] += value;
    }

    pub fn trace(&self) -> Rat {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `tr(self * other)`, skipping zero entries.
    pub fn trace_product(&self, other: &RatMatrix) -> Rat {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut acc = Rat::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(j, i);
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        acc
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Exact rank by fraction-free-ish Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for c in 0..n {
                    m.swap(pivot * n + c, rank * n + c);
                }
            }
            let p = m[rank * n + col].clone();
            for r in (rank + 1)..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = &m[r * n + col] / &p;
                for c in col..n {
                    if m[rank * n + c].is_zero() {
                        continue;
                    }
                    let sub = &factor * &m[rank * n + c];
                    m[r * n + c] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact positive-semidefiniteness test for a symmetric matrix via
    /// symmetric elimination with diagonal pivots.
    pub fn is_psd(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.dim;
        let mut m = self.data.clone();
        for p in 0..n {
            let pivot = m[p * n + p].clone();
            let below: Vec<usize> = ((p + 1)..n).filter(|&r| !m[r * n + p].is_zero()).collect();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if !below.is_empty() {
                    return false;
                }
                continue;
            }
            for &r in &below {
                let factor = &m[r * n + p] / &pivot;
                for &c in &below {
                    let sub = &factor * &m[p * n + c];
                    m[r * n + c] -= sub;
                }
                m[r * n + p] = Rat::zero();
                m[p * n + r] = Rat::zero();
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn from_rows(rows: &[&[i64]]) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, int(v));
            }
        }
        m
    }

    #[test]
    fn psd_and_rank() {
        let bell = from_rows(&[&[1, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 1]]);
        assert!(bell.is_psd());
        assert_eq!(bell.rank(), 1);
        let indefinite = from_rows(&[&[1, 2], &[2, 1]]);
        assert!(!indefinite.is_psd());
        let zero_pivot = from_rows(&[&[0, 1], &[1, 5]]);
        assert!(!zero_pivot.is_psd());
        let pd = from_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert!(pd.is_psd());
        assert_eq!(pd.rank(), 3);
        assert_eq!(pd.trace(), int(6));
    }
}

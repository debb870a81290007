//! Maximizing `tr(rho Q)` over product states of a partition.
//!
//! `Q` is diagonal in the computational basis, with a value depending only
//! on the Hamming weight, plus `2^{n-1}(|0^n><1^n| + h.c.)`. With every
//! factor but one fixed, `<psi|Q|psi>` is a Hermitian form in the remaining
//! factor; its top eigenvector is the best response. Sweeping over factors
//! never decreases the value.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::exactmath::{binom_rat, int, to_f64, Rat};
use crate::partitions::PartitionType;
use crate::report::{params, CheckRecord};
use crate::witness::{canonical_witness, sep_max, BLOCH_TOLERANCE};

pub const PRODUCT_MAX_QUBITS: usize = 8;
pub const DEFAULT_RESTARTS: usize = 64;
pub const DEFAULT_SEED: u64 = 42;
pub const MAX_SWEEPS: usize = 500;
pub const SWEEP_TOLERANCE: f64 = 1e-12;

/// One pure state per part; a part of size `m` carries `2^m` amplitudes
/// indexed by the block basis label (first qubit most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct ProductStateSpec {
    pub partition: PartitionType,
    pub factors: Vec<Vec<Complex64>>,
}

impl ProductStateSpec {
    pub fn new(partition: PartitionType, factors: Vec<Vec<Complex64>>) -> Result<Self> {
        if factors.len() != partition.k() {
            return domain(format!("{} factors for {} parts", factors.len(), partition.k()));
        }
        for (f, &m) in factors.iter().zip(partition.parts()) {
            if f.len() != 1 << m {
                return domain(format!("part of size {m} needs {} amplitudes", 1 << m));
            }
            let norm: f64 = f.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > BLOCH_TOLERANCE {
                return domain(format!("factor has norm {norm}"));
            }
        }
        Ok(ProductStateSpec { partition, factors })
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` for a unit Bloch vector.
    pub fn qubit_from_bloch(v: [f64; 3]) -> Result<Vec<Complex64>> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > BLOCH_TOLERANCE {
            return domain(format!("Bloch vector {v:?} has norm {norm}"));
        }
        let theta = v[2].clamp(-1.0, 1.0).acos();
        let phi = v[1].atan2(v[0]);
        Ok(vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ])
    }

    /// Bloch vector of a single-qubit factor.
    pub fn bloch(&self, part: usize) -> Option<[f64; 3]> {
        let f = self.factors.get(part)?;
        if f.len() != 2 {
            return None;
        }
        let off = f[0].conj() * f[1];
        Some([2.0 * off.re, 2.0 * off.im, f[0].norm_sqr() - f[1].norm_sqr()])
    }

    /// Full state vector, parts placed on consecutive qubits in order.
    pub fn to_vector(&self) -> Vec<Complex64> {
        self.factors.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, f| {
            acc.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect()
        })
    }
}

/// `Q` stored as its weight-indexed diagonal and the corner coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseWitness {
    pub n: usize,
    pub block: usize,
    pub diagonal: Vec<f64>,
    pub corner: f64,
}

impl SparseWitness {
    pub fn canonical(n: usize, block: usize) -> Result<Self> {
        if n > PRODUCT_MAX_QUBITS {
            return domain(format!("product-state search limited to n <= {PRODUCT_MAX_QUBITS}"));
        }
        let w = canonical_witness(n, block)?;
        // Krawtchouk sum: sum over |T| = 2i of (-1)^{|x & T|} for |x| = h.
        let diagonal = (0..=n)
            .map(|h| {
                let mut total = Rat::zero();
                for i in 1..=n / 2 {
                    let kraw: Rat = (0..=2 * i)
                        .map(|j| {
                            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                            sign * binom_rat(h as u64, j as i64) * binom_rat((n - h) as u64, (2 * i - j) as i64)
                        })
                        .sum();
                    total += w.coeff(i) * kraw;
                }
                to_f64(&total)
            })
            .collect();
        Ok(SparseWitness {
            n,
            block,
            diagonal,
            corner: 2f64.powi(n as i32 - 1),
        })
    }

    pub fn value(&self, s: &ProductStateSpec) -> f64 {
        let dist = weight_distribution(&s.factors);
        let diag: f64 = dist.iter().zip(&self.diagonal).map(|(p, q)| p * q).sum();
        let coh = s
            .factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f[0].conj() * f[f.len() - 1]);
        diag + 2.0 * self.corner * coh.re
    }

    /// Hermitian operator `H` with `<psi|Q|psi> = <psi_a|H|psi_a>`.
    pub fn environment(&self, s: &ProductStateSpec, a: usize) -> DMatrix<Complex64> {
        let others: Vec<Vec<Complex64>> = s
            .factors
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, f)| f.clone())
            .collect();
        let dist = weight_distribution(&others);
        let dim = s.factors[a].len();
        let mut h = DMatrix::<Complex64>::zeros(dim, dim);
        for y in 0..dim {
            let wy = y.count_ones() as usize;
            let v: f64 = dist.iter().enumerate().map(|(w, p)| p * self.diagonal[wy + w]).sum();
            h[(y, y)] = Complex64::new(v, 0.0);
        }
        let rest = others
            .iter()
            .fold(Complex64::new(self.corner, 0.0), |acc, f| acc * f[0].conj() * f[f.len() - 1]);
        h[(0, dim - 1)] += rest;
        h[(dim - 1, 0)] += rest.conj();
        h
    }
}

/// Distribution of the total Hamming weight under `|psi|^2`.
fn weight_distribution(factors: &[Vec<Complex64>]) -> Vec<f64> {
    let mut dist = vec![1.0];
    for f in factors {
        let m = f.len().trailing_zeros() as usize;
        let mut local = vec![0.0; m + 1];
        for (y, c) in f.iter().enumerate() {
            local[y.count_ones() as usize] += c.norm_sqr();
        }
        let mut next = vec![0.0; dist.len() + m];
        for (i, p) in dist.iter().enumerate() {
            for (j, q) in local.iter().enumerate() {
                next[i + j] += p * q;
            }
        }
        dist = next;
    }
    dist
}

fn random_factor<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

fn random_state<R: Rng>(rng: &mut R, partition: &PartitionType) -> ProductStateSpec {
    ProductStateSpec {
        partition: partition.clone(),
        factors: partition.parts().iter().map(|&m| random_factor(rng, 1 << m)).collect(),
    }
}

fn restart_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximizationReport {
    pub best: f64,
    pub best_state: ProductStateSpec,
    /// Final value of every restart, in restart order.
    pub values: Vec<f64>,
    pub converged: usize,
}

fn ascend(q: &SparseWitness, mut s: ProductStateSpec) -> (f64, bool, ProductStateSpec) {
    let mut prev = q.value(&s);
    for _ in 0..MAX_SWEEPS {
        for a in 0..s.factors.len() {
            let eig = SymmetricEigen::new(q.environment(&s, a));
            let top = eig.eigenvalues.imax();
            let v = eig.eigenvectors.column(top);
            let norm = v.norm();
            s.factors[a] = v.iter().map(|c| c / norm).collect();
        }
        let value = q.value(&s);
        if (value - prev).abs() < SWEEP_TOLERANCE * value.abs().max(1.0) {
            return (value, true, s);
        }
        prev = value;
    }
    (prev, false, s)
}

/// Multistart best-response ascent of `tr(rho Q_L)` over product states of
/// `partition`. Restart `r` draws from stream `r` of a ChaCha8 generator
/// seeded with `seed`.
pub fn maximize_for_partition(
    block: usize,
    partition: &PartitionType,
    restarts: usize,
    seed: u64,
) -> Result<MaximizationReport> {
    let q = SparseWitness::canonical(partition.n(), block)?;
    if restarts == 0 {
        return domain("need at least one restart");
    }
    let runs: Vec<(f64, bool, ProductStateSpec)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = restart_rng(seed, r as u64);
            ascend(&q, random_state(&mut rng, partition))
        })
        .collect();
    let converged = runs.iter().filter(|r| r.1).count();
    if converged == 0 {
        return Err(Error::NoConvergence(format!(
            "no restart converged within {MAX_SWEEPS} sweeps"
        )));
    }
    let values = runs.iter().map(|r| r.0).collect();
    let (best, _, best_state) = runs
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("restarts > 0");
    Ok(MaximizationReport {
        best,
        best_state,
        values,
        converged,
    })
}

/// [`maximize_for_partition`] on `1^(n-L)|L`.
pub fn maximize_over_product_states(
    n: usize,
    block: usize,
    restarts: usize,
    seed: u64,
) -> Result<MaximizationReport> {
    if block + 1 > n {
        return domain(format!("block size {block} too large for n = {n}"));
    }
    let mut parts = vec![1; n - block];
    parts.push(block);
    maximize_for_partition(block, &PartitionType::new(parts)?, restarts, seed)
}

/// Largest `tr(rho Q_L)` over `samples` random product states of `partition`.
pub fn sample_product_states(block: usize, partition: &PartitionType, samples: usize, seed: u64) -> Result<f64> {
    let q = SparseWitness::canonical(partition.n(), block)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..samples)
        .map(|_| q.value(&random_state(&mut rng, partition)))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Splitting the `L` block further (without creating new single-qubit
/// parties) must not raise the maximum.
pub fn split_monotonicity_check(
    n: usize,
    block: usize,
    finer: &PartitionType,
    restarts: usize,
    seed: u64,
) -> Result<CheckRecord> {
    if finer.n() != n || block + 1 > n || finer.count_of(1) != n - block {
        return domain(format!("{finer} does not refine 1^{}|{block} inside the block", n - block));
    }
    let coarse = maximize_over_product_states(n, block, restarts, seed)?.best;
    let fine = maximize_for_partition(block, finer, restarts, seed)?.best;
    let bound = to_f64(&sep_max(n, block)?);
    Ok(CheckRecord {
        check: "split_monotonicity".into(),
        params: params([
            ("n", serde_json::Value::from(n)),
            ("L", block.into()),
            ("finer", finer.to_string().into()),
        ]),
        pass: fine <= coarse + 1e-9 && fine <= bound + 1e-9,
        detail: format!("finer max {fine:.12}, block max {coarse:.12}, bound {bound}"),
    })
}

//! The stabilizer witness family `Q = sum L_k K_1^{k_1}..K_N^{k_N}` and its
//! necessary conditions.
//!
//! The coefficients are grouped: every Z-string on `2i` qubits carries `M_i`
//! (`M_0 = 0`) and every element of the `K_1` coset carries 1. For a block
//! size `L` the canonical choice is `M_i = (4i - n)/(n - L)`, which makes the
//! maximum of `tr(rho Q)` over `1^(n-L)|L`-separable states equal to
//! `n/(n-L)`.
//!
//! `Q` is never built as a matrix here; the oracle module does that for
//! small `n`.

use nalgebra::{Matrix4, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exactmath::{binom_rat, elem_sym, int, pow2_rat, serde_rat, w_coeff, Rat, SymPolyVector};

/// Witness coefficients `M_1..M_{floor(n/2)}` for block size `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSpec {
    pub n: usize,
    pub block: usize,
    #[serde(with = "serde_rat::vec")]
    pub m: Vec<Rat>,
}

impl WitnessSpec {
    /// `M_i`, with `M_0 = 0` and zero beyond `floor(n/2)`.
    pub fn coeff(&self, i: usize) -> Rat {
        if i == 0 {
            return Rat::zero();
        }
        self.m.get(i - 1).cloned().unwrap_or_else(Rat::zero)
    }
}

fn check_block(n: usize, block: usize) -> Result<()> {
    if block < 2 || block + 1 > n {
        return domain(format!("block size L = {block} must satisfy 2 <= L <= n-1 for n = {n}"));
    }
    Ok(())
}

pub fn canonical_witness(n: usize, block: usize) -> Result<WitnessSpec> {
    check_block(n, block)?;
    let denom = int((n - block) as i64);
    let m = (1..=n / 2)
        .map(|i| int(4 * i as i64 - n as i64) / &denom)
        .collect();
    Ok(WitnessSpec { n, block, m })
}

/// `sum_i M_i C(n, 2i)`.
pub fn witness_sum(w: &WitnessSpec) -> Rat {
    (1..=w.n / 2)
        .map(|i| w.coeff(i) * binom_rat(w.n as u64, 2 * i as i64))
        .sum()
}

/// `tr(rho_ghz(p) Q) = p (witness_sum + 2^{n-1})`.
pub fn ghz_witness_value(w: &WitnessSpec, p: &Rat) -> Result<Rat> {
    if p.is_negative() || p > &Rat::one() {
        return domain(format!("p = {p} outside [0, 1]"));
    }
    Ok(p * (witness_sum(w) + pow2_rat(w.n as u32 - 1)))
}

/// `max tr(rho_s Q)` over `1^(n-L)|L`-separable states: `n/(n-L)`.
pub fn sep_max(n: usize, block: usize) -> Result<Rat> {
    check_block(n, block)?;
    Ok(Rat::new(BigInt::from(n), BigInt::from(n - block)))
}

/// `sep_max / (witness_sum + 2^{n-1}) = 1/(1 + (n-L)/n 2^{n-1})`.
pub fn necessary_threshold(n: usize, block: usize) -> Result<Rat> {
    let w = canonical_witness(n, block)?;
    Ok(sep_max(n, block)? / (witness_sum(&w) + pow2_rat(n as u32 - 1)))
}

/// Tolerance on `|r| = 1` for floating-point Bloch vectors.
pub const BLOCH_TOLERANCE: f64 = 1e-9;

/// The 4x4 operator left on the last two qubits once the `n-2` single-qubit
/// factors are fixed:
/// `a0 + a1 ZZ + b (IZ + ZI) + c (XX - YY) - d (XY + YX)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MMatrixL2 {
    pub a0: f64,
    pub a1: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MMatrixL2 {
    /// Closed-form spectrum `[a0+a1+2r, a0+a1-2r, a0-a1, a0-a1]`,
    /// `r = sqrt(b^2+c^2+d^2)`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let r = (self.b * self.b + self.c * self.c + self.d * self.d).sqrt();
        let s = self.a0 + self.a1;
        let t = self.a0 - self.a1;
        [s + 2.0 * r, s - 2.0 * r, t, t]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Explicit matrix in the basis `|00>, |01>, |10>, |11>`.
    pub fn matrix(&self) -> Matrix4<Complex64> {
        let re = |x: f64| Complex64::new(x, 0.0);
        let mut m = Matrix4::<Complex64>::zeros();
        m[(0, 0)] = re(self.a0 + self.a1 + 2.0 * self.b);
        m[(1, 1)] = re(self.a0 - self.a1);
        m[(2, 2)] = re(self.a0 - self.a1);
        m[(3, 3)] = re(self.a0 + self.a1 - 2.0 * self.b);
        // c (XX - YY) = 2c (|00><11| + h.c.); -d (XY + YX) = 2i d |00><11| + h.c.
        m[(0, 3)] = Complex64::new(2.0 * self.c, 2.0 * self.d);
        m[(3, 0)] = m[(0, 3)].conj();
        m
    }

    /// Spectrum from a dense Hermitian eigensolver, ascending.
    pub fn numeric_eigenvalues(&self) -> [f64; 4] {
        let eig = SymmetricEigen::new(self.matrix());
        let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| a.total_cmp(b));
        [v[0], v[1], v[2], v[3]]
    }
}

fn real_sym(z: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; z.len() + 1];
    s[0] = 1.0;
    for (m, zi) in z.iter().enumerate() {
        for i in (1..=m + 1).rev() {
            s[i] += s[i - 1] * zi;
        }
    }
    s
}

/// Builds [`MMatrixL2`] for the canonical `L = 2` witness from the Bloch
/// vectors `(x, y, z)` of the `n-2` single-qubit factors.
pub fn m_matrix_l2(n: usize, bloch: &[[f64; 3]]) -> Result<MMatrixL2> {
    let w = canonical_witness(n, 2)?;
    if bloch.len() != n - 2 {
        return domain(format!("expected {} Bloch vectors, got {}", n - 2, bloch.len()));
    }
    for v in bloch {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > BLOCH_TOLERANCE {
            return domain(format!("Bloch vector {v:?} has norm {norm}"));
        }
    }
    let m: Vec<f64> = (0..=n / 2 + 1).map(|i| crate::exactmath::to_f64(&w.coeff(i))).collect();
    let z: Vec<f64> = bloch.iter().map(|v| v[2]).collect();
    let s = real_sym(&z);
    let s_at = |i: usize| s.get(i).copied().unwrap_or(0.0);
    let mut a0 = 0.0;
    let mut a1 = 0.0;
    let mut b = 0.0;
    for (i, mi) in m.iter().enumerate().take(n / 2 + 1).skip(1) {
        // Z-strings on 2i qubits: none, both or one of the last two qubits.
        a0 += mi * s_at(2 * i);
        a1 += mi * s_at(2 * i - 2);
        b += mi * s_at(2 * i - 1);
    }
    let transverse = bloch
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, v| acc * Complex64::new(v[0], v[1]));
    Ok(MMatrixL2 {
        a0,
        a1,
        b,
        c: transverse.re,
        d: transverse.im,
    })
}

/// Diagonal of the `2^L x 2^L` operator left on the block, indexed by the
/// Hamming weight of the block basis state, plus the corner data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaDiagonal {
    pub n: usize,
    pub block: usize,
    #[serde(with = "serde_rat::vec")]
    pub gamma: Vec<Rat>,
    /// Even symmetric-sum part of the corner entries.
    #[serde(with = "serde_rat")]
    pub a: Rat,
    /// Odd symmetric-sum part of the corner entries.
    #[serde(with = "serde_rat")]
    pub b: Rat,
    /// `prod (1 - z_m^2)`: the largest `c^2 + d^2` compatible with `z`.
    #[serde(with = "serde_rat")]
    pub transverse_sq_max: Rat,
}

impl GammaDiagonal {
    /// `|<0^L| M |1^L>|^2 <= 4^{L-1} prod (1 - z^2)`.
    pub fn corner_offdiag_sq_max(&self) -> Rat {
        pow2_rat(2 * (self.block as u32 - 1)) * &self.transverse_sq_max
    }

    /// True when every eigenvalue of the block operator is `<= x`, for every
    /// choice of transverse components compatible with `z`. Exact.
    pub fn bounded_by(&self, x: &Rat) -> bool {
        if self.gamma.iter().any(|g| g > x) {
            return false;
        }
        // 2x2 corner: max eigenvalue <= x  iff  (x - G0)(x - GL) >= |off|^2.
        let g0 = &self.gamma[0];
        let gl = &self.gamma[self.block];
        (x - g0) * (x - gl) >= self.corner_offdiag_sq_max()
    }

    /// Largest eigenvalue of the corner block at the maximal transverse
    /// magnitude, in floating point.
    pub fn corner_max_eigenvalue(&self) -> f64 {
        let g0 = crate::exactmath::to_f64(&self.gamma[0]);
        let gl = crate::exactmath::to_f64(&self.gamma[self.block]);
        let off = crate::exactmath::to_f64(&self.corner_offdiag_sq_max());
        0.5 * (g0 + gl) + (0.25 * (g0 - gl) * (g0 - gl) + off).sqrt()
    }
}

/// `Gamma_0..Gamma_L` for block size `L` and Z-components `z` of the `n-L`
/// single-qubit factors.
pub fn gamma_diagonal(n: usize, block: usize, z: &[Rat]) -> Result<GammaDiagonal> {
    let w = canonical_witness(n, block)?;
    let singles = n - block;
    if z.len() != singles {
        return domain(format!("expected {singles} z values, got {}", z.len()));
    }
    if let Some(bad) = z.iter().find(|zi| zi.abs() > Rat::one()) {
        return domain(format!("z component {bad} lies outside [-1, 1]"));
    }
    let s = elem_sym(z);
    let big_l = block as i64;
    let wc = |k: usize, l: usize| -> Rat {
        if k > block {
            return Rat::zero();
        }
        Rat::from_integer(w_coeff(big_l, k as i64, l as i64).expect("indices checked"))
    };
    let mut gamma = Vec::with_capacity(block + 1);
    for l in 0..=block {
        let mut g: Rat = (1..=block / 2).map(|i| w.coeff(i) * wc(2 * i, l)).sum();
        for m in 1..=singles.div_ceil(2) {
            let inner: Rat = (1..=block.div_ceil(2))
                .map(|i| w.coeff(i + m - 1) * wc(2 * i - 1, l))
                .sum();
            g += s.get(2 * m as i64 - 1) * inner;
        }
        for m in 1..=singles / 2 {
            let inner: Rat = (0..=block / 2).map(|i| w.coeff(i + m) * wc(2 * i, l)).sum();
            g += s.get(2 * m as i64) * inner;
        }
        gamma.push(g);
    }
    let (a, b) = corner_ab(&s, singles);
    let transverse_sq_max = z.iter().fold(Rat::one(), |acc, zi| acc * (Rat::one() - zi * zi));
    Ok(GammaDiagonal {
        n,
        block,
        gamma,
        a,
        b,
        transverse_sq_max,
    })
}

fn corner_ab(s: &SymPolyVector, singles: usize) -> (Rat, Rat) {
    let k = singles as i64;
    let inv = Rat::new(BigInt::one(), BigInt::from(k));
    let mut a = -Rat::one();
    for m in 1..=k / 2 {
        a += int(4 * m - k) * &inv * s.get(2 * m);
    }
    let mut b = Rat::zero();
    for m in 1..=(k + 1) / 2 {
        b += int(4 * m - 2 - k) * &inv * s.get(2 * m - 1);
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_witness(5, 2).unwrap().m, vec![rat(-1, 3), int(1)]);
        assert_eq!(canonical_witness(6, 4).unwrap().m, vec![int(-1), int(1), int(3)]);
        assert_eq!(canonical_witness(4, 2).unwrap().m, vec![int(0), int(2)]);
        assert!(canonical_witness(4, 4).is_err());
        assert!(canonical_witness(4, 1).is_err());
    }

    #[test]
    fn witness_sum_examples() {
        assert_eq!(witness_sum(&canonical_witness(5, 2).unwrap()), rat(5, 3));
        assert_eq!(witness_sum(&canonical_witness(6, 4).unwrap()), int(3));
        assert_eq!(witness_sum(&canonical_witness(4, 2).unwrap()), int(2));
    }

    #[test]
    fn witness_sum_closed_form_sweep() {
        for n in 3..=30 {
            for block in 2..n {
                let w = canonical_witness(n, block).unwrap();
                assert_eq!(witness_sum(&w), sep_max(n, block).unwrap(), "n={n} L={block}");
            }
        }
    }

    #[test]
    fn ghz_value_examples() {
        let w = canonical_witness(3, 2).unwrap();
        assert_eq!(ghz_witness_value(&w, &rat(3, 7)).unwrap(), int(3));
        assert_eq!(ghz_witness_value(&w, &int(0)).unwrap(), int(0));
        let w = canonical_witness(6, 4).unwrap();
        assert_eq!(ghz_witness_value(&w, &rat(3, 35)).unwrap(), int(3));
        assert!(ghz_witness_value(&w, &int(2)).is_err());
    }

    #[test]
    fn sep_max_and_threshold_examples() {
        assert_eq!(sep_max(3, 2).unwrap(), int(3));
        assert_eq!(sep_max(6, 4).unwrap(), int(3));
        assert_eq!(sep_max(12, 2).unwrap(), rat(6, 5));
        assert_eq!(necessary_threshold(3, 2).unwrap(), rat(3, 7));
        assert_eq!(necessary_threshold(6, 4).unwrap(), rat(3, 35));
        assert_eq!(necessary_threshold(5, 4).unwrap(), rat(5, 21));
    }

    #[test]
    fn m_matrix_equator_and_poles() {
        for n in 3..=9 {
            let eq = vec![[1.0, 0.0, 0.0]; n - 2];
            let m = m_matrix_l2(n, &eq).unwrap();
            assert!(m.a0.abs() < 1e-15 && m.b.abs() < 1e-15 && m.d.abs() < 1e-15);
            assert!((m.c - 1.0).abs() < 1e-15);
            assert!((m.a1 - (4.0 - n as f64) / (n as f64 - 2.0)).abs() < 1e-12);
            let target = n as f64 / (n as f64 - 2.0);
            assert!((m.max_eigenvalue() - target).abs() < 1e-12);

            let poles = vec![[0.0, 0.0, 1.0]; n - 2];
            let m = m_matrix_l2(n, &poles).unwrap();
            assert_eq!((m.c, m.d), (0.0, 0.0));
            assert!(m.max_eigenvalue() <= target + 1e-12);
        }
        assert!(m_matrix_l2(4, &[[1.0, 0.0, 0.0]]).is_err());
        assert!(m_matrix_l2(4, &[[1.0, 0.0, 0.0], [0.5, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn gamma_zero_and_unit_z() {
        let n = 7;
        for block in 2..n {
            let x = sep_max(n, block).unwrap();
            let k = int((n - block) as i64);
            let edge = pow2_rat(block as u32 - 1) / &k;
            let g = gamma_diagonal(n, block, &vec![int(0); n - block]).unwrap();
            if block > 2 {
                assert_eq!(g.gamma[1], &x - &edge);
                for l in 2..block - 1 {
                    assert_eq!(g.gamma[l], x);
                }
            } else {
                assert_eq!(g.gamma[1], &x - int(2) * &edge);
            }
            assert!(g.bounded_by(&x));

            let g = gamma_diagonal(n, block, &vec![int(1); n - block]).unwrap();
            let plus = pow2_rat((n - block) as u32);
            assert_eq!(g.gamma[1], &x - &edge * &plus);
            if block > 2 {
                assert_eq!(g.gamma[block - 1], x);
            }
        }
        assert!(gamma_diagonal(5, 2, &[int(0), int(2), int(0)]).is_err());
        assert!(gamma_diagonal(5, 2, &[int(0)]).is_err());
    }

    #[test]
    fn gamma_reduces_to_l2_middle_eigenvalue() {
        // For L = 2 the middle diagonal entry is a0 - a1.
        let z = [rat(1, 3), rat(-1, 2), rat(3, 4)];
        let n = 5;
        let g = gamma_diagonal(n, 2, &z).unwrap();
        let plus: Rat = z.iter().map(|zi| Rat::one() + zi).product();
        let minus: Rat = z.iter().map(|zi| Rat::one() - zi).product();
        let expect = rat(5, 3) - rat(2, 3) * (plus + minus);
        assert_eq!(g.gamma[1], expect);
    }
}

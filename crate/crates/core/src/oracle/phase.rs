//! Brute-force phase and permutation averaging of block product states.
//!
//! Part `j` (qubits `Q_j`) is prepared in `(|0..0> + e^{i phi_j}|1..1>)/sqrt 2`
//! with `phi_k = -(phi_1 + .. + phi_{k-1})`. In the basis `|x(b)>`, `b` in
//! `{0,1}^k`, the projector has entries `2^{-k} e^{i sum_j (b_j - b'_j) phi_j}`,
//! so each free phase appears with integer frequency in `[-2, 2]`. Averaging
//! a phase over `{0, pi/2, pi, 3pi/2}` kills every frequency not divisible
//! by 4, which reproduces the continuous average exactly.
//!
//! Permutation averaging maps entry `(u, v)` to the mean over the orbit of
//! `(u, v)` under simultaneous qubit permutations. The orbit is labelled by
//! the counts of the column types `00, 01, 10, 11` and has multinomial size.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dense::RatMatrix;
use crate::error::{domain, Error, Result};
use crate::exactmath::{binom, pow2_rat, Rat};
use crate::partitions::PartitionType;
use crate::symstate::SymState;

use super::gauss::GaussRat;

pub const PHASE_ORACLE_MAX_QUBITS: usize = 10;
pub const PHASE_DENSE_MAX_QUBITS: usize = 8;

/// Counts of `(u_q, v_q)` equal to `00, 01, 10, 11`.
pub type Signature = [usize; 4];

/// Mean of `i^{m s}` over `s = 0..4`: the exact average of `e^{i m phi}`
/// over the fourth roots of unity.
fn root_average(m: i64) -> GaussRat {
    let sum = (0..4).fold(GaussRat::zero(), |acc, s| acc + GaussRat::i_pow(m * s));
    sum.scale(&(Rat::one() / pow2_rat(2)))
}

/// Phase-averaged, permutation-averaged entries keyed by orbit signature.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitAverages {
    pub n: usize,
    pub entries: BTreeMap<Signature, GaussRat>,
}

impl OrbitAverages {
    pub fn get(&self, sig: &Signature) -> GaussRat {
        self.entries.get(sig).cloned().unwrap_or_else(GaussRat::zero)
    }
}

fn orbit_size(sig: &Signature) -> BigInt {
    let n = sig.iter().sum::<usize>() as u64;
    binom(n, sig[0] as i64)
        * binom(n - sig[0] as u64, sig[1] as i64)
        * binom(n - (sig[0] + sig[1]) as u64, sig[2] as i64)
}

pub fn orbit_averages(p: &PartitionType) -> Result<OrbitAverages> {
    let n = p.n();
    let k = p.k();
    if k < 2 {
        return domain("phase averaging needs at least two parts");
    }
    if n > PHASE_ORACLE_MAX_QUBITS {
        return domain(format!("phase oracle limited to n <= {PHASE_ORACLE_MAX_QUBITS}"));
    }
    let parts = p.parts();
    let table: Vec<GaussRat> = (-4..=4).map(root_average).collect();
    let norm = Rat::one() / pow2_rat(k as u32);
    let mut sums: BTreeMap<Signature, GaussRat> = BTreeMap::new();
    for b in 0u32..(1 << k) {
        for bp in 0u32..(1 << k) {
            let bit = |x: u32, j: usize| ((x >> j) & 1) as i64;
            let last = bit(b, k - 1) - bit(bp, k - 1);
            let mut weight = GaussRat::real(norm.clone());
            for j in 0..k - 1 {
                let m = bit(b, j) - bit(bp, j) - last;
                weight = &weight * &table[(m + 4) as usize];
                if weight.is_zero() {
                    break;
                }
            }
            if weight.is_zero() {
                continue;
            }
            let mut sig = [0usize; 4];
            for (j, &size) in parts.iter().enumerate() {
                sig[(2 * bit(b, j) + bit(bp, j)) as usize] += size;
            }
            *sums.entry(sig).or_insert_with(GaussRat::zero) += &weight;
        }
    }
    let entries = sums
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(sig, v)| {
            let size = Rat::from_integer(orbit_size(&sig));
            (sig, v.scale(&(Rat::one() / size)))
        })
        .collect();
    Ok(OrbitAverages { n, entries })
}

/// The averaged state in [`SymState`] form. Any entry outside the diagonal
/// and the `|0^n><1^n|` corners, or any imaginary part, is a fault.
pub fn phase_average_oracle(p: &PartitionType) -> Result<SymState> {
    let avg = orbit_averages(p)?;
    let n = avg.n;
    let mut d = vec![Rat::zero(); n + 1];
    let mut alpha = None;
    for (sig, v) in &avg.entries {
        if !v.is_real() {
            return Err(Error::OracleFault(format!("imaginary entry {v} at {sig:?}")));
        }
        match *sig {
            [_, 0, 0, c11] => d[c11] = v.re.clone(),
            [0, c01, 0, 0] if c01 == n => alpha = Some(v.re.clone()),
            [0, 0, c10, 0] if c10 == n => {}
            _ => {
                return Err(Error::OracleFault(format!(
                    "unexpected nonzero orbit {sig:?} (n = {n}, c00 = {})",
                    sig[0]
                )))
            }
        }
    }
    let alpha = alpha.unwrap_or_else(Rat::zero);
    if avg.get(&[0, 0, n, 0]).re != alpha {
        return Err(Error::OracleFault("coherence is not Hermitian".into()));
    }
    SymState::new(n, alpha, d)
}

/// The averaged state as an explicit `2^n` matrix.
pub fn phase_average_dense(p: &PartitionType) -> Result<RatMatrix> {
    let n = p.n();
    if n > PHASE_DENSE_MAX_QUBITS {
        return domain(format!("dense phase oracle limited to n <= {PHASE_DENSE_MAX_QUBITS}"));
    }
    let avg = orbit_averages(p)?;
    let dim = 1usize << n;
    let mut m = RatMatrix::zeros(dim);
    for u in 0..dim {
        for v in 0..dim {
            let sig = [
                (!u & !v & (dim - 1)).count_ones() as usize,
                (!u & v & (dim - 1)).count_ones() as usize,
                (u & !v & (dim - 1)).count_ones() as usize,
                (u & v).count_ones() as usize,
            ];
            let e = avg.get(&sig);
            if !e.is_real() {
                return Err(Error::OracleFault(format!("imaginary entry at ({u}, {v})")));
            }
            if !e.re.is_zero() {
                m.set(u, v, e.re);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};
    use crate::symstate::{partition_average_state, to_dense};

    fn pt(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    #[test]
    fn root_average_kills_nonzero_frequencies() {
        assert_eq!(root_average(0), GaussRat::real(int(1)));
        assert_eq!(root_average(4), GaussRat::real(int(1)));
        for m in [-3, -2, -1, 1, 2, 3] {
            assert!(root_average(m).is_zero(), "m = {m}");
        }
    }

    #[test]
    fn examples() {
        let s = phase_average_oracle(&pt("1^2|2")).unwrap();
        assert_eq!(s, partition_average_state(&pt("1^2|2")).unwrap());
        let s = phase_average_oracle(&pt("2^3")).unwrap();
        assert_eq!(&s.d[1..6], &[int(0), rat(1, 40), int(0), rat(1, 40), int(0)]);
        for n in 3..=8 {
            let s = phase_average_oracle(&PartitionType::new(vec![1, n - 1]).unwrap()).unwrap();
            for (w, dw) in s.d.iter().enumerate() {
                assert_eq!(dw.is_zero(), ![0, 1, n - 1, n].contains(&w), "n={n} w={w}");
            }
        }
        assert!(phase_average_oracle(&pt("4")).is_err());
    }

    #[test]
    fn dense_agrees_with_to_dense() {
        for p in ["1^2|2", "1|2|3", "1^4", "2^2"] {
            let p = pt(p);
            let a = phase_average_dense(&p).unwrap();
            let b = to_dense(&partition_average_state(&p).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.rank(), b.rank());
        }
    }
}

//! Permutation-symmetric states of the GHZ-diagonal family.
//!
//! A [`SymState`] is `alpha (|0^n><1^n| + |1^n><0^n|) + sum_x d_{|x|} |x><x|`:
//! one GHZ coherence plus a diagonal that only depends on Hamming weight.
//! `d` stores the coefficient of each individual projector, so the weight-`i`
//! sector contributes `d_i C(n, i)` to the trace. States may be unnormalized.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dense::RatMatrix;
use crate::error::{domain, Result};
use crate::exactmath::{binom_rat, pow2_rat, serde_rat, Rat};
use crate::partitions::{profile, PartitionType};

/// Largest `n` accepted by [`to_dense`].
pub const DENSE_MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymState {
    pub n: usize,
    #[serde(with = "serde_rat")]
    pub alpha: Rat,
    #[serde(with = "serde_rat::vec")]
    pub d: Vec<Rat>,
}

impl SymState {
    pub fn new(n: usize, alpha: Rat, d: Vec<Rat>) -> Result<Self> {
        if n < 2 {
            return domain(format!("SymState needs n >= 2, got {n}"));
        }
        if d.len() != n + 1 {
            return domain(format!("SymState for n = {n} needs {} diagonal entries, got {}", n + 1, d.len()));
        }
        Ok(SymState { n, alpha, d })
    }

    pub fn trace(&self) -> Rat {
        self.d
            .iter()
            .enumerate()
            .map(|(i, di)| di * binom_rat(self.n as u64, i as i64))
            .sum()
    }

    /// Non-negative diagonal and a positive 2x2 coherence block.
    pub fn is_physical(&self) -> bool {
        self.d.iter().all(|x| !x.is_negative()) && &self.alpha * &self.alpha <= &self.d[0] * &self.d[self.n]
    }

    pub fn scaled(&self, factor: &Rat) -> SymState {
        SymState {
            n: self.n,
            alpha: &self.alpha * factor,
            d: self.d.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn normalized(&self) -> Result<SymState> {
        let tr = self.trace();
        if !tr.is_positive() {
            return domain("cannot normalize a state with non-positive trace");
        }
        Ok(self.scaled(&(Rat::one() / tr)))
    }

    /// Largest interior per-projector weight, `max_{1<=i<=n-1} d_i`.
    pub fn max_interior(&self) -> Rat {
        self.d[1..self.n]
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(Rat::zero)
    }
}

/// `p |GHZ><GHZ| + (1-p) I / 2^n`.
pub fn noisy_ghz(n: usize, p: &Rat) -> Result<SymState> {
    if n < 2 {
        return domain(format!("noisy_ghz needs n >= 2, got {n}"));
    }
    if p.is_negative() || p > &Rat::one() {
        return domain(format!("noisy_ghz: p = {p} outside [0, 1]"));
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let noise = (Rat::one() - p) / pow2_rat(n as u32);
    let mut d = vec![noise.clone(); n + 1];
    d[0] = p * &half + &noise;
    d[n] = d[0].clone();
    SymState::new(n, p * half, d)
}

/// Phase- and permutation-averaged product state for a partition.
///
/// Each party contributes `(|0..0> + e^{i phi}|1..1>)/sqrt 2` with the phases
/// constrained to cancel on the full coherence. Averaging leaves coherence
/// `1/2^k` and diagonal `f(i) / (2^k C(n, i))`, `f` the subset-sum profile.
/// The result is separable with respect to `p` and has unit trace.
pub fn partition_average_state(p: &PartitionType) -> Result<SymState> {
    if p.k() < 2 {
        return domain(format!("partition {p} has fewer than two parties"));
    }
    let n = p.n();
    let f = profile(p);
    let norm = pow2_rat(p.k() as u32);
    let d = (0..=n)
        .map(|i| Rat::from_integer(f.f[i].clone()) / (&norm * binom_rat(n as u64, i as i64)))
        .collect();
    SymState::new(n, Rat::one() / norm, d)
}

/// Convex combination of states on the same number of qubits.
pub fn mix(states: &[SymState], weights: &[Rat]) -> Result<SymState> {
    if states.is_empty() {
        return domain("mix needs at least one state");
    }
    if states.len() != weights.len() {
        return domain(format!("{} states but {} weights", states.len(), weights.len()));
    }
    let n = states[0].n;
    if let Some(s) = states.iter().find(|s| s.n != n) {
        return domain(format!("cannot mix n = {n} with n = {}", s.n));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return domain("mixture weights must be non-negative");
    }
    if weights.iter().sum::<Rat>() != Rat::one() {
        return domain("mixture weights must sum to 1");
    }
    let mut alpha = Rat::zero();
    let mut d = vec![Rat::zero(); n + 1];
    for (s, w) in states.iter().zip(weights) {
        alpha += w * &s.alpha;
        for (acc, x) in d.iter_mut().zip(&s.d) {
            *acc += w * x;
        }
    }
    SymState::new(n, alpha, d)
}

/// Result of topping up a separable state to the isotropic GHZ form.
#[derive(Debug, Clone, PartialEq)]
pub struct Padded {
    /// Normalized padded state; equals `noisy_ghz(n, p_s)`.
    pub padded: SymState,
    /// Computational-basis weight added per projector (all non-negative).
    pub padding: Vec<Rat>,
    /// `alpha / max interior d_i`.
    pub tau: Rat,
    /// `tau / (tau + 2^{n-1})`.
    pub p_s: Rat,
}

/// Adds diagonal computational-basis weight (a fully separable operation) so
/// the state becomes `alpha * 2|GHZ><GHZ| + t I`, then normalizes.
pub fn pad_to_isotropic(s: &SymState) -> Result<Padded> {
    if !s.alpha.is_positive() {
        return domain(format!("pad_to_isotropic needs alpha > 0, got {}", s.alpha));
    }
    let n = s.n;
    let t = s.max_interior();
    if !t.is_positive() {
        return domain("pad_to_isotropic needs a positive interior diagonal");
    }
    let mut target = vec![t.clone(); n + 1];
    target[0] = &s.alpha + &t;
    target[n] = &s.alpha + &t;
    let padding: Vec<Rat> = target.iter().zip(&s.d).map(|(want, have)| want - have).collect();
    if let Some(i) = padding.iter().position(|x| x.is_negative()) {
        return domain(format!(
            "pad_to_isotropic: weight {i} needs negative padding ({})",
            padding[i]
        ));
    }
    let unnormalized = SymState::new(n, s.alpha.clone(), target)?;
    let tau = &s.alpha / &t;
    let p_s = &tau / (&tau + pow2_rat(n as u32 - 1));
    Ok(Padded {
        padded: unnormalized.normalized()?,
        padding,
        tau,
        p_s,
    })
}

/// Dense `2^n x 2^n` matrix of the state.
pub fn to_dense(s: &SymState) -> Result<RatMatrix> {
    if s.n > DENSE_MAX_QUBITS {
        return domain(format!("to_dense: n = {} exceeds {DENSE_MAX_QUBITS}", s.n));
    }
    let dim = 1usize << s.n;
    let mut m = RatMatrix::zeros(dim);
    for x in 0..dim {
        m.set(x, x, s.d[x.count_ones() as usize].clone());
    }
    m.set(0, dim - 1, s.alpha.clone());
    m.set(dim - 1, 0, s.alpha.clone());
    Ok(m)
}

//! Pauli correlations `R = tr(rho sigma_{i_1} .. sigma_{i_n})` of the dense
//! noisy GHZ state.
//!
//! For a Pauli string `P|y> = c(y) |y xor f>`, so
//! `tr(rho P) = sum_y c(y) rho(y xor f, y)`. Labels are `0 = I, 1 = X,
//! 2 = Y, 3 = Z`; qubit 0 is the most significant bit.

use num_traits::{One, Zero};

use crate::dense::RatMatrix;
use crate::error::{domain, Result};
use crate::exactmath::{format_rat, Rat};
use crate::report::{params, CheckRecord};
use crate::symstate::{noisy_ghz, to_dense};

use super::gauss::GaussRat;

pub const CHARFN_MAX_QUBITS: usize = 8;

pub fn pauli_expectation(rho: &RatMatrix, labels: &[u8]) -> GaussRat {
    let n = labels.len();
    assert_eq!(rho.dim(), 1 << n, "dimension mismatch");
    let bit_of = |q: usize| 1usize << (n - 1 - q);
    let flip: usize = (0..n).filter(|&q| matches!(labels[q], 1 | 2)).map(bit_of).sum();
    let mut acc = GaussRat::zero();
    for y in 0..rho.dim() {
        let entry = rho.get(y ^ flip, y);
        if entry.is_zero() {
            continue;
        }
        let mut phase = 0i64;
        for (q, &l) in labels.iter().enumerate() {
            let set = y & bit_of(q) != 0;
            match (l, set) {
                (2, false) => phase += 1,
                (2, true) => phase += 3,
                (3, true) => phase += 2,
                _ => {}
            }
        }
        acc += &GaussRat::i_pow(phase).scale(entry);
    }
    acc
}

/// Value predicted by the stabilizer structure of the GHZ state.
pub fn expected_correlation(labels: &[u8], p: &Rat) -> Rat {
    if labels.iter().all(|&l| l == 0) {
        return Rat::one();
    }
    let count = |x: u8| labels.iter().filter(|&&l| l == x).count();
    if labels.iter().all(|&l| l == 0 || l == 3) {
        return if count(3) % 2 == 0 { p.clone() } else { Rat::zero() };
    }
    if labels.iter().all(|&l| l == 1 || l == 2) {
        let y = count(2);
        if y % 2 == 0 {
            return if (y / 2) % 2 == 0 { p.clone() } else { -p.clone() };
        }
    }
    Rat::zero()
}

fn labels_of(index: usize, n: usize) -> Vec<u8> {
    (0..n).map(|q| ((index >> (2 * (n - 1 - q))) & 3) as u8).collect()
}

/// Evaluates all `4^n` correlations and compares them with
/// [`expected_correlation`] and with the nonzero count (`2^n` for `p != 0`;
/// only the identity survives at `p = 0`).
pub fn characteristic_check(n: usize, p: &Rat) -> Result<Vec<CheckRecord>> {
    if n > CHARFN_MAX_QUBITS {
        return domain(format!("characteristic check limited to n <= {CHARFN_MAX_QUBITS}"));
    }
    let rho = to_dense(&noisy_ghz(n, p)?)?;
    let mut mismatches = Vec::new();
    let mut nonzero = 0usize;
    let mut complex = 0usize;
    for index in 0..(1usize << (2 * n)) {
        let labels = labels_of(index, n);
        let value = pauli_expectation(&rho, &labels);
        if !value.is_real() {
            complex += 1;
        }
        if !value.is_zero() {
            nonzero += 1;
        }
        if value != GaussRat::real(expected_correlation(&labels, p)) {
            mismatches.push(labels.iter().map(|l| char::from(b'0' + l)).collect::<String>());
        }
    }
    let expected_nonzero = if p.is_zero() { 1 } else { 1usize << n };
    let base = || params([("n", serde_json::Value::from(n)), ("p", format_rat(p).into())]);
    Ok(vec![
        CheckRecord {
            check: "charfn_values".into(),
            params: base(),
            pass: mismatches.is_empty(),
            detail: if mismatches.is_empty() {
                format!("all {} strings match", 1usize << (2 * n))
            } else {
                format!("{} mismatches, first {:?}", mismatches.len(), &mismatches[..mismatches.len().min(5)])
            },
        },
        CheckRecord {
            check: "charfn_real".into(),
            params: base(),
            pass: complex == 0,
            detail: format!("{complex} complex correlations"),
        },
        CheckRecord {
            check: "charfn_nonzero_count".into(),
            params: base(),
            pass: nonzero == expected_nonzero,
            detail: format!("{nonzero} nonzero, expected {expected_nonzero}"),
        },
    ])
}

//! The witness `Q` as an explicit `2^n` matrix, summed Pauli string by
//! Pauli string.
//!
//! `Q = sum_{T even} M_{|T|/2} Z_T + sum_{S} X^{(n)} Z_{T(S)}`, where the
//! second sum runs over the coset `K_1 <K_2, .., K_n>` with `K_1 = X^{(n)}`
//! and `K_j = Z_1 Z_j`.

use num_traits::Zero;

use crate::dense::RatMatrix;
use crate::error::{domain, Result};
use crate::exactmath::{format_rat, Rat};
use crate::report::{params, CheckRecord};
use crate::symstate::{noisy_ghz, to_dense};
use crate::witness::{canonical_witness, ghz_witness_value};

pub const DENSE_WITNESS_MAX_QUBITS: usize = 8;

fn parity(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

pub fn dense_witness(n: usize, block: usize) -> Result<RatMatrix> {
    if n > DENSE_WITNESS_MAX_QUBITS {
        return domain(format!("dense witness limited to n <= {DENSE_WITNESS_MAX_QUBITS}"));
    }
    let w = canonical_witness(n, block)?;
    let dim = 1usize << n;
    let mut q = RatMatrix::zeros(dim);
    // Diagonal: even Z-strings.
    for t in 1..dim {
        let size = t.count_ones() as usize;
        if size % 2 == 1 {
            continue;
        }
        let m = w.coeff(size / 2);
        if m.is_zero() {
            continue;
        }
        let neg = -m.clone();
        for x in 0..dim {
            q.add_to(x, x, if parity(x & t) { &neg } else { &m });
        }
    }
    // Coset: S subset of qubits 1..n-1 (qubit 0 is the top bit); K_j = Z_0 Z_j.
    let top = 1usize << (n - 1);
    let one = Rat::from_integer(1.into());
    let minus = -one.clone();
    for s in 0..top {
        let t = if parity(s) { s | top } else { s };
        for y in 0..dim {
            let v = if parity(y & t) { &minus } else { &one };
            q.add_to(y ^ (dim - 1), y, v);
        }
    }
    Ok(q)
}

/// `tr(rho_ghz(p) Q)` from the dense matrices against the closed form.
pub fn dense_witness_check(n: usize, block: usize, p: &Rat) -> Result<CheckRecord> {
    let q = dense_witness(n, block)?;
    let rho = to_dense(&noisy_ghz(n, p)?)?;
    let dense = rho.trace_product(&q);
    let closed = ghz_witness_value(&canonical_witness(n, block)?, p)?;
    Ok(CheckRecord {
        check: "dense_witness".into(),
        params: params([
            ("n", serde_json::Value::from(n)),
            ("L", block.into()),
            ("p", format_rat(p).into()),
        ]),
        pass: dense == closed,
        detail: format!("dense {} vs closed form {}", format_rat(&dense), format_rat(&closed)),
    })
}

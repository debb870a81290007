//! Partitions of `n` qubits into parties, up to qubit permutation.
//!
//! Because the noisy GHZ state is permutation symmetric, a partition is just
//! the multiset of its party sizes. Text form uses `|` between parties and
//! `s^m` for `m` parties of size `s`, e.g. `1^3|2^2|4`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::exactmath::{binom_rat, int, Rat};

/// Multiset of positive part sizes, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionType {
    n: usize,
    parts: Vec<usize>,
}

impl PartitionType {
    /// Builds a partition from part sizes in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return domain("a partition needs at least one part");
        }
        if parts.contains(&0) {
            return domain("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionType {
            n: parts.iter().sum(),
            parts,
        })
    }

    /// `n` single-qubit parties.
    pub fn singletons(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Part sizes, non-increasing.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn count_of(&self, size: usize) -> usize {
        self.parts.iter().filter(|&&p| p == size).count()
    }

    /// The partition with one more party of size `size`.
    pub fn with_part(&self, size: usize) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.push(size);
        Self::new(parts)
    }

    /// `(size, multiplicity)` pairs in ascending size order.
    pub fn grouped(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((s, m)) if *s == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(s, m)| if m == 1 { s.to_string() } else { format!("{s}^{m}") })
            .collect();
        f.write_str(&text.join("|"))
    }
}

impl FromStr for PartitionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl Serialize for PartitionType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_partition(&text).map_err(serde::de::Error::custom)
    }
}

pub fn parse_partition(text: &str) -> Result<PartitionType> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty partition".into()));
    }
    let mut parts = Vec::new();
    for token in t.split('|') {
        let token = token.trim();
        let (size, reps) = match token.split_once('^') {
            Some((s, m)) => (s.trim(), m.trim()),
            None => (token, "1"),
        };
        let size: usize = size
            .parse()
            .map_err(|_| Error::Parse(format!("bad part size {size:?} in {text:?}")))?;
        let reps: usize = reps
            .parse()
            .map_err(|_| Error::Parse(format!("bad repeat count {reps:?} in {text:?}")))?;
        if size == 0 || reps == 0 {
            return Err(Error::Parse(format!(
                "part sizes and repeat counts must be positive in {text:?}"
            )));
        }
        parts.extend(std::iter::repeat_n(size, reps));
    }
    PartitionType::new(parts)
}

pub fn format_partition(p: &PartitionType) -> String {
    p.to_string()
}

/// All partitions of `n` into exactly `k` positive parts, lexicographically
/// descending.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<Vec<PartitionType>> {
    if k < 1 || k > n {
        return domain(format!("enumerate_partitions: need 1 <= k <= n, got n = {n}, k = {k}"));
    }
    fn rec(rest: usize, slots: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // Largest first part leaves at least one for each remaining slot;
        // smallest still has to fit under `cap` times the slots.
        let hi = cap.min(rest + 1 - slots);
        let lo = rest.div_ceil(slots);
        for first in (lo..=hi).rev() {
            acc.push(first);
            rec(rest - first, slots - 1, first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, n, &mut Vec::with_capacity(k), &mut out);
    Ok(out
        .into_iter()
        .map(|parts| PartitionType { n, parts })
        .collect())
}

/// Subset-sum counts of a partition's part sizes.
///
/// `f[i]` counts sub-multisets of parts (each part distinguishable) whose
/// sizes add to `i`. It is the diagonal fingerprint of the partition's
/// phase-averaged separable state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub f: Vec<BigInt>,
}

impl Profile {
    pub fn n(&self) -> usize {
        self.f.len() - 1
    }

    /// `f(1)..f(n-1)`.
    pub fn interior(&self) -> &[BigInt] {
        let n = self.n();
        if n < 2 {
            &[]
        } else {
            &self.f[1..n]
        }
    }

    pub fn get(&self, i: i64) -> BigInt {
        if i < 0 {
            return BigInt::zero();
        }
        self.f.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `f(i) / C(n, i)` for `i = 1..n-1`.
    pub fn normalized_interior(&self) -> Vec<Rat> {
        let n = self.n() as u64;
        (1..self.n())
            .map(|i| Rat::from_integer(self.f[i].clone()) / binom_rat(n, i as i64))
            .collect()
    }
}

pub fn profile(p: &PartitionType) -> Profile {
    let mut f = vec![BigInt::zero(); p.n + 1];
    f[0] = BigInt::one();
    let mut reach = 0;
    for &s in &p.parts {
        reach += s;
        for i in (s..=reach).rev() {
            let add = f[i - s].clone();
            f[i] += add;
        }
    }
    Profile { f }
}

/// Outcome of one inductive step: adding a party of size `l` to a partition
/// that already has a single-qubit party.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCheck {
    /// `f1(i) / C(n, i) <= f1(1) / n` for every interior `i`.
    pub premise: bool,
    /// `f2(i) / C(n+l, i) <= f2(1) / (n+l)` for `i` in `[2, n+l-2]`.
    pub extended: bool,
    pub extended_partition: PartitionType,
}

impl RecursionCheck {
    pub fn passed(&self) -> bool {
        self.premise && self.extended
    }
}

pub fn appendix_recursion_check(p: &PartitionType, l: usize) -> Result<RecursionCheck> {
    if p.count_of(1) == 0 {
        return domain(format!("partition {p} has no single-qubit party"));
    }
    if l < 2 {
        return domain(format!("added party size l = {l} must be >= 2"));
    }
    let n = p.n();
    let f1 = profile(p);
    let bound1 = Rat::from_integer(f1.get(1)) / int(n as i64);
    let premise = (1..n).all(|i| {
        Rat::from_integer(f1.get(i as i64)) / binom_rat(n as u64, i as i64) <= bound1
    });

    let n2 = n + l;
    let f2: Vec<BigInt> = (0..=n2 as i64).map(|i| f1.get(i) + f1.get(i - l as i64)).collect();
    let bound2 = Rat::from_integer(f2[1].clone()) / int(n2 as i64);
    let extended = (2..=n2.saturating_sub(2)).all(|i| {
        Rat::from_integer(f2[i].clone()) / binom_rat(n2 as u64, i as i64) <= bound2
    });

    Ok(RecursionCheck {
        premise,
        extended,
        extended_partition: p.with_part(l)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Exhaustive oracle: every non-increasing sequence of length k.
    fn brute_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut seq = vec![1usize; k];
        loop {
            if seq.iter().sum::<usize>() == n && seq.windows(2).all(|w| w[0] >= w[1]) {
                out.push(seq.clone());
            }
            let mut i = 0;
            while i < k && seq[i] == n {
                seq[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
            seq[i] += 1;
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    #[test]
    fn enumerate_examples() {
        let got: Vec<String> = enumerate_partitions(6, 3)
            .unwrap()
            .iter()
            .map(|p| format!("{:?}", p.parts()))
            .collect();
        assert_eq!(got, ["[4, 1, 1]", "[3, 2, 1]", "[2, 2, 2]"]);
        assert_eq!(enumerate_partitions(5, 5).unwrap(), vec![pt("1^5")]);
        let seven: Vec<Vec<usize>> = enumerate_partitions(7, 3)
            .unwrap()
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(seven, brute_partitions(7, 3));
        assert_eq!(seven, vec![vec![5, 1, 1], vec![4, 2, 1], vec![3, 3, 1], vec![3, 2, 2]]);
        assert!(enumerate_partitions(3, 4).is_err());
        assert!(enumerate_partitions(3, 0).is_err());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn enumerate_matches_brute_force_and_recurrence() {
        let mut count = vec![vec![0u64; 15]; 15];
        count[0][0] = 1;
        for n in 1..15 {
            for k in 1..=n {
                count[n][k] = count[n - 1][k - 1] + if n >= k { count[n - k][k] } else { 0 };
            }
        }
        for n in 1..=9 {
            for k in 1..=n {
                let got: Vec<Vec<usize>> = enumerate_partitions(n, k)
                    .unwrap()
                    .iter()
                    .map(|p| p.parts().to_vec())
                    .collect();
                assert_eq!(got, brute_partitions(n, k), "n={n} k={k}");
            }
        }
        for n in 1..15 {
            for k in 1..=n {
                assert_eq!(enumerate_partitions(n, k).unwrap().len() as u64, count[n][k]);
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let p = pt("1^3|2^2|4");
        assert_eq!((p.parts(), p.n(), p.k()), (&[4, 2, 2, 1, 1, 1][..], 11, 6));
        let p = pt("2^3");
        assert_eq!((p.parts(), p.n(), p.k()), (&[2, 2, 2][..], 6, 3));
        assert_eq!(pt("3|2|2").to_string(), "2^2|3");
        assert_eq!(pt(" 1 | 2|3 ").to_string(), "1|2|3");
        assert_eq!(pt("2^1|2").to_string(), "2^2");
        for bad in ["", "1||2", "0|3", "2^0", "-1|3", "a", "2^x"] {
            assert!(parse_partition(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(&pt("1|2|3")).interior(), &ints(&[1, 1, 2, 1, 1])[..]);
        assert_eq!(profile(&pt("2^3")).interior(), &ints(&[0, 3, 0, 3, 0])[..]);
        assert_eq!(profile(&pt("1|1|2")).interior(), &ints(&[2, 2, 2])[..]);
        assert_eq!(profile(&pt("1|4")).interior(), &ints(&[1, 0, 0, 1])[..]);
    }

    #[test]
    fn profile_of_singletons_is_binomial_row() {
        for n in 1..=20 {
            let f = profile(&PartitionType::singletons(n).unwrap());
            for i in 0..=n {
                assert_eq!(f.f[i], crate::exactmath::binomial(n as i64, i as i64).unwrap());
            }
        }
    }

    #[test]
    fn recursion_examples() {
        let c = appendix_recursion_check(&pt("1|4"), 2).unwrap();
        assert!(c.passed());
        assert_eq!(c.extended_partition.to_string(), "1|2|4");
        let c = appendix_recursion_check(&pt("1|2|2"), 2).unwrap();
        assert!(c.premise, "2/C(5,2) = 1/5 sits on the bound");
        assert!(c.passed());
        let c = appendix_recursion_check(&pt("1|3|4"), 3).unwrap();
        assert!(c.passed());
        assert!(appendix_recursion_check(&pt("2|3"), 2).is_err());
        assert!(appendix_recursion_check(&pt("1|3"), 1).is_err());
    }
}

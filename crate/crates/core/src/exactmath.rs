//! Exact rational arithmetic and the combinatorial identities the threshold
//! derivations lean on.
//!
//! Everything here is exact: binomials are big integers, symmetric
//! polynomials and Lemma-style quantities are [`Rat`]. The `verify_*`
//! functions never fault on a failed identity; failures come back as report
//! entries with `pass = false`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::report::{params, IdentityRecord};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

pub fn pow2_rat(e: u32) -> Rat {
    Rat::from_integer(pow2(e))
}

/// Renders `r` as `"num/den"`, including integers (`"9/1"`).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"`, a plain integer, or a finite decimal such as `"0.25"`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_val = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Rat::new(whole_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(t).map(Rat::from_integer).map_err(|_| bad())
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero. Computed exactly, so it never disagrees with the fraction.
pub fn to_decimal(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = r.is_negative();
    let mag = r.abs();
    // Find e with 10^e <= mag < 10^(e+1).
    let ten = Rat::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut probe = Rat::one();
    while probe > mag {
        probe /= &ten;
        e -= 1;
    }
    while &probe * &ten <= mag {
        probe *= &ten;
        e += 1;
    }
    // Scale so that the integer part carries `sig` digits.
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &mag * Rat::from_integer(num_traits::pow(BigInt::from(10), shift as usize))
    } else {
        &mag / Rat::from_integer(num_traits::pow(BigInt::from(10), (-shift) as usize))
    };
    let two = BigInt::from(2);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = if rem * &two >= *scaled.denom() { q + 1 } else { q };
    let mut shift = shift;
    // Rounding may carry into an extra digit (e.g. 9.99.. -> 10.0).
    if digits.to_string().len() > sig {
        digits /= 10;
        shift -= 1;
    }
    let s = digits.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else {
        let shift = shift as usize;
        if s.len() > shift {
            let (a, b) = s.split_at(s.len() - shift);
            format!("{a}.{b}")
        } else {
            format!("0.{}{s}", "0".repeat(shift - s.len()))
        }
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapters rendering rationals as `"num/den"` strings.
pub mod serde_rat {
    use super::{format_rat, parse_rat, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{format_rat, parse_rat, Rat};
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rat(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rat(t).map_err(D::Error::custom))
                .collect()
        }
    }
}

/// `C(n, k)`, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return domain(format!("binomial: n = {n} must be non-negative"));
    }
    Ok(binom(n as u64, k))
}

pub(crate) fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn binom_rat(n: u64, k: i64) -> Rat {
    Rat::from_integer(binom(n, k))
}

/// Row-cached Pascal triangle for sweeps that hit the same binomials often.
#[derive(Debug, Clone)]
pub struct Pascal {
    rows: Vec<Vec<BigInt>>,
}

impl Pascal {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Pascal { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)` with the zero-outside-range convention. Panics if `n` exceeds
    /// the table.
    pub fn get(&self, n: usize, k: i64) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if k < 0 || k as usize > n {
            return ZERO.get_or_init(BigInt::zero);
        }
        &self.rows[n][k as usize]
    }
}

/// Elementary symmetric polynomials `S_0..S_m` of the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPolyVector {
    pub values: Vec<Rat>,
}

impl SymPolyVector {
    /// `S_i`, zero outside `0..=m`.
    pub fn get(&self, i: i64) -> Rat {
        if i < 0 {
            return Rat::zero();
        }
        self.values.get(i as usize).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn elem_sym(z: &[Rat]) -> SymPolyVector {
    // Coefficients of prod (1 + z_i x).
    let mut s = vec![Rat::zero(); z.len() + 1];
    s[0] = Rat::one();
    for (m, zi) in z.iter().enumerate() {
        for i in (1..=m + 1).rev() {
            let add = &s[i - 1] * zi;
            s[i] += add;
        }
    }
    SymPolyVector { values: s }
}

/// `w_{n,l} = sum_j (-1)^j C(L-l, n-j) C(l, j)`: the Z-string weight that a
/// Hamming-weight-`l` basis state of `L` qubits picks up from all `n`-fold
/// Z products.
pub fn w_coeff(big_l: i64, n: i64, l: i64) -> Result<BigInt> {
    if big_l < 0 || !(0..=big_l).contains(&n) || !(0..=big_l).contains(&l) {
        return domain(format!(
            "w_coeff: need 0 <= n, l <= L, got L = {big_l}, n = {n}, l = {l}"
        ));
    }
    let big_l = big_l as u64;
    let lu = l as u64;
    let mut acc = BigInt::zero();
    for j in 0..=n.min(l) {
        let term = binom(big_l - lu, n - j) * binom(lu, j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Checks the parity sums and first moments of `w_{n,l}` for `0 < l < L`.
///
/// Parity sums vanish; the even and odd first moments vanish for
/// `1 < l < L-1` and pick up `-2^{L-3}` (even), `-2^{L-3}` / `+2^{L-3}`
/// (odd, at `l = 1` / `l = L-1`). When `L = 2` both boundary cases coincide
/// and their contributions add.
pub fn verify_w_identities(big_l: usize) -> Result<Vec<IdentityRecord>> {
    if big_l < 2 {
        return domain(format!("verify_w_identities: L = {big_l} must be >= 2"));
    }
    let li = big_l as i64;
    let w = |n: i64, l: i64| -> BigInt { w_coeff(li, n, l).expect("indices in range") };
    let edge = pow2_shifted(li - 3);
    let mut out = Vec::new();
    for l in 1..li {
        let even: BigInt = (0..=li / 2).map(|i| w(2 * i, l)).sum();
        let odd: BigInt = (1..=(li + 1) / 2).map(|i| w(2 * i - 1, l)).sum();
        let even_m: BigInt = (0..=li / 2).map(|i| BigInt::from(i) * w(2 * i, l)).sum();
        let odd_m: BigInt = (1..=(li + 1) / 2)
            .map(|i| BigInt::from(i) * w(2 * i - 1, l))
            .sum();

        let at_first = l == 1;
        let at_last = l == li - 1;
        let mut even_rhs = Rat::zero();
        let mut odd_rhs = Rat::zero();
        if at_first {
            even_rhs -= &edge;
            odd_rhs -= &edge;
        }
        if at_last {
            even_rhs -= &edge;
            odd_rhs += &edge;
        }

        let checks: [(&str, BigInt, Rat); 4] = [
            ("w_even_sum", even, Rat::zero()),
            ("w_odd_sum", odd, Rat::zero()),
            ("w_even_first_moment", even_m, even_rhs),
            ("w_odd_first_moment", odd_m, odd_rhs),
        ];
        for (name, lhs, rhs) in checks {
            let lhs = Rat::from_integer(lhs);
            out.push(IdentityRecord {
                identity: name.to_string(),
                params: params([("L", li), ("l", l)]),
                pass: lhs == rhs,
                lhs: format_rat(&lhs),
                rhs: format_rat(&rhs),
            });
        }
    }
    Ok(out)
}

/// `2^e` as a rational, for possibly negative `e`.
fn pow2_shifted(e: i64) -> Rat {
    if e >= 0 {
        pow2_rat(e as u32)
    } else {
        Rat::new(BigInt::one(), pow2((-e) as u32))
    }
}

/// Summary of the binomial inequality sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AppendixSweep {
    pub n_max: usize,
    pub l_max: usize,
    pub checked: u64,
    pub violations: Vec<IdentityRecord>,
}

impl AppendixSweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact sweep of `(C(N,i) + C(N,i-l)) / N <= C(N+l, i) / (N+l)` over
/// `2 <= N <= n_max`, `2 <= l <= l_max`, `l <= i <= N`.
pub fn verify_appendix_inequality(n_max: usize, l_max: usize) -> Result<AppendixSweep> {
    if n_max < 4 || l_max < 2 {
        return domain(format!(
            "verify_appendix_inequality: need N_max >= 4 and l_max >= 2, got {n_max}, {l_max}"
        ));
    }
    let pascal = Pascal::new(n_max + l_max);
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for n in 2..=n_max {
        for l in 2..=l_max {
            for i in l..=n {
                checked += 1;
                // Cross-multiplied: (C(N,i) + C(N,i-l)) (N+l) <= C(N+l,i) N.
                let lhs = (pascal.get(n, i as i64) + pascal.get(n, (i - l) as i64))
                    * BigInt::from(n + l);
                let rhs = pascal.get(n + l, i as i64) * BigInt::from(n);
                if lhs > rhs {
                    let lhs = Rat::new(lhs, BigInt::from(n * (n + l)));
                    let rhs = Rat::new(rhs, BigInt::from(n * (n + l)));
                    violations.push(IdentityRecord {
                        identity: "appendix_binomial_inequality".into(),
                        params: params([("N", n), ("l", l), ("i", i)]),
                        pass: false,
                        lhs: format_rat(&lhs),
                        rhs: format_rat(&rhs),
                    });
                }
            }
        }
    }
    Ok(AppendixSweep {
        n_max,
        l_max,
        checked,
        violations,
    })
}

/// Single-point form of the appendix inequality, as a report entry.
pub fn appendix_inequality_at(n: usize, l: usize, i: usize) -> IdentityRecord {
    let lhs = (binom_rat(n as u64, i as i64) + binom_rat(n as u64, i as i64 - l as i64))
        / int(n as i64);
    let rhs = binom_rat((n + l) as u64, i as i64) / int((n + l) as i64);
    IdentityRecord {
        identity: "appendix_binomial_inequality".into(),
        params: params([("N", n), ("l", l), ("i", i)]),
        pass: lhs <= rhs,
        lhs: format_rat(&lhs),
        rhs: format_rat(&rhs),
    }
}

/// The four auxiliary quantities of the sub-full separability bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Quantities {
    pub a: Rat,
    pub b: Rat,
    pub u: Rat,
    pub v: Rat,
}

fn check_unit_interval(z: &[Rat]) -> Result<()> {
    let one = Rat::one();
    if let Some(bad) = z.iter().find(|zi| zi.abs() > one) {
        return domain(format!("z component {bad} lies outside [-1, 1]"));
    }
    Ok(())
}

/// `a`, `b`, `u`, `v` for Z-components `z_1..z_{N-2}` of the single-qubit
/// factors. `a = -(u+v)/2` and `b = -(u-v)/2` hold identically.
pub fn lemma1_quantities(z: &[Rat], n: usize) -> Result<Lemma1Quantities> {
    if n < 3 {
        return domain(format!("lemma1_quantities: N = {n} must be >= 3"));
    }
    if z.len() != n - 2 {
        return domain(format!(
            "lemma1_quantities: expected {} z values, got {}",
            n - 2,
            z.len()
        ));
    }
    check_unit_interval(z)?;
    let m = (n - 2) as i64;
    let ni = n as i64;
    let s = elem_sym(z);
    let inv = Rat::new(BigInt::one(), BigInt::from(m));

    let mut a = -Rat::one();
    for i in 1..=m / 2 {
        a += int(4 * i + 2 - ni) * &inv * s.get(2 * i);
    }
    let mut b = Rat::zero();
    for i in 1..=(m + 1) / 2 {
        b += int(4 * i - ni) * &inv * s.get(2 * i - 1);
    }

    let mut u = Rat::zero();
    let mut v = Rat::zero();
    for j in 0..z.len() {
        let mut pu = Rat::one();
        let mut pv = Rat::one();
        for (k, zk) in z.iter().enumerate() {
            if k == j {
                pu *= Rat::one() - zk;
                pv *= Rat::one() + zk;
            } else {
                pu *= Rat::one() + zk;
                pv *= Rat::one() - zk;
            }
        }
        u += pu;
        v += pv;
    }
    u *= &inv;
    v *= &inv;
    Ok(Lemma1Quantities { a, b, u, v })
}

/// Result of the exact check `a <= 0` and `a^2 - b^2 >= prod (1 - z_i^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Check {
    pub a_nonpositive: bool,
    /// `a^2 - b^2`
    pub lhs: Rat,
    /// `prod (1 - z_i^2)`, the largest value `c^2 + d^2` can take.
    pub rhs: Rat,
    pub equality: bool,
}

impl Lemma1Check {
    pub fn passed(&self) -> bool {
        self.a_nonpositive && self.lhs >= self.rhs
    }
}

pub fn verify_lemma1_inequality(z: &[Rat], n: usize) -> Result<Lemma1Check> {
    let q = lemma1_quantities(z, n)?;
    let lhs = &q.a * &q.a - &q.b * &q.b;
    let rhs = z
        .iter()
        .fold(Rat::one(), |acc, zi| acc * (Rat::one() - zi * zi));
    Ok(Lemma1Check {
        a_nonpositive: !q.a.is_positive(),
        equality: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Uniform-ish rational in `[-1, 1]` with denominator at most `max_den`.
pub fn random_unit_rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rat {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(-den..=den);
    rat(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 2).unwrap(), BigInt::from(15));
        assert_eq!(binomial(5, 7).unwrap(), BigInt::zero());
        assert_eq!(binomial(5, -1).unwrap(), BigInt::zero());
        assert!(matches!(binomial(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_matches_pascal_recurrence_oracle() {
        // Independent route: build rows by addition only.
        let mut row = vec![BigInt::one()];
        for n in 1..=11u64 {
            let mut next = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        assert_eq!(row[5], BigInt::from(462));
        assert_eq!(binomial(11, 5).unwrap(), row[5]);
    }

    #[test]
    fn pascal_rule_holds_to_200() {
        for n in 1..=200i64 {
            for k in 0..=n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "C({n},{k})");
            }
        }
        let table = Pascal::new(60);
        assert_eq!(table.get(60, 30), &binomial(60, 30).unwrap());
        assert!(table.get(10, 11).is_zero());
    }

    #[test]
    fn elem_sym_examples() {
        assert_eq!(elem_sym(&[int(1), int(1)]).values, vec![int(1), int(2), int(1)]);
        assert_eq!(
            elem_sym(&[int(0), int(0), int(0)]).values,
            vec![int(1), int(0), int(0), int(0)]
        );
        // Subsets of {1/2, -1/3}: S_1 = 1/2 - 1/3, S_2 = -1/6.
        assert_eq!(
            elem_sym(&[r(1, 2), r(-1, 3)]).values,
            vec![int(1), r(1, 6), r(-1, 6)]
        );
    }

    #[test]
    fn w_coeff_examples() {
        assert_eq!(w_coeff(4, 2, 0).unwrap(), BigInt::from(6));
        assert_eq!(w_coeff(3, 1, 3).unwrap(), BigInt::from(-3));
        // 1*C(2,2)*C(2,0) - C(2,1)*C(2,1) + C(2,0)*C(2,2) = 1 - 4 + 1
        assert_eq!(w_coeff(4, 2, 2).unwrap(), BigInt::from(-2));
        assert!(w_coeff(3, 4, 0).is_err());
        assert!(w_coeff(3, 0, -1).is_err());
    }

    #[test]
    fn w_coeff_endpoints_are_signed_binomials() {
        for big_l in 1..=12i64 {
            for n in 0..=big_l {
                let c = binomial(big_l, n).unwrap();
                assert_eq!(w_coeff(big_l, n, 0).unwrap(), c);
                let sign = if n % 2 == 0 { c.clone() } else { -c };
                assert_eq!(w_coeff(big_l, n, big_l).unwrap(), sign);
            }
        }
    }

    #[test]
    fn w_identities_small_cases() {
        let l2 = verify_w_identities(2).unwrap();
        assert!(l2.iter().all(|rec| rec.pass), "{l2:?}");
        let l4 = verify_w_identities(4).unwrap();
        let at = |l: i64, name: &str| {
            l4.iter()
                .find(|rec| rec.identity == name && rec.params["l"] == l)
                .unwrap()
                .clone()
        };
        let m = at(2, "w_even_first_moment");
        assert!(m.pass);
        assert_eq!(m.lhs, "0/1");
        let m = at(1, "w_even_first_moment");
        assert!(m.pass);
        assert_eq!(m.lhs, "-2/1");
        assert!(verify_w_identities(1).is_err());
    }

    #[test]
    fn appendix_inequality_examples() {
        let rec = appendix_inequality_at(6, 2, 3);
        assert!(rec.pass);
        assert_eq!((rec.lhs.as_str(), rec.rhs.as_str()), ("13/3", "7/1"));
        let rec = appendix_inequality_at(4, 2, 2);
        assert!(rec.pass);
        assert_eq!((rec.lhs.as_str(), rec.rhs.as_str()), ("7/4", "5/2"));
        let sweep = verify_appendix_inequality(30, 30).unwrap();
        assert!(sweep.passed());
        assert!(verify_appendix_inequality(3, 5).is_err());
    }

    #[test]
    fn lemma1_examples() {
        let q = lemma1_quantities(&[r(1, 2), r(1, 2)], 4).unwrap();
        assert_eq!(q.a, r(-3, 4));
        assert_eq!(q.b, int(0));
        let q = lemma1_quantities(&vec![int(0); 5], 7).unwrap();
        assert_eq!((q.a, q.b), (int(-1), int(0)));
        // All z = 1: every product in u and v has a vanishing factor.
        let q = lemma1_quantities(&vec![int(1); 3], 5).unwrap();
        assert_eq!((q.u.clone(), q.v.clone()), (int(0), int(0)));
        assert_eq!((q.a, q.b), (int(0), int(0)));

        let c = verify_lemma1_inequality(&[r(1, 2), r(1, 2)], 4).unwrap();
        assert!(c.passed() && c.equality);
        assert_eq!(c.lhs, r(9, 16));
        let c = verify_lemma1_inequality(&vec![int(0); 4], 6).unwrap();
        assert!(c.passed() && c.equality);
    }

    #[test]
    fn lemma1_domain_errors() {
        assert!(lemma1_quantities(&[r(3, 2), int(0)], 4).is_err());
        assert!(lemma1_quantities(&[int(0)], 4).is_err());
        assert!(lemma1_quantities(&[], 2).is_err());
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3/7").unwrap(), r(3, 7));
        assert_eq!(parse_rat("6/4").unwrap(), r(3, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), r(-1, 4));
        assert_eq!(parse_rat(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rat("12").unwrap(), int(12));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("").is_err());
        assert_eq!(format_rat(&int(9)), "9/1");
        assert_eq!(to_decimal(&r(9, 41), 12), "0.219512195122");
        assert_eq!(to_decimal(&r(1, 3), 3), "0.333");
        assert_eq!(to_decimal(&r(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&r(999, 1000), 2), "1");
        assert_eq!(to_decimal(&int(1169), 12), "1169");
        assert_eq!(to_decimal(&r(-5, 2), 12), "-2.5");
        assert_eq!(to_decimal(&r(5, 2053), 4), "0.002435");
    }
}

//! Closed-form separability thresholds and the classification API.
//!
//! `rho(p) = p |GHZ><GHZ| + (1-p) I/2^n` is `k`-separable for `p` up to a
//! threshold. Three regimes have exact answers:
//!
//! * `k = n - j` with `n >= 2j + 1`: `1/(1 + (n-2j)/n 2^{n-1})`,
//! * `k = n`: `1/(1 + 2^{n-1})`,
//! * `k = 2`: `(2^{n-1} - 1)/(2^n - 1)`.
//!
//! Elsewhere only the LP mixture gives a sufficient bound.

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exactmath::{format_rat, int, pow2_rat, serde_rat, to_decimal, Rat};
use crate::lpsolve;

/// `1/(1 + (n-2j)/n 2^{n-1})`; exact for `(n-j)`-separability.
pub fn nj_threshold(n: usize, j: usize) -> Result<Rat> {
    if j < 1 || n < 2 * j + 1 {
        return domain(format!(
            "closed form needs j >= 1 and n >= 2j+1, got n = {n}, j = {j}"
        ));
    }
    let ratio = Rat::new((n - 2 * j).into(), n.into());
    Ok(Rat::one() / (Rat::one() + ratio * pow2_rat(n as u32 - 1)))
}

pub fn full_sep_threshold(n: usize) -> Result<Rat> {
    check_n(n)?;
    Ok(Rat::one() / (Rat::one() + pow2_rat(n as u32 - 1)))
}

pub fn bisep_threshold(n: usize) -> Result<Rat> {
    check_n(n)?;
    Ok((pow2_rat(n as u32 - 1) - int(1)) / (pow2_rat(n as u32) - int(1)))
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return domain(format!("need n >= 2, got {n}"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Separable,
    Entangled,
    UnknownGap,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Separable => "separable",
            Status::Entangled => "entangled",
            Status::UnknownGap => "unknown-gap",
        })
    }
}

/// Where a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `k = n - j`, `n >= 2j+1`; necessary and sufficient.
    NMinusJ,
    FullSeparability,
    Biseparability,
    /// Best same-`k` partition mixture; sufficient only.
    LinearProgram,
}

impl BoundSource {
    pub fn is_iff(self) -> bool {
        !matches!(self, BoundSource::LinearProgram)
    }

    pub fn label(self) -> &'static str {
        match self {
            BoundSource::NMinusJ => "n-j closed form",
            BoundSource::FullSeparability => "full separability",
            BoundSource::Biseparability => "biseparability",
            BoundSource::LinearProgram => "partition-mixture LP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityVerdict {
    pub n: usize,
    pub k: usize,
    #[serde(with = "serde_rat")]
    pub p: Rat,
    pub status: Status,
    #[serde(with = "serde_rat")]
    pub sufficient_bound: Rat,
    #[serde(serialize_with = "ser_opt_rat")]
    pub necessary_bound: Option<Rat>,
    pub source: BoundSource,
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rat(r)),
        None => s.serialize_none(),
    }
}

/// Supplies sufficient bounds for cells without a closed form.
pub trait LpBound {
    fn sufficient_p(&self, n: usize, k: usize) -> Result<Rat>;
}

/// Solves the exact LP on every call.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactLp;

impl LpBound for ExactLp {
    fn sufficient_p(&self, n: usize, k: usize) -> Result<Rat> {
        Ok(lpsolve::solve_nk(n, k)?.p_s)
    }
}

impl<F: Fn(usize, usize) -> Result<Rat>> LpBound for F {
    fn sufficient_p(&self, n: usize, k: usize) -> Result<Rat> {
        self(n, k)
    }
}

/// Strongest available bound for `k`-separability of `n` qubits.
pub fn best_bound(n: usize, k: usize, lp: &impl LpBound) -> Result<(Rat, Option<Rat>, BoundSource)> {
    if k < 2 || k > n {
        return domain(format!("need 2 <= k <= n, got n = {n}, k = {k}"));
    }
    let j = n - k;
    if k == n {
        let t = full_sep_threshold(n)?;
        Ok((t.clone(), Some(t), BoundSource::FullSeparability))
    } else if n > 2 * j {
        let t = nj_threshold(n, j)?;
        Ok((t.clone(), Some(t), BoundSource::NMinusJ))
    } else if k == 2 {
        let t = bisep_threshold(n)?;
        Ok((t.clone(), Some(t), BoundSource::Biseparability))
    } else {
        Ok((lp.sufficient_p(n, k)?, None, BoundSource::LinearProgram))
    }
}

pub fn classify(n: usize, k: usize, p: &Rat, lp: &impl LpBound) -> Result<SeparabilityVerdict> {
    if p.is_negative() || p > &Rat::one() {
        return domain(format!("p = {} outside [0, 1]", format_rat(p)));
    }
    let (sufficient, necessary, source) = best_bound(n, k, lp)?;
    let status = if p <= &sufficient {
        Status::Separable
    } else if necessary.as_ref().is_some_and(|b| p > b) {
        Status::Entangled
    } else {
        Status::UnknownGap
    };
    Ok(SeparabilityVerdict {
        n,
        k,
        p: p.clone(),
        status,
        sufficient_bound: sufficient,
        necessary_bound: necessary,
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRow {
    pub n: usize,
    pub curve: String,
    #[serde(with = "serde_rat")]
    pub p: Rat,
}

/// Curves `j=<j>` (where `n >= 2j+1`), `bisep` and `full` for each `n`.
pub fn figure1_data(n_min: usize, n_max: usize, j_list: &[usize]) -> Result<Vec<FigureRow>> {
    if n_min < 2 || n_min > n_max {
        return domain(format!("bad range n = {n_min}..={n_max}"));
    }
    if j_list.contains(&0) {
        return domain("j must be >= 1");
    }
    let per_n: Vec<Vec<FigureRow>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut rows = Vec::new();
            for &j in j_list {
                if n > 2 * j {
                    rows.push(FigureRow {
                        n,
                        curve: format!("j={j}"),
                        p: nj_threshold(n, j)?,
                    });
                }
            }
            rows.push(FigureRow {
                n,
                curve: "bisep".into(),
                p: bisep_threshold(n)?,
            });
            rows.push(FigureRow {
                n,
                curve: "full".into(),
                p: full_sep_threshold(n)?,
            });
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

pub const FIGURE_CSV_HEADER: &str = "n,curve,p_exact,p_decimal";

pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from(FIGURE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.curve,
            format_rat(&r.p),
            to_decimal(&r.p, 12)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn no_lp(_: usize, _: usize) -> Result<Rat> {
        panic!("LP should not be consulted")
    }

    #[test]
    fn closed_forms() {
        assert_eq!(nj_threshold(3, 1).unwrap(), rat(3, 7));
        assert_eq!(nj_threshold(6, 2).unwrap(), rat(3, 35));
        assert_eq!(nj_threshold(10, 1).unwrap(), rat(5, 2053));
        assert_eq!(nj_threshold(11, 5).unwrap(), rat(11, 1035));
        assert!(nj_threshold(4, 2).is_err());
        assert!(nj_threshold(5, 0).is_err());
        assert_eq!(full_sep_threshold(3).unwrap(), rat(1, 5));
        assert_eq!(full_sep_threshold(5).unwrap(), rat(1, 17));
        assert_eq!(full_sep_threshold(6).unwrap(), rat(1, 33));
        assert_eq!(bisep_threshold(3).unwrap(), rat(3, 7));
        assert_eq!(bisep_threshold(4).unwrap(), rat(7, 15));
        assert_eq!(bisep_threshold(6).unwrap(), rat(31, 63));
    }

    #[test]
    fn odd_n_edge_case() {
        for j in 1..8 {
            let n = 2 * j + 1;
            let expected = Rat::one() / (Rat::one() + pow2_rat(n as u32 - 1) / int(n as i64));
            assert_eq!(nj_threshold(n, j).unwrap(), expected);
        }
    }

    #[test]
    fn matches_witness_threshold() {
        for n in 3..=16 {
            for j in 1..=(n - 1) / 2 {
                assert_eq!(
                    nj_threshold(n, j).unwrap(),
                    crate::witness::necessary_threshold(n, 2 * j).unwrap()
                );
            }
        }
    }

    #[test]
    fn nesting() {
        for n in 3..=20 {
            let full = full_sep_threshold(n).unwrap();
            let bisep = bisep_threshold(n).unwrap();
            let mut prev = full.clone();
            for j in 1..=(n - 1) / 2 {
                let t = nj_threshold(n, j).unwrap();
                assert!(t > prev, "n={n} j={j}");
                if 2 * j + 1 < n {
                    assert!(t < bisep, "n={n} j={j}");
                }
                prev = t;
            }
        }
    }

    #[test]
    fn classify_examples() {
        let v = classify(6, 5, &rat(1, 30), &no_lp).unwrap();
        assert_eq!(v.status, Status::Separable);
        assert_eq!(v.sufficient_bound, rat(3, 67));

        let v = classify(6, 3, &rat(1, 4), &ExactLp).unwrap();
        assert_eq!(v.status, Status::UnknownGap);
        assert_eq!(v.sufficient_bound, rat(9, 41));
        assert_eq!(v.necessary_bound, None);

        let v = classify(4, 4, &rat(1, 2), &no_lp).unwrap();
        assert_eq!(v.status, Status::Entangled);
        assert_eq!(v.necessary_bound, Some(rat(1, 9)));

        let v = classify(5, 2, &rat(1, 2), &no_lp).unwrap();
        assert_eq!(v.source, BoundSource::Biseparability);
        assert_eq!(v.status, Status::Entangled);

        assert!(classify(4, 1, &rat(1, 2), &no_lp).is_err());
        assert!(classify(4, 2, &rat(3, 2), &no_lp).is_err());
    }

    #[test]
    fn figure_rows() {
        let rows = figure1_data(3, 11, &[1, 5]).unwrap();
        let find = |n, c: &str| rows.iter().find(|r| r.n == n && r.curve == c).map(|r| r.p.clone());
        assert_eq!(find(10, "j=1"), Some(rat(5, 2053)));
        assert_eq!(find(11, "j=5"), Some(rat(11, 1035)));
        assert_eq!(find(10, "j=5"), None);
        assert_eq!(find(5, "full"), Some(rat(1, 17)));
        assert_eq!(find(3, "j=1"), Some(rat(3, 7)));
        let csv = figure_csv(&rows);
        assert!(csv.starts_with("n,curve,p_exact,p_decimal\n3,j=1,3/7,0.428571428571\n"));
        assert!(csv.contains("10,j=1,5/2053,0.00243546030200\n") || csv.contains("10,j=1,5/2053,0.002435460302\n"));
    }
}

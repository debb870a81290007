use std::io::{self, Write};

use clap::ValueEnum;

use ghzsep::exactmath::{format_rat, Rat};
use ghzsep::lpsolve::LpSolution;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// `num/den` always, for machine formats.
pub fn exact(r: &Rat) -> String {
    format_rat(r)
}

/// Integers without a denominator, for people.
pub fn human_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rat(r)
    }
}

fn joined(sol: &LpSolution, sep: &str, fmt: fn(&Rat) -> String) -> (String, String) {
    let tp = sol.tau_prob();
    (
        tp.iter().map(|(p, _)| p.to_string()).collect::<Vec<_>>().join(sep),
        tp.iter().map(|(_, v)| fmt(v)).collect::<Vec<_>>().join(sep),
    )
}

pub fn table(out: &mut impl Write, format: Format, rows: &[LpSolution]) -> io::Result<()> {
    match format {
        Format::Human => {
            writeln!(out, "N  K  partitions  tau*prob  tau  p_s")?;
            for s in rows {
                let (parts, tp) = joined(s, ",", human_rat);
                writeln!(
                    out,
                    "{} {} {parts} {tp} {} {}",
                    s.n,
                    s.k,
                    human_rat(&s.tau),
                    human_rat(&s.p_s)
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "schema_version,n,k,partitions,tau_prob,tau,p_s")?;
            for s in rows {
                let (parts, tp) = joined(s, ";", exact);
                writeln!(
                    out,
                    "{SCHEMA_VERSION},{},{},{parts},{tp},{},{}",
                    s.n,
                    s.k,
                    exact(&s.tau),
                    exact(&s.p_s)
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|s| s.to_json()).collect();
            writeln!(
                out,
                "{}",
                serde_json::json!({ "schema_version": SCHEMA_VERSION, "rows": rows })
            )?;
        }
    }
    Ok(())
}

pub fn lp(
    out: &mut impl Write,
    format: Format,
    sol: &LpSolution,
    certificate: &Result<(), String>,
) -> io::Result<()> {
    let cert_text = match certificate {
        Ok(()) => "verified".to_string(),
        Err(e) => format!("FAILED: {e}"),
    };
    match format {
        Format::Human => {
            writeln!(out, "n = {}, k = {}", sol.n, sol.k)?;
            writeln!(out, "tau = {}", human_rat(&sol.tau))?;
            writeln!(out, "p_s = {}", human_rat(&sol.p_s))?;
            writeln!(out, "weights:")?;
            for (p, w) in sol.support() {
                writeln!(out, "  {p}  {}", human_rat(&w))?;
            }
            let rows: Vec<String> = sol.binding.iter().map(|i| i.to_string()).collect();
            writeln!(out, "binding rows: {}", rows.join(" "))?;
            let duals: Vec<String> = sol.row_weights.iter().map(human_rat).collect();
            writeln!(out, "dual row weights: {}", duals.join(" "))?;
            writeln!(out, "certificate: {cert_text}")?;
        }
        Format::Json => {
            let mut v = serde_json::to_value(sol.to_json()).expect("solution serializes");
            v["certificate"] = cert_text.into();
            writeln!(out, "{v}")?;
        }
        Format::Csv => table(out, Format::Csv, std::slice::from_ref(sol))?,
    }
    Ok(())
}

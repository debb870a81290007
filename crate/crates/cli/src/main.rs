//! `ghzsep`: separability thresholds of noisy GHZ states.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad arguments.

mod render;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ghzsep::exactmath::{parse_rat, Rat};
use ghzsep::lpsolve::{build_problem, golden, solve, table1};
use ghzsep::thresholds::{best_bound, classify, figure1_data, figure_csv, nj_threshold, ExactLp};

use render::{human_rat, Format};

#[derive(Parser)]
#[command(name = "ghzsep", version, about = "Separability thresholds of N-qubit GHZ states in white noise")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "GHZSEP_FORMAT", default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold for (n-j)-separability, or the best bound for k-separability.
    Threshold(ThresholdArgs),
    /// Optimal same-k partition mixtures for 3 <= k <= n/2.
    Table1 {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Compare rows n <= 12 with the published values; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Threshold curves as CSV.
    Figure {
        #[arg(long, default_value_t = 3)]
        nmin: usize,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Curves j=<j>; repeat or comma-separate.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4, 5])]
        j: Vec<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites, streaming JSON lines.
    Verify(verify::VerifyArgs),
    /// Solve the partition-mixture LP for one (n, k).
    Lp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    j: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Classify this noise level (a fraction such as 1/4 or a decimal).
    #[arg(long)]
    p: Option<String>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<ghzsep::Error> for Failure {
    fn from(e: ghzsep::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Threshold(args) => cmd_threshold(&mut out, cli.format, args),
        Command::Table1 { nmax, check } => cmd_table1(&mut out, cli.format, nmax, check),
        Command::Figure { nmin, nmax, j, out: path } => cmd_figure(&mut out, nmin, nmax, &j, path),
        Command::Verify(args) => verify::run(&mut out, args),
        Command::Lp { n, k } => cmd_lp(&mut out, cli.format, n, k),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_threshold(out: &mut impl Write, format: Format, args: ThresholdArgs) -> Outcome {
    let n = args.n;
    let p: Option<Rat> = args.p.as_deref().map(parse_rat).transpose()?;
    let k = match (args.j, args.k) {
        (Some(j), _) => {
            if j == 0 || n < 2 * j + 1 {
                return Err(Failure::Usage(format!(
                    "--j {j} with --n {n} violates n >= 2j+1 (j >= 1); use --k {} for the LP bound",
                    n.saturating_sub(j)
                )));
            }
            nj_threshold(n, j)?;
            n - j
        }
        (None, Some(k)) => k,
        (None, None) => unreachable!("clap enforces --j or --k"),
    };
    let (sufficient, necessary, source) = best_bound(n, k, &ExactLp)?;
    let verdict = p.as_ref().map(|p| classify(n, k, p, &ExactLp)).transpose()?;
    match format {
        Format::Human => {
            if source.is_iff() {
                writeln!(out, "{} (iff)", human_rat(&sufficient))?;
            } else {
                writeln!(out, "sufficient {}, necessary: none given", human_rat(&sufficient))?;
            }
            writeln!(out, "n = {n}, k = {k}, source: {}", source.label())?;
            if let Some(v) = &verdict {
                writeln!(out, "p = {}: {}", human_rat(&v.p), v.status)?;
            }
        }
        Format::Json => {
            let mut v = serde_json::json!({
                "schema_version": render::SCHEMA_VERSION,
                "n": n,
                "k": k,
                "kind": if source.is_iff() { "iff" } else { "sufficient" },
                "sufficient": render::exact(&sufficient),
                "necessary": necessary.as_ref().map(render::exact),
                "source": source,
            });
            if let Some(verdict) = &verdict {
                v["p"] = render::exact(&verdict.p).into();
                v["status"] = serde_json::to_value(verdict.status).expect("status serializes");
            }
            writeln!(out, "{v}")?;
        }
        Format::Csv => {
            writeln!(out, "schema_version,n,k,kind,sufficient,necessary,source,p,status")?;
            writeln!(
                out,
                "{},{n},{k},{},{},{},{},{},{}",
                render::SCHEMA_VERSION,
                if source.is_iff() { "iff" } else { "sufficient" },
                render::exact(&sufficient),
                necessary.as_ref().map(render::exact).unwrap_or_default(),
                source.label(),
                verdict.as_ref().map(|v| render::exact(&v.p)).unwrap_or_default(),
                verdict.as_ref().map(|v| v.status.to_string()).unwrap_or_default(),
            )?;
        }
    }
    Ok(())
}

fn cmd_table1(out: &mut impl Write, format: Format, nmax: usize, check: bool) -> Outcome {
    if nmax < 6 {
        return Err(Failure::Usage(format!("--nmax {nmax} must be at least 6")));
    }
    if nmax > 20 {
        return Err(Failure::Usage(format!("--nmax {nmax} exceeds 20")));
    }
    let rows = table1(6..=nmax)?;
    render::table(out, format, &rows)?;
    if check {
        let mismatches: Vec<String> = rows
            .iter()
            .filter_map(golden::compare)
            .filter(|c| !c.passed())
            .map(|c| c.describe())
            .collect();
        if !mismatches.is_empty() {
            return Err(Failure::Check(format!(
                "{} row(s) differ from the published table: {}",
                mismatches.len(),
                mismatches.join("; ")
            )));
        }
    }
    Ok(())
}

fn cmd_figure(out: &mut impl Write, nmin: usize, nmax: usize, j: &[usize], path: Option<PathBuf>) -> Outcome {
    let csv = figure_csv(&figure1_data(nmin, nmax, j)?);
    match path {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn cmd_lp(out: &mut impl Write, format: Format, n: usize, k: usize) -> Outcome {
    if k < 2 || k > n || n > 20 {
        return Err(Failure::Usage(format!("lp needs 2 <= k <= n <= 20, got n = {n}, k = {k}")));
    }
    let prob = build_problem(n, k)?;
    let sol = solve(&prob)?;
    let certificate = sol.verify_certificate(&prob);
    render::lp(out, format, &sol, &certificate)?;
    certificate.map_err(Failure::Check)
}

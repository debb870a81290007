use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ghzsep::exactmath::{
    format_rat, random_unit_rational, verify_appendix_inequality, verify_lemma1_inequality,
    verify_w_identities, Rat,
};
use ghzsep::oracle::{
    characteristic_check, maximize_over_product_states, phase_average_oracle, sample_product_states,
};
use ghzsep::partitions::{enumerate_partitions, PartitionType};
use ghzsep::report::{params, CheckRecord};
use ghzsep::symstate::partition_average_state;

use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Wident,
    Appendix,
    Lemma1,
    PhaseOracle,
    WitnessMax,
    Charfn,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Size limits as `key=value` pairs: `l`, `n`, `samples`, `restarts`.
    #[arg(long)]
    limits: Option<String>,
}

fn parse_limits(text: Option<&str>) -> Result<BTreeMap<String, usize>, Failure> {
    let mut limits = BTreeMap::new();
    let Some(text) = text else { return Ok(limits) };
    for pair in text.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("limit `{pair}` is not key=value")))?;
        if !matches!(key, "l" | "n" | "samples" | "restarts") {
            return Err(Failure::Usage(format!("unknown limit `{key}`")));
        }
        let value = value
            .parse()
            .map_err(|_| Failure::Usage(format!("limit `{pair}` needs a non-negative integer")))?;
        limits.insert(key.to_string(), value);
    }
    Ok(limits)
}

struct Runner<'a, W: Write> {
    out: &'a mut W,
    seed: u64,
    limits: BTreeMap<String, usize>,
    failures: usize,
}

impl<W: Write> Runner<'_, W> {
    fn limit(&self, key: &str, default: usize) -> usize {
        self.limits.get(key).copied().unwrap_or(default)
    }

    fn emit<T: Serialize>(&mut self, record: &T, pass: bool) -> std::io::Result<()> {
        if !pass {
            self.failures += 1;
        }
        writeln!(self.out, "{}", serde_json::to_string(record).expect("record serializes"))
    }

    fn wident(&mut self) -> Outcome {
        let l_max = self.limit("l", 20);
        if l_max < 2 {
            return Err(Failure::Usage("wident needs l >= 2".into()));
        }
        for l in 2..=l_max {
            for rec in verify_w_identities(l)? {
                self.emit(&rec, rec.pass)?;
            }
        }
        Ok(())
    }

    fn appendix(&mut self) -> Outcome {
        let sweep = verify_appendix_inequality(self.limit("n", 100), self.limit("l", 100))?;
        for v in &sweep.violations {
            self.emit(v, false)?;
        }
        let summary = CheckRecord {
            check: "appendix_sweep".into(),
            params: params([("N_max", sweep.n_max), ("l_max", sweep.l_max)]),
            pass: sweep.passed(),
            detail: format!("{} cases, {} violations", sweep.checked, sweep.violations.len()),
        };
        self.emit(&summary, summary.pass)?;
        Ok(())
    }

    fn lemma1(&mut self) -> Outcome {
        let n_max = self.limit("n", 8);
        let samples = self.limit("samples", 10_000);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for n in 4..=n_max {
            let mut failed = 0usize;
            for _ in 0..samples {
                let z: Vec<Rat> = (0..n - 2).map(|_| random_unit_rational(&mut rng, 64)).collect();
                if !verify_lemma1_inequality(&z, n)?.passed() {
                    failed += 1;
                }
            }
            let zero = verify_lemma1_inequality(&vec![Rat::from_integer(0.into()); n - 2], n)?;
            let rec = CheckRecord {
                check: "lemma1".into(),
                params: params([("N", n), ("samples", samples), ("seed", self.seed as usize)]),
                pass: failed == 0 && zero.passed() && zero.equality,
                detail: format!(
                    "{failed} failures; z = 0 gives {} vs {} (equality {})",
                    format_rat(&zero.lhs),
                    format_rat(&zero.rhs),
                    zero.equality
                ),
            };
            self.emit(&rec, rec.pass)?;
        }
        Ok(())
    }

    fn phase_oracle(&mut self) -> Outcome {
        let n_max = self.limit("n", 8);
        for n in 2..=n_max {
            for k in 2..=n {
                for p in enumerate_partitions(n, k)? {
                    let oracle = phase_average_oracle(&p);
                    let closed = partition_average_state(&p)?;
                    let (pass, detail) = match oracle {
                        Ok(s) if s == closed => (true, "exact match".to_string()),
                        Ok(_) => (false, "states differ".to_string()),
                        Err(e) => (false, e.to_string()),
                    };
                    let rec = CheckRecord {
                        check: "phase_oracle".into(),
                        params: params([("partition", p.to_string())]),
                        pass,
                        detail,
                    };
                    self.emit(&rec, pass)?;
                }
            }
        }
        Ok(())
    }

    fn witness_max(&mut self) -> Outcome {
        let restarts = self.limit("restarts", 64);
        let samples = self.limit("samples", 10_000);
        let n_max = self.limit("n", 6);
        let cases = [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 4)];
        for (n, l) in cases.into_iter().filter(|(n, _)| *n <= n_max) {
            let target = n as f64 / (n - l) as f64;
            let report = maximize_over_product_states(n, l, restarts, self.seed)?;
            let mut parts = vec![1; n - l];
            parts.push(l);
            let sampled = sample_product_states(l, &PartitionType::new(parts)?, samples, self.seed)?;
            let highest = report.values.iter().copied().fold(sampled, f64::max);
            let pass = (report.best - target).abs() < 1e-6 && highest <= target + 1e-9;
            let rec = CheckRecord {
                check: "witness_max".into(),
                params: params([("n", n), ("L", l), ("restarts", restarts), ("samples", samples)]),
                pass,
                detail: format!(
                    "best {:.12}, highest seen {:.12}, bound {target:.12}, {}/{restarts} converged",
                    report.best, highest, report.converged
                ),
            };
            self.emit(&rec, pass)?;
        }
        Ok(())
    }

    fn charfn(&mut self) -> Outcome {
        let n_max = self.limit("n", 6);
        for n in 2..=n_max {
            for p in [(0, 1), (1, 2), (1, 1)] {
                let p = Rat::new(p.0.into(), p.1.into());
                for rec in characteristic_check(n, &p)? {
                    self.emit(&rec, rec.pass)?;
                }
            }
        }
        Ok(())
    }
}

pub fn run(out: &mut impl Write, args: VerifyArgs) -> Outcome {
    let limits = parse_limits(args.limits.as_deref())?;
    let mut runner = Runner {
        out,
        seed: args.seed,
        limits,
        failures: 0,
    };
    let suites = match args.suite {
        Suite::All => vec![
            Suite::Wident,
            Suite::Appendix,
            Suite::Lemma1,
            Suite::PhaseOracle,
            Suite::WitnessMax,
            Suite::Charfn,
        ],
        s => vec![s],
    };
    for suite in suites {
        match suite {
            Suite::Wident => runner.wident()?,
            Suite::Appendix => runner.appendix()?,
            Suite::Lemma1 => runner.lemma1()?,
            Suite::PhaseOracle => runner.phase_oracle()?,
            Suite::WitnessMax => runner.witness_max()?,
            Suite::Charfn => runner.charfn()?,
            Suite::All => unreachable!(),
        }
    }
    if runner.failures > 0 {
        return Err(Failure::Check(format!("{} record(s) failed", runner.failures)));
    }
    Ok(())
}

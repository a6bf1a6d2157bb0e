//! Seeded benchmark sweeps.

use std::fmt;
use std::time::Instant;

use evalexpr::{eval_int_with_context, ContextWithMutableVariables, HashMapContext, Value};
use rangeavoid::circuit::gen_random_nc0;
use rangeavoid::solvers::{Algorithm, Limits};
use rangeavoid::verify::{in_range, input_count};
use rangeavoid::{Error, Result};

pub const CSV_HEADER: &str = "n,m,k,alg,t,iters,micros,verified";

/// Whether a row's answer was checked against the range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verified {
    Yes,
    /// The answer lies in the range.
    No,
    Skipped,
    /// The solver rejected the instance.
    Error,
}

impl fmt::Display for Verified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verified::Yes => "yes",
            Verified::No => "no",
            Verified::Skipped => "skipped",
            Verified::Error => "error",
        })
    }
}

/// One `(instance, solver)` run. Rejected instances have no `t`, `iters` or
/// `micros`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub alg: Algorithm,
    pub t: Option<usize>,
    pub iters: Option<u64>,
    pub micros: Option<u128>,
    pub verified: Verified,
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.k,
            self.alg,
            opt(self.t.map(|t| t.to_string())),
            opt(self.iters.map(|i| i.to_string())),
            opt(self.micros.map(|u| u.to_string())),
            self.verified
        )
    }
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub k: usize,
    pub ns: Vec<usize>,
    pub m_rules: Vec<String>,
    pub seeds: u64,
    pub algs: Vec<Algorithm>,
    pub verify: bool,
}

/// `12` or the inclusive range `4..14`.
pub fn parse_n_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parameter(format!("bad n range `{text}`; expected `N` or `A..B`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(text)?]),
    }
}

/// Evaluates an integer expression in the variable `n`.
pub fn eval_m_rule(expr: &str, n: usize) -> Result<usize> {
    let mut ctx = HashMapContext::new();
    ctx.set_value("n".into(), Value::Int(n as i64)).map_err(|e| Error::Parameter(format!("m rule: {e}")))?;
    let m = eval_int_with_context(expr.trim(), &ctx).map_err(|e| Error::Parameter(format!("m rule `{expr}`: {e}")))?;
    usize::try_from(m)
        .ok()
        .filter(|&m| m > 0)
        .ok_or_else(|| Error::Parameter(format!("m rule `{expr}` gives {m} at n={n}; need a positive count")))
}

pub fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Runs every solver on every instance, in the order `n`, rule, seed,
/// solver. A solver rejecting an instance yields a row marked `error`;
/// malformed parameters abort the sweep.
pub fn run(config: &BenchConfig, limits: &Limits) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &config.ns {
        for rule in &config.m_rules {
            let m = eval_m_rule(rule, n)?;
            for seed in 0..config.seeds {
                let c = gen_random_nc0(n, m, config.k, seed)?;
                for &alg in &config.algs {
                    let start = Instant::now();
                    let outcome = alg.solve(&c, limits);
                    let micros = start.elapsed().as_micros();
                    let row = match outcome {
                        Ok(sol) => {
                            let verified = if !config.verify || input_count(n, limits.enumeration).is_err() {
                                Verified::Skipped
                            } else if in_range(&c, &sol.y, limits.enumeration)? {
                                Verified::No
                            } else {
                                Verified::Yes
                            };
                            BenchRow {
                                n,
                                m,
                                k: config.k,
                                seed,
                                alg,
                                t: sol.branch_inputs,
                                iters: Some(sol.iterations),
                                micros: Some(micros),
                                verified,
                            }
                        }
                        Err(e) if matches!(e, Error::Parameter(_) | Error::Internal(_)) => return Err(e),
                        Err(_) => BenchRow {
                            n,
                            m,
                            k: config.k,
                            seed,
                            alg,
                            t: None,
                            iters: None,
                            micros: None,
                            verified: Verified::Error,
                        },
                    };
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

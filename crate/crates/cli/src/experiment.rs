//! Parameter sweeps over the generator families, reported as CSV.
//!
//! Columns: `family,n,param,delta,seed,trial,vrk_lb,vrk_ub,exact,tensor_cert,minrank_p,minrank_val,ms`.
//! `tensor_cert` is filled for drgp and tensor-gap only, the minrank pair only
//! when a field is requested. Every column except `ms` is reproducible when the
//! solver budget is node-based.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;
use visrank::field::minrank_bruteforce;
use visrank::generators::{generate, Family, FamilyParams, DEFAULT_DELTA};
use visrank::tensor::diagonal_tensor_certificate;
use visrank::vrank::{visible_rank_exact, Budget};

pub const CSV_HEADER: &str =
    "family,n,param,delta,seed,trial,vrk_lb,vrk_ub,exact,tensor_cert,minrank_p,minrank_val,ms";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExperimentError {
    #[error("empty sweep: at least one n and one family parameter are required")]
    EmptySweep,
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub family: Family,
    pub ns: Vec<usize>,
    /// `t`, `q` or `ell` depending on the family.
    pub params: Vec<usize>,
    pub deltas: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub budget: Budget,
    pub field: Option<u32>,
    /// Witnesses evaluated per minrank call.
    pub minrank_budget: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub family: Family,
    pub n: usize,
    pub param: usize,
    pub delta: Option<f64>,
    pub seed: u64,
    pub trial: usize,
    pub outcome: Result<Outcome, String>,
    pub ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub vrk_lb: usize,
    pub vrk_ub: usize,
    pub exact: bool,
    pub tensor_cert: Option<bool>,
    pub minrank: Option<(u32, usize)>,
}

impl ExperimentSpec {
    fn points(&self) -> Vec<(usize, usize, Option<f64>)> {
        let deltas: Vec<Option<f64>> = if self.family == Family::Lcc {
            if self.deltas.is_empty() {
                vec![Some(DEFAULT_DELTA)]
            } else {
                self.deltas.iter().copied().map(Some).collect()
            }
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for &n in &self.ns {
            for &param in &self.params {
                for &delta in &deltas {
                    out.push((n, param, delta));
                }
            }
        }
        out
    }
}

/// Trial `i` of a point uses generator seed `seed + i`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<Row>, ExperimentError> {
    if spec.ns.is_empty() || spec.params.is_empty() {
        return Err(ExperimentError::EmptySweep);
    }
    if spec.trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    let jobs: Vec<(usize, usize, Option<f64>, usize)> = spec
        .points()
        .into_iter()
        .flat_map(|(n, p, d)| (0..spec.trials).map(move |trial| (n, p, d, trial)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(n, param, delta, trial)| run_trial(spec, n, param, delta, trial))
        .collect())
}

fn run_trial(spec: &ExperimentSpec, n: usize, param: usize, delta: Option<f64>, trial: usize) -> Row {
    let seed = spec.seed.wrapping_add(trial as u64);
    let params = match spec.family {
        Family::Lrc => FamilyParams::lrc(n, param, seed),
        Family::Lcc => FamilyParams::lcc(n, param, delta.unwrap_or(DEFAULT_DELTA), seed),
        Family::Drgp => FamilyParams::drgp(n, param, seed),
        Family::TensorGap => FamilyParams::tensor_gap(n, param, seed),
    };
    let start = Instant::now();
    let outcome = generate(&params).map_err(|e| e.to_string()).map(|h| {
        let r = visible_rank_exact(&h, spec.budget);
        let tensor_cert = matches!(spec.family, Family::Drgp | Family::TensorGap)
            .then(|| diagonal_tensor_certificate(&h, param).map(|(_, ok)| ok).unwrap_or(false));
        let minrank = spec.field.and_then(|p| {
            minrank_bruteforce(&h, p, spec.minrank_budget)
                .ok()
                .map(|m| (p, m.value))
        });
        Outcome {
            vrk_lb: r.lower,
            vrk_ub: r.upper,
            exact: r.exact,
            tensor_cert,
            minrank,
        }
    });
    Row {
        family: spec.family,
        n,
        param,
        delta,
        seed,
        trial,
        outcome,
        ms: start.elapsed().as_millis(),
    }
}

/// Rows for infeasible points carry the error in the `vrk_lb` column
/// (quoted) and leave the result columns empty.
pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let delta = r.delta.map(|d| d.to_string()).unwrap_or_default();
        write!(out, "{},{},{},{},{},{},", r.family, r.n, r.param, delta, r.seed, r.trial).unwrap();
        match &r.outcome {
            Ok(o) => {
                let cert = o.tensor_cert.map(|b| b.to_string()).unwrap_or_default();
                let (mp, mv) = o
                    .minrank
                    .map(|(p, v)| (p.to_string(), v.to_string()))
                    .unwrap_or_default();
                write!(out, "{},{},{},{},{},{}", o.vrk_lb, o.vrk_ub, o.exact, cert, mp, mv).unwrap();
            }
            Err(e) => write!(out, "\"error: {}\",,,,,", e.replace('"', "'")).unwrap(),
        }
        writeln!(out, ",{}", r.ms).unwrap();
    }
    out
}

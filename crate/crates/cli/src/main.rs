use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;
use visrank::field::{gf_rank, least_prime_at_least, low_rank_witness, minrank_bruteforce, validate_witness, WitnessMatrix};
use visrank::generators::{generate, validate_family, Family, FamilyParams, DEFAULT_DELTA};
use visrank::io::{parse_stencil, to_grid, to_json};
use visrank::spanoid::{rank_nullity_check, spanoid_rank, SymmetricSpanoid};
use visrank::tensor::{
    capacity_lower_bound, diagonal_tensor_certificate, tensor_power_with_limit, tensor_product_with_limit,
    DEFAULT_MATERIALIZE_LIMIT,
};
use visrank::vrank::{is_visibly_full_rank, visible_rank_bounds, visible_rank_exact};
use visrank::{Budget, DiagonalCertificate, Stencil};
use visrank_cli::experiment::{run_experiment, to_csv, ExperimentSpec};

#[derive(Parser)]
#[command(name = "visrank", version, about = "Visible rank of stencils")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// lrc, lcc, drgp or tensor-gap
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Groups per column (drgp, tensor-gap).
    #[arg(long)]
    t: Option<usize>,
    /// Group size (lcc).
    #[arg(long)]
    q: Option<usize>,
    /// Extra stars per row (lrc).
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Wall-clock limit for exact search.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Node limit for exact search (default 20M when no time limit is given).
    #[arg(long)]
    nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        let default = Budget::default();
        Budget {
            max_nodes: self.nodes.or(if self.budget_ms.is_some() { None } else { default.max_nodes }),
            time_limit: self.budget_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a family stencil (JSON on stdout, or a file; `.stn` selects the grid format).
    Gen {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Visible rank: exact search under a budget, or bounds only.
    Vrank {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        bounds_only: bool,
    },
    /// Tensor power (or product with a second stencil); `--capacity` reports per-level lower bounds instead.
    Tensor {
        file: PathBuf,
        other: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        power: usize,
        #[arg(long)]
        capacity: bool,
        /// Maximum number of entries to materialize.
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_LIMIT)]
        limit: u128,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// With `--t`, the diagonal certificate of the t-th tensor power; otherwise peel a square stencil.
    Certify {
        file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Exhaustive minimum rank over GF(p) witnesses.
    Minrank {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        /// Maximum witnesses evaluated.
        #[arg(long, default_value_t = 10_000_000)]
        max_witnesses: u64,
    },
    /// Low-rank polynomial witness over GF(p), p >= n (default: least such prime).
    Witness {
        file: PathBuf,
        #[arg(long)]
        field: Option<u32>,
    },
    /// Symmetric spanoid rank and the rank-nullity check.
    Spanoid {
        #[command(subcommand)]
        cmd: SpanoidCmd,
    },
    /// Check a stencil against a family definition, a vrank certificate or a witness.
    Verify {
        file: PathBuf,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        /// JSON output of `vrank`.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// JSON witness matrix.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Sweep a family over parameters and write one CSV row per trial.
    Experiment {
        #[arg(long)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        t: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        ell: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also run minrank over GF(p).
        #[arg(long)]
        field: Option<u32>,
        #[arg(long, default_value_t = 100_000)]
        max_witnesses: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SpanoidCmd {
    Rank {
        file: PathBuf,
        /// Exhaustive search only when 2^n is at most this.
        #[arg(long, default_value_t = 1 << 24)]
        max_subsets: u64,
    },
    Check {
        file: PathBuf,
        /// Also test every column set.
        #[arg(long)]
        columns: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Violated(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Violated(_) => 1,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Stencil, CliError> {
    parse_stencil(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

/// Grid text for `.stn` paths, JSON (with `meta` merged in) otherwise.
fn emit_stencil(h: &Stencil, out: Option<&Path>, meta: Value) -> Result<(), CliError> {
    if out.is_some_and(|p| p.extension().is_some_and(|e| e == "stn")) {
        if !meta.is_null() {
            eprintln!("{meta}");
        }
        return write_out(out, &to_grid(h));
    }
    let mut doc: Value = serde_json::from_str(&to_json(h)).expect("stencil JSON");
    if let (Value::Object(d), Value::Object(m)) = (&mut doc, meta) {
        d.extend(m);
    }
    write_out(out, &doc.to_string())
}

fn family_param(family: Family, t: Option<usize>, q: Option<usize>, ell: Option<usize>) -> Result<usize, CliError> {
    let (v, flag) = match family {
        Family::Lrc => (ell, "--ell"),
        Family::Lcc => (q, "--q"),
        Family::Drgp | Family::TensorGap => (t, "--t"),
    };
    v.ok_or_else(|| usage(format!("family {family} requires {flag}")))
}

fn params(family: Family, n: usize, param: usize, delta: f64, seed: u64) -> FamilyParams {
    match family {
        Family::Lrc => FamilyParams::lrc(n, param, seed),
        Family::Lcc => FamilyParams::lcc(n, param, delta, seed),
        Family::Drgp => FamilyParams::drgp(n, param, seed),
        Family::TensorGap => FamilyParams::tensor_gap(n, param, seed),
    }
}

#[derive(Deserialize)]
struct CertificateDoc {
    rows: Vec<usize>,
    cols: Vec<usize>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

#[derive(Deserialize)]
struct VrankDoc {
    certificate: CertificateDoc,
}

/// Rebuilds a certificate from 1-based JSON; `None` when indices are inconsistent.
fn certificate_from_doc(c: &CertificateDoc) -> Option<DiagonalCertificate> {
    let k = c.rows.len();
    if [c.cols.len(), c.row_perm.len(), c.col_perm.len()] != [k; 3] {
        return None;
    }
    let at = |v: &[usize], p: usize| p.checked_sub(1).and_then(|p| v.get(p)).and_then(|x| x.checked_sub(1));
    let pairs: Option<Vec<(usize, usize)>> = (0..k)
        .map(|i| Some((at(&c.rows, c.row_perm[i])?, at(&c.cols, c.col_perm[i])?)))
        .collect();
    let pairs = pairs?;
    let distinct = |f: fn(&(usize, usize)) -> usize| {
        let mut v: Vec<usize> = pairs.iter().map(f).collect();
        v.sort_unstable();
        v.dedup();
        v.len() == k
    };
    (distinct(|p| p.0) && distinct(|p| p.1)).then(|| DiagonalCertificate::from_triangular_pairs(&pairs))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gen { fam, out } => {
            let n = fam.n.ok_or_else(|| usage("gen requires --n"))?;
            let param = family_param(fam.family, fam.t, fam.q, fam.ell)?;
            let p = params(fam.family, n, param, fam.delta, fam.seed);
            let h = generate(&p).map_err(usage)?;
            let mut meta = json!({ "family": fam.family.name(), "param": param, "seed": fam.seed });
            if fam.family == Family::Lcc {
                meta["delta"] = json!(fam.delta);
            }
            emit_stencil(&h, out.as_deref(), meta)
        }
        Cmd::Vrank { file, budget, bounds_only } => {
            let h = load(&file)?;
            let r = if bounds_only {
                visible_rank_bounds(&h)
            } else {
                visible_rank_exact(&h, budget.budget())
            };
            write_out(None, &r.to_json())
        }
        Cmd::Tensor { file, other, power, capacity, limit, budget, out } => {
            let h = load(&file)?;
            if capacity {
                return write_out(out.as_deref(), &capacity_lower_bound(&h, power, budget.budget()).to_json());
            }
            let t = match other {
                Some(o) => tensor_product_with_limit(&h, &load(&o)?, limit),
                None => tensor_power_with_limit(&h, power, limit),
            }
            .map_err(usage)?;
            emit_stencil(&t, out.as_deref(), Value::Null)
        }
        Cmd::Certify { file, t } => {
            let h = load(&file)?;
            match t {
                Some(t) => {
                    let (_, ok) = diagonal_tensor_certificate(&h, t).map_err(usage)?;
                    let n = h.ncols();
                    write_out(
                        None,
                        &json!({ "t": t, "n": n, "identity": ok, "vrk_power_at_least": if ok { n } else { 0 } })
                            .to_string(),
                    )?;
                    if !ok {
                        return Err(CliError::Violated(format!("diagonal of power {t} is not the identity pattern")));
                    }
                    Ok(())
                }
                None => {
                    let cert = is_visibly_full_rank(&h).map_err(usage)?;
                    let doc = match &cert {
                        Some(c) => json!({
                            "visibly_full_rank": true,
                            "peel_order": c.peel_order.iter().map(|&(r, c)| [r + 1, c + 1]).collect::<Vec<_>>(),
                        }),
                        None => json!({ "visibly_full_rank": false }),
                    };
                    write_out(None, &doc.to_string())?;
                    cert.map(|_| ()).ok_or_else(|| CliError::Violated("peeling gets stuck".into()))
                }
            }
        }
        Cmd::Minrank { file, field, max_witnesses } => {
            let h = load(&file)?;
            let r = minrank_bruteforce(&h, field, max_witnesses).map_err(usage)?;
            let doc = json!({
                "p": r.p,
                "value": r.value,
                "exhaustive": r.exhaustive,
                "evaluated": r.evaluated,
                "witness": serde_json::from_str::<Value>(&r.witness.to_json()).expect("witness JSON"),
            });
            write_out(None, &doc.to_string())
        }
        Cmd::Witness { file, field } => {
            let h = load(&file)?;
            let p = field.unwrap_or_else(|| least_prime_at_least(h.ncols()));
            let w = low_rank_witness(&h, p).map_err(usage)?;
            let doc = json!({
                "p": p,
                "rank": gf_rank(&w),
                "cap": h.max_row_zeros() + 1,
                "witness": serde_json::from_str::<Value>(&w.to_json()).expect("witness JSON"),
            });
            write_out(None, &doc.to_string())
        }
        Cmd::Spanoid { cmd } => match cmd {
            SpanoidCmd::Rank { file, max_subsets } => {
                let s = SymmetricSpanoid::from_json(&read(&file)?).map_err(usage)?;
                let r = spanoid_rank(&s, max_subsets);
                let doc = json!({
                    "rank": r.value,
                    "basis": r.basis.iter().map(|e| e + 1).collect::<Vec<_>>(),
                    "exhaustive": r.exhaustive,
                });
                write_out(None, &doc.to_string())
            }
            SpanoidCmd::Check { file, columns } => {
                let s = SymmetricSpanoid::from_json(&read(&file)?).map_err(usage)?;
                let r = rank_nullity_check(&s, columns, Budget::UNLIMITED);
                let doc = json!({
                    "n": r.n,
                    "vrk": r.vrk,
                    "rank": r.rank,
                    "exact": r.exact,
                    "identity_holds": r.identity_holds,
                    "columns_checked": r.columns_checked,
                    "column_mismatch": r.column_mismatch.as_ref().map(|c| c.iter().map(|e| e + 1).collect::<Vec<_>>()),
                });
                write_out(None, &doc.to_string())?;
                if r.passed() {
                    Ok(())
                } else {
                    Err(CliError::Violated("rank-nullity identity".into()))
                }
            }
        },
        Cmd::Verify { file, family, t, q, ell, delta, certificate, witness } => {
            let h = load(&file)?;
            if family.is_none() && certificate.is_none() && witness.is_none() {
                return Err(usage("verify needs --family, --certificate or --witness"));
            }
            let mut failures = Vec::new();
            let mut report = serde_json::Map::new();
            if let Some(f) = family {
                let p = params(f, h.ncols(), family_param(f, t, q, ell)?, delta, 0);
                let res = validate_family(&h, &p);
                report.insert(
                    "family".into(),
                    json!({ "valid": res.is_ok(), "violation": res.as_ref().err().map(|v| v.to_string()) }),
                );
                if let Err(v) = res {
                    failures.push(v.to_string());
                }
            }
            if let Some(path) = certificate {
                let doc: VrankDoc = serde_json::from_str(&read(&path)?).map_err(usage)?;
                let ok = certificate_from_doc(&doc.certificate).is_some_and(|c| c.verify(&h));
                report.insert("certificate".into(), json!({ "valid": ok, "size": doc.certificate.rows.len() }));
                if !ok {
                    failures.push("certificate does not re-verify".into());
                }
            }
            if let Some(path) = witness {
                let w = WitnessMatrix::from_json(&read(&path)?).map_err(usage)?;
                let v = validate_witness(&w, &h).map_err(usage)?;
                report.insert("witness".into(), json!({ "valid": v.is_none(), "rank": gf_rank(&w) }));
                if let Some(v) = v {
                    failures.push(format!("witness support mismatch: {v:?}"));
                }
            }
            write_out(None, &Value::Object(report).to_string())?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Violated(failures.join("; ")))
            }
        }
        Cmd::Experiment { family, n, t, q, ell, delta, trials, seed, budget, field, max_witnesses, csv } => {
            let params = match family {
                Family::Lrc => ell,
                Family::Lcc => q,
                Family::Drgp | Family::TensorGap => t,
            };
            let spec = ExperimentSpec {
                family,
                ns: n,
                params,
                deltas: delta,
                trials,
                seed,
                budget: budget.budget(),
                field,
                minrank_budget: max_witnesses,
            };
            let rows = run_experiment(&spec).map_err(usage)?;
            write_out(csv.as_deref(), &to_csv(&rows))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

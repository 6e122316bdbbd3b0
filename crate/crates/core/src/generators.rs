//! Seeded generators and validators for the locality families:
//! `l`-LRC, `q`-LCC, `t`-DRGP and the tensor-gap family.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` with one stream per
//! cell, selected by `set_stream`:
//!
//! * LRC: stream `i` fills row `i`.
//! * LCC: stream `i` draws all repair groups of column `i`.
//! * DRGP and tensor-gap: stream `i * n + j` fills the entry block `S_{i,j}`.
//! * zero-rectangle probe: stream `trial`.
//!
//! Cells never share a stream, so filling them in any order or in parallel
//! yields the same stencil.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::stencil::{default_labels, Label, Stencil};

pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Lrc,
    Lcc,
    Drgp,
    TensorGap,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lrc => "lrc",
            Family::Lcc => "lcc",
            Family::Drgp => "drgp",
            Family::TensorGap => "tensor-gap",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lrc" => Ok(Family::Lrc),
            "lcc" => Ok(Family::Lcc),
            "drgp" => Ok(Family::Drgp),
            "tensor-gap" => Ok(Family::TensorGap),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Family plus its parameters. `param` is `l` for LRC, `q` for LCC and `t`
/// for DRGP / tensor-gap; `delta` is only read for LCC.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub n: usize,
    pub param: usize,
    pub delta: f64,
    pub seed: u64,
}

/// `floor(delta * n)`, tolerant of representation error in `delta`.
pub fn lcc_groups(n: usize, delta: f64) -> usize {
    (delta * n as f64 + 1e-9).floor() as usize
}

impl FamilyParams {
    pub fn lrc(n: usize, ell: usize, seed: u64) -> Self {
        FamilyParams { family: Family::Lrc, n, param: ell, delta: DEFAULT_DELTA, seed }
    }

    pub fn lcc(n: usize, q: usize, delta: f64, seed: u64) -> Self {
        FamilyParams { family: Family::Lcc, n, param: q, delta, seed }
    }

    pub fn drgp(n: usize, t: usize, seed: u64) -> Self {
        FamilyParams { family: Family::Drgp, n, param: t, delta: DEFAULT_DELTA, seed }
    }

    pub fn tensor_gap(n: usize, t: usize, seed: u64) -> Self {
        FamilyParams { family: Family::TensorGap, n, param: t, delta: DEFAULT_DELTA, seed }
    }

    pub fn check(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidParams(msg));
        match self.family {
            Family::Lrc => {
                if self.param < 1 || self.param + 1 > self.n {
                    return bad(format!("need 1 <= ell <= n-1, got ell={} n={}", self.param, self.n));
                }
            }
            Family::Lcc => {
                if !(self.delta > 0.0 && self.delta < 1.0) {
                    return bad(format!("delta must lie in (0,1), got {}", self.delta));
                }
                let t = lcc_groups(self.n, self.delta);
                if self.param < 3 {
                    return bad(format!("need q >= 3, got {}", self.param));
                }
                if t < 1 {
                    return bad(format!("floor(delta*n) = 0 for delta={} n={}", self.delta, self.n));
                }
                if self.param * t + 1 > self.n {
                    return bad(format!(
                        "{} disjoint groups of size {} do not fit in {} other columns",
                        t,
                        self.param,
                        self.n.saturating_sub(1)
                    ));
                }
            }
            Family::Drgp | Family::TensorGap => {
                if self.param < 2 {
                    return bad(format!("need t >= 2, got {}", self.param));
                }
                if self.n < 2 {
                    return bad(format!("need n >= 2, got {}", self.n));
                }
            }
        }
        Ok(())
    }

    /// Number of row groups per column (`t`, or `floor(delta n)` for LCC).
    pub fn groups(&self) -> usize {
        match self.family {
            Family::Lrc => 1,
            Family::Lcc => lcc_groups(self.n, self.delta),
            Family::Drgp | Family::TensorGap => self.param,
        }
    }
}

fn cell_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Partial Fisher-Yates: moves a uniform `k`-subset of `pool` (in draw order) to the front.
fn draw(rng: &mut ChaCha8Rng, pool: &mut [usize], k: usize) {
    for i in 0..k {
        let j = i + rng.gen_range(0..(pool.len() - i) as u64) as usize;
        pool.swap(i, j);
    }
}

fn pair_labels(n: usize, t: usize) -> Vec<Label> {
    (1..=n as u32)
        .flat_map(|i| (1..=t as u32).map(move |s| vec![i, s]))
        .collect()
}

fn labeled(rows: Vec<BitSet>, n: usize, t: usize) -> Stencil {
    Stencil::from_bit_rows(rows, n)
        .with_labels(pair_labels(n, t), default_labels(n))
        .expect("generated labels are distinct")
}

pub fn generate(p: &FamilyParams) -> Result<Stencil, FamilyError> {
    match p.family {
        Family::Lrc => gen_lrc(p.n, p.param, p.seed),
        Family::Lcc => gen_lcc(p.n, p.param, p.delta, p.seed),
        Family::Drgp => gen_drgp(p.n, p.param, p.seed),
        Family::TensorGap => gen_tensor_gap(p.n, p.param, p.seed),
    }
}

/// `n x n`: star diagonal plus exactly `ell` other stars per row.
pub fn gen_lrc(n: usize, ell: usize, seed: u64) -> Result<Stencil, FamilyError> {
    FamilyParams::lrc(n, ell, seed).check()?;
    let rows = (0..n)
        .map(|i| {
            let mut rng = cell_rng(seed, i as u64);
            let mut pool: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            draw(&mut rng, &mut pool, ell);
            BitSet::from_indices(n, pool[..ell].iter().copied().chain([i]))
        })
        .collect();
    Ok(Stencil::from_bit_rows(rows, n))
}

/// Rows `(i, j)` for `i in [n]`, `j in [floor(delta n)]`; row `(i, j)` is
/// `{i}` plus a `q`-subset drawn uniformly from the columns not yet used by
/// earlier groups of `i`.
pub fn gen_lcc(n: usize, q: usize, delta: f64, seed: u64) -> Result<Stencil, FamilyError> {
    FamilyParams::lcc(n, q, delta, seed).check()?;
    let t = lcc_groups(n, delta);
    let mut rows = Vec::with_capacity(n * t);
    for i in 0..n {
        let mut rng = cell_rng(seed, i as u64);
        let mut pool: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        draw(&mut rng, &mut pool, q * t);
        for g in 0..t {
            let group = &pool[g * q..(g + 1) * q];
            rows.push(BitSet::from_indices(n, group.iter().copied().chain([i])));
        }
    }
    Ok(labeled(rows, n, t))
}

/// Rows `(i, s)`; `S_{i,i}` all stars and exactly one uniform star in each `S_{i,j}`.
pub fn gen_drgp(n: usize, t: usize, seed: u64) -> Result<Stencil, FamilyError> {
    FamilyParams::drgp(n, t, seed).check()?;
    Ok(fill_blocks(n, t, seed, |rng, block| {
        let s = rng.gen_range(0..t as u64) as usize;
        block[s] = true;
    }))
}

/// Rows `(i, s)`; `S_{i,i}` all stars and exactly one uniform zero in each
/// `S_{i,j}`. For `t = 2` this is literally [`gen_drgp`].
pub fn gen_tensor_gap(n: usize, t: usize, seed: u64) -> Result<Stencil, FamilyError> {
    FamilyParams::tensor_gap(n, t, seed).check()?;
    if t == 2 {
        return gen_drgp(n, t, seed);
    }
    Ok(fill_blocks(n, t, seed, |rng, block| {
        block.iter_mut().for_each(|b| *b = true);
        let z = rng.gen_range(0..t as u64) as usize;
        block[z] = false;
    }))
}

fn fill_blocks(
    n: usize,
    t: usize,
    seed: u64,
    mut fill: impl FnMut(&mut ChaCha8Rng, &mut [bool]),
) -> Stencil {
    let mut rows = vec![BitSet::new(n); n * t];
    let mut block = vec![false; t];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                block.iter_mut().for_each(|b| *b = true);
            } else {
                block.iter_mut().for_each(|b| *b = false);
                let mut rng = cell_rng(seed, (i * n + j) as u64);
                fill(&mut rng, &mut block);
            }
            for (s, &star) in block.iter().enumerate() {
                if star {
                    rows[i * t + s].insert(j);
                }
            }
        }
    }
    labeled(rows, n, t)
}

/// Which clause of a family definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    Shape,
    RowLabels,
    DiagonalStar,
    AtMostOneStar,
    ExactlyOneZero,
    RowWeight,
    Parameters,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Shape => "stencil shape",
            Clause::RowLabels => "row labels cover [n] x [t]",
            Clause::DiagonalStar => "star at own column",
            Clause::AtMostOneStar => "at most one ★",
            Clause::ExactlyOneZero => "exactly one 0",
            Clause::RowWeight => "row star count",
            Clause::Parameters => "family parameters",
        })
    }
}

/// First failed clause; `at` holds 1-based indices (`(i, j)` for blocks, `(i, s)` or `(row)` otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub at: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}: {}", self.clause, self.at, self.detail)
    }
}

fn violation(clause: Clause, at: Vec<usize>, detail: impl Into<String>) -> Result<(), Violation> {
    Err(Violation { clause, at, detail: detail.into() })
}

/// Checks every clause of the family definition, reporting the first failure.
pub fn validate_family(h: &Stencil, p: &FamilyParams) -> Result<(), Violation> {
    if let Err(e) = p.check() {
        return violation(Clause::Parameters, vec![], e.to_string());
    }
    let n = p.n;
    if h.ncols() != n {
        return violation(Clause::Shape, vec![], format!("expected {n} columns, found {}", h.ncols()));
    }
    match p.family {
        Family::Lrc => {
            if h.nrows() != n {
                return violation(Clause::Shape, vec![], format!("expected {n} rows, found {}", h.nrows()));
            }
            for i in 0..n {
                if !h.get(i, i) {
                    return violation(Clause::DiagonalStar, vec![i + 1], "missing diagonal star");
                }
                let extra = h.row(i).count() - 1;
                if extra > p.param {
                    return violation(
                        Clause::RowWeight,
                        vec![i + 1],
                        format!("{extra} stars besides the diagonal, at most {} allowed", p.param),
                    );
                }
            }
            Ok(())
        }
        Family::Lcc | Family::Drgp | Family::TensorGap => {
            let t = p.groups();
            let index = grouped_rows(h, n, t)?;
            for i in 0..n {
                for s in 0..t {
                    let r = index[i * t + s];
                    if !h.get(r, i) {
                        return violation(Clause::DiagonalStar, vec![i + 1, s + 1], "missing star at own column");
                    }
                    if p.family == Family::Lcc && h.row(r).count() > p.param + 1 {
                        return violation(
                            Clause::RowWeight,
                            vec![i + 1, s + 1],
                            format!("{} stars, at most {} allowed", h.row(r).count(), p.param + 1),
                        );
                    }
                }
                for j in (0..n).filter(|&j| j != i) {
                    let stars = (0..t).filter(|&s| h.get(index[i * t + s], j)).count();
                    match p.family {
                        Family::TensorGap if stars != t - 1 => {
                            return violation(
                                Clause::ExactlyOneZero,
                                vec![i + 1, j + 1],
                                format!("{} zeros in S_(i,j)", t - stars),
                            )
                        }
                        Family::Lcc | Family::Drgp if stars > 1 => {
                            return violation(
                                Clause::AtMostOneStar,
                                vec![i + 1, j + 1],
                                format!("{stars} stars in S_(i,j)"),
                            )
                        }
                        _ => {}
                    }
                }
            }
            Ok(())
        }
    }
}

/// Maps label `(i, s)` to its row, checking the label set is exactly `[n] x [t]`.
fn grouped_rows(h: &Stencil, n: usize, t: usize) -> Result<Vec<usize>, Violation> {
    if h.nrows() != n * t {
        return Err(Violation {
            clause: Clause::Shape,
            at: vec![],
            detail: format!("expected {} rows, found {}", n * t, h.nrows()),
        });
    }
    let mut index = vec![usize::MAX; n * t];
    for (r, label) in h.row_labels().iter().enumerate() {
        let slot = match label.as_slice() {
            &[i, s] if (1..=n as u32).contains(&i) && (1..=t as u32).contains(&s) => {
                (i as usize - 1) * t + (s as usize - 1)
            }
            _ => {
                return Err(Violation {
                    clause: Clause::RowLabels,
                    at: vec![r + 1],
                    detail: format!("row label {label:?} is not a pair in [{n}] x [{t}]"),
                })
            }
        };
        index[slot] = r;
    }
    Ok(index)
}

/// Outcome of [`lcc_zero_rectangle_probe`]. `witness` holds 0-based rows
/// whose supports fit in at most `s` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub trials_run: u64,
    pub witness: Option<Vec<usize>>,
}

impl ProbeReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Samples `trials` uniform `(s-k)`-subsets of rows and reports the first
/// whose union of supports has at most `s` columns, i.e. an
/// `(s-k) x (n-s)` all-zero sub-stencil.
pub fn lcc_zero_rectangle_probe(h: &Stencil, s: usize, k: usize, trials: u64, seed: u64) -> ProbeReport {
    assert!(s > k && k >= 1, "probe needs s > k >= 1");
    let size = s - k;
    if size > h.nrows() {
        return ProbeReport { trials_run: 0, witness: None };
    }
    let mut pool: Vec<usize> = (0..h.nrows()).collect();
    for trial in 0..trials {
        let mut rng = cell_rng(seed, trial);
        pool.sort_unstable();
        draw(&mut rng, &mut pool, size);
        let mut union = BitSet::new(h.ncols());
        for &r in &pool[..size] {
            union.union_with(h.row(r));
        }
        if union.count() <= s {
            let mut rows = pool[..size].to_vec();
            rows.sort_unstable();
            return ProbeReport { trials_run: trial + 1, witness: Some(rows) };
        }
    }
    ProbeReport { trials_run: trials, witness: None }
}

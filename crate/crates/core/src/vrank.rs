//! Visible full rank, triangularization and visible rank.
//!
//! A `k x k` sub-stencil is visibly full rank exactly when its rows and
//! columns can be ordered as `(r_1, c_1), ..., (r_k, c_k)` with
//! `H[r_i, c_i] = *` and `H[r_i, c_j] = 0` for `i > j`. Building such a chain
//! left to right, the rows still usable after choosing columns `C` are the
//! rows with no star in `C`, and that row set is the whole search state.
//! [`visible_rank_exact`] runs a memoized branch-and-bound over these states.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::StencilError;
use crate::stencil::{max_matching, PermutationPair, Stencil};

/// Square sub-stencil plus the orderings that make it upper triangular.
///
/// `row_subset` and `col_subset` are ascending. `perm_pair` is expressed on
/// positions within those subsets, so
/// `H.substencil(row_subset, col_subset).permute(perm_pair)` is upper
/// triangular. `peel_order` lists `(row, col)` pairs in the order the
/// peeling procedure removes them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalCertificate {
    pub row_subset: Vec<usize>,
    pub col_subset: Vec<usize>,
    pub perm_pair: PermutationPair,
    pub peel_order: Vec<(usize, usize)>,
}

impl DiagonalCertificate {
    pub fn empty() -> Self {
        DiagonalCertificate {
            row_subset: vec![],
            col_subset: vec![],
            perm_pair: PermutationPair::identity(0, 0),
            peel_order: vec![],
        }
    }

    /// Builds a certificate from pairs listed in upper-triangular order:
    /// `H[pairs[i].0, pairs[j].1] = 0` whenever `i > j`.
    pub fn from_triangular_pairs(pairs: &[(usize, usize)]) -> Self {
        let mut row_subset: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut col_subset: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        row_subset.sort_unstable();
        col_subset.sort_unstable();
        let pos = |v: &[usize], x: usize| v.binary_search(&x).expect("member of subset");
        let row_perm = pairs.iter().map(|p| pos(&row_subset, p.0)).collect();
        let col_perm = pairs.iter().map(|p| pos(&col_subset, p.1)).collect();
        DiagonalCertificate {
            row_subset,
            col_subset,
            perm_pair: PermutationPair { row_perm, col_perm },
            peel_order: pairs.iter().rev().copied().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.row_subset.len()
    }

    /// Pairs in upper-triangular order.
    pub fn triangular_pairs(&self) -> Vec<(usize, usize)> {
        self.perm_pair
            .row_perm
            .iter()
            .zip(&self.perm_pair.col_perm)
            .map(|(&r, &c)| (self.row_subset[r], self.col_subset[c]))
            .collect()
    }

    /// Re-checks the certificate against `h`: the permuted sub-stencil is
    /// upper triangular and the peel order replays.
    pub fn verify(&self, h: &Stencil) -> bool {
        let k = self.row_subset.len();
        if self.col_subset.len() != k
            || self.peel_order.len() != k
            || PermutationPair::new(
                self.perm_pair.row_perm.clone(),
                self.perm_pair.col_perm.clone(),
            )
            .is_err()
            || self.perm_pair.row_perm.len() != k
            || self.perm_pair.col_perm.len() != k
        {
            return false;
        }
        let Ok(sub) = h.substencil(&self.row_subset, &self.col_subset) else {
            return false;
        };
        let Ok(tri) = sub.permute(&self.perm_pair) else {
            return false;
        };
        if !tri.is_upper_triangular() {
            return false;
        }
        let mut rows: Vec<usize> = self.row_subset.clone();
        let mut cols: Vec<usize> = self.col_subset.clone();
        for &(r, c) in &self.peel_order {
            let Some(ri) = rows.iter().position(|&x| x == r) else {
                return false;
            };
            let stars: Vec<usize> = cols.iter().copied().filter(|&j| h.get(r, j)).collect();
            if stars != [c] {
                return false;
            }
            rows.swap_remove(ri);
            cols.retain(|&j| j != c);
        }
        true
    }

    /// Maps indices through `rows`/`cols` (used after searching a sub-stencil or a transpose).
    pub(crate) fn remap(pairs: &[(usize, usize)], rows: &[usize], cols: &[usize]) -> Vec<(usize, usize)> {
        pairs.iter().map(|&(r, c)| (rows[r], cols[c])).collect()
    }
}

fn require_square(m: &Stencil) -> Result<(), StencilError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(StencilError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Peels rows with exactly one remaining star (lowest index first). Returns
/// the certificate when the stencil empties, `None` when peeling gets stuck.
pub fn is_visibly_full_rank(m: &Stencil) -> Result<Option<DiagonalCertificate>, StencilError> {
    require_square(m)?;
    let n = m.nrows();
    let mut active_rows = BitSet::full(n);
    let mut active_cols = BitSet::full(n);
    let mut peel = Vec::with_capacity(n);
    while !active_rows.is_empty() {
        let hit = active_rows.iter().find_map(|r| {
            let live = m.row(r).intersection(&active_cols);
            (live.count() == 1).then(|| (r, live.first().unwrap()))
        });
        let Some((r, c)) = hit else {
            return Ok(None);
        };
        peel.push((r, c));
        active_rows.remove(r);
        active_cols.remove(c);
    }
    let pairs: Vec<_> = peel.iter().rev().copied().collect();
    Ok(Some(DiagonalCertificate::from_triangular_pairs(&pairs)))
}

/// Row and column orders making `m` upper triangular, or `None` when `m` is
/// not visibly full rank.
pub fn triangularize(m: &Stencil) -> Result<Option<PermutationPair>, StencilError> {
    Ok(is_visibly_full_rank(m)?.map(|cert| {
        let pairs = cert.triangular_pairs();
        PermutationPair {
            row_perm: pairs.iter().map(|p| p.0).collect(),
            col_perm: pairs.iter().map(|p| p.1).collect(),
        }
    }))
}

/// Where an upper bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperBoundSource {
    ExactSearch,
    Matching,
    ZeroRectangle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VrankResult {
    pub lower: usize,
    pub certificate: DiagonalCertificate,
    pub upper: usize,
    pub upper_source: UpperBoundSource,
    pub exact: bool,
    /// Search nodes expanded (0 for bound-only results).
    pub nodes: u64,
}

#[derive(Serialize)]
struct CertificateDoc {
    rows: Vec<usize>,
    cols: Vec<usize>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
}

#[derive(Serialize)]
struct VrankDoc {
    lower: usize,
    upper: usize,
    exact: bool,
    upper_source: UpperBoundSource,
    certificate: CertificateDoc,
}

impl VrankResult {
    /// JSON with 1-based indices.
    pub fn to_json(&self) -> String {
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect();
        let c = &self.certificate;
        serde_json::to_string(&VrankDoc {
            lower: self.lower,
            upper: self.upper,
            exact: self.exact,
            upper_source: self.upper_source,
            certificate: CertificateDoc {
                rows: one(&c.row_subset),
                cols: one(&c.col_subset),
                row_perm: one(&c.perm_pair.row_perm),
                col_perm: one(&c.perm_pair.col_perm),
            },
        })
        .expect("result serializes")
    }
}

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        time_limit: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            time_limit: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            max_nodes: None,
            time_limit: Some(Duration::from_millis(ms)),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(20_000_000)
    }
}

/// Greedy triangular selection: repeatedly take the usable row with the
/// fewest stars in still-unused columns, pair it with its lowest unused star
/// column, then mark its whole support used.
pub fn greedy_lower_bound(h: &Stencil) -> (usize, DiagonalCertificate) {
    let mut used_cols = BitSet::new(h.ncols());
    let mut used_rows = BitSet::new(h.nrows());
    let mut picked = Vec::new();
    loop {
        let best = (0..h.nrows())
            .filter(|&r| !used_rows.contains(r))
            .filter_map(|r| {
                let fresh = h.row(r).difference(&used_cols);
                let n = fresh.count();
                (n > 0).then(|| (n, r, fresh.first().unwrap()))
            })
            .min();
        let Some((_, r, c)) = best else { break };
        picked.push((r, c));
        used_rows.insert(r);
        used_cols.union_with(h.row(r));
    }
    // rows picked later are zero on columns picked earlier, so reverse for upper-triangular order
    picked.reverse();
    (picked.len(), DiagonalCertificate::from_triangular_pairs(&picked))
}

/// For each `a <= a_max`, the widest all-zero `a x b` sub-stencil; returns the
/// smallest `a + b*(a)`, an upper bound on the visible rank. `max_work` caps
/// the number of row-subset intersections; levels that do not finish are
/// ignored. Also returns the number of completed levels.
pub fn zero_rectangle_bound_with_work(h: &Stencil, a_max: usize, max_work: u64) -> (usize, usize) {
    let m = h.nrows();
    let n = h.ncols();
    let zeros: Vec<BitSet> = h.rows().iter().map(BitSet::complement).collect();
    let mut bound = m.min(n);
    let mut work = 0u64;
    let mut completed = 0;
    for a in 1..=a_max.min(m) {
        let mut best = 0usize;
        let mut acc = vec![BitSet::full(n)];
        let ok = widest(&zeros, a, 0, &mut acc, &mut best, &mut work, max_work);
        if !ok {
            break;
        }
        completed = a;
        bound = bound.min(a + best);
    }
    (bound, completed)
}

pub fn zero_rectangle_bound(h: &Stencil, a_max: usize) -> usize {
    zero_rectangle_bound_with_work(h, a_max, 50_000_000).0
}

fn widest(
    zeros: &[BitSet],
    remaining: usize,
    start: usize,
    acc: &mut Vec<BitSet>,
    best: &mut usize,
    work: &mut u64,
    max_work: u64,
) -> bool {
    if remaining == 0 {
        *best = (*best).max(acc.last().unwrap().count());
        return true;
    }
    let top = acc.last().unwrap().clone();
    if top.count() <= *best {
        return true;
    }
    for r in start..=zeros.len() - remaining {
        *work += 1;
        if *work > max_work {
            return false;
        }
        let next = top.intersection(&zeros[r]);
        if next.count() <= *best {
            continue;
        }
        acc.push(next);
        let ok = widest(zeros, remaining - 1, r + 1, acc, best, work, max_work);
        acc.pop();
        if !ok {
            return false;
        }
    }
    true
}

pub const DEFAULT_ZERO_RECT_LEVELS: usize = 3;

/// Greedy lower bound against the matching and zero-rectangle upper bounds.
pub fn visible_rank_bounds(h: &Stencil) -> VrankResult {
    let (lower, certificate) = greedy_lower_bound(h);
    let matching = h.max_matching_size();
    let rect = zero_rectangle_bound(h, DEFAULT_ZERO_RECT_LEVELS);
    let (upper, upper_source) = if rect < matching {
        (rect, UpperBoundSource::ZeroRectangle)
    } else {
        (matching, UpperBoundSource::Matching)
    };
    VrankResult {
        lower,
        certificate,
        upper,
        upper_source,
        exact: lower == upper,
        nodes: 0,
    }
}

struct Exhausted;

#[derive(Clone, Copy)]
struct Memo {
    lb: u32,
    ub: u32,
    next: u32,
}

/// Memoized search over usable-row sets.
pub(crate) struct ChainSearch {
    /// Per column: usable rows with a star there.
    star_col: Vec<BitSet>,
    /// Per column: rows with a zero there.
    zero_col: Vec<BitSet>,
    memo: HashMap<BitSet, Memo>,
    nodes: u64,
    budget: Budget,
    started: Instant,
}

impl ChainSearch {
    pub(crate) fn new(h: &Stencil, budget: Budget) -> Self {
        let star_col: Vec<BitSet> = (0..h.ncols()).map(|j| h.column(j)).collect();
        let zero_col = star_col.iter().map(BitSet::complement).collect();
        ChainSearch {
            star_col,
            zero_col,
            memo: HashMap::new(),
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Err(Exhausted);
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    /// Does a chain of length `need` start from usable rows `rows`?
    fn reach(&mut self, rows: &BitSet, need: u32) -> Result<bool, Exhausted> {
        if need == 0 {
            return Ok(true);
        }
        // rows are nonzero, so any usable row gives a chain of length 1
        if need == 1 {
            return Ok(!rows.is_empty());
        }
        if (rows.count() as u32) < need {
            return Ok(false);
        }
        let memo = self.memo.get(rows).copied();
        if let Some(e) = memo {
            if e.lb >= need {
                return Ok(true);
            }
            if e.ub < need {
                return Ok(false);
            }
        }
        self.tick()?;

        let mut children: Vec<(u32, usize, BitSet)> = Vec::new();
        let mut active = 0u32;
        for c in 0..self.star_col.len() {
            if rows.is_disjoint(&self.star_col[c]) {
                continue;
            }
            active += 1;
            let child = rows.intersection(&self.zero_col[c]);
            let size = child.count() as u32;
            if size + 1 < need {
                continue;
            }
            children.push((size, c, child));
        }
        // each chain step consumes a distinct column with a star in `rows`
        if active < need {
            self.store(rows, None, need - 1);
            return Ok(false);
        }
        // largest residual first; drop children dominated by an earlier one
        children.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut kept: Vec<(usize, BitSet)> = Vec::with_capacity(children.len());
        for (_, c, child) in children {
            if kept.iter().any(|(_, k)| child.is_subset(k)) {
                continue;
            }
            kept.push((c, child));
        }
        for (c, child) in &kept {
            if self.reach(child, need - 1)? {
                self.store(rows, Some((need, *c as u32)), u32::MAX);
                return Ok(true);
            }
        }
        self.store(rows, None, need - 1);
        Ok(false)
    }

    fn store(&mut self, rows: &BitSet, lb: Option<(u32, u32)>, ub: u32) {
        let e = self.memo.entry(rows.clone()).or_insert(Memo {
            lb: 0,
            ub: u32::MAX,
            next: u32::MAX,
        });
        if let Some((lb, next)) = lb {
            if lb > e.lb {
                e.lb = lb;
                e.next = next;
            }
        }
        e.ub = e.ub.min(ub);
    }

    /// Follows stored best-children from `rows` to rebuild a chain of length `len`.
    fn chain(&self, rows: &BitSet, len: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = rows.clone();
        let mut need = len;
        while need > 0 {
            let c = if need == 1 {
                // any usable row with any star
                let r = cur.first().expect("nonempty usable rows");
                (0..self.star_col.len())
                    .find(|&c| self.star_col[c].contains(r))
                    .expect("usable rows carry stars")
            } else {
                let e = self.memo.get(&cur).expect("memoized chain step");
                debug_assert!(e.lb >= need);
                e.next as usize
            };
            let r = cur
                .intersection(&self.star_col[c])
                .first()
                .expect("row with star at chosen column");
            out.push((r, c));
            cur.intersect_with(&self.zero_col[c]);
            need -= 1;
        }
        out
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

fn nonzero_rows(h: &Stencil) -> Vec<usize> {
    (0..h.nrows()).filter(|&r| !h.row(r).is_empty()).collect()
}

/// Exact visible rank by branch-and-bound; degrades to sound bounds when the
/// budget runs out.
pub fn visible_rank_exact(h: &Stencil, budget: Budget) -> VrankResult {
    let bounds = visible_rank_bounds(h);
    if bounds.exact {
        return VrankResult {
            upper_source: UpperBoundSource::ExactSearch,
            ..bounds
        };
    }
    // branch over the shorter side; the state lives on the longer one
    let transposed = h.ncols() > h.nrows();
    let oriented = if transposed { h.transpose() } else { h.clone() };
    let keep = nonzero_rows(&oriented);
    let all_cols: Vec<usize> = (0..oriented.ncols()).collect();
    let work = oriented
        .substencil(&keep, &all_cols)
        .expect("valid restriction");

    let mut search = ChainSearch::new(&work, budget);
    let root = BitSet::full(work.nrows());
    let mut best = bounds.lower as u32;
    let mut exhausted = false;
    while (best as usize) < bounds.upper {
        match search.reach(&root, best + 1) {
            Ok(true) => best += 1,
            Ok(false) => break,
            Err(Exhausted) => {
                exhausted = true;
                break;
            }
        }
    }
    let exact = !exhausted;
    let (lower, certificate) = if best as usize > bounds.lower {
        let chain = search.chain(&root, best);
        let chain = DiagonalCertificate::remap(&chain, &keep, &all_cols);
        let pairs: Vec<(usize, usize)> = if transposed {
            // transposing an upper-triangular chain gives a lower-triangular one
            chain.iter().rev().map(|&(r, c)| (c, r)).collect()
        } else {
            chain
        };
        (best as usize, DiagonalCertificate::from_triangular_pairs(&pairs))
    } else {
        (bounds.lower, bounds.certificate)
    };
    let (upper, upper_source) = if exact {
        (lower, UpperBoundSource::ExactSearch)
    } else {
        (bounds.upper, bounds.upper_source)
    };
    VrankResult {
        lower,
        certificate,
        upper,
        upper_source,
        exact,
        nodes: search.nodes(),
    }
}

/// Do the columns `cols` contain a `k x k` visibly full rank sub-stencil?
pub fn visibly_independent(h: &Stencil, cols: &[usize]) -> Result<bool, StencilError> {
    let all_rows: Vec<usize> = (0..h.nrows()).collect();
    let sub = h.substencil(&all_rows, cols)?;
    let k = cols.len() as u32;
    if k == 0 {
        return Ok(true);
    }
    if sub.max_matching_size() < cols.len() {
        return Ok(false);
    }
    let keep = nonzero_rows(&sub);
    let sub = sub.substencil(&keep, &(0..cols.len()).collect::<Vec<_>>())?;
    let mut search = ChainSearch::new(&sub, Budget::UNLIMITED);
    let root = BitSet::full(sub.nrows());
    Ok(search.reach(&root, k).unwrap_or(false))
}

/// Max matching on an arbitrary row subset; used by callers needing a bound.
pub fn matching_bound(h: &Stencil) -> usize {
    max_matching(h.rows(), h.ncols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> Stencil {
        Stencil::from_rows(
            &rows
                .iter()
                .map(|r| r.chars().map(|c| c == '*').collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn full_rank_examples() {
        let cert = is_visibly_full_rank(&grid(&["**", "0*"])).unwrap().unwrap();
        assert!(cert.verify(&grid(&["**", "0*"])));
        assert!(is_visibly_full_rank(&Stencil::all_star(2, 2)).unwrap().is_none());
        assert!(is_visibly_full_rank(&grid(&["*0", "*0"])).unwrap().is_none());
        assert!(is_visibly_full_rank(&Stencil::zeros(2, 3)).is_err());
        assert!(is_visibly_full_rank(&Stencil::zeros(0, 0)).unwrap().is_some());
    }

    #[test]
    fn triangularize_examples() {
        let lower = grid(&["*00", "**0", "***"]);
        let p = triangularize(&lower).unwrap().unwrap();
        assert!(lower.permute(&p).unwrap().is_upper_triangular());
        assert_eq!(p.row_perm, vec![2, 1, 0]);
        assert_eq!(p.col_perm, vec![2, 1, 0]);
        let p = triangularize(&Stencil::identity(3)).unwrap().unwrap();
        assert!(Stencil::identity(3).permute(&p).unwrap().is_upper_triangular());
        assert_eq!(triangularize(&Stencil::all_star(2, 2)).unwrap(), None);
    }

    #[test]
    fn exact_examples() {
        let r = visible_rank_exact(&Stencil::identity(5), Budget::default());
        assert_eq!((r.lower, r.upper, r.exact), (5, 5, true));
        let r = visible_rank_exact(&Stencil::all_star(4, 4), Budget::default());
        assert_eq!((r.lower, r.exact), (1, true));
        let r = visible_rank_exact(&Stencil::off_diagonal(3), Budget::default());
        assert_eq!((r.lower, r.exact), (2, true));
        assert!(r.certificate.verify(&Stencil::off_diagonal(3)));
        let r = visible_rank_exact(&Stencil::zeros(0, 0), Budget::default());
        assert_eq!((r.lower, r.exact), (0, true));
        let r = visible_rank_exact(&Stencil::zeros(3, 4), Budget::default());
        assert_eq!((r.lower, r.exact), (0, true));
    }

    #[test]
    fn off_diagonal_has_rank_two() {
        for n in 2..=9 {
            let d = Stencil::off_diagonal(n);
            let r = visible_rank_exact(&d, Budget::default());
            assert_eq!(r.lower, 2, "n = {n}");
            assert!(r.exact && r.certificate.verify(&d));
        }
    }

    #[test]
    fn zero_rectangle_examples() {
        assert_eq!(zero_rectangle_bound(&Stencil::identity(3), 1), 3);
        assert_eq!(zero_rectangle_bound(&Stencil::all_star(3, 4), 1), 1);
        assert_eq!(zero_rectangle_bound(&Stencil::off_diagonal(3), 2), 2);
        assert_eq!(zero_rectangle_bound(&Stencil::zeros(0, 4), 3), 0);
    }

    #[test]
    fn greedy_examples() {
        let (k, cert) = greedy_lower_bound(&Stencil::identity(6));
        assert_eq!(k, 6);
        assert!(cert.verify(&Stencil::identity(6)));
        assert_eq!(greedy_lower_bound(&Stencil::zeros(3, 3)).0, 0);
        // 1-LRC on 4 columns: diagonal plus one extra star per row
        let lrc = grid(&["**00", "0**0", "00**", "*00*"]);
        let (k, cert) = greedy_lower_bound(&lrc);
        assert!(k >= 2);
        assert!(cert.verify(&lrc));
    }

    #[test]
    fn bounds_examples() {
        let r = visible_rank_bounds(&Stencil::identity(4));
        assert_eq!((r.lower, r.upper, r.exact), (4, 4, true));
        let r = visible_rank_bounds(&Stencil::off_diagonal(5));
        assert!(r.lower <= 2 && r.upper >= 2);
    }

    #[test]
    fn visibly_independent_examples() {
        assert!(visibly_independent(&Stencil::identity(3), &[0, 2]).unwrap());
        assert!(!visibly_independent(&Stencil::all_star(3, 3), &[0, 1]).unwrap());
        assert!(visibly_independent(&Stencil::off_diagonal(3), &[0, 1]).unwrap());
        assert!(visibly_independent(&Stencil::identity(3), &[0, 0]).is_err());
        assert!(visibly_independent(&Stencil::identity(3), &[3]).is_err());
    }

    #[test]
    fn json_is_one_based() {
        let r = visible_rank_exact(&Stencil::identity(1), Budget::default());
        assert_eq!(
            r.to_json(),
            r#"{"lower":1,"upper":1,"exact":true,"upper_source":"exact-search","certificate":{"rows":[1],"cols":[1],"row_perm":[1],"col_perm":[1]}}"#
        );
    }
}

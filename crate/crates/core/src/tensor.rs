//! Stencil tensor products and powers, certificate tensoring, the implicit
//! diagonal certificate, distinct rank and visible-capacity lower bounds.
//!
//! Product rows and columns are ordered row-major lexicographically in the
//! factor indices: row `(a1, a2)` of `H1 (x) H2` has index `a1 * m2 + a2`.
//! Labels concatenate.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::StencilError;
use crate::stencil::{Label, Stencil};
use crate::vrank::{self, Budget, DiagonalCertificate};

/// Largest number of entries a product may materialize by default.
pub const DEFAULT_MATERIALIZE_LIMIT: u128 = 1 << 16;

fn check_size(m: u128, n: u128, limit: u128) -> Result<(), StencilError> {
    let entries = m.saturating_mul(n);
    if entries > limit {
        Err(StencilError::SizeLimit { entries, limit })
    } else {
        Ok(())
    }
}

fn concat(a: &Label, b: &Label) -> Label {
    a.iter().chain(b).copied().collect()
}

pub fn tensor_product(h1: &Stencil, h2: &Stencil) -> Result<Stencil, StencilError> {
    tensor_product_with_limit(h1, h2, DEFAULT_MATERIALIZE_LIMIT)
}

pub fn tensor_product_with_limit(
    h1: &Stencil,
    h2: &Stencil,
    limit: u128,
) -> Result<Stencil, StencilError> {
    let (m1, n1, m2, n2) = (h1.nrows(), h1.ncols(), h2.nrows(), h2.ncols());
    check_size(m1 as u128 * m2 as u128, n1 as u128 * n2 as u128, limit)?;
    let n = n1 * n2;
    let mut rows = Vec::with_capacity(m1 * m2);
    for a1 in 0..m1 {
        for a2 in 0..m2 {
            let mut row = BitSet::new(n);
            for b1 in h1.row(a1).iter() {
                for b2 in h2.row(a2).iter() {
                    row.insert(b1 * n2 + b2);
                }
            }
            rows.push(row);
        }
    }
    let row_labels = h1
        .row_labels()
        .iter()
        .flat_map(|a| h2.row_labels().iter().map(move |b| concat(a, b)))
        .collect();
    let col_labels = h1
        .col_labels()
        .iter()
        .flat_map(|a| h2.col_labels().iter().map(move |b| concat(a, b)))
        .collect();
    Stencil::from_bit_rows(rows, n).with_labels(row_labels, col_labels)
}

/// The 1x1 star stencil with empty labels, the unit for tensor products.
pub fn unit() -> Stencil {
    Stencil::all_star(1, 1)
        .with_labels(vec![vec![]], vec![vec![]])
        .expect("single labels are distinct")
}

pub fn tensor_power(h: &Stencil, k: usize) -> Result<Stencil, StencilError> {
    tensor_power_with_limit(h, k, DEFAULT_MATERIALIZE_LIMIT)
}

pub fn tensor_power_with_limit(h: &Stencil, k: usize, limit: u128) -> Result<Stencil, StencilError> {
    let pow = |x: usize| (x as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    check_size(pow(h.nrows()), pow(h.ncols()), limit)?;
    if k == 0 {
        return Ok(unit());
    }
    let mut acc = h.clone();
    for _ in 1..k {
        acc = tensor_product_with_limit(&acc, h, limit)?;
    }
    Ok(acc)
}

/// Certificate for `H1 (x) H2` built from certificates of the factors,
/// listing pairs in lexicographic order of the factor positions.
pub fn tensor_certificates(
    c1: &DiagonalCertificate,
    c2: &DiagonalCertificate,
    h2: &Stencil,
) -> DiagonalCertificate {
    let (m2, n2) = (h2.nrows(), h2.ncols());
    let p1 = c1.triangular_pairs();
    let p2 = c2.triangular_pairs();
    let pairs: Vec<(usize, usize)> = p1
        .iter()
        .flat_map(|&(r1, k1)| p2.iter().map(move |&(r2, k2)| (r1 * m2 + r2, k1 * n2 + k2)))
        .collect();
    DiagonalCertificate::from_triangular_pairs(&pairs)
}

/// For a stencil with row labels `(i, s)`, `i in [n]`, `s in [t]`, evaluates
/// without materializing `H^(x)t` its `n x n` sub-stencil with rows
/// `((i,1), ..., (i,t))` and columns `(i, ..., i)`. Entry `(i, i')` is a star
/// iff `H[(i,s), i']` is a star for every `s`. Returns it with the flag
/// "is the identity pattern".
pub fn diagonal_tensor_certificate(h: &Stencil, t: usize) -> Result<(Stencil, bool), StencilError> {
    let n = h.ncols();
    let mut index = vec![usize::MAX; n * t];
    if h.nrows() != n * t {
        return Err(StencilError::Shape(format!(
            "expected {} rows labelled (i,s) in [{n}]x[{t}], found {}",
            n * t,
            h.nrows()
        )));
    }
    for (r, label) in h.row_labels().iter().enumerate() {
        match label.as_slice() {
            &[i, s] if (1..=n as u32).contains(&i) && (1..=t as u32).contains(&s) => {
                index[(i as usize - 1) * t + s as usize - 1] = r;
            }
            _ => {
                return Err(StencilError::Shape(format!(
                    "row label {label:?} is not a pair in [{n}]x[{t}]"
                )))
            }
        }
    }
    let d = Stencil::from_fn(n, n, |i, j| (0..t).all(|s| h.get(index[i * t + s], j)));
    let row_labels = (0..n)
        .map(|i| (0..t).flat_map(|s| h.row_labels()[index[i * t + s]].clone()).collect())
        .collect();
    let col_labels = (0..n)
        .map(|j| (0..t).flat_map(|_| h.col_labels()[j].clone()).collect())
        .collect();
    let d = d.with_labels(row_labels, col_labels)?;
    let identity = d == Stencil::identity(n).with_labels(d.row_labels().to_vec(), d.col_labels().to_vec())?;
    Ok((d, identity))
}

/// Splits each arity-`k*w` label into `k` coordinates of width `w`.
fn value_sets(labels: &[Label], k: usize) -> Result<Vec<Vec<&[u32]>>, StencilError> {
    labels
        .iter()
        .map(|l| {
            if k == 0 || l.len() % k != 0 || l.is_empty() {
                return Err(StencilError::LabelArity {
                    axis: "tensor",
                    expected: k,
                    found: l.len(),
                });
            }
            Ok(l.chunks(l.len() / k).collect())
        })
        .collect()
}

fn pairwise_disjoint(sets: &[Vec<&[u32]>]) -> bool {
    sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..]
            .iter()
            .all(|b| a.iter().all(|x| !b.contains(x)))
    })
}

/// Visibly full rank with pairwise disjoint row value sets and pairwise
/// disjoint column value sets. Labels must have arity divisible by `k`.
pub fn is_distinctly_full_rank(m: &Stencil, k: usize) -> Result<bool, StencilError> {
    let rows = value_sets(m.row_labels(), k)?;
    let cols = value_sets(m.col_labels(), k)?;
    if vrank::is_visibly_full_rank(m)?.is_none() {
        return Ok(false);
    }
    Ok(pairwise_disjoint(&rows) && pairwise_disjoint(&cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctRankResult {
    pub level: usize,
    pub value: usize,
    /// Indices into the materialized `H^(x)level`.
    pub certificate: DiagonalCertificate,
    pub exact: bool,
}

fn digits(mut x: usize, base: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for d in out.iter_mut().rev() {
        *d = x % base;
        x /= base;
    }
    out
}

/// Rows (or columns) of the power whose value set is disjoint from each one's.
fn disjoint_masks(count: usize, base: usize, k: usize) -> Vec<BitSet> {
    let mut with_value = vec![BitSet::new(count); base];
    let values: Vec<Vec<usize>> = (0..count).map(|x| digits(x, base, k)).collect();
    for (x, vs) in values.iter().enumerate() {
        for &v in vs {
            with_value[v].insert(x);
        }
    }
    values
        .iter()
        .map(|vs| {
            let mut hit = BitSet::new(count);
            for &v in vs {
                hit.union_with(&with_value[v]);
            }
            hit.complement()
        })
        .collect()
}

struct DistinctSearch {
    rows: Vec<BitSet>,
    zero_col: Vec<BitSet>,
    row_ok: Vec<BitSet>,
    col_ok: Vec<BitSet>,
    /// Longest chain length from a state and its first step.
    memo: HashMap<(BitSet, BitSet), (u32, (usize, usize))>,
    nodes: u64,
    max_nodes: Option<u64>,
    /// Longest chain explored so far, kept for budget exhaustion.
    best: Vec<(usize, usize)>,
}

impl DistinctSearch {
    fn step(&self, r: &BitSet, k: &BitSet, (row, c): (usize, usize)) -> (BitSet, BitSet) {
        let mut r2 = r.intersection(&self.zero_col[c]);
        r2.intersect_with(&self.row_ok[row]);
        (r2, k.intersection(&self.col_ok[c]))
    }

    /// Longest chain from usable rows `r` and usable columns `k`.
    fn longest(&mut self, r: &BitSet, k: &BitSet, path: &mut Vec<(usize, usize)>) -> Result<u32, ()> {
        if r.is_empty() || k.is_empty() {
            return Ok(0);
        }
        if let Some(&(v, _)) = self.memo.get(&(r.clone(), k.clone())) {
            return Ok(v);
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            return Err(());
        }
        let mut best = (0, (0, 0));
        for row in r.iter() {
            let stars = self.rows[row].intersection(k);
            for c in stars.iter() {
                let (r2, k2) = self.step(r, k, (row, c));
                path.push((row, c));
                if path.len() > self.best.len() {
                    self.best = path.clone();
                }
                let v = self.longest(&r2, &k2, path)? + 1;
                path.pop();
                if v > best.0 {
                    best = (v, (row, c));
                }
            }
        }
        self.memo.insert((r.clone(), k.clone()), best);
        Ok(best.0)
    }

    fn chain(&self, mut r: BitSet, mut k: BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        while let Some(&(v, next)) = self.memo.get(&(r.clone(), k.clone())) {
            if v == 0 {
                break;
            }
            out.push(next);
            (r, k) = self.step(&r, &k, next);
        }
        out
    }
}

/// Largest distinctly full rank sub-stencil of `H^(x)k`, by exhaustive
/// memoized search on the materialized power.
pub fn distinct_rank_exact(h: &Stencil, k: usize, budget: Budget) -> Result<DistinctRankResult, StencilError> {
    let power = tensor_power(h, k)?;
    let (m, n) = (power.nrows(), power.ncols());
    let zero_col: Vec<BitSet> = (0..n).map(|c| power.column(c).complement()).collect();
    let mut search = DistinctSearch {
        rows: power.rows().to_vec(),
        zero_col,
        row_ok: disjoint_masks(m, h.nrows(), k),
        col_ok: disjoint_masks(n, h.ncols(), k),
        memo: HashMap::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        best: vec![],
    };
    let (root_r, root_k) = (BitSet::full(m), BitSet::full(n));
    let outcome = search.longest(&root_r, &root_k, &mut Vec::new());
    let (exact, chain) = match outcome {
        Ok(v) => {
            let chain = search.chain(root_r, root_k);
            debug_assert_eq!(v as usize, chain.len());
            (true, chain)
        }
        Err(()) => (false, std::mem::take(&mut search.best)),
    };
    Ok(DistinctRankResult {
        level: k,
        value: chain.len(),
        certificate: DiagonalCertificate::from_triangular_pairs(&chain),
        exact,
    })
}

/// How a per-level lower bound was certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LevelSource {
    /// Search on the materialized power.
    Search,
    /// Implicit diagonal certificate.
    Diagonal,
    /// Tensor of certificates from two lower levels.
    Product { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelBound {
    pub value: u128,
    pub exact: bool,
    pub source: LevelSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityEstimate {
    pub per_level: BTreeMap<usize, LevelBound>,
    pub best: f64,
}

impl CapacityEstimate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }
}

fn pair_groups(h: &Stencil) -> Option<usize> {
    let n = h.ncols();
    if n == 0 || h.nrows() % n != 0 || h.nrows() == 0 {
        return None;
    }
    let t = h.nrows() / n;
    (t >= 2 && h.row_labels().iter().all(|l| l.len() == 2)).then_some(t)
}

/// Certified lower bounds on `vrk(H^(x)k)` for `k = 1..=k_max`, with the best
/// `value^(1/k)` seen.
pub fn capacity_lower_bound(h: &Stencil, k_max: usize, budget: Budget) -> CapacityEstimate {
    let mut per_level: BTreeMap<usize, LevelBound> = BTreeMap::new();
    let diagonal = pair_groups(h).and_then(|t| match diagonal_tensor_certificate(h, t) {
        Ok((_, true)) => Some(t),
        _ => None,
    });
    for k in 1..=k_max {
        let mut bound = match tensor_power(h, k) {
            Ok(p) => {
                let r = vrank::visible_rank_exact(&p, budget);
                LevelBound {
                    value: r.lower as u128,
                    exact: r.exact,
                    source: LevelSource::Search,
                }
            }
            Err(_) => LevelBound {
                value: 0,
                exact: false,
                source: LevelSource::Search,
            },
        };
        if diagonal == Some(k) && (h.ncols() as u128) > bound.value {
            bound = LevelBound {
                value: h.ncols() as u128,
                exact: false,
                source: LevelSource::Diagonal,
            };
        }
        for left in 1..k {
            let right = k - left;
            let v = per_level[&left].value * per_level[&right].value;
            if v > bound.value {
                bound = LevelBound {
                    value: v,
                    exact: false,
                    source: LevelSource::Product { left, right },
                };
            }
        }
        per_level.insert(k, bound);
    }
    let best = per_level
        .iter()
        .map(|(&k, b)| (b.value as f64).powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    CapacityEstimate { per_level, best }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_drgp, gen_tensor_gap};
    use crate::vrank::visible_rank_exact;

    #[test]
    fn identity_products() {
        let i2 = Stencil::identity(2);
        let p = tensor_product(&i2, &i2).unwrap();
        assert_eq!(p.rows(), Stencil::identity(4).rows());
        assert_eq!(p.row_labels()[1], vec![1, 2]);
        assert_eq!(tensor_power(&i2, 3).unwrap().rows(), Stencil::identity(8).rows());
        assert_eq!(tensor_power(&i2, 1).unwrap(), i2);
    }

    #[test]
    fn unit_element() {
        let h = Stencil::off_diagonal(3);
        let p = tensor_product(&h, &unit()).unwrap();
        assert_eq!(p, h);
        let p = tensor_product(&h, &Stencil::all_star(1, 1)).unwrap();
        assert_eq!(p.rows(), h.rows());
        assert_eq!(p.row_labels()[0], vec![1, 1]);
    }

    #[test]
    fn entry_rule_on_off_diagonal() {
        let d2 = Stencil::off_diagonal(2);
        let p = tensor_product(&d2, &d2).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let (i1, i2, j1, j2) = (r / 2, r % 2, c / 2, c % 2);
                assert_eq!(p.get(r, c), i1 != j1 && i2 != j2);
            }
        }
    }

    #[test]
    fn size_limit() {
        let h = Stencil::identity(20);
        assert!(matches!(tensor_power(&h, 3), Err(StencilError::SizeLimit { .. })));
        assert!(tensor_power_with_limit(&h, 3, u128::MAX).is_ok());
    }

    #[test]
    fn certificate_tensoring() {
        let d3 = Stencil::off_diagonal(3);
        let r = visible_rank_exact(&d3, Budget::default());
        let p = tensor_product(&d3, &d3).unwrap();
        let cert = tensor_certificates(&r.certificate, &r.certificate, &d3);
        assert_eq!(cert.size(), 4);
        assert!(cert.verify(&p));
        assert!(visible_rank_exact(&p, Budget::default()).lower >= 4);
    }

    #[test]
    fn diagonal_certificates() {
        for seed in 0..5 {
            let h = gen_drgp(16, 2, seed).unwrap();
            let (d, ok) = diagonal_tensor_certificate(&h, 2).unwrap();
            assert!(ok);
            assert_eq!(d.row_labels()[2], vec![3, 1, 3, 2]);
            assert_eq!(d.col_labels()[2], vec![3, 3]);
            let h = gen_tensor_gap(16, 3, seed).unwrap();
            assert!(diagonal_tensor_certificate(&h, 3).unwrap().1);
        }
        assert!(diagonal_tensor_certificate(&Stencil::identity(4), 2).is_err());
    }

    #[test]
    fn diagonal_certificate_matches_materialized_power() {
        let h = gen_drgp(5, 2, 11).unwrap();
        let (d, _) = diagonal_tensor_certificate(&h, 2).unwrap();
        let p = tensor_power(&h, 2).unwrap();
        let m = h.nrows();
        // row ((i,1),(i,2)) sits at (2i) * m + (2i + 1); column (i,i) at i * n + i
        let rows: Vec<usize> = (0..5).map(|i| 2 * i * m + 2 * i + 1).collect();
        let cols: Vec<usize> = (0..5).map(|i| i * 5 + i).collect();
        assert_eq!(p.substencil(&rows, &cols).unwrap(), d);
    }

    #[test]
    fn injected_star_breaks_diagonal() {
        let h = gen_drgp(6, 2, 4).unwrap();
        // S_(2,4): make both rows (2,1), (2,2) star at column 4
        let bad = h.with_entry(2, 3, true).with_entry(3, 3, true);
        let (d, ok) = diagonal_tensor_certificate(&bad, 2).unwrap();
        assert!(!ok);
        assert!(d.get(1, 3));
    }

    #[test]
    fn distinct_full_rank_examples() {
        let m = Stencil::identity(2)
            .with_labels(vec![vec![1, 2], vec![2, 3]], vec![vec![1, 1], vec![2, 2]])
            .unwrap();
        assert!(!is_distinctly_full_rank(&m, 2).unwrap());
        let m = Stencil::identity(2)
            .with_labels(vec![vec![1, 1], vec![2, 2]], vec![vec![1, 1], vec![2, 2]])
            .unwrap();
        assert!(is_distinctly_full_rank(&m, 2).unwrap());
        assert!(is_distinctly_full_rank(&Stencil::identity(3), 1).unwrap());
        let odd = Stencil::identity(1).with_labels(vec![vec![1, 2, 3]], vec![vec![1, 2, 3]]).unwrap();
        assert!(is_distinctly_full_rank(&odd, 2).is_err());
    }

    #[test]
    fn distinct_rank_examples() {
        let r = distinct_rank_exact(&Stencil::identity(2), 2, Budget::UNLIMITED).unwrap();
        assert_eq!((r.value, r.exact), (2, true));
        let p = tensor_power(&Stencil::identity(2), 2).unwrap();
        assert!(r.certificate.verify(&p));
        let d4 = Stencil::off_diagonal(4);
        let r = distinct_rank_exact(&d4, 1, Budget::UNLIMITED).unwrap();
        assert_eq!(r.value, 2);
    }

    #[test]
    fn capacity_examples() {
        let est = capacity_lower_bound(&Stencil::identity(3), 3, Budget::default());
        assert!((est.best - 3.0).abs() < 1e-9);
        let h = gen_drgp(16, 2, 0).unwrap();
        let est = capacity_lower_bound(&h, 2, Budget::default());
        assert!(est.best >= 4.0);
        assert!(est.per_level[&2].value >= 16);
        assert!(est.to_json().contains("\"best\""));
    }
}

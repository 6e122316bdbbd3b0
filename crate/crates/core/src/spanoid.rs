//! Symmetric spanoids: each defining set `S` yields the rules `S \ {i} -> i`
//! for every `i` in `S`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::stencil::Stencil;
use crate::vrank::{visible_rank_exact, visibly_independent, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanoidError {
    #[error("element {element} outside universe of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("invalid spanoid document: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSpanoid {
    n: usize,
    sets: Vec<BitSet>,
}

#[derive(Serialize, Deserialize)]
struct SpanoidDoc {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl SymmetricSpanoid {
    /// `sets` hold 0-based elements. Duplicates are kept.
    pub fn new(n: usize, sets: &[Vec<usize>]) -> Result<Self, SpanoidError> {
        let mut out = Vec::with_capacity(sets.len());
        for (j, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(SpanoidError::EmptySet(j));
            }
            if let Some(&element) = s.iter().find(|&&e| e >= n) {
                return Err(SpanoidError::ElementOutOfRange { element, n });
            }
            out.push(BitSet::from_indices(n, s.iter().copied()));
        }
        Ok(SymmetricSpanoid { n, sets: out })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    /// `{"n": n, "sets": [[...], ...]}` with 1-based elements.
    pub fn from_json(text: &str) -> Result<Self, SpanoidError> {
        let doc: SpanoidDoc = serde_json::from_str(text).map_err(|e| SpanoidError::Json(e.to_string()))?;
        let mut sets = Vec::with_capacity(doc.sets.len());
        for s in doc.sets {
            let mut zero_based = Vec::with_capacity(s.len());
            for e in s {
                if e == 0 || e > doc.n {
                    return Err(SpanoidError::ElementOutOfRange { element: e, n: doc.n });
                }
                zero_based.push(e - 1);
            }
            sets.push(zero_based);
        }
        SymmetricSpanoid::new(doc.n, &sets)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpanoidDoc {
            n: self.n,
            sets: self.sets.iter().map(|s| s.iter().map(|e| e + 1).collect()).collect(),
        })
        .expect("spanoid serializes")
    }
}

/// Least fixed point of the inference rules starting from `t`.
pub fn span_closure(s: &SymmetricSpanoid, t: &BitSet) -> Result<BitSet, SpanoidError> {
    if t.universe() != s.n {
        if let Some(element) = t.iter().find(|&e| e >= s.n) {
            return Err(SpanoidError::ElementOutOfRange { element, n: s.n });
        }
        return Ok(closure(s, BitSet::from_indices(s.n, t.iter())));
    }
    Ok(closure(s, t.clone()))
}

fn closure(s: &SymmetricSpanoid, mut cur: BitSet) -> BitSet {
    let mut changed = true;
    while changed {
        changed = false;
        for set in &s.sets {
            let missing = set.difference(&cur);
            if missing.count() == 1 {
                cur.union_with(&missing);
                changed = true;
            }
        }
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanoidRankResult {
    pub value: usize,
    pub basis: Vec<usize>,
    pub exhaustive: bool,
}

/// Smallest spanning set. Subsets are tried by increasing size (lexicographic
/// within a size) when `2^n <= max_subsets`; otherwise a greedy spanning set
/// is returned with `exhaustive = false`.
pub fn spanoid_rank(s: &SymmetricSpanoid, max_subsets: u64) -> SpanoidRankResult {
    let n = s.n;
    let full = |c: &BitSet| c.count() == n;
    if n < 64 && (1u64 << n) <= max_subsets {
        for k in 0..=n {
            let mut comb: Vec<usize> = (0..k).collect();
            loop {
                if full(&closure(s, BitSet::from_indices(n, comb.iter().copied()))) {
                    return SpanoidRankResult {
                        value: k,
                        basis: comb,
                        exhaustive: true,
                    };
                }
                if !next_combination(&mut comb, n) {
                    break;
                }
            }
        }
        unreachable!("the whole universe spans itself");
    }
    let mut basis = Vec::new();
    let mut cur = closure(s, BitSet::new(n));
    while !full(&cur) {
        let (e, next) = (0..n)
            .filter(|&e| !cur.contains(e))
            .map(|e| {
                let mut t = cur.clone();
                t.insert(e);
                (e, closure(s, t))
            })
            .max_by(|a, b| a.1.count().cmp(&b.1.count()).then(b.0.cmp(&a.0)))
            .expect("closure is not full");
        basis.push(e);
        cur = next;
    }
    SpanoidRankResult {
        value: basis.len(),
        basis,
        exhaustive: false,
    }
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Row `j` has its stars exactly on `S_j`.
pub fn canonical_stencil(s: &SymmetricSpanoid) -> Stencil {
    Stencil::from_fn(s.sets.len(), s.n, |i, j| s.sets[i].contains(j))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankNullityReport {
    pub n: usize,
    pub vrk: usize,
    pub rank: usize,
    /// Both sides were computed exactly.
    pub exact: bool,
    pub identity_holds: bool,
    /// Column sets checked for the independence/spanning equivalence.
    pub columns_checked: u64,
    /// First column set (0-based) where the equivalence fails.
    pub column_mismatch: Option<Vec<usize>>,
}

impl RankNullityReport {
    pub fn passed(&self) -> bool {
        self.exact && self.identity_holds && self.column_mismatch.is_none()
    }
}

/// Computes `vrk(H) + rank(S)` against `n`, and with `check_columns` tests
/// every column set `C`: visibly independent iff `[n] \ C` spans.
pub fn rank_nullity_check(s: &SymmetricSpanoid, check_columns: bool, budget: Budget) -> RankNullityReport {
    let h = canonical_stencil(s);
    let v = visible_rank_exact(&h, budget);
    let r = spanoid_rank(s, u64::MAX);
    let mut report = RankNullityReport {
        n: s.n,
        vrk: v.lower,
        rank: r.value,
        exact: v.exact && r.exhaustive,
        identity_holds: v.lower + r.value == s.n,
        columns_checked: 0,
        column_mismatch: None,
    };
    if check_columns && s.n < 64 {
        for mask in 0u64..1 << s.n {
            let cols: Vec<usize> = (0..s.n).filter(|&j| mask >> j & 1 == 1).collect();
            let rest = BitSet::from_indices(s.n, (0..s.n).filter(|&j| mask >> j & 1 == 0));
            let spans = closure(s, rest).count() == s.n;
            let indep = visibly_independent(&h, &cols).expect("columns in range");
            report.columns_checked += 1;
            if spans != indep {
                report.column_mismatch = Some(cols);
                break;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, sets: &[&[usize]]) -> SymmetricSpanoid {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().map(|e| e - 1).collect()).collect();
        SymmetricSpanoid::new(n, &sets).unwrap()
    }

    fn set(n: usize, elems: &[usize]) -> BitSet {
        BitSet::from_indices(n, elems.iter().map(|e| e - 1))
    }

    #[test]
    fn closure_examples() {
        let s = sp(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(span_closure(&s, &set(3, &[2])).unwrap(), BitSet::full(3));
        assert_eq!(span_closure(&s, &BitSet::full(3)).unwrap(), BitSet::full(3));
        assert_eq!(span_closure(&s, &BitSet::new(3)).unwrap(), BitSet::new(3));
        assert_eq!(span_closure(&s, &set(3, &[1])).unwrap(), set(3, &[1, 2, 3]));
        assert!(span_closure(&s, &BitSet::from_indices(5, [4])).is_err());
    }

    #[test]
    fn rank_examples() {
        let r = spanoid_rank(&sp(3, &[&[1, 2], &[2, 3]]), u64::MAX);
        assert_eq!((r.value, r.basis.clone(), r.exhaustive), (1, vec![0], true));
        assert_eq!(spanoid_rank(&sp(4, &[]), u64::MAX).value, 4);
        let r = spanoid_rank(&sp(3, &[&[1], &[2], &[3]]), u64::MAX);
        assert_eq!((r.value, r.basis), (0, vec![]));
    }

    #[test]
    fn greedy_fallback() {
        let s = sp(5, &[&[1, 2], &[2, 3], &[4, 5]]);
        let r = spanoid_rank(&s, 8);
        assert!(!r.exhaustive);
        assert_eq!(r.value, 2);
        let basis = BitSet::from_indices(5, r.basis.iter().copied());
        assert_eq!(span_closure(&s, &basis).unwrap(), BitSet::full(5));
    }

    #[test]
    fn canonical_stencil_examples() {
        let h = canonical_stencil(&sp(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(h, Stencil::from_rows(&[vec![true, true, false], vec![false, true, true]]).unwrap());
        assert_eq!(canonical_stencil(&sp(4, &[])).nrows(), 0);
        assert_eq!(canonical_stencil(&sp(3, &[&[1], &[2], &[3]])), Stencil::identity(3));
    }

    #[test]
    fn rank_nullity_examples() {
        let r = rank_nullity_check(&sp(3, &[&[1, 2], &[2, 3]]), true, Budget::UNLIMITED);
        assert_eq!((r.vrk, r.rank), (2, 1));
        assert!(r.passed());
        assert_eq!(r.columns_checked, 8);
        let r = rank_nullity_check(&sp(5, &[]), true, Budget::UNLIMITED);
        assert_eq!((r.vrk, r.rank), (0, 5));
        assert!(r.passed());
    }

    #[test]
    fn json_roundtrip() {
        let s = sp(4, &[&[1, 4], &[2, 3, 4], &[1, 4]]);
        let text = s.to_json();
        assert_eq!(text, r#"{"n":4,"sets":[[1,4],[2,3,4],[1,4]]}"#);
        assert_eq!(SymmetricSpanoid::from_json(&text).unwrap(), s);
        assert!(SymmetricSpanoid::from_json(r#"{"n":2,"sets":[[3]]}"#).is_err());
        assert_eq!(
            SymmetricSpanoid::from_json(r#"{"n":2,"sets":[[]]}"#),
            Err(SpanoidError::EmptySet(0))
        );
    }
}

//! Witness matrices over prime fields GF(p), rank by elimination, the
//! brute-force min-rank oracle and the polynomial low-rank witness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stencil::Stencil;

/// Largest modulus accepted.
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime modulus <= 2^16")]
    NotPrime(u32),
    #[error("field GF({p}) has fewer than n = {n} elements")]
    FieldTooSmall { p: u32, n: usize },
    #[error("shape mismatch: witness is {wr}x{wc}, stencil is {sr}x{sc}")]
    ShapeMismatch { wr: usize, wc: usize, sr: usize, sc: usize },
    #[error("entry {value} is not reduced modulo {p}")]
    Unreduced { value: u32, p: u32 },
    #[error("invalid witness document: {0}")]
    Json(String),
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Smallest prime `>= n`.
pub fn least_prime_at_least(n: usize) -> u32 {
    (n.max(2) as u32..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

fn check_modulus(p: u32) -> Result<(), FieldError> {
    if p <= MAX_MODULUS && is_prime(p) {
        Ok(())
    } else {
        Err(FieldError::NotPrime(p))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Dense `m x n` matrix over GF(p), entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl WitnessMatrix {
    pub fn new(p: u32, entries: Vec<Vec<u32>>) -> Result<Self, FieldError> {
        check_modulus(p)?;
        let cols = entries.first().map_or(0, Vec::len);
        for row in &entries {
            if row.len() != cols {
                return Err(FieldError::ShapeMismatch {
                    wr: entries.len(),
                    wc: cols,
                    sr: entries.len(),
                    sc: row.len(),
                });
            }
            if let Some(&value) = row.iter().find(|&&v| v >= p) {
                return Err(FieldError::Unreduced { value, p });
            }
        }
        Ok(WitnessMatrix {
            p,
            rows: entries.len(),
            cols,
            entries,
        })
    }

    /// The unique 0/1 witness over GF(2) (every star becomes 1).
    pub fn indicator(h: &Stencil, p: u32) -> Result<Self, FieldError> {
        check_modulus(p)?;
        Ok(WitnessMatrix {
            p,
            rows: h.nrows(),
            cols: h.ncols(),
            entries: (0..h.nrows())
                .map(|i| (0..h.ncols()).map(|j| h.get(i, j) as u32).collect())
                .collect(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// The stencil of nonzero positions.
    pub fn support(&self) -> Stencil {
        Stencil::from_fn(self.rows, self.cols, |i, j| self.entries[i][j] != 0)
    }

    /// Kronecker product, indexed like the stencil tensor product.
    pub fn kron(&self, other: &WitnessMatrix) -> Result<WitnessMatrix, FieldError> {
        if self.p != other.p {
            return Err(FieldError::NotPrime(other.p));
        }
        let p = self.p as u64;
        let entries = (0..self.rows * other.rows)
            .map(|r| {
                let (a1, a2) = (r / other.rows, r % other.rows);
                (0..self.cols * other.cols)
                    .map(|c| {
                        let (b1, b2) = (c / other.cols, c % other.cols);
                        (self.entries[a1][b1] as u64 * other.entries[a2][b2] as u64 % p) as u32
                    })
                    .collect()
            })
            .collect();
        WitnessMatrix::new(self.p, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FieldError> {
        #[derive(Deserialize)]
        struct Doc {
            p: u32,
            entries: Vec<Vec<u32>>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| FieldError::Json(e.to_string()))?;
        WitnessMatrix::new(doc.p, doc.entries)
    }
}

/// Rank over GF(p) by Gaussian elimination.
pub fn gf_rank(w: &WitnessMatrix) -> usize {
    rank_mod(w.entries.clone(), w.p)
}

fn rank_mod(mut a: Vec<Vec<u32>>, p: u32) -> usize {
    let p = p as u64;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][c] as u64, p - 2, p);
        for x in a[rank][c..].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = ((*x as u64 + (p - f) * y as u64) % p) as u32;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A position where the support of a witness disagrees with its stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportViolation {
    ZeroAtStar { row: usize, col: usize },
    NonzeroAtZero { row: usize, col: usize },
}

/// `Ok(None)` when `W[i,j] != 0` exactly at the stars of `h`; otherwise the
/// first disagreeing position in row-major order.
pub fn validate_witness(w: &WitnessMatrix, h: &Stencil) -> Result<Option<SupportViolation>, FieldError> {
    if w.rows != h.nrows() || w.cols != h.ncols() {
        return Err(FieldError::ShapeMismatch {
            wr: w.rows,
            wc: w.cols,
            sr: h.nrows(),
            sc: h.ncols(),
        });
    }
    for i in 0..w.rows {
        for j in 0..w.cols {
            match (h.get(i, j), w.entries[i][j] != 0) {
                (true, false) => return Ok(Some(SupportViolation::ZeroAtStar { row: i, col: j })),
                (false, true) => return Ok(Some(SupportViolation::NonzeroAtZero { row: i, col: j })),
                _ => {}
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinrankResult {
    pub p: u32,
    pub value: usize,
    pub witness: WitnessMatrix,
    pub exhaustive: bool,
    /// Witnesses evaluated.
    pub evaluated: u64,
}

/// Minimum rank over all GF(p)-witnesses of `h`.
///
/// Scaling a row by a nonzero constant preserves both the support and the
/// rank, so the first star of every row is pinned to 1 and the remaining
/// stars run through `1..p` as an odometer in row-major order (first free
/// star most significant). That order is lexicographic, so the first witness
/// reaching the minimum is the lexicographically least optimal one.
/// `budget` caps the number of witnesses evaluated.
pub fn minrank_bruteforce(h: &Stencil, p: u32, budget: u64) -> Result<MinrankResult, FieldError> {
    check_modulus(p)?;
    let mut w = WitnessMatrix::indicator(h, p)?;
    let free: Vec<(usize, usize)> = (0..h.nrows())
        .flat_map(|i| h.row(i).iter().skip(1).map(move |j| (i, j)))
        .collect();
    let mut best = (gf_rank(&w), w.clone());
    let mut evaluated = 1u64;
    let mut exhaustive = true;
    if p > 2 {
        'odometer: loop {
            // advance: least significant digit is the last free star
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break 'odometer;
                }
                pos -= 1;
                let (i, j) = free[pos];
                if w.entries[i][j] + 1 < p {
                    w.entries[i][j] += 1;
                    break;
                }
                w.entries[i][j] = 1;
            }
            if evaluated >= budget {
                exhaustive = false;
                break;
            }
            evaluated += 1;
            let r = gf_rank(&w);
            if r < best.0 {
                best = (r, w.clone());
            }
        }
    }
    Ok(MinrankResult {
        p,
        value: best.0,
        witness: best.1,
        exhaustive,
        evaluated,
    })
}

/// Column `j` gets label `a_j = j`; row `i` becomes `p_i(x) = prod_{a in Z_i} (x - a)`
/// evaluated at the labels, where `Z_i` are the labels of row `i`'s zeros.
/// All rows lie in the span of `1, x, ..., x^d`, so the rank is at most
/// `d + 1` for `d` the largest row zero count.
pub fn low_rank_witness(h: &Stencil, p: u32) -> Result<WitnessMatrix, FieldError> {
    check_modulus(p)?;
    let n = h.ncols();
    if (p as usize) < n {
        return Err(FieldError::FieldTooSmall { p, n });
    }
    let p64 = p as u64;
    let entries = (0..h.nrows())
        .map(|i| {
            let zeros: Vec<u64> = (0..n).filter(|&j| !h.get(i, j)).map(|j| j as u64).collect();
            (0..n as u64)
                .map(|x| {
                    zeros
                        .iter()
                        .fold(1u64, |acc, &a| acc * ((x + p64 - a) % p64) % p64) as u32
                })
                .collect()
        })
        .collect();
    WitnessMatrix::new(p, entries)
}

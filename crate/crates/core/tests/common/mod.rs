#![allow(dead_code)]

use rand::Rng;
use visrank::vrank::is_visibly_full_rank;
use visrank::Stencil;

pub fn random_stencil(rng: &mut impl Rng, m: usize, n: usize, density: f64) -> Stencil {
    Stencil::from_fn(m, n, |_, _| rng.gen_bool(density))
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Largest `k` with a `k x k` visibly full rank sub-stencil, by enumerating
/// every pair of row and column subsets.
pub fn brute_vrank(h: &Stencil) -> usize {
    for k in (1..=h.nrows().min(h.ncols())).rev() {
        for rows in subsets(h.nrows(), k) {
            for cols in subsets(h.ncols(), k) {
                let sub = h.substencil(&rows, &cols).unwrap();
                if is_visibly_full_rank(&sub).unwrap().is_some() {
                    return k;
                }
            }
        }
    }
    0
}

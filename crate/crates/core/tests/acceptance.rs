//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p visrank --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use visrank::field::{gf_rank, least_prime_at_least, low_rank_witness, minrank_bruteforce, validate_witness, WitnessMatrix};
use visrank::generators::{gen_drgp, gen_lcc, gen_tensor_gap, lcc_zero_rectangle_probe, validate_family, FamilyParams};
use visrank::spanoid::{rank_nullity_check, SymmetricSpanoid};
use visrank::tensor::{diagonal_tensor_certificate, distinct_rank_exact, tensor_power, tensor_product};
use visrank::vrank::{is_visibly_full_rank, visible_rank_exact, Budget};
use visrank::Stencil;

use common::{brute_vrank, random_stencil};

/// Thresholds pinned from a calibration pass over seeds 0..50
/// (`cargo run --release --example calibrate -- drgp 2 0 50 16 32 64`):
/// observed maxima 10, 13 and 17.
const DRGP_THRESHOLDS: [(usize, usize); 3] = [(16, 12), (32, 15), (64, 19)];
/// `tensor-gap 3 0 50 32`: level-1 maximum 11.
const TENSOR_GAP_LEVEL1: usize = 13;
/// Level-2 upper bound `vrk(H) * n`, maximum 11 * 32 over the same seeds.
const TENSOR_GAP_LEVEL2_UPPER: usize = 354;
const FRESH_SEEDS: std::ops::Range<u64> = 1000..1050;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(violations: usize, detail: String) -> Verdict {
    Verdict {
        passed: violations == 0,
        detail,
    }
}

fn exact(h: &Stencil) -> usize {
    let r = visible_rank_exact(h, Budget::UNLIMITED);
    assert!(r.exact);
    r.lower
}

fn peeling_oracle() -> Verdict {
    let mut bad = 0;
    let mut checked = 0;
    for mask in 0u32..1 << 9 {
        let s = Stencil::from_fn(3, 3, |i, j| mask >> (3 * i + j) & 1 == 1);
        bad += usize::from(is_visibly_full_rank(&s).unwrap().is_some() != (s.count_star_diagonals().unwrap() == 1));
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4, 5] {
        for _ in 0..10_000 {
            let s = random_stencil(&mut rng, n, n, 0.5);
            let peel = is_visibly_full_rank(&s).unwrap();
            let ok = peel.is_some() == (s.count_star_diagonals().unwrap() == 1)
                && peel.is_none_or(|c| c.verify(&s));
            bad += usize::from(!ok);
            checked += 1;
        }
    }
    verdict(bad, format!("{checked} stencils, {bad} mismatches"))
}

fn exact_vs_exhaustion() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for (n, count) in [(5, 500), (6, 200)] {
        for _ in 0..count {
            let s = random_stencil(&mut rng, n, n, 0.5);
            let r = visible_rank_exact(&s, Budget::UNLIMITED);
            bad += usize::from(!r.exact || r.lower != brute_vrank(&s) || !r.certificate.verify(&s));
        }
    }
    verdict(bad, format!("700 stencils, {bad} mismatches"))
}

fn minrank_sandwich() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    for _ in 0..1000 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let s = random_stencil(&mut rng, m, n, 0.5);
        bad += usize::from(exact(&s) > gf_rank(&WitnessMatrix::indicator(&s, 2).unwrap()));
    }
    let mut gf3 = 0;
    while gf3 < 200 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let mut cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        cells.shuffle(&mut rng);
        let stars = rng.gen_range(0..=cells.len().min(10));
        let s = Stencil::from_fn(m, n, |i, j| cells[..stars].contains(&(i, j)));
        let mr = minrank_bruteforce(&s, 3, u64::MAX).unwrap();
        bad += usize::from(!mr.exhaustive || exact(&s) > mr.value);
        gf3 += 1;
    }
    verdict(bad, format!("1000 GF(2) + 200 exhaustive GF(3), {bad} violations"))
}

fn random_spanoid(rng: &mut ChaCha8Rng) -> SymmetricSpanoid {
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(0..=5);
    let sets: Vec<Vec<usize>> = (0..m)
        .map(|_| loop {
            let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    SymmetricSpanoid::new(n, &sets).unwrap()
}

fn rank_nullity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    let mut columns = 0;
    for i in 0..300 {
        let s = random_spanoid(&mut rng);
        let r = rank_nullity_check(&s, i < 50, Budget::UNLIMITED);
        columns += r.columns_checked;
        bad += usize::from(!r.passed());
    }
    verdict(bad, format!("300 spanoids, {columns} column sets checked, {bad} failures"))
}

fn tensor_laws() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = 0;
    for _ in 0..100 {
        let (n1, n2) = loop {
            let (a, b) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
            if a * b <= 16 {
                break (a, b);
            }
        };
        let (m1, m2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let h1 = random_stencil(&mut rng, m1, n1, 0.5);
        let h2 = random_stencil(&mut rng, m2, n2, 0.5);
        let (v1, v2) = (exact(&h1), exact(&h2));
        let v12 = exact(&tensor_product(&h1, &h2).unwrap());
        let sq = exact(&tensor_power(&h1, 2).unwrap());
        bad += usize::from(v1 * v2 > v12 || v12 > v1 * n2 || sq > n1 * v1);
    }
    verdict(bad, format!("100 pairs, {bad} violations"))
}

fn drgp_square_certificate() -> Verdict {
    let mut bad = 0;
    for n in [16, 64, 256] {
        for seed in 0..20 {
            let h = gen_drgp(n, 2, seed).unwrap();
            bad += usize::from(!diagonal_tensor_certificate(&h, 2).unwrap().1);
        }
    }
    verdict(bad, format!("60 stencils, {bad} without identity pattern"))
}

fn gap_demonstration() -> Verdict {
    let mut bad = Vec::new();
    let mut maxima = Vec::new();
    for (n, threshold) in DRGP_THRESHOLDS {
        let mut max = 0;
        for seed in FRESH_SEEDS {
            let h = gen_drgp(n, 2, seed).unwrap();
            let v = exact(&h);
            max = max.max(v);
            if v > threshold || !diagonal_tensor_certificate(&h, 2).unwrap().1 {
                bad.push(format!("drgp n={n} seed={seed} vrk={v}"));
            }
        }
        maxima.push(max);
    }
    // logarithmic-scale growth, and T(64) at most half of the certified vrk(H (x) H) >= 64
    let t = |i: usize| DRGP_THRESHOLDS[i].1;
    if t(2) - t(0) > 3 * (t(1) - t(0)) + 2 || 2 * t(2) > 64 {
        bad.push("threshold growth".into());
    }
    let (mut max1, mut lower2) = (0, usize::MAX);
    for seed in FRESH_SEEDS {
        let h = gen_tensor_gap(32, 3, seed).unwrap();
        let v1 = exact(&h);
        max1 = max1.max(v1);
        lower2 = lower2.min(v1 * v1);
        let upper2 = v1 * h.ncols();
        let level3 = diagonal_tensor_certificate(&h, 3).unwrap().1;
        if v1 > TENSOR_GAP_LEVEL1 || upper2 > TENSOR_GAP_LEVEL2_UPPER || !level3 {
            bad.push(format!("tensor-gap seed={seed} vrk={v1} level3={level3}"));
        }
    }
    if TENSOR_GAP_LEVEL1 >= 32 {
        bad.push("tensor-gap level-1 threshold not below 32".into());
    }
    verdict(
        bad.len(),
        format!(
            "drgp fresh maxima {maxima:?} vs T {:?}; tensor-gap(32,3) level 1 max {max1} <= {TENSOR_GAP_LEVEL1}, \
             level 2 in [{lower2}, <= {TENSOR_GAP_LEVEL2_UPPER}] (bounded; lower end already above 32), level 3 >= 32 certified{}",
            DRGP_THRESHOLDS.map(|p| p.1),
            if bad.is_empty() { String::new() } else { format!("; failures: {bad:?}") }
        ),
    )
}

fn low_rank_construction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for _ in 0..100 {
        let (m, n) = (rng.gen_range(1..=16), rng.gen_range(1..=16));
        let density = rng.gen_range(0.3..0.95);
        let s = random_stencil(&mut rng, m, n, density);
        let w = low_rank_witness(&s, least_prime_at_least(n)).unwrap();
        bad += usize::from(validate_witness(&w, &s).unwrap().is_some() || gf_rank(&w) > s.max_row_zeros() + 1);
    }
    for n in 3..=8 {
        let w = WitnessMatrix::indicator(&Stencil::off_diagonal(n), 2).unwrap();
        bad += usize::from(gf_rank(&w) < n - 1);
    }
    verdict(bad, format!("100 witnesses + D_3..D_8 over GF(2), {bad} violations"))
}

fn high_rate_cap() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    for _ in 0..100 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let density = rng.gen_range(0.3..0.9);
        let s = random_stencil(&mut rng, m, n, density);
        let v = exact(&s);
        let gap = n - v;
        let v2 = exact(&tensor_power(&s, 2).unwrap());
        // sqrt(v2) <= n - gap/2  <=>  4 v2 <= (2n - gap)^2
        bad += usize::from(4 * v2 > (2 * n - gap).pow(2));
    }
    verdict(bad, format!("100 stencils, {bad} violations"))
}

fn distinct_rank_lemma() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..50 {
        let s = random_stencil(&mut rng, 4, 4, 0.5);
        let v = exact(&s);
        let v2 = exact(&tensor_power(&s, 2).unwrap());
        let d = distinct_rank_exact(&s, 2, Budget::UNLIMITED).unwrap();
        bad += usize::from(!d.exact || v2 > 2 * 4 * v * d.value);
    }
    verdict(bad, format!("50 stencils, {bad} violations"))
}

fn lcc_structure() -> Verdict {
    let mut invalid = 0;
    let mut not_found = 0;
    for seed in 0..20 {
        let h = gen_lcc(64, 3, 0.05, seed).unwrap();
        invalid += usize::from(validate_family(&h, &FamilyParams::lcc(64, 3, 0.05, seed)).is_err());
        not_found += usize::from(!lcc_zero_rectangle_probe(&h, 8, 2, 10_000, seed).found());
    }
    Verdict {
        passed: invalid == 0 && not_found >= 18,
        detail: format!("{invalid} invalid, probe not-found for {not_found}/20 seeds"),
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Verdict); 11] = [
        ("peeling vs star-diagonal count", Duration::from_secs(10), peeling_oracle),
        ("exact visible rank vs exhaustion", Duration::from_secs(60), exact_vs_exhaustion),
        ("visible rank below minrank", Duration::from_secs(300), minrank_sandwich),
        ("spanoid rank-nullity", Duration::from_secs(120), rank_nullity),
        ("tensor product laws", Duration::from_secs(300), tensor_laws),
        ("2-DRGP tensor-square certificate", Duration::from_secs(5), drgp_square_certificate),
        ("calibrated gap demonstration", Duration::from_secs(1800), gap_demonstration),
        ("low-rank witness construction", Duration::from_secs(60), low_rank_construction),
        ("high-rate tensor cap", Duration::from_secs(600), high_rate_cap),
        ("distinct rank lemma", Duration::from_secs(600), distinct_rank_lemma),
        ("q-LCC structure and probe", Duration::from_secs(300), lcc_structure),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let passed = v.passed && elapsed < *limit;
        failed += usize::from(!passed);
        println!(
            "criterion {:>2} {}: {name}: {} [{:.2?} / limit {:?}]",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            v.detail,
            elapsed,
            limit
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

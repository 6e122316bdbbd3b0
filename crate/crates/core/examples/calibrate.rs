//! Exact visible rank of generated stencils over a seed range, reporting the
//! per-n maximum used to pin acceptance thresholds.
//!
//! Usage: `cargo run --release --example calibrate -- <drgp|tensor-gap> <t> <first_seed> <count> <n>...`

use std::collections::BTreeMap;
use std::time::Instant;

use visrank::generators::{generate, Family, FamilyParams};
use visrank::vrank::{visible_rank_exact, Budget};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 5 {
        eprintln!("usage: calibrate <drgp|tensor-gap> <t> <first_seed> <count> <n>...");
        std::process::exit(2);
    }
    let family: Family = args[0].parse().expect("family");
    let num = |s: &String| s.parse::<u64>().expect("integer argument");
    let (t, first, count) = (num(&args[1]) as usize, num(&args[2]), num(&args[3]));
    for n in args[4..].iter().map(|a| num(a) as usize) {
        let start = Instant::now();
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for seed in first..first + count {
            let p = match family {
                Family::TensorGap => FamilyParams::tensor_gap(n, t, seed),
                _ => FamilyParams::drgp(n, t, seed),
            };
            let r = visible_rank_exact(&generate(&p).expect("valid parameters"), Budget::UNLIMITED);
            assert!(r.exact);
            *hist.entry(r.lower).or_default() += 1;
        }
        let max = *hist.keys().last().expect("at least one seed");
        println!(
            "{family} n={n} t={t} seeds={first}..{} max={max} T={} histogram={hist:?} time={:?}",
            first + count,
            max + 2,
            start.elapsed()
        );
    }
}

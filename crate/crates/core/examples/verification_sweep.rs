//! Programmatic version of `sandpile sweep`: every cross-check on a small
//! grid, with a per-check timing summary.
//!
//! Run with `cargo run --release --example verification_sweep [n_max] [d_max]`.

use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use sandpile_groups::cli::{run_sweep, sweep_instances, Check};
use sandpile_groups::graphs::Family;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let n_max = args.next().unwrap_or(24);
    let d_max = args.next().unwrap_or(5);

    let checks: BTreeSet<Check> = Check::value_variants().iter().copied().collect();
    let instances = sweep_instances(&[Family::DeBruijn, Family::Kautz], n_max, d_max);
    let reports = run_sweep(&instances, &checks, 0).expect("thread pool");

    let mut by_name: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    for r in &reports {
        for c in &r.checks {
            let e = by_name.entry(c.name.as_str()).or_default();
            e.0 += 1;
            e.1 += usize::from(c.pass);
            e.2 += c.runtime_ms;
        }
    }
    for (name, (runs, passed, ms)) in &by_name {
        println!("{name:<22} {passed:>5}/{runs:<5} {ms:>10.1} ms");
    }
    let failed: Vec<_> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.instance)
        .collect();
    println!("failing instances: {failed:?}");
}

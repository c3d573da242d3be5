//! Invertible circulant matrices over F_p, normal bases, and their match with
//! the sand dune and sandpile groups of `DB(n, p)`.
//!
//! Run with `cargo run --release --example circulants [p] [n_max]`.

use num_bigint::BigUint;
use sandpile_groups::circulant::{self, DEFAULT_BRUTE_CAP};
use sandpile_groups::closed_form;

fn main() -> sandpile_groups::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let p = args.next().unwrap_or(2);
    let n_max = args.next().unwrap_or(12);

    println!(
        "cyclotomic cosets of Z_15 under ×{p}: {:?}",
        circulant::cyclotomic_cosets(15, p)?
    );
    println!();
    println!(
        "{:>3}  {:<20} {:<20} {:<12} {:>12}",
        "n", "C'(n, p)", "C'/<x>", "brute C'", "normal"
    );
    for n in 2..=n_max {
        let rep = circulant::report(n, p, DEFAULT_BRUTE_CAP)?;
        assert_eq!(rep.c_prime, closed_form::sand_dune_group(n, p)?);
        let sandpile = closed_form::sandpile_group_db(n, p)?;
        if let Some(q) = &rep.quotient_by_shift {
            assert_eq!(*q, sandpile);
        }
        let normal = circulant::count_normal_elements(p, n)?;
        assert_eq!(normal, sandpile.order()? * BigUint::from(n * (p - 1)));
        let brute = match circulant::bruteforce_unit_group(n, p, DEFAULT_BRUTE_CAP) {
            Ok(g) => (g == rep.c).to_string(),
            Err(_) => "-".to_string(),
        };
        let quotient = rep
            .quotient_by_shift
            .as_ref()
            .map_or("-".to_string(), ToString::to_string);
        println!(
            "{n:>3}  {:<20} {:<20} {:<12} {:>12}",
            rep.c_prime.to_string(),
            quotient,
            brute,
            normal
        );
    }
    Ok(())
}

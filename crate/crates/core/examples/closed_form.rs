//! Closed-form sandpile and sand dune groups next to their SNF oracles.
//!
//! Run with `cargo run --release --example closed_form [d] [n_max]`.

use sandpile_groups::closed_form::{self, d_sequence, orbits};
use sandpile_groups::graphs::{Family, GraphSpec};

fn main() -> sandpile_groups::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let d = args.next().unwrap_or(2);
    let n_max = args.next().unwrap_or(24);

    let seq = d_sequence(12, d)?;
    println!(
        "d-sequence of 12 for d = {d}: n = {:?}, gcds = {:?}, m = {}",
        seq.chain(),
        seq.gcds(),
        seq.m()
    );
    let orb = orbits(seq.m(), d as i64)?;
    println!("orbits of x -> {d}x on Z_{}: {:?}", seq.m(), orb.orbits());
    println!();

    println!(
        "{:>3}  {:<28} {:<30} {:<28}",
        "n", "S(n, d)", "Σ(n, d)", "Kautz S"
    );
    for n in 2..=n_max {
        let s = closed_form::sandpile_group_db(n, d)?;
        let dune = closed_form::sand_dune_group(n, d)?;
        let k = closed_form::sandpile_group_kautz(n, d)?;
        for (family, closed) in [(Family::DeBruijn, &s), (Family::Kautz, &k)] {
            let snf = GraphSpec::new(family, n as usize, d as usize)?
                .build()
                .sandpile_group_snf(0)?;
            assert_eq!(&snf, closed, "{family}({n}, {d})");
        }
        println!(
            "{n:>3}  {:<28} {:<30} {:<28}",
            s.to_string(),
            dune.to_string(),
            k.to_string()
        );
    }
    println!("all closed forms agree with SNF");
    Ok(())
}

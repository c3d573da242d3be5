//! Sandpile groups of de Bruijn and Kautz digraphs from their Laplacians.
//!
//! Run with `cargo run --example graph_groups [n] [d]`.

use sandpile_groups::graphs::GraphSpec;

fn main() -> sandpile_groups::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(6);
    let d = args.next().unwrap_or(2);

    for spec in [GraphSpec::de_bruijn(n, d)?, GraphSpec::kautz(n, d)?] {
        let g = spec.build();
        println!("{spec}: eulerian {}", g.is_eulerian());
        for v in 0..n {
            let heads: Vec<usize> = (0..d).map(|i| spec.successor(v, i)).collect();
            println!("  {v} -> {heads:?}");
        }
        println!("Laplacian =\n{}", g.laplacian());
        println!("  spanning trees into 0: {}", g.spanning_tree_count(0)?);
        println!("  sandpile group:        {}", g.sandpile_group_snf(0)?);
        println!("  critical group (full): {}", g.critical_group_snf());
        println!();
    }
    Ok(())
}

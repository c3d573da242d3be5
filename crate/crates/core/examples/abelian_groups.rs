//! Canonical forms of finitely generated abelian groups.
//!
//! Run with `cargo run --example abelian_groups`.

use std::collections::BTreeMap;

use sandpile_groups::AbelianGroup;

fn main() -> sandpile_groups::Result<()> {
    // Z_4 ⊕ Z_6 ⊕ Z_9 regroups into a divisor chain.
    let g = AbelianGroup::canonicalize([4u32, 6, 9])?;
    println!("Z_4 + Z_6 + Z_9 = {g}");
    println!("  order {}, exponent {}", g.order()?, g.exponent());

    let stats = g.order_statistics()?;
    println!("  elements by order:");
    for (k, count) in &stats {
        println!("    {k:>4}: {count}");
    }
    assert_eq!(AbelianGroup::from_order_statistics(&stats)?, g);

    // Z_2 ⊕ Z_2 and Z_4 have the same order but different statistics.
    let klein = AbelianGroup::canonicalize([2u32, 2])?;
    let z4 = AbelianGroup::cyclic(4u32)?;
    println!("{klein}: {:?}", klein.order_statistics()?);
    println!("{z4}: {:?}", z4.order_statistics()?);

    let mixed = AbelianGroup::free(1).direct_sum(&z4);
    println!("free part: {mixed}, torsion {}", mixed.torsion());
    println!("json: {}", serde_json::to_string(&mixed).unwrap());

    // A table that is not the order count of any group is rejected.
    let bogus = BTreeMap::from([(1, 1), (2, 2)]);
    println!(
        "{:?}",
        AbelianGroup::from_order_statistics(&bogus).unwrap_err()
    );
    Ok(())
}

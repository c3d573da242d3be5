//! Orders of the generators `e_v` of the sand dune group and membership in
//! the embedded sandpile group.
//!
//! Run with `cargo run --example element_orders [n] [d]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use sandpile_groups::closed_form::{self, d_type, epsilon_coordinates_of_ev, order_of_ev};

fn main() -> sandpile_groups::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(12);
    let d = args.next().unwrap_or(2);

    let relations = closed_form::epsilon_relation_matrix(n, d)?;
    println!("Σ({n}, {d}) = {}", relations.finite_part((n - 1) as usize)?);
    for v in 1..n {
        let (f, e) = d_type(v, n, d)?;
        let coords = epsilon_coordinates_of_ev(v, n, d)?;
        let terms: Vec<String> = coords.iter().map(|(w, c)| format!("({c})ε_{w}")).collect();
        let unit: Vec<BigInt> = (1..n).map(|w| BigInt::from(u8::from(v == w))).collect();
        let oracle = relations.cokernel_element_order(&unit)?;
        let order = order_of_ev(v, n, d)?;
        assert_eq!(order, oracle);
        println!(
            "e_{v:<3} type ({f}, {e})  order {order:<6} = {}",
            terms.join(" + ")
        );
    }

    // Σ a_v e_v lies in S exactly when Σ v·a_v ≡ 0 (mod n).
    let x = BTreeMap::from([(1, BigInt::from(1)), (n - 1, BigInt::from(1))]);
    let y = BTreeMap::from([(1, BigInt::from(1))]);
    println!(
        "e_1 + e_{} in S: {}",
        n - 1,
        closed_form::membership_in_sandpile(&x, n)
    );
    println!("e_1 in S: {}", closed_form::membership_in_sandpile(&y, n));
    Ok(())
}

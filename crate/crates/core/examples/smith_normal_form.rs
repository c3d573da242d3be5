//! Smith normal form with transforms, determinants and cokernel orders.
//!
//! Run with `cargo run --example smith_normal_form [matrix-file]`. The file
//! holds a `rows cols` line followed by the rows.

use num_bigint::BigInt;
use sandpile_groups::IntegerMatrix;

const DEFAULT: &str = "3 3
2 0 -1
0 2 -1
-1 -1 2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let m: IntegerMatrix = text.parse()?;
    println!("M =\n{m}");

    let snf = m.smith_normal_form();
    println!("U =\n{}", snf.u);
    println!("V =\n{}", snf.v);
    println!("S = U·M·V =\n{}", snf.s);
    assert_eq!(snf.u.mul(&m)?.mul(&snf.v)?, snf.s);

    let diag: Vec<String> = snf.diagonal().iter().map(ToString::to_string).collect();
    println!("diagonal: {}", diag.join(" "));
    println!("rank {}, cokernel {}", m.rank(), m.smith_group(m.cols())?);
    if m.is_square() {
        println!("det {}", m.determinant()?);
    }

    for j in 0..m.cols() {
        let e: Vec<BigInt> = (0..m.cols())
            .map(|i| BigInt::from(u8::from(i == j)))
            .collect();
        match m.cokernel_element_order(&e) {
            Ok(order) => println!("order of e_{j}: {order}"),
            Err(err) => println!("order of e_{j}: {err}"),
        }
    }
    Ok(())
}

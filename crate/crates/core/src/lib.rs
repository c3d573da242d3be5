//! Exact critical groups of generalized de Bruijn and Kautz digraphs.
//!
//! Two independent routes compute the sandpile group of `DB(n, d)` and
//! `Kautz(n, d)`:
//!
//! * [`graphs`] builds the digraph, its Laplacian, and reads the group off the
//!   Smith Normal Form computed in [`linalg`];
//! * [`closed_form`] evaluates the number-theoretic formulas driven by the
//!   `d`-sequence of `n` and the orbits of multiplication by `d`.
//!
//! [`circulant`] relates the same groups to invertible circulant matrices over
//! a prime field, with brute-force oracles for small rings. Every result is an
//! [`AbelianGroup`] in invariant-factor form, so routes compare by equality.
//!
//! ```
//! use sandpile_groups::{closed_form, graphs::{Family, GraphSpec}};
//!
//! let g = GraphSpec::new(Family::DeBruijn, 4, 3).unwrap().build();
//! let by_snf = g.sandpile_group_snf(0).unwrap();
//! let by_formula = closed_form::sandpile_group_db(4, 3).unwrap();
//! assert_eq!(by_snf, by_formula);
//! assert_eq!(by_snf.to_string(), "Z_4");
//! ```

pub mod abelian;
pub mod circulant;
pub mod cli;
pub mod closed_form;
mod error;
pub mod graphs;
pub mod linalg;
mod numtheory;

pub use abelian::AbelianGroup;
pub use error::{Error, Result};
pub use linalg::IntegerMatrix;

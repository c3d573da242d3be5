//! Generalized de Bruijn and Kautz digraphs and their SNF-based groups.
//!
//! Vertices are the residues `0..n`. `DB(n, d)` has edges `v → dv + i` and
//! `Kautz(n, d)` has edges `v → −d(v + 1) + i` for `0 ≤ i < d`, all mod `n`.
//! Loops and parallel edges are kept as multiplicities.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::abelian::AbelianGroup;
use crate::error::{invalid, Error, Result};
use crate::linalg::IntegerMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "db")]
    DeBruijn,
    #[serde(rename = "kautz")]
    Kautz,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::DeBruijn => "db",
            Family::Kautz => "kautz",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
}

impl GraphSpec {
    pub fn new(family: Family, n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return invalid(format!(
                "graph parameters must be positive, got n={n}, d={d}"
            ));
        }
        Ok(Self { family, n, d })
    }

    pub fn de_bruijn(n: usize, d: usize) -> Result<Self> {
        Self::new(Family::DeBruijn, n, d)
    }

    pub fn kautz(n: usize, d: usize) -> Result<Self> {
        Self::new(Family::Kautz, n, d)
    }

    /// Head of the `i`-th out-edge of `v`, normalized to `0..n`.
    pub fn successor(&self, v: usize, i: usize) -> usize {
        let (n, d) = (self.n as i128, self.d as i128);
        let (v, i) = (v as i128, i as i128);
        let w = match self.family {
            Family::DeBruijn => d * v + i,
            Family::Kautz => -d * (v + 1) + i,
        };
        w.rem_euclid(n) as usize
    }

    pub fn build(&self) -> Digraph {
        let n = self.n;
        let mut adjacency = vec![0u64; n * n];
        for v in 0..n {
            for i in 0..self.d {
                adjacency[v * n + self.successor(v, i)] += 1;
            }
        }
        Digraph {
            n,
            adjacency,
            spec: Some(*self),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::DeBruijn => write!(f, "DB({}, {})", self.n, self.d),
            Family::Kautz => write!(f, "Kautz({}, {})", self.n, self.d),
        }
    }
}

/// Multidigraph on `0..n` stored as a dense edge-multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adjacency: Vec<u64>,
    spec: Option<GraphSpec>,
}

impl Digraph {
    /// Arbitrary multidigraph; `adjacency[v][w]` counts edges `v → w`.
    pub fn from_adjacency(adjacency: &[Vec<u64>]) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 || adjacency.iter().any(|r| r.len() != n) {
            return invalid("adjacency must be a non-empty square matrix");
        }
        Ok(Self {
            n,
            adjacency: adjacency.concat(),
            spec: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> Option<GraphSpec> {
        self.spec
    }

    pub fn edges(&self, v: usize, w: usize) -> u64 {
        self.adjacency[v * self.n + w]
    }

    pub fn out_degree(&self, v: usize) -> u64 {
        (0..self.n).map(|w| self.edges(v, w)).sum()
    }

    pub fn in_degree(&self, v: usize) -> u64 {
        (0..self.n).map(|u| self.edges(u, v)).sum()
    }

    pub fn is_eulerian(&self) -> bool {
        (0..self.n).all(|v| self.out_degree(v) == self.in_degree(v))
    }

    /// `D − A` with `D` the diagonal of indegrees.
    pub fn laplacian(&self) -> IntegerMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for v in 0..n {
            for w in 0..n {
                let mut x = -BigInt::from(self.edges(v, w));
                if v == w {
                    x += self.in_degree(v);
                }
                entries.push(x);
            }
        }
        IntegerMatrix::new(n, n, entries).expect("square by construction")
    }

    fn check_root(&self, root: usize) -> Result<()> {
        if self.n == 1 {
            return Err(Error::EmptyMatrix);
        }
        if root >= self.n {
            return invalid(format!(
                "root {root} is not a vertex of a {}-vertex graph",
                self.n
            ));
        }
        Ok(())
    }

    /// Laplacian with the row and column of `root` deleted.
    pub fn reduced_laplacian(&self, root: usize) -> Result<IntegerMatrix> {
        self.check_root(root)?;
        Ok(self.laplacian().minor(root, root))
    }

    /// Number of spanning trees oriented towards `root`, as the determinant of
    /// the reduced Laplacian.
    pub fn spanning_tree_count(&self, root: usize) -> Result<BigUint> {
        let det = self.reduced_laplacian(root)?.determinant()?;
        det.to_biguint()
            .ok_or_else(|| Error::Logic(format!("negative reduced Laplacian determinant {det}")))
    }

    /// Finite part of the Smith group of the reduced Laplacian at `root`.
    pub fn sandpile_group_snf(&self, root: usize) -> Result<AbelianGroup> {
        let reduced = self.reduced_laplacian(root)?;
        reduced.finite_part(self.n - 1)
    }

    /// Finite part of the Smith group of the full Laplacian.
    pub fn critical_group_snf(&self) -> AbelianGroup {
        self.laplacian()
            .finite_part(self.n)
            .expect("Laplacian is n x n")
    }

    /// Debug export `{"family","n","d","adjacency"}`; family and degree are
    /// null for graphs not built from a [`GraphSpec`].
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<&[u64]> = self.adjacency.chunks(self.n).collect();
        serde_json::json!({
            "family": self.spec.map(|s| s.family.to_string()),
            "n": self.n,
            "d": self.spec.map(|s| s.d),
            "adjacency": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(n: usize, d: usize) -> Digraph {
        GraphSpec::de_bruijn(n, d).unwrap().build()
    }

    fn kautz(n: usize, d: usize) -> Digraph {
        GraphSpec::kautz(n, d).unwrap().build()
    }

    fn mat(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn heads(g: &Digraph, v: usize) -> Vec<usize> {
        (0..g.vertex_count())
            .flat_map(|w| std::iter::repeat_n(w, g.edges(v, w) as usize))
            .collect()
    }

    #[test]
    fn build_examples() {
        let g = db(3, 2);
        assert_eq!(heads(&g, 0), vec![0, 1]);
        assert_eq!(heads(&g, 1), vec![0, 2]);
        assert_eq!(heads(&g, 2), vec![1, 2]);
        let g = db(5, 1);
        assert!((0..5).all(|v| heads(&g, v) == vec![v]));
        let g = kautz(3, 2);
        for v in 0..3 {
            let mut expect = vec![(v + 1) % 3, (v + 2) % 3];
            expect.sort();
            assert_eq!(heads(&g, v), expect);
        }
        // multiplicities when n < d
        assert_eq!(db(1, 4).edges(0, 0), 4);
        assert_eq!(db(2, 5).edges(1, 1), 3);
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            db(3, 2).laplacian(),
            mat(&[&[1, -1, 0], &[-1, 2, -1], &[0, -1, 1]])
        );
        assert_eq!(db(1, 1).laplacian(), mat(&[&[0]]));
        assert_eq!(
            kautz(3, 2).laplacian(),
            mat(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])
        );
    }

    #[test]
    fn reduced_laplacian_examples() {
        assert_eq!(
            db(3, 2).reduced_laplacian(0).unwrap(),
            mat(&[&[2, -1], &[-1, 1]])
        );
        assert_eq!(
            kautz(3, 2).reduced_laplacian(0).unwrap(),
            mat(&[&[2, -1], &[-1, 2]])
        );
        assert_eq!(
            db(4, 3).reduced_laplacian(0).unwrap(),
            mat(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 2]])
        );
        assert_eq!(db(1, 3).reduced_laplacian(0), Err(Error::EmptyMatrix));
        assert!(db(3, 2).reduced_laplacian(3).is_err());
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(
            db(3, 2).spanning_tree_count(0).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            kautz(3, 2).spanning_tree_count(0).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            db(4, 3).spanning_tree_count(0).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(db(1, 2).spanning_tree_count(0), Err(Error::EmptyMatrix));
    }

    #[test]
    fn sandpile_and_critical_examples() {
        let z = |k: u32| AbelianGroup::cyclic(k).unwrap();
        assert_eq!(db(4, 3).sandpile_group_snf(0).unwrap(), z(4));
        assert!(db(3, 2).sandpile_group_snf(0).unwrap().is_trivial());
        assert_eq!(db(4, 2).sandpile_group_snf(0).unwrap(), z(2));
        assert_eq!(db(4, 3).critical_group_snf(), z(4));
        assert!(db(2, 2).critical_group_snf().is_trivial());
        assert_eq!(kautz(3, 2).critical_group_snf(), z(3));
    }

    #[test]
    fn eulerian_examples() {
        assert!(db(7, 3).is_eulerian());
        assert!(kautz(5, 2).is_eulerian());
        let g = Digraph::from_adjacency(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!g.is_eulerian());
    }

    #[test]
    fn json_export() {
        let j = db(3, 2).to_json();
        assert_eq!(j["family"], "db");
        assert_eq!(j["adjacency"][1], serde_json::json!([1, 0, 1]));
        let g = Digraph::from_adjacency(&[vec![1]]).unwrap();
        assert!(g.to_json()["family"].is_null());
    }
}

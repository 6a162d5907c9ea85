//! Simple undirected graphs and their graph-state stabilizers.
//!
//! Vertices are 0-based in the API. The edge-list text format is 1-based, one `i j`
//! pair per line, with `#` comments and blank lines ignored.

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    n_vertices: usize,
    /// Normalized `(min, max)` pairs.
    edges: BTreeSet<(usize, usize)>,
}

impl GraphSpec {
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n_vertices} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(GraphSpec {
            n_vertices,
            edges: set,
        })
    }

    pub fn empty(n_vertices: usize) -> Result<Self> {
        GraphSpec::new(n_vertices, [])
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            let _ = writeln!(out, "{} {}", a + 1, b + 1);
        }
        out
    }

    /// Parses the 1-based edge-list format. The vertex count is given separately because
    /// isolated vertices do not appear in the list.
    pub fn from_edge_list(n_vertices: usize, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidGraph(format!("line {}: {e}", lineno + 1)))?;
            match nums.as_slice() {
                &[a, b] if a >= 1 && b >= 1 => edges.push((a - 1, b - 1)),
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "line {}: expected two 1-based vertex indices",
                        lineno + 1
                    )))
                }
            }
        }
        GraphSpec::new(n_vertices, edges)
    }
}

/// Cycle on `n ≥ 3` vertices with edges `{i, i+1 mod n}`.
pub fn ring_graph(n: usize) -> Result<GraphSpec> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("a ring needs at least 3 vertices, got {n}")));
    }
    GraphSpec::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path `0 - 1 - … - (n-1)`.
pub fn path_graph(n: usize) -> Result<GraphSpec> {
    GraphSpec::new(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_v = X_v ⊗ Z_{N(v)}` for each vertex, in vertex order.
pub fn graph_stabilizers(g: &GraphSpec) -> Vec<PauliOperator> {
    (0..g.n_vertices())
        .map(|v| {
            let mut terms = vec![(v, Pauli::X)];
            terms.extend(g.neighbors(v).into_iter().map(|w| (w, Pauli::Z)));
            PauliOperator::from_sparse(g.n_vertices(), &terms).expect("indices in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(ops: &[PauliOperator]) -> Vec<String> {
        ops.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn pentagon_ring() {
        let g = ring_graph(5).unwrap();
        assert_eq!(g.to_edge_list(), "1 2\n1 5\n2 3\n3 4\n4 5\n");
        assert_eq!(
            strings(&graph_stabilizers(&g)),
            ["XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"]
        );
    }

    #[test]
    fn small_rings_and_paths() {
        assert_eq!(ring_graph(3).unwrap().edge_count(), 3);
        assert_eq!(ring_graph(6).unwrap().edge_count(), 6);
        assert!(ring_graph(2).is_err());
        assert_eq!(
            strings(&graph_stabilizers(&path_graph(3).unwrap())),
            ["XZI", "ZXZ", "IZX"]
        );
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(GraphSpec::new(3, [(0, 0)]).is_err());
        assert!(GraphSpec::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(GraphSpec::new(3, [(0, 3)]).is_err());
        assert!(GraphSpec::from_edge_list(3, "1 2 3\n").is_err());
        assert!(GraphSpec::from_edge_list(3, "0 1\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = ring_graph(7).unwrap();
        let text = format!("# ring\n{}\n", g.to_edge_list());
        assert_eq!(GraphSpec::from_edge_list(7, &text).unwrap(), g);
    }

    #[test]
    fn graph_stabilizers_commute() {
        for n in 3..9 {
            let ks = graph_stabilizers(&ring_graph(n).unwrap());
            for a in &ks {
                for b in &ks {
                    assert!(a.commutes(b).unwrap());
                }
            }
        }
    }
}

//! Standard graph families on vertices `0..n`.

use alloc::vec::Vec;

use crate::graph::SimpleGraph;

fn build(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
    SimpleGraph::new(n, edges).expect("family edges are valid")
}

/// `K_{1,n-1}` centered at 0.
pub fn star(n: usize) -> SimpleGraph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    build(n, &edges)
}

pub fn path(n: usize) -> SimpleGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

/// `C_n` for `n >= 3`; smaller `n` give the path.
pub fn cycle(n: usize) -> SimpleGraph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    build(n, &edges)
}

pub fn complete(n: usize) -> SimpleGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

//! Named graphs and small families used by tests, examples and the CLI.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).unwrap()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges).unwrap()
}

/// `K_{d,d}` minus the perfect matching `{i, d+i}`.
pub fn crown(d: usize) -> Graph {
    let edges = (0..d).flat_map(|u| (0..d).filter(move |&v| v != u).map(move |v| (u, d + v)));
    Graph::from_edges(2 * d, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// Generalized Petersen graph `GP(n, k)`: outer cycle `0..n`, inner star
/// polygon `n..2n`, spokes `i -- n+i`.
pub fn generalized_petersen(n: usize, k: usize) -> Graph {
    let outer = (0..n).map(|i| (i, (i + 1) % n));
    let spokes = (0..n).map(|i| (i, n + i));
    let inner = (0..n).map(|i| (n + i, n + (i + k) % n));
    Graph::from_edges(2 * n, outer.chain(spokes).chain(inner)).unwrap()
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2)
}

/// Triangular prism `K_3 x K_2`.
pub fn prism() -> Graph {
    generalized_petersen(3, 1)
}

pub fn mobius_kantor() -> Graph {
    generalized_petersen(8, 3)
}

pub fn desargues() -> Graph {
    generalized_petersen(10, 3)
}

/// `d`-dimensional hypercube.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| {
        (0..d)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    Graph::from_edges(n, edges).unwrap()
}

/// Cartesian product `C_a x C_b`, vertex `(i, j)` at index `i*b + j`.
pub fn torus(a: usize, b: usize) -> Graph {
    let idx = move |i: usize, j: usize| (i % a) * b + (j % b);
    let edges = (0..a).flat_map(|i| {
        (0..b).flat_map(move |j| [(idx(i, j), idx(i + 1, j)), (idx(i, j), idx(i, j + 1))])
    });
    Graph::from_edges(a * b, edges).unwrap()
}

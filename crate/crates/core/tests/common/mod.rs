#![allow(dead_code)]

use meetpoint::graph::{Direction, Edge, Graph};
use meetpoint::{Rational, Scalar, DISTANCE};
use rand::Rng;

/// Random connected undirected graph: a random spanning tree plus extra
/// edges, integer weights in 1..=9.
pub fn connected_graph(
    rng: &mut impl Rng,
    max_vertices: usize,
) -> (usize, Vec<(usize, usize, i64)>) {
    let n = rng.random_range(1..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.random_range(0..v);
        edges.push((parent, v, rng.random_range(1..=9)));
    }
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            edges.push((a, b, rng.random_range(1..=9)));
        }
    }
    (n, edges)
}

pub fn to_graph<T: Scalar>(
    n: usize,
    edges: &[(usize, usize, i64)],
    direction: Direction,
) -> Graph<T> {
    let edges: Vec<Edge<T>> = edges
        .iter()
        .map(|&(a, b, w)| Edge::new(a, b, vec![T::from_i64(w).unwrap()]))
        .collect();
    Graph::build(n, &edges, &[DISTANCE], direction).unwrap()
}

pub fn two_channel_graph<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    edges: &[(usize, usize, i64)],
) -> Graph<T> {
    let edges: Vec<Edge<T>> = edges
        .iter()
        .map(|&(a, b, w)| {
            let t = rng.random_range(1..=9);
            Edge::new(a, b, vec![T::from_i64(w).unwrap(), T::from_i64(t).unwrap()])
        })
        .collect();
    Graph::build(n, &edges, &[DISTANCE, "time"], Direction::Undirected).unwrap()
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

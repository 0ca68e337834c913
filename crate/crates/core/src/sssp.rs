//! Single-source shortest paths and the partial distance matrix.
//!
//! One Dijkstra run per user gives one row of the matrix: the user's shortest
//! distance to every vertex. Only those rows are ever needed to pick a
//! meeting point, never the full vertex-by-vertex matrix.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ChannelId, Graph};
use crate::scalar::{Extended, Scalar};

/// Shortest distances from one source to every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceRow<T = f64> {
    pub source: usize,
    pub distances: Vec<Extended<T>>,
}

impl<T: Scalar> DistanceRow<T> {
    pub fn get(&self, v: usize) -> Extended<T> {
        self.distances[v]
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Mask of vertices with a finite distance.
    pub fn reachable(&self) -> Vec<bool> {
        self.distances.iter().map(Extended::is_finite).collect()
    }
}

/// Rows of shortest distances, one per user, all over the same graph and
/// channel. Not square in general: rows are users, columns are vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentMatrix<T = f64> {
    pub channel: String,
    pub vertex_count: usize,
    pub rows: Vec<DistanceRow<T>>,
}

impl<T: Scalar> AdjacentMatrix<T> {
    pub fn user_count(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, user: usize, v: usize) -> Extended<T> {
        self.rows[user].distances[v]
    }
}

/// Work counters of one search, used as a machine-independent cost proxy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub pushes: usize,
    pub pops: usize,
    pub stale_pops: usize,
    pub relaxations: usize,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: Self) {
        self.pushes += rhs.pushes;
        self.pops += rhs.pops;
        self.stale_pops += rhs.stale_pops;
        self.relaxations += rhs.relaxations;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Orientation {
    /// Distances from the source.
    Outgoing,
    /// Distances to the source, following edges backwards.
    Incoming,
}

struct Entry<T> {
    dist: T,
    vertex: usize,
}

impl<T: Scalar> PartialEq for Entry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Entry<T> {}

impl<T: Scalar> PartialOrd for Entry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Entry<T> {
    // BinaryHeap is a max-heap: reverse so the smallest distance, then the
    // lowest vertex id, comes out first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp_value(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

fn search<T: Scalar>(
    graph: &Graph<T>,
    source: usize,
    channel: ChannelId,
    orientation: Orientation,
    mut on_settle: impl FnMut(usize, T),
) -> (Vec<Extended<T>>, SearchStats) {
    let n = graph.vertex_count();
    let mut best: Vec<Option<T>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut queue = BinaryHeap::new();
    let mut stats = SearchStats::default();

    best[source] = Some(T::zero());
    queue.push(Entry {
        dist: T::zero(),
        vertex: source,
    });
    stats.pushes += 1;

    while let Some(Entry { dist, vertex }) = queue.pop() {
        stats.pops += 1;
        if visited[vertex] {
            stats.stale_pops += 1;
            continue;
        }
        visited[vertex] = true;
        on_settle(vertex, dist);

        let mut relax = |next: usize, weight: T| {
            if visited[next] {
                return;
            }
            stats.relaxations += 1;
            let candidate = dist + weight;
            if best[next].is_none_or(|b| candidate < b) {
                best[next] = Some(candidate);
                queue.push(Entry {
                    dist: candidate,
                    vertex: next,
                });
                stats.pushes += 1;
            }
        };
        match orientation {
            Orientation::Outgoing => graph
                .neighbors(vertex, channel)
                .for_each(|(w, c)| relax(w, c)),
            Orientation::Incoming => graph
                .predecessors(vertex, channel)
                .for_each(|(w, c)| relax(w, c)),
        }
    }

    (best.into_iter().map(Extended::from).collect(), stats)
}

/// Shortest distances from `source` on the named channel.
pub fn dijkstra_row<T: Scalar>(
    graph: &Graph<T>,
    source: usize,
    channel: &str,
) -> Result<DistanceRow<T>> {
    let channel = graph.channel(channel)?;
    dijkstra_row_on(graph, source, channel).map(|(row, _)| row)
}

/// Like [`dijkstra_row`], by channel id, also returning work counters.
pub fn dijkstra_row_on<T: Scalar>(
    graph: &Graph<T>,
    source: usize,
    channel: ChannelId,
) -> Result<(DistanceRow<T>, SearchStats)> {
    graph.check_vertex(source)?;
    let (distances, stats) = search(graph, source, channel, Orientation::Outgoing, |_, _| {});
    Ok((DistanceRow { source, distances }, stats))
}

/// Vertices in the order the search settles them, with their distances.
pub fn settle_order<T: Scalar>(
    graph: &Graph<T>,
    source: usize,
    channel: ChannelId,
) -> Result<Vec<(usize, T)>> {
    graph.check_vertex(source)?;
    let mut order = Vec::with_capacity(graph.vertex_count());
    search(graph, source, channel, Orientation::Outgoing, |v, d| {
        order.push((v, d))
    });
    Ok(order)
}

/// Shortest distances from every vertex to `target`.
pub fn distances_to<T: Scalar>(
    graph: &Graph<T>,
    target: usize,
    channel: ChannelId,
) -> Result<DistanceRow<T>> {
    graph.check_vertex(target)?;
    let (distances, _) = search(graph, target, channel, Orientation::Incoming, |_, _| {});
    Ok(DistanceRow {
        source: target,
        distances,
    })
}

/// One row per source, in source order.
pub fn build_partial_matrix<T: Scalar>(
    graph: &Graph<T>,
    sources: &[usize],
    channel: &str,
) -> Result<AdjacentMatrix<T>> {
    let id = graph.channel(channel)?;
    build_partial_matrix_with(graph, sources, id, 1).map(|(m, _)| m)
}

/// Builds the partial matrix on up to `parallelism` threads.
///
/// Rows are merged in source order, so the result does not depend on the
/// thread count.
pub fn build_partial_matrix_with<T: Scalar>(
    graph: &Graph<T>,
    sources: &[usize],
    channel: ChannelId,
    parallelism: usize,
) -> Result<(AdjacentMatrix<T>, SearchStats)> {
    if sources.is_empty() {
        return Err(Error::EmptySources);
    }
    for &s in sources {
        graph.check_vertex(s)?;
    }

    let results: Vec<(DistanceRow<T>, SearchStats)> = if parallelism <= 1 || sources.len() == 1 {
        sources
            .iter()
            .map(|&s| dijkstra_row_on(graph, s, channel))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .expect("thread pool");
        pool.install(|| {
            sources
                .par_iter()
                .map(|&s| dijkstra_row_on(graph, s, channel))
                .collect::<Result<_>>()
        })?
    };

    let mut stats = SearchStats::default();
    let mut rows = Vec::with_capacity(results.len());
    for (row, s) in results {
        stats += s;
        rows.push(row);
    }
    Ok((
        AdjacentMatrix {
            channel: graph.channel_name(channel).to_string(),
            vertex_count: graph.vertex_count(),
            rows,
        },
        stats,
    ))
}

//! Ground-truth baselines: Floyd-Warshall and exhaustive destination search.
//!
//! Nothing here shares code with [`crate::sssp`] or [`crate::meetpoint`]; the
//! point is to have a second, independent route to every answer.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{ChannelId, Graph};
use crate::meetpoint::{ObjectiveWeights, PreferenceProfile};
use crate::scalar::{Extended, Scalar};

/// All-pairs shortest distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FullMatrix<T = f64> {
    n: usize,
    distances: Vec<Option<T>>,
}

impl<T: Scalar> FullMatrix<T> {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, from: usize, to: usize) -> Extended<T> {
        self.distances[from * self.n + to].into()
    }

    pub fn row(&self, from: usize) -> Vec<Extended<T>> {
        self.distances[from * self.n..(from + 1) * self.n]
            .iter()
            .map(|&d| d.into())
            .collect()
    }
}

/// Floyd-Warshall with the plain triple loop.
pub fn floyd_all_pairs<T: Scalar>(graph: &Graph<T>, channel: &str) -> Result<FullMatrix<T>> {
    let channel = graph.channel(channel)?;
    Ok(floyd_until(graph, channel, None).expect("no deadline"))
}

/// Floyd-Warshall that gives up, returning `None`, once `deadline` passes.
/// The clock is checked once per pivot.
pub fn floyd_until<T: Scalar>(
    graph: &Graph<T>,
    channel: ChannelId,
    deadline: Option<Instant>,
) -> Option<FullMatrix<T>> {
    let n = graph.vertex_count();
    let mut d: Vec<Option<T>> = vec![None; n * n];
    for i in 0..n {
        d[i * n + i] = Some(T::zero());
    }
    for (u, w, c) in graph.edges(channel) {
        let slot = &mut d[u * n + w];
        if slot.is_none_or(|old| c < old) {
            *slot = Some(c);
        }
    }

    let mut pivot_row: Vec<Option<T>> = vec![None; n];
    for k in 0..n {
        if deadline.is_some_and(|t| Instant::now() >= t) {
            return None;
        }
        // Row k cannot improve while k is the pivot.
        pivot_row.copy_from_slice(&d[k * n..(k + 1) * n]);
        for i in 0..n {
            let Some(ik) = d[i * n + k] else { continue };
            let row = &mut d[i * n..(i + 1) * n];
            for (slot, kj) in row.iter_mut().zip(&pivot_row) {
                if let Some(kj) = *kj {
                    let via = ik + kj;
                    if slot.is_none_or(|ij| via < ij) {
                        *slot = Some(via);
                    }
                }
            }
        }
    }
    Some(FullMatrix { n, distances: d })
}

/// Best meeting vertex by scoring every vertex directly from Floyd matrices.
///
/// `users[i]` is the vertex of user `i`; the profile names one channel per
/// objective.
pub fn brute_force_destination<T: Scalar>(
    graph: &Graph<T>,
    users: &[usize],
    profile: &PreferenceProfile,
    weights: ObjectiveWeights<T>,
) -> Result<usize> {
    let n = graph.vertex_count();
    if users.is_empty() {
        return Err(Error::NoCandidate);
    }
    for &u in users {
        if u >= n {
            return Err(Error::InvalidSource {
                vertex: u,
                vertex_count: n,
            });
        }
    }

    let objectives = profile.objectives();
    let mut points = vec![0u64; objectives.len()];
    for row in profile.scores() {
        for (k, &s) in row.iter().enumerate() {
            points[k] += s as u64;
        }
    }
    let all_points: u64 = points.iter().sum();
    if all_points == 0 {
        return Err(Error::AllZeroScores);
    }
    let full: Vec<FullMatrix<T>> = objectives
        .iter()
        .map(|name| floyd_all_pairs(graph, name))
        .collect::<Result<_>>()?;

    // dist[u][v] blended over objectives, None when unreachable.
    let mut dist: Vec<Vec<Option<T>>> = vec![vec![None; n]; users.len()];
    for (row, &u) in dist.iter_mut().zip(users) {
        for (v, cell) in row.iter_mut().enumerate() {
            if full.len() == 1 {
                *cell = full[0].get(u, v).finite();
                continue;
            }
            let mut acc = Some(T::zero());
            for (k, m) in full.iter().enumerate() {
                let w = T::from_u64(points[k]).unwrap() / T::from_u64(all_points).unwrap();
                acc = match (acc, m.get(u, v).finite()) {
                    (Some(a), Some(x)) => Some(a + w * x),
                    _ => None,
                };
            }
            *cell = acc;
        }
    }

    let mut candidates = Vec::new();
    let mut totals = Vec::new();
    let mut spreads = Vec::new();
    for v in 0..n {
        let column: Option<Vec<T>> = dist.iter().map(|row| row[v]).collect();
        let Some(column) = column else { continue };
        let mut total = T::zero();
        for &x in &column {
            total = total + x;
        }
        let mut spread = T::zero();
        for a in 0..column.len() {
            for b in a + 1..column.len() {
                spread = spread + (column[a] - column[b]).abs();
            }
        }
        candidates.push(v);
        totals.push(total);
        spreads.push(spread);
    }
    if candidates.is_empty() {
        return Err(Error::NoCandidate);
    }

    let mut total_sum = T::zero();
    let mut spread_sum = T::zero();
    for i in 0..candidates.len() {
        total_sum = total_sum + totals[i];
        spread_sum = spread_sum + spreads[i];
    }

    let mut best = candidates[0];
    let mut best_score: Option<T> = None;
    for i in 0..candidates.len() {
        let t = if total_sum.is_zero() {
            T::zero()
        } else {
            totals[i] / total_sum
        };
        let s = if spread_sum.is_zero() {
            T::zero()
        } else {
            spreads[i] / spread_sum
        };
        let score = weights.alpha * t + weights.beta * s;
        if best_score.is_none() || score < best_score.unwrap() {
            best_score = Some(score);
            best = candidates[i];
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Direction, Edge, DISTANCE};
    use crate::scalar::Extended::{Finite, Unreachable};

    #[test]
    fn fills_in_missing_road() {
        let edges = [Edge::new(0, 1, vec![2.0]), Edge::new(0, 2, vec![4.0])];
        let g = Graph::build(3, &edges, &[DISTANCE], Direction::Undirected).unwrap();
        let m = floyd_all_pairs(&g, DISTANCE).unwrap();
        assert_eq!(m.get(1, 2), Finite(6.0));
        assert_eq!(m.get(2, 1), Finite(6.0));
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::<f64>::build(3, &[], &[DISTANCE], Direction::Directed).unwrap();
        let m = floyd_all_pairs(&g, DISTANCE).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), if i == j { Finite(0.0) } else { Unreachable });
            }
        }
    }

    #[test]
    fn unknown_channel() {
        let g = Graph::<f64>::build(1, &[], &[DISTANCE], Direction::Directed).unwrap();
        assert_eq!(
            floyd_all_pairs(&g, "time"),
            Err(Error::UnknownChannel("time".into()))
        );
    }

    #[test]
    fn expired_deadline_gives_up() {
        let g = Graph::<f64>::build(3, &[], &[DISTANCE], Direction::Directed).unwrap();
        assert!(floyd_until(&g, ChannelId(0), Some(Instant::now())).is_none());
    }

    #[test]
    fn brute_force_two_person_example() {
        let edges = [
            Edge::new(0, 1, vec![2.0]),
            Edge::new(0, 2, vec![4.0]),
            Edge::new(0, 3, vec![1.0]),
        ];
        let g = Graph::build(4, &edges, &[DISTANCE], Direction::Undirected).unwrap();
        let profile = PreferenceProfile::uniform(2, &[DISTANCE]);
        let w = ObjectiveWeights::new(0.9, 0.1).unwrap();
        assert_eq!(
            brute_force_destination(&g, &[0, 1], &profile, w).unwrap(),
            0
        );
        assert_eq!(
            brute_force_destination(
                &g,
                &[3, 3, 3],
                &PreferenceProfile::uniform(3, &[DISTANCE]),
                w
            )
            .unwrap(),
            3
        );
    }

    #[test]
    fn brute_force_without_common_vertex() {
        let g = Graph::<f64>::build(2, &[], &[DISTANCE], Direction::Directed).unwrap();
        let profile = PreferenceProfile::uniform(2, &[DISTANCE]);
        assert_eq!(
            brute_force_destination(&g, &[0, 1], &profile, ObjectiveWeights::default()),
            Err(Error::NoCandidate)
        );
    }
}

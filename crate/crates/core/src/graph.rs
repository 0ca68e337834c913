//! Weighted directed graphs with one or more weight channels.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Name of the channel every graph starts with.
pub const DISTANCE: &str = "distance";

/// Index of a weight channel inside a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelId(pub usize);

/// Whether input edges are one-way or should be expanded into both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<T> {
    pub from: usize,
    pub to: usize,
    /// One weight per channel, in channel order.
    pub weights: Vec<T>,
}

impl<T> Edge<T> {
    pub fn new(from: usize, to: usize, weights: Vec<T>) -> Self {
        Self { from, to, weights }
    }
}

/// Compressed adjacency for one direction of travel.
#[derive(Debug, Clone, PartialEq)]
struct Adjacency<T> {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    /// `targets.len() * channels` weights, channel-minor.
    weights: Vec<T>,
}

impl<T: Scalar> Adjacency<T> {
    fn build(vertex_count: usize, channels: usize, arcs: &[(usize, usize, &[T])]) -> Self {
        let mut order: Vec<usize> = (0..arcs.len()).collect();
        // Stable sort keeps parallel edges in input order.
        order.sort_by_key(|&i| (arcs[i].0, arcs[i].1));

        let mut offsets = vec![0; vertex_count + 1];
        for &(from, _, _) in arcs {
            offsets[from + 1] += 1;
        }
        for v in 0..vertex_count {
            offsets[v + 1] += offsets[v];
        }
        let mut targets = Vec::with_capacity(arcs.len());
        let mut weights = Vec::with_capacity(arcs.len() * channels);
        for i in order {
            let (_, to, w) = arcs[i];
            targets.push(to);
            weights.extend_from_slice(w);
        }
        Self {
            offsets,
            targets,
            weights,
        }
    }
}

/// An immutable, validated graph.
///
/// Vertex ids are dense in `0..vertex_count`. Outgoing edges of a vertex are
/// stored in ascending target order, which fixes iteration order everywhere
/// downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T = f64> {
    vertex_count: usize,
    channels: Vec<String>,
    forward: Adjacency<T>,
    reverse: Adjacency<T>,
}

impl<T: Scalar> Graph<T> {
    /// Validates and builds a graph.
    ///
    /// With [`Direction::Undirected`] every input edge becomes two directed
    /// edges carrying the same weights.
    pub fn build(
        vertex_count: usize,
        edges: &[Edge<T>],
        channels: &[&str],
        direction: Direction,
    ) -> Result<Self> {
        let channels = validate_channels(channels)?;
        for e in edges {
            if e.from >= vertex_count || e.to >= vertex_count {
                return Err(Error::InvalidEdgeEndpoint {
                    from: e.from,
                    to: e.to,
                    vertex_count,
                });
            }
            if e.weights.len() != channels.len() {
                return Err(Error::WeightCountMismatch {
                    from: e.from,
                    to: e.to,
                    got: e.weights.len(),
                    expected: channels.len(),
                });
            }
            for (w, name) in e.weights.iter().zip(&channels) {
                if !w.is_finite_value() || w.is_negative() {
                    return Err(Error::NegativeWeight {
                        from: e.from,
                        to: e.to,
                        channel: name.clone(),
                    });
                }
            }
        }

        let mut arcs: Vec<(usize, usize, &[T])> = Vec::with_capacity(edges.len() * 2);
        for e in edges {
            arcs.push((e.from, e.to, &e.weights));
            if direction == Direction::Undirected && e.from != e.to {
                arcs.push((e.to, e.from, &e.weights));
            }
        }
        let reversed: Vec<(usize, usize, &[T])> = arcs.iter().map(|&(f, t, w)| (t, f, w)).collect();

        Ok(Self {
            vertex_count,
            forward: Adjacency::build(vertex_count, channels.len(), &arcs),
            reverse: Adjacency::build(vertex_count, channels.len(), &reversed),
            channels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.forward.targets.len()
    }

    pub fn channels(&self) -> &[String] {
        &self.channels
    }

    pub fn channel(&self, name: &str) -> Result<ChannelId> {
        self.channels
            .iter()
            .position(|c| c == name)
            .map(ChannelId)
            .ok_or_else(|| Error::UnknownChannel(name.to_string()))
    }

    pub fn channel_name(&self, id: ChannelId) -> &str {
        &self.channels[id.0]
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.vertex_count
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidSource {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Outgoing edges of `v` as `(target, weight)`, ascending by target.
    ///
    /// Panics if `v` or `channel` is out of range.
    pub fn neighbors(&self, v: usize, channel: ChannelId) -> impl Iterator<Item = (usize, T)> + '_ {
        adjacent(&self.forward, self.channels.len(), v, channel)
    }

    /// Incoming edges of `v` as `(source, weight)`, ascending by source.
    pub fn predecessors(
        &self,
        v: usize,
        channel: ChannelId,
    ) -> impl Iterator<Item = (usize, T)> + '_ {
        adjacent(&self.reverse, self.channels.len(), v, channel)
    }

    /// Every directed edge as `(from, to, weight)`.
    pub fn edges(&self, channel: ChannelId) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.vertex_count)
            .flat_map(move |u| self.neighbors(u, channel).map(move |(w, c)| (u, w, c)))
    }

    /// A copy of this graph with an extra channel whose weights equal an
    /// existing one.
    pub fn with_channel_copy(&self, name: &str, source: ChannelId) -> Result<Self> {
        if self.channels.iter().any(|c| c == name) {
            return Err(Error::DuplicateChannel(name.to_string()));
        }
        let mut out = self.clone();
        out.channels.push(name.to_string());
        let old = self.channels.len();
        for (adj, new) in [
            (&self.forward, &mut out.forward),
            (&self.reverse, &mut out.reverse),
        ] {
            new.weights = adj
                .weights
                .chunks(old)
                .flat_map(|w| w.iter().copied().chain(std::iter::once(w[source.0])))
                .collect();
        }
        Ok(out)
    }
}

fn adjacent<T: Scalar>(
    adj: &Adjacency<T>,
    channels: usize,
    v: usize,
    channel: ChannelId,
) -> impl Iterator<Item = (usize, T)> + '_ {
    assert!(channel.0 < channels, "channel {} out of range", channel.0);
    let range = adj.offsets[v]..adj.offsets[v + 1];
    range.map(move |i| (adj.targets[i], adj.weights[i * channels + channel.0]))
}

fn validate_channels(channels: &[&str]) -> Result<Vec<String>> {
    let first = channels.first().ok_or(Error::EmptyChannelList)?;
    if *first != DISTANCE {
        return Err(Error::FirstChannelNotDistance(first.to_string()));
    }
    let mut out: Vec<String> = Vec::with_capacity(channels.len());
    for c in channels {
        if out.iter().any(|o| o == c) {
            return Err(Error::DuplicateChannel(c.to_string()));
        }
        out.push(c.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn madj_example() -> Graph<f64> {
        // v1 - v2 (2), v1 - v3 (4)
        let edges = [Edge::new(0, 1, vec![2.0]), Edge::new(0, 2, vec![4.0])];
        Graph::build(3, &edges, &[DISTANCE], Direction::Undirected).unwrap()
    }

    #[test]
    fn undirected_edges_are_expanded() {
        let g = madj_example();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn neighbors_are_sorted_by_target() {
        let g = madj_example();
        let d = g.channel(DISTANCE).unwrap();
        let n: Vec<_> = g.neighbors(0, d).collect();
        assert_eq!(n, vec![(1, 2.0), (2, 4.0)]);
        assert_eq!(g.neighbors(1, d).collect::<Vec<_>>(), vec![(0, 2.0)]);
    }

    #[test]
    fn single_vertex_graph_is_valid() {
        let g = Graph::<f64>::build(1, &[], &[DISTANCE], Direction::Directed).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.neighbors(0, ChannelId(0)).count(), 0);
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        let err = Graph::build(
            3,
            &[Edge::new(0, 5, vec![1.0])],
            &[DISTANCE],
            Direction::Directed,
        );
        assert!(matches!(err, Err(Error::InvalidEdgeEndpoint { to: 5, .. })));
    }

    #[test]
    fn negative_and_nan_weights_are_rejected() {
        for w in [-1.0, f64::NAN, f64::INFINITY] {
            let err = Graph::build(
                2,
                &[Edge::new(0, 1, vec![w])],
                &[DISTANCE],
                Direction::Directed,
            );
            assert!(matches!(err, Err(Error::NegativeWeight { .. })), "{w}");
        }
    }

    #[test]
    fn channel_list_is_validated() {
        assert_eq!(
            Graph::<f64>::build(1, &[], &[], Direction::Directed),
            Err(Error::EmptyChannelList)
        );
        assert!(matches!(
            Graph::<f64>::build(1, &[], &["time"], Direction::Directed),
            Err(Error::FirstChannelNotDistance(_))
        ));
        assert!(matches!(
            Graph::build(
                2,
                &[Edge::new(0, 1, vec![1.0])],
                &[DISTANCE, "time"],
                Direction::Directed
            ),
            Err(Error::WeightCountMismatch { .. })
        ));
    }

    #[test]
    fn directed_edges_have_predecessors() {
        let g = Graph::build(
            3,
            &[Edge::new(0, 2, vec![1.0]), Edge::new(1, 2, vec![5.0])],
            &[DISTANCE],
            Direction::Directed,
        )
        .unwrap();
        let d = ChannelId(0);
        assert_eq!(g.neighbors(2, d).count(), 0);
        assert_eq!(
            g.predecessors(2, d).collect::<Vec<_>>(),
            vec![(0, 1.0), (1, 5.0)]
        );
    }

    #[test]
    fn copied_channel_matches_source() {
        let g = madj_example()
            .with_channel_copy("time", ChannelId(0))
            .unwrap();
        let t = g.channel("time").unwrap();
        assert_eq!(
            g.neighbors(0, t).collect::<Vec<_>>(),
            vec![(1, 2.0), (2, 4.0)]
        );
        assert_eq!(g.predecessors(2, t).collect::<Vec<_>>(), vec![(0, 4.0)]);
    }
}

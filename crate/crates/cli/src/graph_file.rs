//! Plain-text graph instances.
//!
//! ```text
//! # comment
//! v <vertex count> distance [more channels...]
//! e <from> <to> <w1> [w2...]     undirected edge
//! a <from> <to> <w1> [w2...]     one-way arc
//! u <vertex> [score per channel...]
//! ```

use anyhow::{anyhow, bail, ensure, Context, Result};
use meetpoint::graph::{Direction, Edge, Graph};

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph<f64>,
    pub users: Vec<usize>,
    /// Per-user scores; `None` for users whose line gave none.
    pub scores: Vec<Option<Vec<u8>>>,
}

pub fn parse(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut undirected = Vec::new();
    let mut directed = Vec::new();
    let mut users = Vec::new();
    let mut scores = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let kind = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        let ctx = || format!("line {line_no}: `{raw}`");
        match kind {
            "v" => {
                ensure!(header.is_none(), "{}: duplicate `v` line", ctx());
                let (count, channels) = rest
                    .split_first()
                    .ok_or_else(|| anyhow!("{}: missing vertex count", ctx()))?;
                let count = count.parse().with_context(ctx)?;
                header = Some((count, channels.iter().map(|s| s.to_string()).collect()));
            }
            "e" | "a" => {
                let (_, channels) = header
                    .as_ref()
                    .ok_or_else(|| anyhow!("{}: edge before `v` line", ctx()))?;
                ensure!(
                    rest.len() == 2 + channels.len(),
                    "{}: expected {} weights",
                    ctx(),
                    channels.len()
                );
                let from = rest[0].parse().with_context(ctx)?;
                let to = rest[1].parse().with_context(ctx)?;
                let weights = rest[2..]
                    .iter()
                    .map(|w| w.parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .with_context(ctx)?;
                let edge = Edge::new(from, to, weights);
                if kind == "e" {
                    undirected.push(edge);
                } else {
                    directed.push(edge);
                }
            }
            "u" => {
                let (v, s) = rest
                    .split_first()
                    .ok_or_else(|| anyhow!("{}: missing vertex", ctx()))?;
                users.push(v.parse().with_context(ctx)?);
                if s.is_empty() {
                    scores.push(None);
                } else {
                    let s = s
                        .iter()
                        .map(|x| x.parse::<u8>())
                        .collect::<Result<Vec<_>, _>>()
                        .with_context(ctx)?;
                    scores.push(Some(s));
                }
            }
            other => bail!("{}: unknown record type `{other}`", ctx()),
        }
    }

    let (count, channels) = header.ok_or_else(|| anyhow!("missing `v` line"))?;
    let channel_refs: Vec<&str> = channels.iter().map(String::as_str).collect();
    // Expand undirected edges here so both kinds can share one build.
    let mut edges = directed;
    for e in undirected {
        if e.from != e.to {
            edges.push(Edge::new(e.to, e.from, e.weights.clone()));
        }
        edges.push(e);
    }
    let graph = Graph::build(count, &edges, &channel_refs, Direction::Directed)?;
    for &u in &users {
        ensure!(graph.contains(u), "user vertex {u} is outside the graph");
    }
    Ok(GraphFile {
        graph,
        users,
        scores,
    })
}

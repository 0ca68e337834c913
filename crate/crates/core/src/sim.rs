//! The dynamic re-planning loop.
//!
//! Every tick the meeting vertex is recomputed from the users' current
//! positions, then every user not already there takes one shortest-path step
//! towards it. All moves in a tick are computed from the same pre-move
//! positions. The run ends once everybody stands on the same vertex.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ChannelId, Graph, DISTANCE};
use crate::grid::{GridMap, DESTINATION, INITIAL_DESTINATION, USER, VISITED};
use crate::meetpoint::{plan, ObjectiveWeights, PreferenceProfile};
use crate::scalar::{Extended, Scalar};
use crate::sssp::{distances_to, DistanceRow};

/// Neighbour of `position` on a shortest path to `destination`.
pub fn next_move<T: Scalar>(
    graph: &Graph<T>,
    position: usize,
    destination: usize,
    channel: &str,
) -> Result<usize> {
    let channel = graph.channel(channel)?;
    graph.check_vertex(position)?;
    let to_destination = distances_to(graph, destination, channel)?;
    next_move_with(graph, position, &to_destination, channel)
}

/// [`next_move`] with precomputed distances to the destination.
///
/// Picks the neighbour minimising `edge weight + remaining distance`; ties go
/// to the lowest vertex id.
pub fn next_move_with<T: Scalar>(
    graph: &Graph<T>,
    position: usize,
    to_destination: &DistanceRow<T>,
    channel: ChannelId,
) -> Result<usize> {
    let destination = to_destination.source;
    if position == destination {
        return Ok(position);
    }
    let unreachable = Error::UnreachableDestination {
        position,
        destination,
    };
    if !to_destination.get(position).is_finite() {
        return Err(unreachable);
    }
    let mut best: Option<(usize, T)> = None;
    for (n, w) in graph.neighbors(position, channel) {
        let Extended::Finite(rest) = to_destination.get(n) else {
            continue;
        };
        let via = w + rest;
        if best.is_none_or(|(b, bv)| via < bv || (via == bv && n < b)) {
            best = Some((n, via));
        }
    }
    best.map(|(n, _)| n).ok_or(unreachable)
}

/// One moment of a simulation.
#[derive(Debug, Clone)]
pub struct SimState<'g, T: Scalar = f64> {
    pub graph: &'g Graph<T>,
    pub positions: Vec<usize>,
    pub profile: PreferenceProfile,
    pub weights: ObjectiveWeights<T>,
    /// Channel users walk along.
    pub move_channel: ChannelId,
    pub tick: usize,
    pub current_destination: Option<usize>,
    /// Threads used for each matrix rebuild.
    pub parallelism: usize,
}

impl<'g, T: Scalar> SimState<'g, T> {
    /// A fresh state at tick 0, walking on the `distance` channel.
    pub fn new(
        graph: &'g Graph<T>,
        positions: Vec<usize>,
        profile: PreferenceProfile,
        weights: ObjectiveWeights<T>,
    ) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::NoUsers);
        }
        for &p in &positions {
            graph.check_vertex(p)?;
        }
        if profile.user_count() != positions.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(Self {
            graph,
            positions,
            profile,
            weights,
            move_channel: graph.channel(DISTANCE)?,
            tick: 0,
            current_destination: None,
            parallelism: 1,
        })
    }

    /// Every user on one vertex, and which one.
    pub fn meeting_vertex(&self) -> Option<usize> {
        let first = self.positions[0];
        self.positions.iter().all(|&p| p == first).then_some(first)
    }

    /// The destination for the current positions.
    pub fn choose_destination(&self) -> Result<usize> {
        if let Some(v) = self.meeting_vertex() {
            return Ok(v);
        }
        Ok(plan(
            self.graph,
            &self.positions,
            &self.profile,
            self.weights,
            self.parallelism,
        )?
        .destination)
    }

    /// Re-plans and moves every user one step. Returns whether anybody moved.
    pub fn step(&mut self) -> Result<bool> {
        let destination = self.choose_destination()?;
        let mut moved = false;
        if self.meeting_vertex().is_none() {
            let to_destination = distances_to(self.graph, destination, self.move_channel)?;
            let next = self
                .positions
                .iter()
                .map(|&p| next_move_with(self.graph, p, &to_destination, self.move_channel))
                .collect::<Result<Vec<_>>>()?;
            moved = next != self.positions;
            self.positions = next;
        }
        self.tick += 1;
        self.current_destination = Some(destination);
        Ok(moved)
    }
}

/// Functional form of [`SimState::step`].
pub fn step<'g, T: Scalar>(state: &SimState<'g, T>) -> Result<(SimState<'g, T>, bool)> {
    let mut next = state.clone();
    let moved = next.step()?;
    Ok((next, moved))
}

/// Tick budget used when none is given: ten ticks per vertex.
pub fn default_max_ticks<T: Scalar>(graph: &Graph<T>) -> usize {
    10 * graph.vertex_count().max(1)
}

/// Steps until everybody meets or `max_ticks` ticks have run.
///
/// Non-convergence is [`Error::MaxTicksExceeded`], carrying the partial trace.
pub fn run<T: Scalar>(mut state: SimState<'_, T>, max_ticks: usize) -> Result<SimTrace> {
    if max_ticks == 0 {
        return Err(Error::ZeroMaxTicks);
    }
    let initial = state.choose_destination()?;
    let mut snapshots = vec![Snapshot {
        tick: state.tick,
        destination: initial,
        positions: state.positions.clone(),
    }];
    let mut ticks = 0;
    while state.meeting_vertex().is_none() {
        if ticks == max_ticks {
            let last = snapshots.last().expect("non-empty").destination;
            let trace = SimTrace::from_snapshots(initial, last, false, snapshots);
            return Err(Error::MaxTicksExceeded {
                max_ticks,
                trace: Box::new(trace),
            });
        }
        state.step()?;
        ticks += 1;
        snapshots.push(Snapshot {
            tick: state.tick,
            destination: state.current_destination.expect("set by step"),
            positions: state.positions.clone(),
        });
    }
    let meeting = state.meeting_vertex().expect("loop exit");
    Ok(SimTrace::from_snapshots(initial, meeting, true, snapshots))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub tick: usize,
    /// Destination chosen at this tick (the one users moved towards).
    pub destination: usize,
    /// Positions after this tick's moves.
    pub positions: Vec<usize>,
}

/// Record of a simulation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimTrace {
    pub initial_destination: usize,
    /// Meeting vertex on success, last chosen destination otherwise.
    pub final_destination: usize,
    pub converged: bool,
    pub snapshots: Vec<Snapshot>,
    /// Ticks in which each user moved.
    pub steps: Vec<usize>,
    /// Vertices each user stood on, start included.
    pub visited: Vec<BTreeSet<usize>>,
}

const TRACE_MAGIC: &str = "# meetpoint trace v1";

impl SimTrace {
    pub fn from_snapshots(
        initial: usize,
        last: usize,
        converged: bool,
        snapshots: Vec<Snapshot>,
    ) -> Self {
        let users = snapshots.first().map_or(0, |s| s.positions.len());
        let mut steps = vec![0; users];
        let mut visited = vec![BTreeSet::new(); users];
        for (i, s) in snapshots.iter().enumerate() {
            for (u, &p) in s.positions.iter().enumerate() {
                visited[u].insert(p);
                if i > 0 && snapshots[i - 1].positions[u] != p {
                    steps[u] += 1;
                }
            }
        }
        Self {
            initial_destination: initial,
            final_destination: last,
            converged,
            snapshots,
            steps,
            visited,
        }
    }

    pub fn user_count(&self) -> usize {
        self.steps.len()
    }

    /// Number of ticks run.
    pub fn ticks(&self) -> usize {
        self.snapshots.len().saturating_sub(1)
    }

    pub fn destination_drifted(&self) -> bool {
        self.initial_destination != self.final_destination
    }

    /// Line-oriented text form: a few `key value` header lines, then one
    /// `tick destination p0,p1,...` record per tick.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{TRACE_MAGIC}").unwrap();
        writeln!(out, "users {}", self.user_count()).unwrap();
        writeln!(out, "initial {}", self.initial_destination).unwrap();
        writeln!(out, "final {}", self.final_destination).unwrap();
        let status = if self.converged {
            "converged"
        } else {
            "max_ticks_exceeded"
        };
        writeln!(out, "status {status}").unwrap();
        let steps: Vec<String> = self.steps.iter().map(usize::to_string).collect();
        writeln!(out, "steps {}", steps.join(",")).unwrap();
        writeln!(out, "tick destination positions").unwrap();
        for s in &self.snapshots {
            let positions: Vec<String> = s.positions.iter().map(usize::to_string).collect();
            writeln!(out, "{} {} {}", s.tick, s.destination, positions.join(",")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: &str| Error::TraceFormat {
            line,
            message: message.to_string(),
        };
        let num = |line: usize, s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(line, &format!("bad number `{s}`")))
        };

        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l == TRACE_MAGIC => {}
            _ => return Err(err(1, "missing trace header")),
        }
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (n, l) = lines
                .next()
                .ok_or_else(|| err(0, &format!("missing `{key}`")))?;
            let value = l
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| err(n, &format!("expected `{key}`")))?;
            Ok((n, value.to_string()))
        };
        let (n, users) = header("users")?;
        let users = num(n, &users)?;
        let (n, initial) = header("initial")?;
        let initial = num(n, &initial)?;
        let (n, last) = header("final")?;
        let last = num(n, &last)?;
        let (n, status) = header("status")?;
        let converged = match status.as_str() {
            "converged" => true,
            "max_ticks_exceeded" => false,
            _ => return Err(err(n, "unknown status")),
        };
        let (n, steps_line) = header("steps")?;
        match lines.next() {
            Some((_, "tick destination positions")) => {}
            Some((n, _)) => return Err(err(n, "expected column header")),
            None => return Err(err(n + 1, "missing column header")),
        }

        let mut snapshots = Vec::new();
        for (n, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = l.split(' ').collect();
            let [tick, destination, positions] = fields[..] else {
                return Err(err(n, "expected three fields"));
            };
            let positions = positions
                .split(',')
                .map(|p| num(n, p))
                .collect::<Result<Vec<_>>>()?;
            if positions.len() != users {
                return Err(err(n, "wrong number of positions"));
            }
            snapshots.push(Snapshot {
                tick: num(n, tick)?,
                destination: num(n, destination)?,
                positions,
            });
        }
        if snapshots.is_empty() {
            return Err(err(0, "no tick records"));
        }
        let trace = Self::from_snapshots(initial, last, converged, snapshots);
        let steps: Vec<String> = trace.steps.iter().map(usize::to_string).collect();
        if steps.join(",") != steps_line {
            return Err(err(n, "step counts disagree with the tick records"));
        }
        Ok(trace)
    }

    /// ASCII frames: one per tick before the last, then a summary frame.
    ///
    /// Tick frames show cells visited so far as `.`, the initial destination
    /// as `I` and current positions as `U`. The summary frame shows every
    /// visited cell, the start cells, `I` and the achieved destination `D`.
    pub fn render_frames(&self, map: &GridMap) -> Result<Vec<String>> {
        let n = map.vertex_count();
        let mismatch = |what: String| Error::TraceMapMismatch(what);
        for s in &self.snapshots {
            if let Some(&p) = s.positions.iter().find(|&&p| p >= n) {
                return Err(mismatch(format!(
                    "vertex {p} at tick {} outside map with {n} vertices",
                    s.tick
                )));
            }
            if s.destination >= n {
                return Err(mismatch(format!(
                    "destination {} outside map",
                    s.destination
                )));
            }
        }
        if self.initial_destination >= n || self.final_destination >= n {
            return Err(mismatch("initial or final destination outside map".into()));
        }

        let mut frames = Vec::with_capacity(self.snapshots.len());
        let mut seen = BTreeSet::new();
        for s in &self.snapshots[..self.snapshots.len() - 1] {
            seen.extend(s.positions.iter().copied());
            let mut canvas = map.canvas();
            for &v in &seen {
                canvas.mark(v, VISITED);
            }
            canvas.mark(self.initial_destination, INITIAL_DESTINATION);
            for &p in &s.positions {
                canvas.mark(p, USER);
            }
            frames.push(canvas.to_string());
        }

        let mut canvas = map.canvas();
        for v in self.visited.iter().flatten() {
            canvas.mark(*v, VISITED);
        }
        for &p in &self.snapshots[0].positions {
            canvas.mark(p, USER);
        }
        canvas.mark(self.initial_destination, INITIAL_DESTINATION);
        canvas.mark(self.final_destination, DESTINATION);
        frames.push(canvas.to_string());
        Ok(frames)
    }
}

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::Args;
use meetpoint::graph::Graph;
use meetpoint::maps::{self, StartPreset};
use meetpoint::meetpoint::{plan, MAX_PRIORITY};
use meetpoint::sim::{default_max_ticks, run};
use meetpoint::{
    Error, Extended, GridMap, ObjectiveWeights, PreferenceProfile, SimState, SimTrace, DISTANCE,
};
use serde::Serialize;

use crate::graph_file;

/// Options shared by `solve`, `simulate` and `render`.
#[derive(Debug, Clone, Default, Args)]
pub struct RunConfig {
    /// Map file, or `@name` for a built-in map (open-22x10, walled-88x27, sparse-109x128).
    #[arg(long, conflicts_with = "graph")]
    pub map: Option<String>,
    /// Graph instance file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Weight of the total-distance term.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Weight of the equal-distance term.
    #[arg(long)]
    pub beta: Option<f64>,
    /// One user's priority scores (0-5), comma separated per objective. Repeat once per user.
    #[arg(long)]
    pub scores: Vec<String>,
    /// Objective channels for grid maps; extra channels copy `distance`.
    #[arg(long, value_delimiter = ',')]
    pub channels: Vec<String>,
    /// Place this many users on the map instead of its `U` cells.
    #[arg(long)]
    pub users: Option<usize>,
    /// Placement for --users: random or stick.
    #[arg(long, default_value = "random")]
    pub preset: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub max_ticks: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Threads per distance-matrix build.
    #[arg(long, default_value_t = 1)]
    pub parallelism: usize,
}

/// A loaded problem instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph<f64>,
    pub users: Vec<usize>,
    pub profile: PreferenceProfile,
    pub map: Option<GridMap>,
}

impl RunConfig {
    pub fn weights(&self) -> Result<ObjectiveWeights<f64>> {
        let w = match (self.alpha, self.beta) {
            (None, None) => return Ok(ObjectiveWeights::default()),
            (Some(a), None) => ObjectiveWeights::from_alpha(a),
            (None, Some(b)) => ObjectiveWeights::new(1.0 - b, b),
            (Some(a), Some(b)) => ObjectiveWeights::new(a, b),
        };
        w.map_err(|e| anyhow!("--alpha/--beta: {e}"))
    }

    fn preset(&self) -> Result<StartPreset> {
        self.preset.parse().map_err(|e: String| anyhow!(e))
    }

    /// Loads the map named by `--map`, with users placed if `--users` is set.
    pub fn load_map(&self) -> Result<GridMap> {
        let spec = self
            .map
            .as_deref()
            .ok_or_else(|| anyhow!("--map is required"))?;
        let map = load_map_spec(spec, self.seed)?;
        match self.users {
            Some(k) => {
                let users = maps::place_users(&map, k, self.preset()?, self.seed)?;
                Ok(map.with_users(users)?)
            }
            None => Ok(map),
        }
    }

    pub fn load_instance(&self) -> Result<Instance> {
        let (graph, users, file_scores, map) = match (&self.map, &self.graph) {
            (Some(_), _) => {
                let map = self.load_map()?;
                let mut graph = map.to_graph::<f64>();
                let distance = graph.channel(DISTANCE)?;
                for c in &self.channels {
                    if c != DISTANCE {
                        graph = graph.with_channel_copy(c, distance)?;
                    }
                }
                let users = map.user_starts().to_vec();
                (graph, users, Vec::new(), Some(map))
            }
            (None, Some(path)) => {
                let text = read(path)?;
                let f = graph_file::parse(&text)
                    .with_context(|| format!("reading {}", path.display()))?;
                (f.graph, f.users, f.scores, None)
            }
            (None, None) => bail!("one of --map or --graph is required"),
        };
        if users.is_empty() {
            return Err(Error::NoUsers.into());
        }

        let objectives: Vec<String> = if map.is_some() {
            let mut o = vec![DISTANCE.to_string()];
            o.extend(self.channels.iter().filter(|c| *c != DISTANCE).cloned());
            o
        } else {
            graph.channels().to_vec()
        };
        let scores = if !self.scores.is_empty() {
            ensure!(
                self.scores.len() == users.len(),
                "--scores given {} times for {} users",
                self.scores.len(),
                users.len()
            );
            self.scores
                .iter()
                .map(|s| parse_scores(s))
                .collect::<Result<Vec<_>>>()?
        } else {
            (0..users.len())
                .map(|i| {
                    file_scores
                        .get(i)
                        .cloned()
                        .flatten()
                        .unwrap_or_else(|| vec![1; objectives.len()])
                })
                .collect()
        };
        let profile = PreferenceProfile::new(objectives, scores)?;
        Ok(Instance {
            graph,
            users,
            profile,
            map,
        })
    }
}

fn parse_scores(s: &str) -> Result<Vec<u8>> {
    s.split(',')
        .map(|x| {
            let v: u8 = x
                .trim()
                .parse()
                .with_context(|| format!("bad score `{x}`"))?;
            ensure!(v <= MAX_PRIORITY, "score {v} is outside 0..={MAX_PRIORITY}");
            Ok(v)
        })
        .collect()
}

pub fn load_map_spec(spec: &str, seed: u64) -> Result<GridMap> {
    if let Some(name) = spec.strip_prefix('@') {
        return maps::builtin(name, seed).ok_or_else(|| {
            anyhow!(
                "unknown built-in map `{name}` (known: {})",
                maps::BUILTIN_NAMES.join(", ")
            )
        });
    }
    Ok(meetpoint::parse_map(&read(Path::new(spec))?)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn ext(values: &[Extended<f64>]) -> Vec<Option<f64>> {
    values.iter().map(|v| v.finite()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub users: Vec<usize>,
    pub objectives: Vec<String>,
    pub objective_weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    /// One row per user; `None` is unreachable.
    pub matrix: Vec<Vec<Option<f64>>>,
    pub total: Vec<Option<f64>>,
    pub similarity: Vec<Option<f64>>,
    pub combined: Vec<Option<f64>>,
    pub destination: usize,
    /// `(row, column)` of the destination on grid maps.
    pub destination_cell: Option<(usize, usize)>,
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let fmt = |v: &[Option<f64>]| {
            v.iter()
                .map(|x| {
                    x.map_or_else(
                        || "inf".to_string(),
                        |x| {
                            format!("{x:.6}")
                                .trim_end_matches('0')
                                .trim_end_matches('.')
                                .to_string()
                        },
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("objectives {}\n", self.objectives.join(",")));
        let w: Vec<String> = self
            .objective_weights
            .iter()
            .map(|w| format!("{w:.4}"))
            .collect();
        out.push_str(&format!("objective_weights {}\n", w.join(",")));
        out.push_str(&format!("alpha {} beta {}\n", self.alpha, self.beta));
        for (u, row) in self.users.iter().zip(&self.matrix) {
            out.push_str(&format!("user@{u} {}\n", fmt(row)));
        }
        out.push_str(&format!("total {}\n", fmt(&self.total)));
        out.push_str(&format!("similarity {}\n", fmt(&self.similarity)));
        out.push_str(&format!("combined {}\n", fmt(&self.combined)));
        match self.destination_cell {
            Some((r, c)) => out.push_str(&format!(
                "destination {} (row {r}, column {c})\n",
                self.destination
            )),
            None => out.push_str(&format!("destination {}\n", self.destination)),
        }
        out
    }
}

/// Picks the meeting vertex for the loaded instance.
pub fn cmd_solve(cfg: &RunConfig, json: bool) -> Result<SolveReport> {
    let inst = cfg.load_instance()?;
    let weights = cfg.weights()?;
    let p = plan(
        &inst.graph,
        &inst.users,
        &inst.profile,
        weights,
        cfg.parallelism,
    )?;
    let report = SolveReport {
        users: inst.users.clone(),
        objectives: inst.profile.objectives().to_vec(),
        objective_weights: p.objective_weights.clone(),
        alpha: weights.alpha,
        beta: weights.beta,
        matrix: p.matrix.rows.iter().map(|r| ext(&r.distances)).collect(),
        total: ext(&p.total.values),
        similarity: ext(&p.similarity.values),
        combined: ext(&p.combined.values),
        destination: p.destination,
        destination_cell: inst.map.as_ref().map(|m| m.position(p.destination)),
    };
    if let Some(out) = &cfg.out {
        let text = if json {
            serde_json::to_string_pretty(&report)? + "\n"
        } else {
            report.to_text()
        };
        write(out, &text)?;
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SimulateReport {
    pub trace: SimTrace,
    pub final_frame: String,
}

/// Runs the re-planning loop on a grid map and writes the trace to `--out`.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<SimulateReport> {
    let inst = cfg.load_instance()?;
    let map = inst
        .map
        .as_ref()
        .ok_or_else(|| anyhow!("simulate needs --map"))?;
    let mut state = SimState::new(
        &inst.graph,
        inst.users.clone(),
        inst.profile.clone(),
        cfg.weights()?,
    )?;
    state.parallelism = cfg.parallelism;
    let max_ticks = cfg
        .max_ticks
        .unwrap_or_else(|| default_max_ticks(&inst.graph));
    match run(state, max_ticks) {
        Ok(trace) => {
            if let Some(out) = &cfg.out {
                write(out, &trace.to_text())?;
            }
            let final_frame = trace.render_frames(map)?.pop().expect("at least one frame");
            Ok(SimulateReport { trace, final_frame })
        }
        Err(Error::MaxTicksExceeded { max_ticks, trace }) => {
            if let Some(out) = &cfg.out {
                write(out, &trace.to_text())?;
            }
            let frame = trace.render_frames(map)?.pop().unwrap_or_default();
            bail!(
                "no meeting within {max_ticks} ticks (partial trace{}):\n{frame}",
                cfg.out
                    .as_ref()
                    .map(|p| format!(" in {}", p.display()))
                    .unwrap_or_default()
            )
        }
        Err(e) => Err(e.into()),
    }
}

/// Frames of a stored trace drawn on the map given by `--map`.
pub fn cmd_render(trace: &Path, cfg: &RunConfig) -> Result<Vec<String>> {
    let trace = SimTrace::parse(&read(trace)?)?;
    let map = load_map_spec(
        cfg.map
            .as_deref()
            .ok_or_else(|| anyhow!("--map is required"))?,
        cfg.seed,
    )?;
    Ok(trace.render_frames(&map)?)
}

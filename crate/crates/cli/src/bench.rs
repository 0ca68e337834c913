//! Timing the per-user Dijkstra planner against Floyd-Warshall.
//!
//! Each cell times matrix construction plus destination selection together,
//! on a monotonic clock, and reports the median over repetitions.

use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use meetpoint::graph::Graph;
use meetpoint::maps::{self, StartPreset};
use meetpoint::meetpoint::{
    combine, plan, select_destination, similarity_penalty, total_distance, ReachabilitySet,
};
use meetpoint::oracle::floyd_until;
use meetpoint::sssp::{AdjacentMatrix, DistanceRow};
use meetpoint::{ObjectiveWeights, PreferenceProfile, DISTANCE};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub maps: Vec<String>,
    pub users: Vec<usize>,
    pub reps: usize,
    pub floyd: bool,
    pub floyd_timeout: Duration,
    /// Floyd is not attempted above this many vertices (its matrix is
    /// quadratic in memory); such cells are censored.
    pub floyd_max_vertices: usize,
    pub parallelism: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            maps: maps::BUILTIN_NAMES
                .iter()
                .map(|s| format!("@{s}"))
                .collect(),
            users: (2..=7).collect(),
            reps: 5,
            floyd: true,
            floyd_timeout: Duration::from_secs(300),
            floyd_max_vertices: 8000,
            parallelism: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FloydCell {
    Seconds(f64),
    /// Timed out or too large to attempt.
    Censored,
    Skipped,
}

impl std::fmt::Display for FloydCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FloydCell::Seconds(s) => write!(f, "{s:.6}"),
            FloydCell::Censored => f.write_str("censored"),
            FloydCell::Skipped => f.write_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvRow {
    pub map: String,
    pub users: usize,
    pub parallelism: usize,
    pub md_seconds: String,
    pub floyd_seconds: String,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub map: String,
    pub users: usize,
    pub parallelism: usize,
    pub md_seconds: f64,
    pub floyd: FloydCell,
    /// Destination picked by the planner, for cross-checking.
    pub destination: usize,
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    assert!(!xs.is_empty());
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Median seconds for partial matrix + selection, and the chosen vertex.
pub fn time_md(
    graph: &Graph<f64>,
    users: &[usize],
    parallelism: usize,
    reps: usize,
) -> Result<(f64, usize)> {
    let profile = PreferenceProfile::uniform(users.len(), &[DISTANCE]);
    let mut samples = Vec::with_capacity(reps);
    let mut destination = 0;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let p = plan(
            graph,
            users,
            &profile,
            ObjectiveWeights::default(),
            parallelism,
        )?;
        samples.push(start.elapsed().as_secs_f64());
        destination = p.destination;
    }
    Ok((median(samples), destination))
}

/// Full Floyd matrix, then the same scoring on the users' rows.
pub fn floyd_destination(
    graph: &Graph<f64>,
    users: &[usize],
    deadline: Option<Instant>,
) -> Result<Option<usize>> {
    let Some(full) = floyd_until(graph, graph.channel(DISTANCE)?, deadline) else {
        return Ok(None);
    };
    let matrix = AdjacentMatrix {
        channel: DISTANCE.to_string(),
        vertex_count: graph.vertex_count(),
        rows: users
            .iter()
            .map(|&u| DistanceRow {
                source: u,
                distances: full.row(u),
            })
            .collect(),
    };
    let combined = combine(
        &total_distance(&matrix)?,
        &similarity_penalty(&matrix)?,
        ObjectiveWeights::default(),
    )?;
    Ok(Some(select_destination(
        &combined,
        &ReachabilitySet::from_matrix(&matrix),
    )?))
}

/// Median Floyd seconds. A run longer than one second is not repeated.
pub fn time_floyd(graph: &Graph<f64>, users: &[usize], cfg: &BenchConfig) -> Result<FloydCell> {
    if !cfg.floyd {
        return Ok(FloydCell::Skipped);
    }
    if graph.vertex_count() > cfg.floyd_max_vertices {
        return Ok(FloydCell::Censored);
    }
    let mut samples = Vec::new();
    for _ in 0..cfg.reps.max(1) {
        let start = Instant::now();
        if floyd_destination(graph, users, Some(start + cfg.floyd_timeout))?.is_none() {
            return Ok(FloydCell::Censored);
        }
        let took = start.elapsed().as_secs_f64();
        samples.push(took);
        if took > 1.0 {
            break;
        }
    }
    Ok(FloydCell::Seconds(median(samples)))
}

pub fn run_bench(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    let max_users = cfg
        .users
        .iter()
        .copied()
        .max()
        .ok_or_else(|| anyhow!("no user counts"))?;
    let mut rows = Vec::new();
    for spec in &cfg.maps {
        let map = crate::commands::load_map_spec(spec, cfg.seed)?;
        let graph = map.to_graph::<f64>();
        // Smaller user sets are prefixes of the largest one.
        let pool = maps::place_users(&map, max_users, StartPreset::Random, cfg.seed)?;
        let name = spec.trim_start_matches('@').to_string();
        for &k in &cfg.users {
            let users = &pool[..k];
            let (md_seconds, destination) = time_md(&graph, users, cfg.parallelism, cfg.reps)?;
            let floyd = time_floyd(&graph, users, cfg)?;
            let row = BenchRow {
                map: name.clone(),
                users: k,
                parallelism: cfg.parallelism,
                md_seconds,
                floyd,
                destination,
            };
            progress(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Header-first CSV: `map,users,parallelism,md_seconds,floyd_seconds`.
pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(CsvRow {
            map: r.map.clone(),
            users: r.users,
            parallelism: r.parallelism,
            md_seconds: format!("{:.6}", r.md_seconds),
            floyd_seconds: r.floyd.to_string(),
        })?;
    }
    if rows.is_empty() {
        w.write_record(["map", "users", "parallelism", "md_seconds", "floyd_seconds"])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Least-squares fit `y = a + b x`; returns `(a, b, r_squared)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - a - b * x).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    (a, b, r2)
}

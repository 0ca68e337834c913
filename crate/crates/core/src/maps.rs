//! Built-in map layouts and user placements used by the benchmarks, the
//! simulation fixtures and the CLI.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Cell, GridMap};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 3] = ["open-22x10", "walled-88x27", "sparse-109x128"];

/// How users are placed on a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartPreset {
    /// Distinct free cells drawn uniformly at random.
    Random,
    /// One user in the top-left corner, the rest packed near the
    /// bottom-right corner.
    Stick,
}

impl std::str::FromStr for StartPreset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "random" => Ok(Self::Random),
            "stick" => Ok(Self::Stick),
            other => Err(format!("unknown start preset `{other}` (random, stick)")),
        }
    }
}

/// Obstacle-free `width` x `height` map.
pub fn open(width: usize, height: usize) -> Result<GridMap> {
    GridMap::from_cells(width, height, vec![Cell::Free; width * height], &[])
}

/// 88 x 27 map with an outer wall and interior wall segments that leave
/// narrow passages.
pub fn walled_88x27() -> GridMap {
    let (w, h) = (88, 27);
    let mut cells = vec![Cell::Free; w * h];
    let mut wall = |r: usize, c: usize| cells[r * w + c] = Cell::Wall;
    for c in 0..w {
        wall(0, c);
        wall(h - 1, c);
    }
    for r in 0..h {
        wall(r, 0);
        wall(r, w - 1);
    }
    // Vertical barriers, alternately open at the top and at the bottom.
    for (i, c) in [14, 29, 44, 59, 74].into_iter().enumerate() {
        let (from, to) = if i % 2 == 0 { (4, h - 1) } else { (1, h - 4) };
        for r in from..to {
            wall(r, c);
        }
    }
    // Shelves between the barriers.
    for (c0, c1, r) in [
        (3, 11, 9),
        (3, 11, 18),
        (18, 26, 13),
        (48, 56, 8),
        (48, 56, 19),
        (63, 71, 13),
        (78, 85, 9),
    ] {
        for c in c0..c1 {
            wall(r, c);
        }
    }
    GridMap::from_cells(w, h, cells, &[]).expect("static layout")
}

/// 109 x 128 open map with about 8% random walls. Cells cut off from the
/// main area are walled in, so the free cells stay connected.
pub fn sparse(width: usize, height: usize, seed: u64) -> Result<GridMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells: Vec<Cell> = (0..width * height)
        .map(|_| {
            if rng.random_bool(0.08) {
                Cell::Wall
            } else {
                Cell::Free
            }
        })
        .collect();
    let cells = keep_largest_component(width, height, cells);
    GridMap::from_cells(width, height, cells, &[])
}

pub fn sparse_109x128(seed: u64) -> GridMap {
    sparse(109, 128, seed).expect("non-empty map")
}

/// A built-in map by name; `seed` only affects `sparse-109x128`.
pub fn builtin(name: &str, seed: u64) -> Option<GridMap> {
    match name {
        "open-22x10" => open(22, 10).ok(),
        "walled-88x27" => Some(walled_88x27()),
        "sparse-109x128" => Some(sparse_109x128(seed)),
        _ => None,
    }
}

/// A named map with users placed on it.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// File-name friendly identifier, e.g. `open-22x10-3-random`.
    pub name: String,
    pub map: GridMap,
}

/// The pinned simulation scenarios: the open 22 x 10 map with 2 to 6 random
/// users, and the walled 88 x 27 map with 8 users in both presets.
pub fn fixture_scenarios() -> Vec<Scenario> {
    let mut out = Vec::new();
    let mut add = |base: &str, map: GridMap, k: usize, preset: StartPreset, seed: u64| {
        let users = place_users(&map, k, preset, seed).expect("map has room");
        let preset = match preset {
            StartPreset::Random => "random",
            StartPreset::Stick => "stick",
        };
        out.push(Scenario {
            name: format!("{base}-{k}-{preset}"),
            map: map.with_users(users).expect("placed on the map"),
        });
    };
    for k in 2..=6 {
        add(
            "open-22x10",
            open(22, 10).expect("non-empty"),
            k,
            StartPreset::Random,
            k as u64,
        );
    }
    add("walled-88x27", walled_88x27(), 8, StartPreset::Random, 8);
    add("walled-88x27", walled_88x27(), 8, StartPreset::Stick, 0);
    out
}

/// Vertex ids for `count` users.
pub fn place_users(
    map: &GridMap,
    count: usize,
    preset: StartPreset,
    seed: u64,
) -> Result<Vec<usize>> {
    let n = map.vertex_count();
    if count > n {
        return Err(Error::InvalidSource {
            vertex: count,
            vertex_count: n,
        });
    }
    Ok(match preset {
        StartPreset::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, n, count).into_iter().collect()
        }
        StartPreset::Stick => {
            if count == 0 {
                return Ok(Vec::new());
            }
            let corner = |v: usize| {
                let (r, c) = map.position(v);
                (map.height() - 1 - r) + (map.width() - 1 - c)
            };
            let mut by_corner: Vec<usize> = (0..n).collect();
            by_corner.sort_by_key(|&v| (corner(v), v));
            let mut users = vec![0];
            users.extend(by_corner.into_iter().filter(|&v| v != 0).take(count - 1));
            users
        }
    })
}

fn keep_largest_component(width: usize, height: usize, mut cells: Vec<Cell>) -> Vec<Cell> {
    let mut label = vec![usize::MAX; cells.len()];
    let mut sizes = Vec::new();
    for start in 0..cells.len() {
        if cells[start] == Cell::Wall || label[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        label[start] = id;
        while let Some(i) = queue.pop_front() {
            size += 1;
            let (r, c) = (i / width, i % width);
            let mut around = Vec::with_capacity(4);
            if r > 0 {
                around.push(i - width);
            }
            if r + 1 < height {
                around.push(i + width);
            }
            if c > 0 {
                around.push(i - 1);
            }
            if c + 1 < width {
                around.push(i + 1);
            }
            for j in around {
                if cells[j] == Cell::Free && label[j] == usize::MAX {
                    label[j] = id;
                    queue.push_back(j);
                }
            }
        }
        sizes.push(size);
    }
    let Some(keep) = (0..sizes.len()).max_by_key(|&i| (sizes[i], usize::MAX - i)) else {
        return cells;
    };
    for (cell, l) in cells.iter_mut().zip(&label) {
        if *l != keep {
            *cell = Cell::Wall;
        }
    }
    cells
}

//! ASCII grid maps.
//!
//! `#` is a wall, a space is free floor and `U` is a free cell where a user
//! starts. Rows shorter than the longest one are padded with walls. Free
//! cells become vertices in row-major order; 4-neighbouring free cells are
//! joined by unit-weight edges in both directions.

use crate::error::{Error, Result};
use crate::graph::{Direction, Edge, Graph, DISTANCE};
use crate::scalar::Scalar;

pub const WALL: char = '#';
pub const FREE: char = ' ';
pub const USER: char = 'U';
pub const VISITED: char = '.';
pub const DESTINATION: char = 'D';
pub const INITIAL_DESTINATION: char = 'I';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Wall,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
    /// Vertex id of every user start, in reading order.
    user_starts: Vec<usize>,
    vertex_of_cell: Vec<Option<usize>>,
    cell_of_vertex: Vec<usize>,
}

impl GridMap {
    /// Builds a map from a cell matrix and user start cells given as
    /// `(row, column)`.
    pub fn from_cells(
        width: usize,
        height: usize,
        cells: Vec<Cell>,
        starts: &[(usize, usize)],
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyMap);
        }
        assert_eq!(cells.len(), width * height, "cell matrix size");
        let mut vertex_of_cell = vec![None; cells.len()];
        let mut cell_of_vertex = Vec::new();
        for (i, c) in cells.iter().enumerate() {
            if *c == Cell::Free {
                vertex_of_cell[i] = Some(cell_of_vertex.len());
                cell_of_vertex.push(i);
            }
        }
        let mut user_starts = Vec::with_capacity(starts.len());
        for &(row, column) in starts {
            let v = (row < height && column < width)
                .then(|| vertex_of_cell[row * width + column])
                .flatten()
                .ok_or(Error::UserOnWall { row, column })?;
            user_starts.push(v);
        }
        Ok(Self {
            width,
            height,
            cells,
            user_starts,
            vertex_of_cell,
            cell_of_vertex,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell(&self, row: usize, column: usize) -> Cell {
        self.cells[row * self.width + column]
    }

    pub fn user_starts(&self) -> &[usize] {
        &self.user_starts
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_of_vertex.len()
    }

    pub fn vertex_at(&self, row: usize, column: usize) -> Option<usize> {
        if row < self.height && column < self.width {
            self.vertex_of_cell[row * self.width + column]
        } else {
            None
        }
    }

    /// `(row, column)` of a vertex. Panics if `v` is not a vertex of the map.
    pub fn position(&self, v: usize) -> (usize, usize) {
        let i = self.cell_of_vertex[v];
        (i / self.width, i % self.width)
    }

    /// Fails with [`Error::NoUsers`] when the map has no `U` cell.
    pub fn require_users(&self) -> Result<&[usize]> {
        if self.user_starts.is_empty() {
            Err(Error::NoUsers)
        } else {
            Ok(&self.user_starts)
        }
    }

    /// Replaces the user starts with the given vertices.
    pub fn with_users(mut self, users: Vec<usize>) -> Result<Self> {
        for &u in &users {
            if u >= self.vertex_count() {
                return Err(Error::InvalidSource {
                    vertex: u,
                    vertex_count: self.vertex_count(),
                });
            }
        }
        self.user_starts = users;
        Ok(self)
    }

    /// The graph of free cells, with a single `distance` channel.
    pub fn to_graph<T: Scalar>(&self) -> Graph<T> {
        let mut edges = Vec::new();
        for v in 0..self.vertex_count() {
            let (r, c) = self.position(v);
            // Right and down neighbours; the undirected build adds the reverse.
            for (dr, dc) in [(0, 1), (1, 0)] {
                if let Some(w) = self.vertex_at(r + dr, c + dc) {
                    edges.push(Edge::new(v, w, vec![T::one()]));
                }
            }
        }
        Graph::build(
            self.vertex_count(),
            &edges,
            &[DISTANCE],
            Direction::Undirected,
        )
        .expect("grid edges are valid by construction")
    }

    /// A blank canvas of the map: walls and floor only.
    pub fn canvas(&self) -> Canvas<'_> {
        let chars = self
            .cells
            .iter()
            .map(|c| match c {
                Cell::Wall => WALL,
                Cell::Free => FREE,
            })
            .collect();
        Canvas { map: self, chars }
    }

    /// Map text with user starts marked, one newline-terminated line per row.
    pub fn render(&self) -> String {
        let mut canvas = self.canvas();
        for &u in &self.user_starts {
            canvas.mark(u, USER);
        }
        canvas.to_string()
    }
}

/// Character buffer over a map used to draw frames.
#[derive(Debug, Clone)]
pub struct Canvas<'a> {
    map: &'a GridMap,
    chars: Vec<char>,
}

impl Canvas<'_> {
    pub fn mark(&mut self, v: usize, ch: char) {
        let i = self.map.cell_of_vertex[v];
        self.chars[i] = ch;
    }

    pub fn get(&self, v: usize) -> char {
        self.chars[self.map.cell_of_vertex[v]]
    }
}

impl std::fmt::Display for Canvas<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in self.chars.chunks(self.map.width) {
            let line: String = row.iter().collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Parses map text into a map and its graph.
pub fn parse_grid_map<T: Scalar>(text: &str) -> Result<(GridMap, Graph<T>)> {
    let map = parse_map(text)?;
    let graph = map.to_graph();
    Ok((map, graph))
}

/// Parses map text without building the graph.
pub fn parse_map(text: &str) -> Result<GridMap> {
    let mut lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let height = lines.len();
    if width == 0 {
        return Err(Error::EmptyMap);
    }

    let mut cells = vec![Cell::Wall; width * height];
    let mut starts = Vec::new();
    for (r, line) in lines.iter().enumerate() {
        for (c, ch) in line.chars().enumerate() {
            cells[r * width + c] = match ch {
                WALL => Cell::Wall,
                FREE => Cell::Free,
                USER => {
                    starts.push((r, c));
                    Cell::Free
                }
                other => {
                    return Err(Error::UnknownCharacter {
                        ch: other,
                        line: r + 1,
                        column: c + 1,
                    })
                }
            };
        }
    }
    GridMap::from_cells(width, height, cells, &starts)
}

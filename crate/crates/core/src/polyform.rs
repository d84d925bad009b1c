//! Polyforms as cell sets: normalization, congruence, haloes, placements,
//! enumeration and the text formats.

use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::lattice::{iamond_color, Cell, GridKind, LatticeError, TriangleColor, Transform};
use crate::raster;

/// Largest order [`enumerate_free`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a shape needs at least one cell")]
    Empty,
    #[error("malformed cell token '{0}'")]
    Malformed(String),
    #[error("'{token}' is not a valid {grid} cell")]
    InvalidCell { grid: GridKind, token: String },
    #[error("cell '{0}' is not edge-connected to the rest of the shape")]
    Disconnected(String),
    #[error("boundary word: {0}")]
    BoundaryWord(String),
    #[error("placements are not adjacent")]
    NotAdjacent,
    #[error("enumeration of order {requested} exceeds the limit of {limit}")]
    OrderLimit { requested: usize, limit: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A polyform: a nonempty, edge-connected set of cells, normalized so that it
/// contains the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    grid: GridKind,
    cells: Vec<Cell>,
}

impl Shape {
    /// Validates and normalizes a cell set.
    pub fn new(grid: GridKind, cells: impl IntoIterator<Item = Cell>) -> Result<Shape, ShapeError> {
        let tokens: Vec<Cell> = cells.into_iter().collect();
        check_cells(grid, &tokens)?;
        let mut cells = tokens;
        cells.sort();
        cells.dedup();
        if grid == GridKind::Iamond && cells.iter().all(|p| iamond_color(*p) != Some(TriangleColor::Black)) {
            // a lone down-pointing triangle is congruent to an up-pointing one
            cells = vec![Cell::ORIGIN];
        }
        normalize(grid, &mut cells);
        Ok(Shape { grid, cells })
    }

    pub(crate) fn from_normalized(grid: GridKind, cells: Vec<Cell>) -> Shape {
        Shape { grid, cells }
    }

    pub fn grid(&self) -> GridKind {
        self.grid
    }

    /// Sorted cells.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_simply_connected(&self) -> bool {
        raster::is_simply_connected(self.grid, &self.cells)
    }

    /// The transformed copy `t(S)`, sorted.
    pub fn image(&self, t: Transform) -> Vec<Cell> {
        let mut v: Vec<Cell> = self.cells.iter().map(|&p| t.map(self.grid, p)).collect();
        v.sort();
        v
    }

    pub fn place(&self, t: Transform) -> Result<Placement, LatticeError> {
        self.grid.check_transform(t)?;
        Ok(Placement { transform: t, cells: self.image(t) })
    }

    /// Lexicographically least normalized image over all orientations.
    pub fn canonical_form(&self) -> Shape {
        let mut best: Option<Vec<Cell>> = None;
        let mut buf = Vec::with_capacity(self.cells.len());
        for o in self.grid.orientations() {
            buf.clear();
            buf.extend(self.cells.iter().map(|&p| o.map(p)));
            buf.sort();
            normalize(self.grid, &mut buf);
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        Shape { grid: self.grid, cells: best.expect("at least one orientation") }
    }

    pub fn is_congruent(&self, other: &Shape) -> bool {
        self.grid == other.grid && self.canonical_form() == other.canonical_form()
    }

    /// Cell-list text: `x,y` tokens separated by single spaces.
    pub fn serialize(&self) -> String {
        self.cells.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn check_cells(grid: GridKind, cells: &[Cell]) -> Result<(), ShapeError> {
    if cells.is_empty() {
        return Err(ShapeError::Empty);
    }
    if let Some(p) = cells.iter().find(|p| !grid.is_valid_cell(**p)) {
        return Err(ShapeError::InvalidCell { grid, token: p.to_string() });
    }
    let set: FxHashSet<Cell> = cells.iter().copied().collect();
    let mut seen = FxHashSet::default();
    let mut stack = vec![cells[0]];
    seen.insert(cells[0]);
    while let Some(p) = stack.pop() {
        for q in grid.edge_neighbors(p) {
            if set.contains(&q) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    match cells.iter().find(|p| !seen.contains(p)) {
        Some(p) => Err(ShapeError::Disconnected(p.to_string())),
        None => Ok(()),
    }
}

/// Translates a sorted cell list so it contains the origin: the least cell
/// for squares and hexagons, the least black triangle for triangles.
fn normalize(grid: GridKind, cells: &mut [Cell]) {
    let anchor = match grid {
        GridKind::Square | GridKind::Hex => cells[0],
        GridKind::Iamond => match cells.iter().find(|p| iamond_color(**p) == Some(TriangleColor::Black)) {
            Some(p) => *p,
            None => cells[0] - Cell::new(1, 1),
        },
    };
    for p in cells.iter_mut() {
        *p = *p - anchor;
    }
}

/// A transformed copy of a shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    pub transform: Transform,
    /// Sorted image cells.
    pub cells: Vec<Cell>,
}

/// Cells outside `cells` that touch it at an edge or corner.
pub fn halo(grid: GridKind, cells: &[Cell]) -> Vec<Cell> {
    let inside: FxHashSet<Cell> = cells.iter().copied().collect();
    let mut out: FxHashSet<Cell> = FxHashSet::default();
    for &p in cells {
        for q in grid.halo_neighbors(p) {
            if !inside.contains(&q) {
                out.insert(q);
            }
        }
    }
    let mut v: Vec<Cell> = out.into_iter().collect();
    v.sort();
    v
}

fn overlaps(a: &[Cell], b: &[Cell]) -> bool {
    let set: FxHashSet<Cell> = a.iter().copied().collect();
    b.iter().any(|p| set.contains(p))
}

/// Disjoint but touching (at an edge or a corner).
pub fn adjacent(grid: GridKind, a: &Placement, b: &Placement) -> bool {
    if overlaps(&a.cells, &b.cells) {
        return false;
    }
    let hb: FxHashSet<Cell> = halo(grid, &b.cells).into_iter().collect();
    a.cells.iter().any(|p| hb.contains(p))
}

/// Whether two adjacent placements together enclose at least one empty cell.
pub fn pair_encloses_hole(grid: GridKind, a: &Placement, b: &Placement) -> Result<bool, ShapeError> {
    if !adjacent(grid, a, b) {
        return Err(ShapeError::NotAdjacent);
    }
    let union: Vec<Cell> = a.cells.iter().chain(&b.cells).copied().collect();
    Ok(!raster::is_simply_connected(grid, &union))
}

/// Every free polyform with `n` cells, once each, as canonical forms in
/// sorted order. With `exclude_holed` only simply connected ones are kept.
pub fn enumerate_free(grid: GridKind, n: usize, exclude_holed: bool) -> Result<Vec<Shape>, ShapeError> {
    enumerate_free_with_limit(grid, n, exclude_holed, MAX_ENUMERATION_ORDER)
}

pub fn enumerate_free_with_limit(
    grid: GridKind,
    n: usize,
    exclude_holed: bool,
    limit: usize,
) -> Result<Vec<Shape>, ShapeError> {
    if n == 0 {
        return Err(ShapeError::Empty);
    }
    if n > limit {
        return Err(ShapeError::OrderLimit { requested: n, limit });
    }
    let mut level: Vec<Shape> = vec![Shape::from_normalized(grid, vec![Cell::ORIGIN]).canonical_form()];
    for _ in 1..n {
        let mut next: FxHashSet<Shape> = FxHashSet::default();
        for s in &level {
            let members: FxHashSet<Cell> = s.cells.iter().copied().collect();
            let mut grown = FxHashSet::default();
            for &p in &s.cells {
                for q in grid.edge_neighbors(p) {
                    if members.contains(&q) || !grown.insert(q) {
                        continue;
                    }
                    let mut cells = s.cells.clone();
                    cells.push(q);
                    cells.sort();
                    normalize(grid, &mut cells);
                    next.insert(Shape::from_normalized(grid, cells).canonical_form());
                }
            }
        }
        level = next.into_iter().collect();
        level.sort();
    }
    if exclude_holed {
        level.retain(|s| s.is_simply_connected());
    }
    Ok(level)
}

/// One line of a shape file after parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedShape {
    pub id: Option<String>,
    pub shape: Shape,
}

/// Parses `[id:] x,y x,y ...`.
pub fn parse_shape(line: &str, grid: GridKind) -> Result<ParsedShape, ShapeError> {
    let line = line.trim();
    let (id, body) = match line.split_once(':') {
        Some((id, rest)) => (Some(id.trim().to_string()), rest.trim()),
        None => (None, line),
    };
    let mut cells = Vec::new();
    for tok in body.split_whitespace() {
        let cell = parse_cell(tok).ok_or_else(|| ShapeError::Malformed(tok.to_string()))?;
        if !grid.is_valid_cell(cell) {
            return Err(ShapeError::InvalidCell { grid, token: tok.to_string() });
        }
        cells.push(cell);
    }
    Ok(ParsedShape { id, shape: Shape::new(grid, cells)? })
}

fn parse_cell(tok: &str) -> Option<Cell> {
    let (x, y) = tok.split_once(',')?;
    Some(Cell::new(x.parse().ok()?, y.parse().ok()?))
}

pub fn serialize_shape(shape: &Shape) -> String {
    shape.serialize()
}

/// Parses a closed boundary word into the shape it encloses.
///
/// Squares use the letters `E N W S`. Hexagons and triangles use the digits
/// `0`–`5` for six evenly spaced directions: triangle edges point at
/// `60°·d`, hexagon edges at `30° + 60°·d`. The walk may run either way round.
pub fn parse_boundary_word(word: &str, grid: GridKind) -> Result<Shape, ShapeError> {
    let err = |m: &str| ShapeError::BoundaryWord(m.to_string());
    let steps: Vec<usize> = word
        .trim()
        .chars()
        .map(|ch| match (grid, ch.to_ascii_uppercase()) {
            (GridKind::Square, 'E') => Ok(0),
            (GridKind::Square, 'N') => Ok(1),
            (GridKind::Square, 'W') => Ok(2),
            (GridKind::Square, 'S') => Ok(3),
            (GridKind::Hex | GridKind::Iamond, d @ '0'..='5') => Ok(d as usize - '0' as usize),
            _ => Err(ShapeError::BoundaryWord(format!("unexpected letter '{ch}'"))),
        })
        .collect::<Result<_, _>>()?;
    if steps.is_empty() {
        return Err(err("empty word"));
    }
    let (start, vectors): ((i64, i64), &[(i64, i64)]) = match grid {
        GridKind::Square => ((-1, -1), &[(2, 0), (0, 2), (-2, 0), (0, -2)]),
        GridKind::Hex => (
            if steps[0].is_multiple_of(2) { (1, 1) } else { (2, -1) },
            &[(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)],
        ),
        GridKind::Iamond => ((-1, -1), &[(3, 0), (0, 3), (-3, 3), (-3, 0), (0, -3), (3, -3)]),
    };
    let mut pos = start;
    let mut visited: FxHashMap<(i64, i64), usize> = FxHashMap::default();
    let mut poly = Vec::with_capacity(steps.len());
    for (i, &d) in steps.iter().enumerate() {
        if grid == GridKind::Hex {
            // each hexagon corner has three edges; their parity alternates
            let even_corner = pos.0.rem_euclid(3) == 1;
            if even_corner != (d % 2 == 0) {
                return Err(ShapeError::BoundaryWord(format!("step {} does not follow a cell edge", i + 1)));
            }
        }
        if visited.insert(pos, i).is_some() {
            return Err(ShapeError::BoundaryWord(format!("word crosses itself at step {}", i + 1)));
        }
        poly.push(pos);
        pos = (pos.0 + vectors[d].0, pos.1 + vectors[d].1);
    }
    if pos != start {
        return Err(err("word is not closed"));
    }
    let s = grid.fine_scale();
    let (minx, maxx) = poly.iter().fold((i64::MAX, i64::MIN), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (miny, maxy) = poly.iter().fold((i64::MAX, i64::MIN), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let mut cells = Vec::new();
    for y in (miny.div_euclid(s) - 1)..=(maxy.div_euclid(s) + 1) {
        for x in (minx.div_euclid(s) - 1)..=(maxx.div_euclid(s) + 1) {
            let c = Cell::new(x as i32, y as i32);
            if grid.is_valid_cell(c) && point_in_polygon((x * s, y * s), &poly) {
                cells.push(c);
            }
        }
    }
    if cells.is_empty() {
        return Err(err("word encloses no cells"));
    }
    Shape::new(grid, cells)
}

/// Crossing-number test; the point must not lie on the boundary.
fn point_in_polygon(p: (i64, i64), poly: &[(i64, i64)]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.1 > p.1) != (b.1 > p.1) {
            // x coordinate of the crossing compared without division
            let lhs = (p.0 - a.0) * (b.1 - a.1);
            let rhs = (b.0 - a.0) * (p.1 - a.1);
            if (b.1 > a.1 && lhs < rhs) || (b.1 < a.1 && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

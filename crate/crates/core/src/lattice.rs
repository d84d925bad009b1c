//! The three ambient grids and rigid-motion arithmetic on them.
//!
//! Square cells use ordinary integer coordinates. Hexagonal cells use the
//! basis `v = (1, 0)`, `w = (1/2, √3/2)`, so every hexagon centre has an
//! integer coordinate pair. Triangles are stored sparsely inside the hexagonal
//! grid: up-pointing ("black") triangles sit on cells with both coordinates
//! divisible by 3 and down-pointing ("grey") triangles on cells congruent to
//! `(1, 1)` modulo 3. All other hexagonal cells are unused.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Float;
use thiserror::Error;

/// Smallest translation component that still packs into a [`Transform`] word.
pub const TRANSLATION_MIN: i32 = -128;
/// Largest translation component that still packs into a [`Transform`] word.
pub const TRANSLATION_MAX: i32 = 127;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cell ({x}, {y}) is not a {grid} cell")]
    InvalidCell { grid: GridKind, x: i32, y: i32 },
    #[error("transform {transform} is not valid on the {grid} grid")]
    InvalidTransform { grid: GridKind, transform: Transform },
    #[error("translation ({tx}, {ty}) is outside the packable range [{min}, {max}]", min = TRANSLATION_MIN, max = TRANSLATION_MAX)]
    TranslationRange { tx: i64, ty: i64 },
}

/// Which ambient tiling a polyform lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridKind {
    Square,
    Hex,
    Iamond,
}

impl GridKind {
    pub const ALL: [GridKind; 3] = [GridKind::Square, GridKind::Hex, GridKind::Iamond];

    /// Name used on the command line and in file headers.
    pub fn name(self) -> &'static str {
        match self {
            GridKind::Square => "omino",
            GridKind::Hex => "hex",
            GridKind::Iamond => "iamond",
        }
    }

    pub fn orientation_count(self) -> usize {
        match self {
            GridKind::Square => 8,
            GridKind::Hex | GridKind::Iamond => 12,
        }
    }

    pub fn is_valid_cell(self, p: Cell) -> bool {
        match self {
            GridKind::Square | GridKind::Hex => true,
            GridKind::Iamond => iamond_color(p).is_some(),
        }
    }

    pub fn check_cell(self, p: Cell) -> Result<(), LatticeError> {
        if self.is_valid_cell(p) {
            Ok(())
        } else {
            Err(LatticeError::InvalidCell { grid: self, x: p.x, y: p.y })
        }
    }

    /// The full orientation set, index 0 being the identity.
    ///
    /// Square: rotations by 0, 90, 180, 270 degrees counter-clockwise, then
    /// the same four rotations applied after a reflection in the x axis.
    /// Hex: `A^i` for `i = 0..6`, then `A^i B`. Iamond: the six hex matrices
    /// that keep black triangles black, in hex order, followed by the six that
    /// swap colours (each followed by a translation of `(1, -2)`).
    pub fn orientations(self) -> &'static [Orientation] {
        static SQUARE: OnceLock<Vec<Orientation>> = OnceLock::new();
        static HEX: OnceLock<Vec<Orientation>> = OnceLock::new();
        static IAMOND: OnceLock<Vec<Orientation>> = OnceLock::new();
        match self {
            GridKind::Square => SQUARE.get_or_init(square_orientations),
            GridKind::Hex => HEX.get_or_init(hex_orientations),
            GridKind::Iamond => IAMOND.get_or_init(iamond_orientations),
        }
    }

    /// Applies a transform to a cell, checking both against the grid.
    pub fn apply(self, t: Transform, p: Cell) -> Result<Cell, LatticeError> {
        self.check_transform(t)?;
        self.check_cell(p)?;
        Ok(t.map(self, p))
    }

    pub fn check_transform(self, t: Transform) -> Result<(), LatticeError> {
        let ok = (t.orientation as usize) < self.orientation_count()
            && in_packable_range(t.tx as i64, t.ty as i64)
            && (self != GridKind::Iamond || (t.tx.rem_euclid(3) == 0 && t.ty.rem_euclid(3) == 0));
        if ok {
            Ok(())
        } else {
            Err(LatticeError::InvalidTransform { grid: self, transform: t })
        }
    }

    /// Returns the transform `t1 ∘ t2`, i.e. `apply(t1, apply(t2, p))`.
    pub fn compose(self, t1: Transform, t2: Transform) -> Result<Transform, LatticeError> {
        self.check_transform(t1)?;
        self.check_transform(t2)?;
        let orients = self.orientations();
        let o1 = &orients[t1.orientation as usize];
        let o2 = &orients[t2.orientation as usize];
        let m = mat_mul(o1.matrix, o2.matrix);
        let o3 = orients
            .iter()
            .find(|o| o.matrix == m)
            .expect("orientation set is closed under composition");
        // M1 (M2 p + off2 + t2) + off1 + t1 = M3 p + off3 + t
        let inner = Cell::new(o2.offset.x + t2.tx, o2.offset.y + t2.ty);
        let moved = mat_apply(o1.matrix, inner);
        let tx = moved.x as i64 + o1.offset.x as i64 + t1.tx as i64 - o3.offset.x as i64;
        let ty = moved.y as i64 + o1.offset.y as i64 + t1.ty as i64 - o3.offset.y as i64;
        if !in_packable_range(tx, ty) {
            return Err(LatticeError::TranslationRange { tx, ty });
        }
        let t = Transform::new(o3.index, tx as i32, ty as i32);
        self.check_transform(t)?;
        Ok(t)
    }

    /// Cells sharing an edge or a vertex with `p`: 8 for squares, 6 for
    /// hexagons, 12 for triangles.
    pub fn halo_neighbors(self, p: Cell) -> impl Iterator<Item = Cell> + Clone {
        self.halo_offsets(p).iter().map(move |d| p + *d)
    }

    /// Cells sharing an edge with `p`: 4 for squares, 6 for hexagons, 3 for
    /// triangles.
    pub fn edge_neighbors(self, p: Cell) -> impl Iterator<Item = Cell> + Clone {
        self.edge_offsets(p).iter().map(move |d| p + *d)
    }

    pub(crate) fn halo_offsets(self, p: Cell) -> &'static [Cell] {
        match self {
            GridKind::Square => &SQUARE_HALO,
            GridKind::Hex => &HEX_RING,
            GridKind::Iamond => match iamond_color(p) {
                Some(TriangleColor::Grey) => &GREY_HALO,
                _ => &BLACK_HALO,
            },
        }
    }

    pub(crate) fn edge_offsets(self, p: Cell) -> &'static [Cell] {
        match self {
            GridKind::Square => &SQUARE_EDGE,
            GridKind::Hex => &HEX_RING,
            GridKind::Iamond => match iamond_color(p) {
                Some(TriangleColor::Grey) => &GREY_EDGE,
                _ => &BLACK_EDGE,
            },
        }
    }

    /// Centre of a cell in the Cartesian plane.
    pub fn to_cartesian<T: Float>(self, p: Cell) -> Point<T> {
        fine_to_cartesian(self, p.x as i64 * self.fine_scale(), p.y as i64 * self.fine_scale())
    }

    /// Denominator of the "fine" coordinates used for cell outlines.
    ///
    /// Cell vertices are integral in units of `1 / fine_scale` of the
    /// lattice basis: half-steps for squares, thirds for hexagons, and whole
    /// steps for triangles (whose side is three hexagon spacings long).
    pub fn fine_scale(self) -> i64 {
        match self {
            GridKind::Square => 2,
            GridKind::Hex => 3,
            GridKind::Iamond => 1,
        }
    }

    /// Corners of a cell in fine coordinates, counter-clockwise.
    pub fn cell_outline(self, p: Cell) -> Vec<(i64, i64)> {
        let s = self.fine_scale();
        let (cx, cy) = (p.x as i64 * s, p.y as i64 * s);
        let offsets: &[(i64, i64)] = match self {
            GridKind::Square => &[(-1, -1), (1, -1), (1, 1), (-1, 1)],
            GridKind::Hex => &[(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)],
            GridKind::Iamond => match iamond_color(p) {
                Some(TriangleColor::Grey) => &[(1, -2), (1, 1), (-2, 1)],
                _ => &[(-1, -1), (2, -1), (-1, 2)],
            },
        };
        offsets.iter().map(|&(dx, dy)| (cx + dx, cy + dy)).collect()
    }

    /// Area of a single cell in the Cartesian plane.
    pub fn cell_area<T: Float>(self) -> T {
        let three = T::from(3.0).unwrap();
        match self {
            GridKind::Square => T::one(),
            GridKind::Hex => three.sqrt() / T::from(2.0).unwrap(),
            // side 3: (√3 / 4) · 9
            GridKind::Iamond => three.sqrt() * T::from(9.0 / 4.0).unwrap(),
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GridKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "omino" | "square" => Ok(GridKind::Square),
            "hex" => Ok(GridKind::Hex),
            "iamond" => Ok(GridKind::Iamond),
            other => Err(format!("unknown grid '{other}' (expected omino, hex or iamond)")),
        }
    }
}

/// Converts fine coordinates (see [`GridKind::fine_scale`]) to Cartesian.
pub fn fine_to_cartesian<T: Float>(grid: GridKind, fx: i64, fy: i64) -> Point<T> {
    let s = T::from(grid.fine_scale()).unwrap();
    let x = T::from(fx).unwrap() / s;
    let y = T::from(fy).unwrap() / s;
    match grid {
        GridKind::Square => Point { x, y },
        GridKind::Hex | GridKind::Iamond => {
            let half = T::from(0.5).unwrap();
            Point { x: x + y * half, y: y * T::from(3.0).unwrap().sqrt() * half }
        }
    }
}

/// A point in the Cartesian plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Float> Point<T> {
    pub fn distance(self, other: Point<T>) -> T {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// An integer coordinate pair in the grid's basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }
}

impl std::ops::Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        Cell::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        Cell::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleColor {
    /// Up-pointing, coordinates ≡ (0, 0) mod 3.
    Black,
    /// Down-pointing, coordinates ≡ (1, 1) mod 3.
    Grey,
}

pub fn iamond_color(p: Cell) -> Option<TriangleColor> {
    match (p.x.rem_euclid(3), p.y.rem_euclid(3)) {
        (0, 0) => Some(TriangleColor::Black),
        (1, 1) => Some(TriangleColor::Grey),
        _ => None,
    }
}

pub type Matrix = [[i32; 2]; 2];

/// A linear part plus a fixed displacement; the displacement is non-zero only
/// for the colour-swapping triangle orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orientation {
    pub index: u8,
    pub matrix: Matrix,
    pub offset: Cell,
}

impl Orientation {
    #[inline]
    pub fn map(&self, p: Cell) -> Cell {
        mat_apply(self.matrix, p) + self.offset
    }
}

/// Hexagonal 60° rotation.
pub const HEX_A: Matrix = [[0, -1], [1, 1]];
/// Hexagonal reflection across the `v` axis.
pub const HEX_B: Matrix = [[1, 1], [0, -1]];
const IDENTITY: Matrix = [[1, 0], [0, 1]];
const SQUARE_ROT: Matrix = [[0, -1], [1, 0]];
const SQUARE_FLIP: Matrix = [[1, 0], [0, -1]];
/// Displacement that follows a colour-swapping triangle orientation.
pub const IAMOND_SWAP_OFFSET: Cell = Cell::new(1, -2);

pub fn mat_mul(a: Matrix, b: Matrix) -> Matrix {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

#[inline]
pub fn mat_apply(m: Matrix, p: Cell) -> Cell {
    Cell::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

fn powers(gen: Matrix, count: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(count);
    let mut m = IDENTITY;
    for _ in 0..count {
        out.push(m);
        m = mat_mul(m, gen);
    }
    out
}

fn indexed(list: Vec<(Matrix, Cell)>) -> Vec<Orientation> {
    list.into_iter()
        .enumerate()
        .map(|(i, (matrix, offset))| Orientation { index: i as u8, matrix, offset })
        .collect()
}

fn square_orientations() -> Vec<Orientation> {
    let rots = powers(SQUARE_ROT, 4);
    let mut all: Vec<_> = rots.iter().map(|&r| (r, Cell::ORIGIN)).collect();
    all.extend(rots.iter().map(|&r| (mat_mul(r, SQUARE_FLIP), Cell::ORIGIN)));
    indexed(all)
}

fn hex_matrices() -> Vec<Matrix> {
    let rots = powers(HEX_A, 6);
    let mut all = rots.clone();
    all.extend(rots.iter().map(|&r| mat_mul(r, HEX_B)));
    all
}

fn hex_orientations() -> Vec<Orientation> {
    indexed(hex_matrices().into_iter().map(|m| (m, Cell::ORIGIN)).collect())
}

fn iamond_orientations() -> Vec<Orientation> {
    let grey = Cell::new(1, 1);
    let (keep, swap): (Vec<Matrix>, Vec<Matrix>) = hex_matrices()
        .into_iter()
        .partition(|&m| iamond_color(mat_apply(m, grey)) == Some(TriangleColor::Grey));
    let mut all: Vec<_> = keep.into_iter().map(|m| (m, Cell::ORIGIN)).collect();
    all.extend(swap.into_iter().map(|m| (m, IAMOND_SWAP_OFFSET)));
    indexed(all)
}

/// A rigid motion: an orientation followed by an integer translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Transform {
    pub orientation: u8,
    pub tx: i32,
    pub ty: i32,
}

impl Transform {
    pub const IDENTITY: Transform = Transform { orientation: 0, tx: 0, ty: 0 };

    pub const fn new(orientation: u8, tx: i32, ty: i32) -> Self {
        Transform { orientation, tx, ty }
    }

    /// Applies the transform without validating either argument.
    #[inline]
    pub fn map(self, grid: GridKind, p: Cell) -> Cell {
        let o = &grid.orientations()[self.orientation as usize];
        o.map(p) + Cell::new(self.tx, self.ty)
    }

    /// Packs into one word: orientation in the top byte, then the two
    /// translation components as signed bytes.
    pub fn pack(self) -> Result<u32, LatticeError> {
        if !in_packable_range(self.tx as i64, self.ty as i64) {
            return Err(LatticeError::TranslationRange { tx: self.tx as i64, ty: self.ty as i64 });
        }
        if self.orientation >= 16 {
            return Err(LatticeError::InvalidTransform { grid: GridKind::Hex, transform: self });
        }
        Ok(((self.orientation as u32) << 16) | ((self.tx as i8 as u8 as u32) << 8) | (self.ty as i8 as u8 as u32))
    }

    pub fn unpack(word: u32) -> Transform {
        Transform::new(((word >> 16) & 0xff) as u8, ((word >> 8) & 0xff) as u8 as i8 as i32, (word & 0xff) as u8 as i8 as i32)
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.orientation, self.tx, self.ty)
    }
}

fn in_packable_range(tx: i64, ty: i64) -> bool {
    let r = TRANSLATION_MIN as i64..=TRANSLATION_MAX as i64;
    r.contains(&tx) && r.contains(&ty)
}

const fn c(x: i32, y: i32) -> Cell {
    Cell::new(x, y)
}

const SQUARE_EDGE: [Cell; 4] = [c(1, 0), c(0, 1), c(-1, 0), c(0, -1)];
const SQUARE_HALO: [Cell; 8] = [c(1, 0), c(1, 1), c(0, 1), c(-1, 1), c(-1, 0), c(-1, -1), c(0, -1), c(1, -1)];
const HEX_RING: [Cell; 6] = [c(1, 0), c(0, 1), c(-1, 1), c(-1, 0), c(0, -1), c(1, -1)];

// Triangle neighbourhoods. A triangle's halo is every triangle sharing at
// least one corner with it; its edge neighbours share two.
const BLACK_EDGE: [Cell; 3] = [c(1, 1), c(-2, 1), c(1, -2)];
const GREY_EDGE: [Cell; 3] = [c(-1, -1), c(2, -1), c(-1, 2)];
const BLACK_HALO: [Cell; 12] = [
    c(1, 1),
    c(-2, 1),
    c(1, -2),
    c(3, 0),
    c(0, 3),
    c(-3, 3),
    c(-3, 0),
    c(0, -3),
    c(3, -3),
    c(-2, 4),
    c(-2, -2),
    c(4, -2),
];
const GREY_HALO: [Cell; 12] = [
    c(-1, -1),
    c(2, -1),
    c(-1, 2),
    c(3, 0),
    c(0, 3),
    c(-3, 3),
    c(-3, 0),
    c(0, -3),
    c(3, -3),
    c(2, 2),
    c(-4, 2),
    c(2, -4),
];

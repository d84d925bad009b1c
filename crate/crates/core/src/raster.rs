//! Labelled rasters over a bounding box, used for hole detection.

use std::collections::VecDeque;

use crate::lattice::{Cell, GridKind};

const EMPTY: u32 = 0;
const UNUSED: u32 = u32::MAX;

/// A dense grid of labels covering the bounding box of some cells plus a
/// margin wide enough that the empty cells around the box are edge-connected.
#[derive(Debug, Clone)]
pub struct Raster {
    grid: GridKind,
    min: Cell,
    max: Cell,
    x0: i32,
    y0: i32,
    width: usize,
    height: usize,
    labels: Vec<u32>,
}

impl Raster {
    /// Builds an empty raster around `cells`. Returns `None` for no cells.
    pub fn around<I: IntoIterator<Item = Cell>>(grid: GridKind, cells: I) -> Option<Raster> {
        let mut it = cells.into_iter();
        let first = it.next()?;
        let (mut min, mut max) = (first, first);
        for p in it {
            min = Cell::new(min.x.min(p.x), min.y.min(p.y));
            max = Cell::new(max.x.max(p.x), max.y.max(p.y));
        }
        // Triangles need a band holding a black and a grey row (or column).
        let margin = if grid == GridKind::Iamond { 4 } else { 1 };
        let x0 = min.x - margin;
        let y0 = min.y - margin;
        let width = (max.x - min.x + 2 * margin + 1) as usize;
        let height = (max.y - min.y + 2 * margin + 1) as usize;
        let mut labels = vec![EMPTY; width * height];
        if grid == GridKind::Iamond {
            for j in 0..height {
                for i in 0..width {
                    if !grid.is_valid_cell(Cell::new(x0 + i as i32, y0 + j as i32)) {
                        labels[j * width + i] = UNUSED;
                    }
                }
            }
        }
        Some(Raster { grid, min, max, x0, y0, width, height, labels })
    }

    #[inline]
    fn index(&self, p: Cell) -> Option<usize> {
        let i = p.x - self.x0;
        let j = p.y - self.y0;
        if i < 0 || j < 0 || i as usize >= self.width || j as usize >= self.height {
            None
        } else {
            Some(j as usize * self.width + i as usize)
        }
    }

    /// Label at `p`; 0 means empty or outside the raster.
    pub fn label(&self, p: Cell) -> u32 {
        match self.index(p).map(|i| self.labels[i]) {
            Some(UNUSED) | None => EMPTY,
            Some(l) => l,
        }
    }

    /// Writes a non-zero label. On collision returns the label already present.
    ///
    /// # Panics
    /// If `p` lies outside the raster's bounding box or `label` is 0.
    pub fn paint(&mut self, p: Cell, label: u32) -> Result<(), u32> {
        assert!(label != EMPTY && label != UNUSED);
        let i = self.index(p).expect("cell inside raster");
        match self.labels[i] {
            EMPTY => {
                self.labels[i] = label;
                Ok(())
            }
            other => Err(other),
        }
    }

    /// Connected groups of empty cells that a flood fill from outside the
    /// bounding box cannot reach, moving only across shared edges. Only labels
    /// accepted by `solid` count as walls; other labels are treated as empty.
    pub fn enclosed_regions_where(&self, solid: impl Fn(u32) -> bool) -> Vec<Vec<Cell>> {
        let n = self.labels.len();
        let is_open = |i: usize| {
            let l = self.labels[i];
            l != UNUSED && (l == EMPTY || !solid(l))
        };
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for j in 0..self.height {
            for i in 0..self.width {
                let p = Cell::new(self.x0 + i as i32, self.y0 + j as i32);
                let outside = p.x < self.min.x || p.x > self.max.x || p.y < self.min.y || p.y > self.max.y;
                let k = j * self.width + i;
                if outside && is_open(k) {
                    seen[k] = true;
                    queue.push_back(p);
                }
            }
        }
        self.flood(&mut queue, &mut seen, &is_open, |_| {});

        let mut regions = Vec::new();
        for k in 0..n {
            if seen[k] || !is_open(k) {
                continue;
            }
            let p = Cell::new(self.x0 + (k % self.width) as i32, self.y0 + (k / self.width) as i32);
            seen[k] = true;
            queue.push_back(p);
            let mut region = Vec::new();
            self.flood(&mut queue, &mut seen, &is_open, |q| region.push(q));
            region.sort();
            regions.push(region);
        }
        regions
    }

    /// Enclosed empty regions with every painted cell acting as a wall.
    pub fn enclosed_regions(&self) -> Vec<Vec<Cell>> {
        self.enclosed_regions_where(|_| true)
    }

    fn flood(
        &self,
        queue: &mut VecDeque<Cell>,
        seen: &mut [bool],
        is_open: &impl Fn(usize) -> bool,
        mut visit: impl FnMut(Cell),
    ) {
        while let Some(p) = queue.pop_front() {
            visit(p);
            for q in self.grid.edge_neighbors(p) {
                if let Some(k) = self.index(q) {
                    if !seen[k] && is_open(k) {
                        seen[k] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
    }
}

/// Enclosed empty regions of a cell set (empty when it is simply connected).
pub fn enclosed_regions(grid: GridKind, cells: &[Cell]) -> Vec<Vec<Cell>> {
    let Some(mut r) = Raster::around(grid, cells.iter().copied()) else {
        return Vec::new();
    };
    for &p in cells {
        // duplicates are harmless here
        let _ = r.paint(p, 1);
    }
    r.enclosed_regions()
}

pub fn is_simply_connected(grid: GridKind, cells: &[Cell]) -> bool {
    enclosed_regions(grid, cells).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i32, i32)]) -> Vec<Cell> {
        v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    #[test]
    fn square_ring_has_one_hole() {
        let ring = cells(&[(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)]);
        assert_eq!(enclosed_regions(GridKind::Square, &ring), vec![vec![Cell::ORIGIN]]);
    }

    #[test]
    fn diagonal_gap_still_encloses() {
        // corner cell missing: (0,0) only touches the outside diagonally
        let ring = cells(&[(0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)]);
        assert_eq!(enclosed_regions(GridKind::Square, &ring).len(), 1);
    }

    #[test]
    fn hex_ring_has_one_hole() {
        let ring: Vec<Cell> = GridKind::Hex.halo_neighbors(Cell::ORIGIN).collect();
        assert_eq!(enclosed_regions(GridKind::Hex, &ring), vec![vec![Cell::ORIGIN]]);
    }

    #[test]
    fn triangle_rings_enclose() {
        let around: Vec<Cell> = GridKind::Iamond.halo_neighbors(Cell::ORIGIN).collect();
        assert_eq!(enclosed_regions(GridKind::Iamond, &around), vec![vec![Cell::ORIGIN]]);
        let corners_only: Vec<Cell> = GridKind::Iamond
            .halo_neighbors(Cell::ORIGIN)
            .filter(|q| !GridKind::Iamond.edge_neighbors(Cell::ORIGIN).any(|e| e == *q))
            .collect();
        // the origin and its three edge neighbours form one enclosed big triangle
        let holes = enclosed_regions(GridKind::Iamond, &corners_only);
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].len(), 4);
        assert!(enclosed_regions(GridKind::Iamond, &corners_only[..5]).is_empty());
    }

    #[test]
    fn convex_blocks_are_simply_connected() {
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        for g in [GridKind::Square, GridKind::Hex] {
            assert!(is_simply_connected(g, &block));
        }
    }
}

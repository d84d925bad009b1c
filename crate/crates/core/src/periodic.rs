//! Doubly periodic tilings found on small tori.
//!
//! A tiling invariant under a translation lattice `L` is an exact cover of
//! the torus `cells / L` by copies of the shape. Sublattices are taken in
//! Hermite normal form with basis `(a, 0)`, `(b, c)` in units of the grid's
//! translation lattice, smallest index first. Any tiling found this way
//! gives patches of `n` coronas directly: the copies at adjacency distance
//! `k` from the central one form corona `k`.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::cnf::{Lit, SolveStatus, Solver, Var};
use crate::engine::Witness;
use crate::lattice::{Cell, GridKind, Transform, TRANSLATION_MAX, TRANSLATION_MIN};
use crate::polyform::{halo, Placement, Shape};

/// Conflict limit for a single torus.
const TORUS_CONFLICTS: u64 = 2_000;

#[derive(Debug, Clone)]
struct Slot {
    orientation: u8,
    cells: Vec<Cell>,
}

/// A tiling of the plane invariant under a lattice of translations.
#[derive(Debug, Clone)]
pub struct PeriodicTiling {
    shape: Shape,
    slots: Vec<Slot>,
    torus: Torus,
    /// For each torus cell: the covering copy as (slot, position in slot).
    cover: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy)]
struct Torus {
    grid: GridKind,
    a: i32,
    b: i32,
    c: i32,
}

impl Torus {
    fn unit(self) -> i32 {
        if self.grid == GridKind::Iamond {
            3
        } else {
            1
        }
    }

    fn orbits(self) -> usize {
        if self.grid == GridKind::Iamond {
            2
        } else {
            1
        }
    }

    fn len(self) -> usize {
        self.orbits() * (self.a * self.c) as usize
    }

    fn index(self, p: Cell) -> usize {
        let u = self.unit();
        let orbit = usize::from(self.grid == GridKind::Iamond && p.x.rem_euclid(3) == 1);
        let (x, y) = ((p.x - orbit as i32).div_euclid(u), (p.y - orbit as i32).div_euclid(u));
        let q = y.div_euclid(self.c);
        let y = y - q * self.c;
        let x = (x - q * self.b).rem_euclid(self.a);
        orbit * (self.a * self.c) as usize + (y * self.a + x) as usize
    }
}

fn slots(shape: &Shape) -> Vec<Slot> {
    let mut out: Vec<Slot> = Vec::new();
    let mut seen: FxHashSet<Vec<Cell>> = FxHashSet::default();
    for o in shape.grid().orientations() {
        let cells = shape.image(Transform::new(o.index, 0, 0));
        // images that differ by a translation give the same copies
        let r = if shape.grid() == GridKind::Iamond { cells[0].x.rem_euclid(3) } else { 0 };
        let base = cells[0] - Cell::new(r, r);
        let key: Vec<Cell> = cells.iter().map(|&p| p - base).collect();
        if seen.insert(key) {
            out.push(Slot { orientation: o.index, cells });
        }
    }
    out
}

impl PeriodicTiling {
    /// Searches tori holding up to `max_copies` copies of the shape. The
    /// copy at the identity is always part of the tiling.
    pub fn find(shape: &Shape, max_copies: usize) -> Option<PeriodicTiling> {
        let grid = shape.grid();
        let slots = slots(shape);
        for m in 1..=max_copies {
            let cells = m * shape.len();
            let orbits = if grid == GridKind::Iamond { 2 } else { 1 };
            if !cells.is_multiple_of(orbits) {
                continue;
            }
            let index = (cells / orbits) as i32;
            for a in (1..=index).filter(|a| index % a == 0) {
                for b in 0..a {
                    let torus = Torus { grid, a, b, c: index / a };
                    if let Some(cover) = solve_torus(torus, &slots) {
                        return Some(PeriodicTiling { shape: shape.clone(), slots, torus, cover });
                    }
                }
            }
        }
        None
    }

    /// Translation of the copy covering `p`, with its slot.
    fn copy_at(&self, p: Cell) -> (usize, Cell) {
        let (s, j) = self.cover[self.torus.index(p)];
        (s, p - self.slots[s].cells[j])
    }

    /// The copies within adjacency distance `n` of the central copy, level
    /// by level. `None` when a translation leaves the packable range.
    pub fn patch(&self, n: usize) -> Option<Witness> {
        let grid = self.shape.grid();
        let range = TRANSLATION_MIN..=TRANSLATION_MAX;
        let mut seen: FxHashSet<(usize, Cell)> = FxHashSet::default();
        seen.insert((0, Cell::ORIGIN));
        let mut frontier = vec![(0usize, Cell::ORIGIN)];
        let mut levels = vec![vec![Placement { transform: Transform::IDENTITY, cells: self.shape.cells().to_vec() }]];
        for _ in 0..n {
            let mut next = Vec::new();
            for &(s, t) in &frontier {
                let cells: Vec<Cell> = self.slots[s].cells.iter().map(|&p| p + t).collect();
                for q in halo(grid, &cells) {
                    let key = self.copy_at(q);
                    if seen.insert(key) {
                        next.push(key);
                    }
                }
            }
            next.sort_by_key(|&(s, t)| (t.y, t.x, s));
            let mut level = Vec::with_capacity(next.len());
            for &(s, t) in &next {
                if !range.contains(&t.x) || !range.contains(&t.y) {
                    return None;
                }
                let transform = Transform::new(self.slots[s].orientation, t.x, t.y);
                level.push(Placement { transform, cells: self.shape.image(transform) });
            }
            levels.push(level);
            frontier = next;
        }
        Some(Witness { shape: self.shape.clone(), levels })
    }

    /// Copies per period.
    pub fn copies(&self) -> usize {
        self.torus.len() / self.shape.len()
    }
}

/// Exact cover of the torus, with slot 0 at the origin.
fn solve_torus(torus: Torus, slots: &[Slot]) -> Option<Vec<(usize, usize)>> {
    let u = torus.unit();
    let mut solver = Solver::new();
    let mut placed: Vec<(usize, Cell, Vec<usize>)> = Vec::new();
    let mut covers: Vec<Vec<Lit>> = vec![Vec::new(); torus.len()];
    for (s, slot) in slots.iter().enumerate() {
        for y in 0..torus.c {
            for x in 0..torus.a {
                let t = Cell::new(u * x, u * y);
                let idx: Vec<usize> = slot.cells.iter().map(|&p| torus.index(p + t)).collect();
                let distinct: FxHashSet<usize> = idx.iter().copied().collect();
                if distinct.len() != idx.len() {
                    continue;
                }
                let v = solver.new_var();
                for &i in &idx {
                    covers[i].push(v.positive());
                }
                placed.push((s, t, idx));
            }
        }
    }
    if placed.first().is_none_or(|p| p.0 != 0 || p.1 != Cell::ORIGIN) {
        return None;
    }
    solver.add_clause(&[Var(0).positive()]);
    for cover in &covers {
        if !solver.add_clause(cover) {
            return None;
        }
        for i in 0..cover.len() {
            for j in i + 1..cover.len() {
                solver.add_clause(&[!cover[i], !cover[j]]);
            }
        }
    }
    if solver.solve(Some(TORUS_CONFLICTS), None) != SolveStatus::Sat {
        return None;
    }
    let model = solver.model();
    let mut cover = vec![(usize::MAX, 0); torus.len()];
    let mut pos: FxHashMap<usize, (usize, usize)> = FxHashMap::default();
    for (v, (s, _, idx)) in placed.iter().enumerate() {
        if model[v] {
            for (j, &i) in idx.iter().enumerate() {
                pos.insert(i, (*s, j));
            }
        }
    }
    for (i, c) in cover.iter_mut().enumerate() {
        *c = *pos.get(&i)?;
    }
    Some(cover)
}

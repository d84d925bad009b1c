//! Candidate corona placements and the CNF formula `F_n`.
//!
//! Level `k` holds every placement of the shape that may belong to a
//! `k`-corona: level 0 is the identity, and level `k` consists of the
//! placements adjacent to some level `k-1` placement. Placements are kept
//! once per distinct cell set.
//!
//! With interior pruning on (the default), a level-`k` placement must also
//! avoid the cells `C_{k-1}`, where `C_0` is the shape and `C_j` adds the
//! halo of `C_{j-1}`. Any corona structure satisfying the formula covers
//! `C_j` with levels `0..=j`, so such placements could never be used and
//! dropping them leaves the solution set unchanged.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::cnf::{CnfFormula, Lit, Var};
use crate::engine::Witness;
use crate::lattice::{Cell, GridKind, LatticeError, Transform, TRANSLATION_MAX, TRANSLATION_MIN};
use crate::polyform::{halo, Placement, Shape};
use crate::raster;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeMode {
    pub holes_allowed: bool,
}

impl EncodeMode {
    pub const HOLES_ALLOWED: EncodeMode = EncodeMode { holes_allowed: true };
    pub const HOLE_FREE: EncodeMode = EncodeMode { holes_allowed: false };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoronaOptions {
    /// Drop level-`k` placements that meet `C_{k-1}` (see the module docs).
    pub prune_interior: bool,
    /// Forbid overlaps with one at-most-one constraint per cell (a
    /// sequential counter over the copies covering it) instead of one binary
    /// clause per overlapping pair. Both admit the same placements; the
    /// per-cell form grows linearly rather than quadratically.
    pub compact_overlaps: bool,
}

impl Default for CoronaOptions {
    fn default() -> Self {
        CoronaOptions { prune_interior: true, compact_overlaps: true }
    }
}

impl CoronaOptions {
    /// Every clause family emitted literally, with no pruning.
    pub const LITERAL: CoronaOptions = CoronaOptions { prune_interior: false, compact_overlaps: false };
}

/// Candidate transforms per level, each level sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoronaTransformSets {
    pub levels: Vec<Vec<Transform>>,
}

pub fn corona_transforms(shape: &Shape, n: usize) -> Result<CoronaTransformSets, LatticeError> {
    corona_transforms_with(shape, n, CoronaOptions::default())
}

pub fn corona_transforms_with(
    shape: &Shape,
    n: usize,
    options: CoronaOptions,
) -> Result<CoronaTransformSets, LatticeError> {
    let mut g = CoronaGeometry::with_options(shape, options);
    g.ensure_levels(n)?;
    let levels = (0..=n).map(|k| g.levels[k].iter().map(|&id| g.transform(id)).collect()).collect();
    Ok(CoronaTransformSets { levels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Relation {
    Overlap,
    Adjacent,
}

const HOLE_UNKNOWN: u8 = 0;
const HOLE_YES: u8 = 1;
const HOLE_NO: u8 = 2;

#[derive(Debug, Clone, Copy)]
struct RelEntry {
    d: Cell,
    rel: Relation,
    pair_hole: u8,
}

/// One representative per distinct orientation image.
#[derive(Debug, Clone)]
struct Slot {
    orientation: u8,
    cells: Vec<Cell>,
    halo: Vec<Cell>,
}

#[derive(Debug, Clone, Copy)]
struct PlacementKey {
    slot: u16,
    t: Cell,
}

/// Placement geometry for one shape, shared by every `F_n` built for it.
#[derive(Debug, Clone)]
pub struct CoronaGeometry {
    shape: Shape,
    options: CoronaOptions,
    slots: Vec<Slot>,
    /// `rels[i * slots + j]`: offsets `d` at which slot `j` translated by `d`
    /// overlaps or touches slot `i`.
    rels: Vec<Vec<RelEntry>>,
    pair_holes_ready: bool,
    placements: Vec<PlacementKey>,
    index: FxHashMap<(u16, Cell), u32>,
    levels: Vec<Vec<u32>>,
    /// `covered[k]` is `C_k`.
    covered: Vec<FxHashSet<Cell>>,
}

impl CoronaGeometry {
    pub fn new(shape: &Shape) -> Self {
        Self::with_options(shape, CoronaOptions::default())
    }

    pub fn with_options(shape: &Shape, options: CoronaOptions) -> Self {
        let grid = shape.grid();
        let mut slots: Vec<Slot> = Vec::new();
        for o in grid.orientations() {
            let cells = shape.image(Transform::new(o.index, 0, 0));
            let dup = slots.iter().any(|s| {
                let c = cells[0] - s.cells[0];
                valid_translation(grid, c) && s.cells.iter().zip(&cells).all(|(a, b)| *a + c == *b)
            });
            if !dup {
                let h = halo(grid, &cells);
                slots.push(Slot { orientation: o.index, cells, halo: h });
            }
        }
        let n = slots.len();
        let mut rels = Vec::with_capacity(n * n);
        for a in &slots {
            for b in &slots {
                let mut m: FxHashMap<Cell, Relation> = FxHashMap::default();
                for &p in &a.halo {
                    for &q in &b.cells {
                        m.insert(p - q, Relation::Adjacent);
                    }
                }
                for &p in &a.cells {
                    for &q in &b.cells {
                        m.insert(p - q, Relation::Overlap);
                    }
                }
                let mut v: Vec<RelEntry> = m
                    .into_iter()
                    .filter(|(d, _)| valid_translation(grid, *d))
                    .map(|(d, rel)| RelEntry { d, rel, pair_hole: HOLE_UNKNOWN })
                    .collect();
                v.sort_by_key(|e| (e.d.y, e.d.x));
                rels.push(v);
            }
        }
        let mut g = CoronaGeometry {
            shape: shape.clone(),
            options,
            slots,
            rels,
            pair_holes_ready: false,
            placements: Vec::new(),
            index: FxHashMap::default(),
            levels: Vec::new(),
            covered: vec![shape.cells().iter().copied().collect()],
        };
        let id = g.register(0, Cell::ORIGIN);
        g.levels.push(vec![id]);
        g
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn grid(&self) -> GridKind {
        self.shape.grid()
    }

    /// Number of distinct orientation images of the shape.
    pub fn distinct_orientations(&self) -> usize {
        self.slots.len()
    }

    fn register(&mut self, slot: u16, t: Cell) -> u32 {
        if let Some(&id) = self.index.get(&(slot, t)) {
            return id;
        }
        let id = self.placements.len() as u32;
        self.placements.push(PlacementKey { slot, t });
        self.index.insert((slot, t), id);
        id
    }

    fn transform(&self, id: u32) -> Transform {
        let k = self.placements[id as usize];
        Transform::new(self.slots[k.slot as usize].orientation, k.t.x, k.t.y)
    }

    fn cells(&self, id: u32) -> impl Iterator<Item = Cell> + '_ {
        let k = self.placements[id as usize];
        self.slots[k.slot as usize].cells.iter().map(move |&p| p + k.t)
    }

    fn halo_cells(&self, id: u32) -> impl Iterator<Item = Cell> + '_ {
        let k = self.placements[id as usize];
        self.slots[k.slot as usize].halo.iter().map(move |&p| p + k.t)
    }

    fn relations(&self, id: u32) -> impl Iterator<Item = (u16, &RelEntry)> + '_ {
        let k = self.placements[id as usize];
        let n = self.slots.len();
        (0..n).flat_map(move |j| self.rels[k.slot as usize * n + j].iter().map(move |e| (j as u16, e)))
    }

    /// Registered placements related to `id`, with the relation entry.
    fn neighbors(&self, id: u32) -> impl Iterator<Item = (u32, &RelEntry)> + '_ {
        let t = self.placements[id as usize].t;
        self.relations(id).filter_map(move |(j, e)| self.index.get(&(j, t + e.d)).map(|&v| (v, e)))
    }

    /// Builds levels up to `n`.
    pub fn ensure_levels(&mut self, n: usize) -> Result<(), LatticeError> {
        while self.levels.len() <= n {
            let k = self.levels.len();
            let prev = self.covered.last().expect("C_0 exists");
            let mut seen: FxHashSet<(u16, Cell)> = FxHashSet::default();
            let mut fresh: Vec<(u16, Cell)> = Vec::new();
            for &u in &self.levels[k - 1] {
                let t = self.placements[u as usize].t;
                for (j, e) in self.relations(u) {
                    if e.rel != Relation::Adjacent {
                        continue;
                    }
                    let key = (j, t + e.d);
                    if !seen.insert(key) {
                        continue;
                    }
                    if self.options.prune_interior
                        && self.slots[j as usize].cells.iter().any(|&p| prev.contains(&(p + key.1)))
                    {
                        continue;
                    }
                    let r = TRANSLATION_MIN..=TRANSLATION_MAX;
                    if !r.contains(&key.1.x) || !r.contains(&key.1.y) {
                        return Err(LatticeError::TranslationRange { tx: key.1.x as i64, ty: key.1.y as i64 });
                    }
                    fresh.push(key);
                }
            }
            let grown = {
                let mut c = prev.clone();
                for &p in prev {
                    c.extend(self.grid().halo_neighbors(p));
                }
                c
            };
            let mut ids: Vec<u32> = fresh.into_iter().map(|(j, t)| self.register(j, t)).collect();
            ids.sort_by_key(|&id| self.transform(id));
            self.levels.push(ids);
            self.covered.push(grown);
        }
        Ok(())
    }

    fn ensure_pair_holes(&mut self) {
        if self.pair_holes_ready {
            return;
        }
        let grid = self.grid();
        let n = self.slots.len();
        for i in 0..n {
            for j in 0..n {
                let a = &self.slots[i].cells;
                for e in self.rels[i * n + j].iter_mut() {
                    if e.rel != Relation::Adjacent {
                        continue;
                    }
                    let mut union: Vec<Cell> = a.clone();
                    union.extend(self.slots[j].cells.iter().map(|&p| p + e.d));
                    e.pair_hole = if raster::is_simply_connected(grid, &union) { HOLE_NO } else { HOLE_YES };
                }
            }
        }
        self.pair_holes_ready = true;
    }

    /// Candidate placements at level `k` (levels must already exist).
    pub fn level_transforms(&self, k: usize) -> Vec<Transform> {
        self.levels[k].iter().map(|&id| self.transform(id)).collect()
    }

    /// Builds `F_n`.
    pub fn build_formula(&mut self, n: usize, mode: EncodeMode) -> Result<(CnfFormula, VarMap), LatticeError> {
        assert!(n >= 1, "F_n needs n >= 1");
        self.ensure_levels(n)?;
        let levels = self.levels[..=n].to_vec();
        Ok(self.encode(&levels, mode, 0))
    }

    /// Builds `F_n` restricted to structures that extend `prefix`: its
    /// coronas are fixed, and later levels only hold placements that avoid
    /// its cells and do not touch its placements two or more levels down.
    /// Every model is a genuine corona structure, but unsatisfiability says
    /// nothing about `F_n` itself.
    pub fn build_seeded_formula(
        &mut self,
        n: usize,
        mode: EncodeMode,
        prefix: &Witness,
    ) -> Result<(CnfFormula, VarMap), LatticeError> {
        let j = prefix.coronas();
        assert!(j < n, "prefix must be shorter than the target");
        self.ensure_levels(j)?;
        let grid = self.grid();
        let mut levels: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
        // level of the lowest fixed placement covering or touching each cell
        let mut fixed: FxHashSet<Cell> = FxHashSet::default();
        let mut touch: FxHashMap<Cell, usize> = FxHashMap::default();
        for (k, level) in prefix.levels.iter().enumerate() {
            let mut ids = Vec::with_capacity(level.len());
            for p in level {
                let slot = self
                    .slots
                    .iter()
                    .position(|s| s.orientation == p.transform.orientation)
                    .ok_or(LatticeError::InvalidTransform { grid, transform: p.transform })?;
                ids.push(self.register(slot as u16, Cell::new(p.transform.tx, p.transform.ty)));
                fixed.extend(p.cells.iter().copied());
                for q in halo(grid, &p.cells) {
                    let e = touch.entry(q).or_insert(k);
                    *e = (*e).min(k);
                }
            }
            ids.sort_by_key(|&id| self.transform(id));
            levels.push(ids);
        }
        for k in j + 1..=n {
            let mut seen: FxHashSet<(u16, Cell)> = FxHashSet::default();
            let mut fresh: Vec<(u16, Cell)> = Vec::new();
            for &u in &levels[k - 1] {
                let t = self.placements[u as usize].t;
                for (sl, e) in self.relations(u) {
                    if e.rel != Relation::Adjacent {
                        continue;
                    }
                    let key = (sl, t + e.d);
                    if !seen.insert(key) {
                        continue;
                    }
                    let blocked = self.slots[sl as usize].cells.iter().any(|&p| {
                        let c = p + key.1;
                        fixed.contains(&c) || touch.get(&c).is_some_and(|&m| m + 2 <= k)
                    });
                    if blocked {
                        continue;
                    }
                    let r = TRANSLATION_MIN..=TRANSLATION_MAX;
                    if !r.contains(&key.1.x) || !r.contains(&key.1.y) {
                        return Err(LatticeError::TranslationRange { tx: key.1.x as i64, ty: key.1.y as i64 });
                    }
                    fresh.push(key);
                }
            }
            let mut ids: Vec<u32> = fresh.into_iter().map(|(sl, t)| self.register(sl, t)).collect();
            ids.sort_by_key(|&id| self.transform(id));
            levels.push(ids);
        }
        Ok(self.encode(&levels, mode, j))
    }

    /// Emits the clause families over explicit candidate levels. Placements
    /// on levels `1..=fixed` are forced by unit clauses.
    fn encode(&mut self, levels: &[Vec<u32>], mode: EncodeMode, fixed: usize) -> (CnfFormula, VarMap) {
        let n = levels.len() - 1;
        if !mode.holes_allowed {
            self.ensure_pair_holes();
        }
        let np = self.placements.len();
        let width = n + 1;
        let mut formula = CnfFormula::new();

        // shape variables, level by level
        let mut shape_var = vec![u32::MAX; np * width];
        let mut level_vars: Vec<Vec<(Transform, Var)>> = Vec::with_capacity(width);
        let mut used: Vec<u32> = Vec::new();
        let mut level_mask = vec![0u32; np];
        for k in 0..=n {
            let mut v = Vec::with_capacity(levels[k].len());
            for &id in &levels[k] {
                let var = formula.new_var();
                shape_var[id as usize * width + k] = var.0;
                if level_mask[id as usize] == 0 {
                    used.push(id);
                }
                level_mask[id as usize] |= 1 << k;
                v.push((self.transform(id), var));
            }
            level_vars.push(v);
        }
        let sv = |id: u32, k: usize| Var(shape_var[id as usize * width + k]);

        // cell variables in first-seen order
        let base = cell_var_base(&level_vars);
        let mut cell_var: FxHashMap<Cell, Var> = FxHashMap::default();
        let mut cell_list: Vec<Cell> = Vec::new();
        let mut covers: Vec<Vec<Lit>> = Vec::new();
        for k in 0..=n {
            for &id in &levels[k] {
                let s = sv(id, k);
                for p in self.cells(id) {
                    let c = *cell_var.entry(p).or_insert_with(|| {
                        cell_list.push(p);
                        covers.push(Vec::new());
                        formula.new_var()
                    });
                    covers[c.0 as usize - base].push(s.positive());
                }
            }
        }

        // (1) the 0-corona is always used
        formula.push_clause(&[sv(levels[0][0], 0).positive()]);
        for (k, level) in levels.iter().enumerate().take(fixed + 1).skip(1) {
            for &id in level {
                formula.push_clause(&[sv(id, k).positive()]);
            }
        }
        for k in 0..=n {
            for &id in &levels[k] {
                let s = sv(id, k);
                // (2) a used copy uses its cells
                for p in self.cells(id) {
                    formula.push_clause(&[s.negative(), cell_var[&p].positive()]);
                }
                // (4) an inner copy's halo must be used
                if k < n {
                    for q in self.halo_cells(id) {
                        match cell_var.get(&q) {
                            Some(c) => formula.push_clause(&[s.negative(), c.positive()]),
                            None => formula.push_clause(&[s.negative()]),
                        }
                    }
                }
            }
        }
        // (3) a used cell is covered by some copy
        for (i, cover) in covers.iter().enumerate() {
            let mut clause = Vec::with_capacity(cover.len() + 1);
            clause.push(Var((base + i) as u32).negative());
            clause.extend_from_slice(cover);
            formula.push_clause(&clause);
        }
        let compact = self.options.compact_overlaps;
        if compact {
            for cover in &covers {
                at_most_one(&mut formula, cover);
            }
        }

        let mut clause = Vec::new();
        for &u in &used {
            let mu = level_mask[u as usize];
            for (v, e) in self.neighbors(u) {
                let mv = level_mask[v as usize];
                if mv == 0 {
                    continue;
                }
                for ku in levels_of(mu) {
                    let su = sv(u, ku);
                    match e.rel {
                        // (5) used copies cannot overlap
                        Relation::Overlap if !compact => {
                            for kv in levels_of(mv) {
                                let s2 = sv(v, kv);
                                if su < s2 {
                                    formula.push_clause(&[su.negative(), s2.negative()]);
                                }
                            }
                        }
                        Relation::Overlap => {}
                        Relation::Adjacent => {
                            for kv in levels_of(mv) {
                                let s2 = sv(v, kv);
                                // (7) no contact with levels two or more below
                                if ku >= 2 && kv + 2 <= ku {
                                    formula.push_clause(&[su.negative(), s2.negative()]);
                                }
                                // pairs in the outer corona that enclose a hole
                                if !mode.holes_allowed
                                    && ku == n
                                    && kv == n
                                    && su < s2
                                    && e.pair_hole == HOLE_YES
                                {
                                    formula.push_clause(&[su.negative(), s2.negative()]);
                                }
                            }
                        }
                    }
                }
            }
            // (6) a level-k copy touches some level-(k-1) copy
            for ku in levels_of(mu).filter(|&k| k >= 1) {
                clause.clear();
                clause.push(sv(u, ku).negative());
                for (v, e) in self.neighbors(u) {
                    if e.rel == Relation::Adjacent && level_mask[v as usize] & (1 << (ku - 1)) != 0 {
                        clause.push(sv(v, ku - 1).positive());
                    }
                }
                formula.push_clause(&clause);
            }
        }

        let map = VarMap { shape: self.shape.clone(), n, levels: level_vars, cells: cell_list, cell_base: base };
        (formula, map)
    }
}

/// At most one of `lits` is true: pairwise for short lists, otherwise a
/// sequential counter whose register `r_i` means "some of `x_1..=x_i`".
fn at_most_one(formula: &mut CnfFormula, lits: &[Lit]) {
    let m = lits.len();
    if m <= 4 {
        for i in 0..m {
            for j in i + 1..m {
                formula.push_clause(&[!lits[i], !lits[j]]);
            }
        }
        return;
    }
    let mut prev = formula.new_var();
    formula.push_clause(&[!lits[0], prev.positive()]);
    for &x in &lits[1..m - 1] {
        let r = formula.new_var();
        formula.push_clause(&[!x, r.positive()]);
        formula.push_clause(&[prev.negative(), r.positive()]);
        formula.push_clause(&[!x, prev.negative()]);
        prev = r;
    }
    formula.push_clause(&[!lits[m - 1], prev.negative()]);
}

fn cell_var_base(levels: &[Vec<(Transform, Var)>]) -> usize {
    levels.iter().map(Vec::len).sum()
}

fn levels_of(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |k| mask & (1 << k) != 0)
}

fn valid_translation(grid: GridKind, d: Cell) -> bool {
    grid != GridKind::Iamond || (d.x.rem_euclid(3) == 0 && d.y.rem_euclid(3) == 0)
}

/// Builds `F_n` for a shape with default options.
pub fn build_formula(shape: &Shape, n: usize, mode: EncodeMode) -> Result<(CnfFormula, VarMap), LatticeError> {
    CoronaGeometry::new(shape).build_formula(n, mode)
}

/// Variables of `F_n`: shape variables `s_(T,k)` first, level by level in
/// transform order, then one cell variable `c_p` per coverable cell.
#[derive(Debug, Clone)]
pub struct VarMap {
    shape: Shape,
    n: usize,
    levels: Vec<Vec<(Transform, Var)>>,
    cells: Vec<Cell>,
    cell_base: usize,
}

impl VarMap {
    /// The outermost level `n`.
    pub fn top_level(&self) -> usize {
        self.n
    }

    pub fn num_shape_vars(&self) -> usize {
        self.cell_base
    }

    pub fn num_cell_vars(&self) -> usize {
        self.cells.len()
    }

    pub fn level(&self, k: usize) -> &[(Transform, Var)] {
        &self.levels[k]
    }

    pub fn shape_var(&self, k: usize, t: Transform) -> Option<Var> {
        let level = self.levels.get(k)?;
        level.binary_search_by_key(&t, |e| e.0).ok().map(|i| level[i].1)
    }

    pub fn cell_var(&self, p: Cell) -> Option<Var> {
        // cells are few enough that a scan beats keeping a second map alive
        self.cells.iter().position(|&q| q == p).map(|i| Var((self.cell_base + i) as u32))
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, Var)> + '_ {
        self.cells.iter().enumerate().map(|(i, &p)| (p, Var((self.cell_base + i) as u32)))
    }

    /// Reads the used placements out of a model.
    pub fn decode_model(&self, model: &[bool]) -> Witness {
        let levels = self
            .levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter(|(_, v)| model[v.index()])
                    .map(|&(t, _)| Placement { transform: t, cells: self.shape.image(t) })
                    .collect()
            })
            .collect();
        Witness { shape: self.shape.clone(), levels }
    }
}

pub fn decode_model(model: &[bool], map: &VarMap) -> Witness {
    map.decode_model(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{SolveSession, SolveStatus, SolverBackend};

    fn shape(grid: GridKind, v: &[(i32, i32)]) -> Shape {
        Shape::new(grid, v.iter().map(|&(x, y)| Cell::new(x, y))).unwrap()
    }

    #[test]
    fn level_zero_is_identity() {
        let s = shape(GridKind::Hex, &[(0, 0), (1, 0)]);
        let t = corona_transforms(&s, 0).unwrap();
        assert_eq!(t.levels, vec![vec![Transform::IDENTITY]]);
    }

    #[test]
    fn monomino_first_corona() {
        let s = shape(GridKind::Square, &[(0, 0)]);
        let t = corona_transforms(&s, 1).unwrap();
        assert_eq!(t.levels[1].len(), 8);
        let (f, map) = build_formula(&s, 1, EncodeMode::HOLES_ALLOWED).unwrap();
        assert_eq!(map.num_shape_vars(), 9);
        assert_eq!(map.num_cell_vars(), 9);
        let mut session = SolveSession::from_formula(f, SolverBackend::Builtin);
        assert_eq!(session.solve().unwrap(), SolveStatus::Sat);
        let w = map.decode_model(session.model().unwrap());
        assert_eq!(w.levels[0].len(), 1);
        assert_eq!(w.levels[1].len(), 8);
    }

    #[test]
    fn symmetric_orientations_collapse() {
        let counts: Vec<usize> = [
            (GridKind::Square, vec![(0, 0)]),
            (GridKind::Square, vec![(0, 0), (1, 0)]),
            (GridKind::Square, vec![(0, 0), (1, 0), (0, 1)]),
            (GridKind::Hex, vec![(0, 0)]),
            (GridKind::Iamond, vec![(0, 0)]),
        ]
        .iter()
        .map(|(g, c)| CoronaGeometry::new(&shape(*g, c)).distinct_orientations())
        .collect();
        // a lone triangle points up or down
        assert_eq!(counts, vec![1, 2, 4, 1, 2]);
    }

    #[test]
    fn pruning_keeps_satisfiability() {
        let s = shape(GridKind::Square, &[(0, 0), (1, 0), (2, 0), (1, 1)]);
        for n in 1..=3 {
            let mut results = Vec::new();
            for prune in [true, false] {
                let options = CoronaOptions { prune_interior: prune, compact_overlaps: prune };
                let mut g = CoronaGeometry::with_options(&s, options);
                let (f, _) = g.build_formula(n, EncodeMode::HOLES_ALLOWED).unwrap();
                let mut session = SolveSession::from_formula(f, SolverBackend::Builtin);
                results.push(session.solve().unwrap());
            }
            assert_eq!(results[0], results[1], "n={n}");
        }
    }

    #[test]
    fn no_family_seven_at_n_one() {
        // with n = 1 every binary clause between two shape variables is an
        // overlap or a pair-hole prohibition
        let s = shape(GridKind::Square, &[(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)]);
        let mut g = CoronaGeometry::with_options(&s, CoronaOptions::LITERAL);
        let (f, map) = g.build_formula(1, EncodeMode::HOLES_ALLOWED).unwrap();
        let shape_vars = map.num_shape_vars() as u32;
        for c in f.clauses() {
            if c.len() == 2 && c.iter().all(|l| l.var().0 < shape_vars && !l.is_positive()) {
                let ps: Vec<_> = c
                    .iter()
                    .map(|l| {
                        let (k, t) = (0..=1)
                            .flat_map(|k| map.level(k).iter().map(move |e| (k, e)))
                            .find(|(_, e)| e.1 == l.var())
                            .map(|(k, e)| (k, e.0))
                            .unwrap();
                        (k, s.image(t))
                    })
                    .collect();
                assert!(ps[0].1.iter().any(|p| ps[1].1.contains(p)), "non-overlap binary clause at n=1");
            }
        }
    }
}

//! Heesch-number computation: the solve/validate/block loop, hole detection
//! and an independent witness checker.

use std::fmt;
use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::cnf::{Budget, CnfError, Lit, SolveSession, SolveStatus, SolverBackend};
use crate::encoder::{CoronaGeometry, CoronaOptions, EncodeMode, VarMap};
use crate::lattice::{Cell, GridKind, LatticeError, Transform};
use crate::polyform::{halo, Placement, Shape};
use crate::periodic::PeriodicTiling;
use crate::raster::{self, Raster};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("placements overlap at {cell}")]
    Overlap { cell: Cell },
    #[error("input shape is not simply connected")]
    HoledInput,
    #[error("solver produced an invalid witness: {0}")]
    Integrity(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Coronas read from a model: `levels[k]` lists the placements of corona `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub shape: Shape,
    pub levels: Vec<Vec<Placement>>,
}

impl Witness {
    /// The witness holding only the shape itself.
    pub fn trivial(shape: &Shape) -> Witness {
        let id = Placement { transform: Transform::IDENTITY, cells: shape.cells().to_vec() };
        Witness { shape: shape.clone(), levels: vec![vec![id]] }
    }

    /// Number of coronas.
    pub fn coronas(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn placements(&self) -> impl Iterator<Item = (usize, &Placement)> {
        self.levels.iter().enumerate().flat_map(|(k, l)| l.iter().map(move |p| (k, p)))
    }

    /// The first `n` coronas.
    pub fn truncated(&self, n: usize) -> Witness {
        Witness { shape: self.shape.clone(), levels: self.levels[..=n.min(self.coronas())].to_vec() }
    }

    fn prefix_cells(&self, k: usize) -> Vec<Cell> {
        self.levels[..=k].iter().flatten().flat_map(|p| p.cells.iter().copied()).collect()
    }
}

/// An empty region enclosed by placements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleReport {
    pub cells: Vec<Cell>,
    /// Indices of placements sharing an edge with a hole cell.
    pub edge_bounding: Vec<usize>,
    /// Indices of placements touching a hole cell at an edge or a corner.
    pub halo_bounding: Vec<usize>,
}

fn paint(grid: GridKind, placements: &[&Placement]) -> Result<Option<Raster>, EngineError> {
    let Some(mut r) = Raster::around(grid, placements.iter().flat_map(|p| p.cells.iter().copied())) else {
        return Ok(None);
    };
    for (i, p) in placements.iter().enumerate() {
        for &c in &p.cells {
            r.paint(c, i as u32 + 1).map_err(|_| EngineError::Overlap { cell: c })?;
        }
    }
    Ok(Some(r))
}

fn bounding(grid: GridKind, r: &Raster, cells: &[Cell], halo_contact: bool) -> Vec<usize> {
    let mut out: Vec<usize> = cells
        .iter()
        .flat_map(|&c| {
            let ns: Vec<Cell> =
                if halo_contact { grid.halo_neighbors(c).collect() } else { grid.edge_neighbors(c).collect() };
            ns
        })
        .map(|q| r.label(q))
        .filter(|&l| l != 0)
        .map(|l| l as usize - 1)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Empty regions the placements enclose, each with its bounding placements.
pub fn find_holes(placements: &[Placement], grid: GridKind) -> Result<Vec<HoleReport>, EngineError> {
    let refs: Vec<&Placement> = placements.iter().collect();
    find_holes_in(&refs, grid)
}

fn find_holes_in(placements: &[&Placement], grid: GridKind) -> Result<Vec<HoleReport>, EngineError> {
    let Some(r) = paint(grid, placements)? else {
        return Ok(Vec::new());
    };
    Ok(r.enclosed_regions()
        .into_iter()
        .map(|cells| HoleReport {
            edge_bounding: bounding(grid, &r, &cells, false),
            halo_bounding: bounding(grid, &r, &cells, true),
            cells,
        })
        .collect())
}

/// A way in which a witness fails to describe valid coronas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoLevels,
    LevelZeroNotIdentity,
    NotAnImage { level: usize, transform: Transform },
    Overlap { cell: Cell },
    DetachedFromPreviousLevel { level: usize, transform: Transform },
    TouchesLowerLevel { level: usize, transform: Transform, other_level: usize },
    /// A cell next to coronas `0..level` that corona `level` leaves empty.
    UncoveredHalo { level: usize, cell: Cell },
    /// The union of coronas `0..=level` encloses these cells.
    PrefixHole { level: usize, cells: Vec<Cell> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoLevels => write!(f, "witness has no levels"),
            Violation::LevelZeroNotIdentity => write!(f, "level 0 is not the identity placement"),
            Violation::NotAnImage { level, transform } => {
                write!(f, "level {level}: placement {transform} is not an image of the shape")
            }
            Violation::Overlap { cell } => write!(f, "placements overlap at {cell}"),
            Violation::DetachedFromPreviousLevel { level, transform } => {
                write!(f, "level {level}: {transform} touches no placement of level {}", level - 1)
            }
            Violation::TouchesLowerLevel { level, transform, other_level } => {
                write!(f, "level {level}: {transform} touches level {other_level}")
            }
            Violation::UncoveredHalo { level, cell } => write!(f, "corona {level} leaves {cell} uncovered"),
            Violation::PrefixHole { level, cells } => {
                write!(f, "coronas 0..={level} enclose {} empty cell(s)", cells.len())
            }
        }
    }
}

/// Checks a witness against the corona definitions without using a solver.
/// Interior prefixes must be simply connected in both modes; the full union
/// must be too in hole-free mode.
pub fn validate_witness(shape: &Shape, witness: &Witness, mode: EncodeMode) -> Vec<Violation> {
    let grid = shape.grid();
    let mut out = Vec::new();
    if witness.levels.is_empty() {
        return vec![Violation::NoLevels];
    }
    let top = witness.levels.len() - 1;
    if witness.levels[0].len() != 1
        || witness.levels[0][0].transform != Transform::IDENTITY
        || witness.levels[0][0].cells != shape.cells()
    {
        out.push(Violation::LevelZeroNotIdentity);
    }
    for (k, p) in witness.placements() {
        if grid.check_transform(p.transform).is_err() || shape.image(p.transform) != p.cells {
            out.push(Violation::NotAnImage { level: k, transform: p.transform });
        }
    }

    // owner of each cell: (level, index within level)
    let mut owner: FxHashMap<Cell, (usize, usize)> = FxHashMap::default();
    for (k, level) in witness.levels.iter().enumerate() {
        for (i, p) in level.iter().enumerate() {
            for &c in &p.cells {
                if owner.insert(c, (k, i)).is_some() {
                    out.push(Violation::Overlap { cell: c });
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (k, level) in witness.levels.iter().enumerate().skip(1) {
        for (i, p) in level.iter().enumerate() {
            let mut touched: FxHashSet<usize> = FxHashSet::default();
            for q in halo(grid, &p.cells) {
                if let Some(&(m, j)) = owner.get(&q) {
                    if (m, j) != (k, i) {
                        touched.insert(m);
                    }
                }
            }
            if !touched.contains(&(k - 1)) {
                out.push(Violation::DetachedFromPreviousLevel { level: k, transform: p.transform });
            }
            if let Some(&m) = touched.iter().filter(|&&m| m + 2 <= k).min() {
                out.push(Violation::TouchesLowerLevel { level: k, transform: p.transform, other_level: m });
            }
        }
    }

    for k in 1..=top {
        let inner = witness.prefix_cells(k - 1);
        for q in halo(grid, &inner) {
            match owner.get(&q) {
                Some(&(m, _)) if m <= k => {}
                _ => out.push(Violation::UncoveredHalo { level: k, cell: q }),
            }
        }
    }

    let checked = if mode.holes_allowed { top } else { top + 1 };
    for k in 0..checked {
        for cells in raster::enclosed_regions(grid, &witness.prefix_cells(k)) {
            out.push(Violation::PrefixHole { level: k, cells });
        }
    }
    out
}

/// A Heesch number, or what is known about it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeeschValue {
    Exact(usize),
    /// The cutoff was reached: at least this many coronas exist.
    AtLeast(usize),
    /// A budget ran out; at least `lower` coronas exist.
    Unresolved { lower: usize },
}

impl HeeschValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            HeeschValue::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            HeeschValue::Exact(n) | HeeschValue::AtLeast(n) => n,
            HeeschValue::Unresolved { lower } => lower,
        }
    }
}

impl fmt::Display for HeeschValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeeschValue::Exact(n) => write!(f, "{n}"),
            HeeschValue::AtLeast(n) => write!(f, ">={n}"),
            HeeschValue::Unresolved { lower } => write!(f, "?>={lower}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Finite,
    CutoffReached,
    BudgetExceeded,
    RejectedHoledInput,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Finite => "FINITE",
            Status::CutoffReached => "CUTOFF_REACHED",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
            Status::RejectedHoledInput => "REJECTED_HOLED_INPUT",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which measures to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Measures {
    HoleFree,
    HolesAllowed,
    #[default]
    Both,
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Largest number of coronas searched for.
    pub cutoff: usize,
    /// Conflicts are counted per formula; time is counted per shape.
    pub budget: Budget,
    pub backend: SolverBackend,
    pub corona: CoronaOptions,
    /// Before solving `F_n` in full, try to extend the known `n-1` coronas
    /// with their outer corona re-chosen. The restricted formula is far
    /// smaller; when it fails the full formula decides.
    pub extend_witnesses: bool,
    /// Once one corona is found, look for a periodic tiling with at most
    /// this many copies per period (0 turns this off). Patches of such a
    /// tiling that pass validation stand in for models of `F_n`.
    pub periodic_copies: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cutoff: 6,
            budget: Budget::UNLIMITED,
            backend: SolverBackend::Builtin,
            corona: CoronaOptions::default(),
            extend_witnesses: true,
            periodic_copies: 4,
        }
    }
}

impl EngineConfig {
    pub fn with_cutoff(cutoff: usize) -> Self {
        EngineConfig { cutoff, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub formulas: u32,
    pub solver_calls: u32,
    pub hole_blocks: u32,
    /// Times a model had a pocket inside an interior corona.
    pub interior_guard_firings: u32,
    pub conflicts: u64,
    /// Coronas taken from a periodic tiling instead of a solver.
    pub periodic_patches: u32,
}

impl EngineStats {
    fn add(&mut self, o: &EngineStats) {
        self.formulas += o.formulas;
        self.solver_calls += o.solver_calls;
        self.hole_blocks += o.hole_blocks;
        self.interior_guard_firings += o.interior_guard_firings;
        self.conflicts += o.conflicts;
        self.periodic_patches += o.periodic_patches;
    }
}

#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: HeeschValue,
    /// Coronas backing the value's lower bound.
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub struct HeeschResult {
    pub h_c: Option<MeasureResult>,
    pub h_h: Option<MeasureResult>,
    pub status: Status,
    pub stats: EngineStats,
    pub elapsed: Duration,
}

enum Probe {
    Sat(Witness),
    Unsat,
    Budget,
}

struct ProbeOutcome {
    probe: Probe,
    /// In hole-free mode, a model whose only flaw was an outer hole.
    holed: Option<Witness>,
}

/// Per-shape driver holding geometry shared by all formulas.
pub struct Engine {
    geometry: CoronaGeometry,
    config: EngineConfig,
    deadline: Option<Instant>,
    /// Searched for on first use.
    tiling: Option<Option<PeriodicTiling>>,
    pub stats: EngineStats,
}

impl Engine {
    pub fn new(shape: &Shape, config: EngineConfig) -> Result<Engine, EngineError> {
        if !shape.is_simply_connected() {
            return Err(EngineError::HoledInput);
        }
        let deadline = config.budget.time.map(|t| Instant::now() + t);
        Ok(Engine {
            geometry: CoronaGeometry::with_options(shape, config.corona),
            config,
            deadline,
            tiling: None,
            stats: EngineStats::default(),
        })
    }

    pub fn shape(&self) -> &Shape {
        self.geometry.shape()
    }

    /// Decides whether `n` coronas exist in the given mode.
    fn probe(&mut self, n: usize, mode: EncodeMode, prefix: Option<&Witness>) -> Result<ProbeOutcome, EngineError> {
        let shape = self.geometry.shape().clone();
        let grid = shape.grid();
        let (formula, map) = match prefix {
            Some(w) => self.geometry.build_seeded_formula(n, mode, w)?,
            None => self.geometry.build_formula(n, mode)?,
        };
        self.stats.formulas += 1;
        let mut session = SolveSession::from_formula(formula, self.config.backend.clone());
        let mut holed = None;
        let start_conflicts = session.conflicts();
        loop {
            let mut budget = Budget::UNLIMITED;
            if let Some(c) = self.config.budget.conflicts {
                let used = session.conflicts() - start_conflicts;
                if used >= c {
                    return Ok(ProbeOutcome { probe: Probe::Budget, holed });
                }
                budget.conflicts = Some(c - used);
            }
            if let Some(d) = self.deadline {
                let now = Instant::now();
                if now >= d {
                    return Ok(ProbeOutcome { probe: Probe::Budget, holed });
                }
                budget.time = Some(d - now);
            }
            session.set_budget(budget);
            self.stats.solver_calls += 1;
            let before = session.conflicts();
            let status = session.solve()?;
            self.stats.conflicts += session.conflicts() - before;
            let model = match status {
                SolveStatus::Unsat => return Ok(ProbeOutcome { probe: Probe::Unsat, holed }),
                SolveStatus::BudgetExceeded => return Ok(ProbeOutcome { probe: Probe::Budget, holed }),
                SolveStatus::Sat => session.model().expect("model after SAT").to_vec(),
            };
            let witness = map.decode_model(&model);

            let guards = interior_guard_clauses(grid, &witness, &map)?;
            if !guards.is_empty() {
                self.stats.interior_guard_firings += 1;
                for c in guards {
                    session.add_clause(&c)?;
                }
                continue;
            }
            if !mode.holes_allowed {
                let all: Vec<&Placement> = witness.placements().map(|(_, p)| p).collect();
                let levels: Vec<usize> = witness.placements().map(|(k, _)| k).collect();
                let holes = find_holes_in(&all, grid)?;
                if !holes.is_empty() {
                    if holed.is_none() {
                        if let Some(v) = validate_witness(&shape, &witness, EncodeMode::HOLES_ALLOWED).first() {
                            return Err(EngineError::Integrity(v.to_string()));
                        }
                        holed = Some(witness.clone());
                    }
                    for h in &holes {
                        let clause: Vec<Lit> = h
                            .edge_bounding
                            .iter()
                            .map(|&i| shape_lit(&map, levels[i], all[i].transform))
                            .collect::<Result<_, _>>()?;
                        self.stats.hole_blocks += 1;
                        session.add_clause(&clause)?;
                    }
                    continue;
                }
            }
            let violations = validate_witness(&shape, &witness, mode);
            if let Some(v) = violations.first() {
                return Err(EngineError::Integrity(v.to_string()));
            }
            return Ok(ProbeOutcome { probe: Probe::Sat(witness), holed });
        }
    }

    /// Hole-free Heesch number on its own.
    pub fn compute_h_c(&mut self) -> Result<MeasureResult, EngineError> {
        self.compute_single(EncodeMode::HOLE_FREE)
    }

    /// Holes-allowed Heesch number on its own.
    pub fn compute_h_h(&mut self) -> Result<MeasureResult, EngineError> {
        self.compute_single(EncodeMode::HOLES_ALLOWED)
    }

    fn compute_single(&mut self, mode: EncodeMode) -> Result<MeasureResult, EngineError> {
        let shape = self.shape().clone();
        let mut best = Witness::trivial(&shape);
        for n in 1..=self.config.cutoff {
            match self.probe_extending(n, mode, &best)?.probe {
                Probe::Sat(w) => best = w,
                Probe::Unsat => return Ok(MeasureResult { value: HeeschValue::Exact(n - 1), witness: best }),
                Probe::Budget => {
                    return Ok(MeasureResult { value: HeeschValue::Unresolved { lower: n - 1 }, witness: best })
                }
            }
        }
        Ok(MeasureResult { value: HeeschValue::AtLeast(self.config.cutoff), witness: best })
    }

    /// Decides `n` coronas, first trying to extend `known` (which has
    /// `n - 1` coronas): keep its first `n - 2` coronas, then fewer, and
    /// finally solve the full formula.
    fn probe_extending(&mut self, n: usize, mode: EncodeMode, known: &Witness) -> Result<ProbeOutcome, EngineError> {
        if let Some(w) = self.periodic_patch(n, mode, known) {
            return Ok(ProbeOutcome { probe: Probe::Sat(w), holed: None });
        }
        let mut holed = None;
        if self.config.extend_witnesses && n >= 3 && known.coronas() + 1 == n {
            for keep in (1..=n - 2).rev() {
                let out = self.probe(n, mode, Some(&known.truncated(keep)))?;
                if matches!(out.probe, Probe::Sat(_) | Probe::Budget) {
                    return Ok(out);
                }
                holed = holed.or(out.holed);
            }
        }
        let full = self.probe(n, mode, None)?;
        Ok(ProbeOutcome { holed: full.holed.or(holed), probe: full.probe })
    }

    /// Hole-free probe for `n` coronas that also settles the holes-allowed
    /// question when it can. After the seeded tries, the holes-allowed
    /// formula is solved first: if it is unsatisfiable so is the hole-free
    /// one, and a hole-free model of it answers both. The returned flag is
    /// set when `n` holes-allowed coronas are known not to exist.
    fn probe_both(&mut self, n: usize, known: &Witness) -> Result<(ProbeOutcome, bool), EngineError> {
        if let Some(w) = self.periodic_patch(n, EncodeMode::HOLE_FREE, known) {
            return Ok((ProbeOutcome { probe: Probe::Sat(w), holed: None }, false));
        }
        let mut holed = None;
        if self.config.extend_witnesses && n >= 3 && known.coronas() + 1 == n {
            for keep in (1..=n - 2).rev() {
                let out = self.probe(n, EncodeMode::HOLE_FREE, Some(&known.truncated(keep)))?;
                if matches!(out.probe, Probe::Sat(_) | Probe::Budget) {
                    return Ok((out, false));
                }
                holed = holed.or(out.holed);
            }
        }
        let loose = self.probe(n, EncodeMode::HOLES_ALLOWED, None)?;
        match loose.probe {
            Probe::Unsat => return Ok((ProbeOutcome { probe: Probe::Unsat, holed: None }, true)),
            Probe::Budget => return Ok((ProbeOutcome { probe: Probe::Budget, holed }, false)),
            Probe::Sat(w) => {
                if validate_witness(self.shape(), &w, EncodeMode::HOLE_FREE).is_empty() {
                    return Ok((ProbeOutcome { probe: Probe::Sat(w), holed: None }, false));
                }
                holed = Some(w);
            }
        }
        let full = self.probe(n, EncodeMode::HOLE_FREE, None)?;
        Ok((ProbeOutcome { holed: full.holed.or(holed), probe: full.probe }, false))
    }

    /// `n` coronas cut from a periodic tiling, when the shape is known to
    /// have at least one and a tiling exists.
    fn periodic_patch(&mut self, n: usize, mode: EncodeMode, known: &Witness) -> Option<Witness> {
        if self.config.periodic_copies == 0 || known.coronas() == 0 {
            return None;
        }
        let shape = self.shape().clone();
        let copies = self.config.periodic_copies;
        let tiling = self.tiling.get_or_insert_with(|| PeriodicTiling::find(&shape, copies)).as_ref()?;
        let w = tiling.patch(n)?;
        if !validate_witness(&shape, &w, mode).is_empty() {
            return None;
        }
        self.stats.periodic_patches += 1;
        Some(w)
    }

    /// Both measures. `h_c` is searched first; `h_h` is then `h_c` or
    /// `h_c + 1`, and models met along the way often settle it.
    pub fn heesch_numbers(&mut self) -> Result<(MeasureResult, MeasureResult, Status), EngineError> {
        let shape = self.shape().clone();
        let cutoff = self.config.cutoff;
        // hole-free witness for lb_c coronas, holes-allowed one for lb_h
        let mut lb_c = (0, Witness::trivial(&shape));
        let mut lb_h = (0, Witness::trivial(&shape));
        let mut exact_c = false;
        let mut exact_h = false;
        let mut budget_hit = false;

        while lb_c.0 < cutoff {
            let n = lb_c.0 + 1;
            let (out, loose_unsat) = self.probe_both(n, &lb_c.1)?;
            if let Some(w) = out.holed {
                if n > lb_h.0 {
                    lb_h = (n, w);
                }
            }
            match out.probe {
                Probe::Sat(w) => {
                    if n > lb_h.0 {
                        lb_h = (n, w.clone());
                    }
                    lb_c = (n, w);
                }
                Probe::Unsat => {
                    exact_c = true;
                    exact_h = loose_unsat;
                    break;
                }
                Probe::Budget => {
                    budget_hit = true;
                    break;
                }
            }
        }

        if !exact_c && !budget_hit {
            let w = lb_c.1;
            let hc = MeasureResult { value: HeeschValue::AtLeast(cutoff), witness: w.clone() };
            let hh = MeasureResult { value: HeeschValue::AtLeast(cutoff), witness: w };
            return Ok((hc, hh, Status::CutoffReached));
        }
        if budget_hit {
            let hc = MeasureResult { value: HeeschValue::Unresolved { lower: lb_c.0 }, witness: lb_c.1 };
            let hh = MeasureResult { value: HeeschValue::Unresolved { lower: lb_h.0 }, witness: lb_h.1 };
            return Ok((hc, hh, Status::BudgetExceeded));
        }
        let h_c = lb_c.0;
        let hc = MeasureResult { value: HeeschValue::Exact(h_c), witness: lb_c.1.clone() };
        if lb_h.0 > h_c || exact_h {
            let hh = MeasureResult { value: HeeschValue::Exact(lb_h.0), witness: lb_h.1 };
            return Ok((hc, hh, Status::Finite));
        }
        // no more than one corona beyond h_c: truncating a holes-allowed
        // structure gives a hole-free one
        let out = self.probe_extending(h_c + 1, EncodeMode::HOLES_ALLOWED, &lb_c.1)?;
        let (hh, status) = match out.probe {
            Probe::Sat(w) => (MeasureResult { value: HeeschValue::Exact(h_c + 1), witness: w }, Status::Finite),
            Probe::Unsat => (MeasureResult { value: HeeschValue::Exact(h_c), witness: lb_c.1 }, Status::Finite),
            Probe::Budget => (
                MeasureResult { value: HeeschValue::Unresolved { lower: h_c }, witness: lb_c.1 },
                Status::BudgetExceeded,
            ),
        };
        Ok((hc, hh, status))
    }
}

fn shape_lit(map: &VarMap, level: usize, t: Transform) -> Result<Lit, EngineError> {
    map.shape_var(level, t)
        .map(|v| v.negative())
        .ok_or_else(|| EngineError::Integrity(format!("placement {t} at level {level} has no variable")))
}

/// No-goods for pockets enclosed by an interior prefix of the coronas. For
/// a pocket `R` of levels `0..=k`, with `B` the placements at those levels
/// sharing an edge with `R`, each placement `f` above level `k` that covers
/// a cell of `R` yields the clause `¬B ∨ ¬f`.
fn interior_guard_clauses(grid: GridKind, w: &Witness, map: &VarMap) -> Result<Vec<Vec<Lit>>, EngineError> {
    let top = w.coronas();
    if top == 0 {
        return Ok(Vec::new());
    }
    let all: Vec<&Placement> = w.placements().map(|(_, p)| p).collect();
    let levels: Vec<usize> = w.placements().map(|(k, _)| k).collect();
    let Some(r) = paint(grid, &all)? else {
        return Ok(Vec::new());
    };
    let mut clauses = Vec::new();
    for k in 0..top {
        for region in r.enclosed_regions_where(|l| levels[l as usize - 1] <= k) {
            let b: Vec<usize> = bounding(grid, &r, &region, false);
            let mut inside: Vec<usize> = region
                .iter()
                .map(|&c| r.label(c))
                .filter(|&l| l != 0 && levels[l as usize - 1] > k)
                .map(|l| l as usize - 1)
                .collect();
            inside.sort_unstable();
            inside.dedup();
            if inside.is_empty() {
                return Err(EngineError::Integrity(format!("empty pocket inside coronas 0..={k}")));
            }
            let base: Vec<Lit> =
                b.iter().map(|&i| shape_lit(map, levels[i], all[i].transform)).collect::<Result<_, _>>()?;
            for f in inside {
                let mut c = base.clone();
                c.push(shape_lit(map, levels[f], all[f].transform)?);
                clauses.push(c);
            }
        }
        if !clauses.is_empty() {
            break;
        }
    }
    Ok(clauses)
}

/// Both Heesch numbers of a shape.
pub fn heesch_numbers(shape: &Shape, config: &EngineConfig) -> Result<HeeschResult, EngineError> {
    run(shape, config, Measures::Both)
}

pub fn compute_h_c(shape: &Shape, config: &EngineConfig) -> Result<MeasureResult, EngineError> {
    Engine::new(shape, config.clone())?.compute_h_c()
}

pub fn compute_h_h(shape: &Shape, config: &EngineConfig) -> Result<MeasureResult, EngineError> {
    Engine::new(shape, config.clone())?.compute_h_h()
}

/// Computes the selected measures. Holed shapes give a rejected result
/// rather than an error.
pub fn run(shape: &Shape, config: &EngineConfig, measures: Measures) -> Result<HeeschResult, EngineError> {
    let start = Instant::now();
    let mut engine = match Engine::new(shape, config.clone()) {
        Ok(e) => e,
        Err(EngineError::HoledInput) => {
            return Ok(HeeschResult {
                h_c: None,
                h_h: None,
                status: Status::RejectedHoledInput,
                stats: EngineStats::default(),
                elapsed: start.elapsed(),
            })
        }
        Err(e) => return Err(e),
    };
    let single_status = |m: &MeasureResult| match m.value {
        HeeschValue::Exact(_) => Status::Finite,
        HeeschValue::AtLeast(_) => Status::CutoffReached,
        HeeschValue::Unresolved { .. } => Status::BudgetExceeded,
    };
    let (h_c, h_h, status) = match measures {
        Measures::Both => {
            let (c, h, s) = engine.heesch_numbers()?;
            (Some(c), Some(h), s)
        }
        Measures::HoleFree => {
            let c = engine.compute_h_c()?;
            let s = single_status(&c);
            (Some(c), None, s)
        }
        Measures::HolesAllowed => {
            let h = engine.compute_h_h()?;
            let s = single_status(&h);
            (None, Some(h), s)
        }
    };
    let mut stats = EngineStats::default();
    stats.add(&engine.stats);
    Ok(HeeschResult { h_c, h_h, status, stats, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i32, i32)]) -> Vec<Cell> {
        v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    fn monomino_ring() -> (Shape, Witness) {
        let s = Shape::new(GridKind::Square, [Cell::ORIGIN]).unwrap();
        let ring = GridKind::Square
            .halo_neighbors(Cell::ORIGIN)
            .map(|c| Placement { transform: Transform::new(0, c.x, c.y), cells: vec![c] })
            .collect();
        let w = Witness { shape: s.clone(), levels: vec![vec![Witness::trivial(&s).levels[0][0].clone()], ring] };
        (s, w)
    }

    #[test]
    fn ring_of_squares_has_one_hole() {
        let (_, w) = monomino_ring();
        let holes = find_holes(&w.levels[1], GridKind::Square).unwrap();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].cells, vec![Cell::ORIGIN]);
        assert_eq!(holes[0].halo_bounding.len(), 8);
        assert_eq!(holes[0].edge_bounding.len(), 4);
    }

    #[test]
    fn u_pentomino_pair_hole() {
        let u = Shape::new(GridKind::Square, cells(&[(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)])).unwrap();
        let a = u.place(Transform::IDENTITY).unwrap();
        // rotated by 180 degrees and set on top, closing the cup
        let b = u.place(Transform::new(2, 2, 3)).unwrap();
        let holes = find_holes(&[a, b], GridKind::Square).unwrap();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].cells, cells(&[(1, 1), (1, 2)]));
    }

    #[test]
    fn overlap_is_reported() {
        let p = Placement { transform: Transform::IDENTITY, cells: vec![Cell::ORIGIN] };
        assert!(matches!(find_holes(&[p.clone(), p], GridKind::Square), Err(EngineError::Overlap { .. })));
    }

    #[test]
    fn monomino_ring_validates() {
        let (s, w) = monomino_ring();
        assert!(validate_witness(&s, &w, EncodeMode::HOLE_FREE).is_empty());
        assert!(validate_witness(&s, &w, EncodeMode::HOLES_ALLOWED).is_empty());
        let mut broken = w.clone();
        broken.levels[1].remove(3);
        let v = validate_witness(&s, &broken, EncodeMode::HOLES_ALLOWED);
        assert!(v.iter().any(|x| matches!(x, Violation::UncoveredHalo { level: 1, .. })), "{v:?}");
    }

    #[test]
    fn monomino_reaches_cutoff() {
        let s = Shape::new(GridKind::Square, [Cell::ORIGIN]).unwrap();
        let r = heesch_numbers(&s, &EngineConfig::with_cutoff(3)).unwrap();
        assert_eq!(r.status, Status::CutoffReached);
        assert_eq!(r.h_h.unwrap().value, HeeschValue::AtLeast(3));
        let hh = compute_h_h(&s, &EngineConfig::with_cutoff(3)).unwrap();
        assert_eq!(hh.value, HeeschValue::AtLeast(3));
        assert_eq!(hh.witness.coronas(), 3);
    }

    #[test]
    fn holed_input_is_rejected() {
        let ring: Vec<Cell> = GridKind::Square.halo_neighbors(Cell::ORIGIN).collect();
        let s = Shape::new(GridKind::Square, ring).unwrap();
        let r = heesch_numbers(&s, &EngineConfig::with_cutoff(2)).unwrap();
        assert_eq!(r.status, Status::RejectedHoledInput);
    }
}

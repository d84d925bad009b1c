//! A conflict-driven clause-learning solver.
//!
//! Binary clauses live in implication lists; longer clauses use two watched
//! literals with a blocker. Learning is first-UIP with recursive
//! minimization, decisions follow VSIDS with phase saving, restarts follow
//! the Luby sequence and learnt clauses are pruned by glue (LBD). The solver
//! is incremental: clauses may be added between calls to [`Solver::solve`].
//! There is no randomness, so runs are reproducible.

use std::time::Instant;

use super::{Lit, Var};

const UNDEF: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;

const NO_REASON: u32 = u32::MAX;
const BINARY_REASON: u32 = 1 << 31;

// clause header: [len, flags | lbd << 2, activity bits]
const HEADER: usize = 3;
const LEARNT: u32 = 1;
const DELETED: u32 = 2;

const RESTART_UNIT: u64 = 100;
const FIRST_REDUCE: u64 = 2000;
const REDUCE_STEP: u64 = 300;
const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f32 = 0.999;

/// Outcome of a solve call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Sat,
    Unsat,
    /// The conflict or time budget ran out before a decision.
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Clone, Copy)]
enum Conflict {
    Binary(Lit, Lit),
    Long(u32),
}

#[derive(Default)]
pub struct Solver {
    ok: bool,
    values: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,

    arena: Vec<u32>,
    wasted: usize,
    originals: Vec<u32>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    binaries: Vec<Vec<Lit>>,

    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f32,
    heap: VarHeap,
    phase: Vec<bool>,

    seen: Vec<u8>,
    stack: Vec<Lit>,
    to_clear: Vec<Lit>,
    level_stamp: Vec<u64>,
    stamp: u64,

    next_reduce: u64,
    reduce_count: u64,
    model: Vec<bool>,
    stats: SolverStats,
}

impl Solver {
    pub fn new() -> Self {
        Solver { ok: true, var_inc: 1.0, cla_inc: 1.0, next_reduce: FIRST_REDUCE, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.level.len()
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Model from the last satisfiable call, indexed by variable.
    pub fn model(&self) -> &[bool] {
        &self.model
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.level.len() as u32;
        self.values.extend([UNDEF, UNDEF]);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.watches.extend([Vec::new(), Vec::new()]);
        self.binaries.extend([Vec::new(), Vec::new()]);
        self.activity.push(0.0);
        self.phase.push(false);
        self.seen.push(0);
        self.level_stamp.push(0);
        self.heap.grow(v as usize + 1);
        self.heap.insert(v, &self.activity);
        Var(v)
    }

    pub fn ensure_vars(&mut self, n: usize) {
        while self.num_vars() < n {
            self.new_var();
        }
    }

    /// Sets the polarity tried first when `v` is decided.
    pub fn set_phase(&mut self, v: Var, positive: bool) {
        self.ensure_vars(v.index() + 1);
        self.phase[v.index()] = positive;
    }

    /// Raises the initial branching priority of `v`; larger is earlier.
    pub fn set_priority(&mut self, v: Var, priority: f64) {
        self.ensure_vars(v.index() + 1);
        self.activity[v.index()] = priority;
        if self.heap.contains(v.0) {
            self.heap.decrease(v.0, &self.activity);
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> u8 {
        self.values[l.code()]
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause at the root. Returns `false` once the clause set is known
    /// to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        if let Some(max) = clause.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        let mut lits: Vec<Lit> = clause.to_vec();
        lits.sort_unstable();
        lits.dedup();
        let mut kept = Vec::with_capacity(lits.len());
        for (i, &l) in lits.iter().enumerate() {
            if i + 1 < lits.len() && lits[i + 1] == !l {
                return true; // tautology
            }
            match self.value(l) {
                TRUE => return true,
                FALSE => {}
                _ => kept.push(l),
            }
        }
        match kept.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(kept[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            2 => self.attach_binary(kept[0], kept[1]),
            _ => {
                let c = self.alloc(&kept, false, 0);
                self.originals.push(c);
                self.attach(c);
            }
        }
        self.ok
    }

    fn attach_binary(&mut self, a: Lit, b: Lit) {
        self.binaries[a.code()].push(b);
        self.binaries[b.code()].push(a);
    }

    fn alloc(&mut self, lits: &[Lit], learnt: bool, lbd: u32) -> u32 {
        let c = self.arena.len() as u32;
        self.arena.push(lits.len() as u32);
        self.arena.push(if learnt { LEARNT } else { 0 } | (lbd << 2));
        self.arena.push(0f32.to_bits());
        self.arena.extend(lits.iter().map(|l| l.0));
        c
    }

    #[inline]
    fn clause_len(&self, c: u32) -> usize {
        self.arena[c as usize] as usize
    }

    #[inline]
    fn lit_at(&self, c: u32, i: usize) -> Lit {
        Lit(self.arena[c as usize + HEADER + i])
    }

    fn attach(&mut self, c: u32) {
        let (a, b) = (self.lit_at(c, 0), self.lit_at(c, 1));
        self.watches[a.code()].push(Watcher { cref: c, blocker: b });
        self.watches[b.code()].push(Watcher { cref: c, blocker: a });
    }

    #[inline]
    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var().index();
        self.values[l.code()] = TRUE;
        self.values[(!l).code()] = FALSE;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.values[l.code()] = UNDEF;
            self.values[(!l).code()] = UNDEF;
            self.phase[v.index()] = l.is_positive();
            if !self.heap.contains(v.0) {
                self.heap.insert(v.0, &self.activity);
            }
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = start;
    }

    fn propagate(&mut self) -> Option<Conflict> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;

            let bins = std::mem::take(&mut self.binaries[false_lit.code()]);
            let mut conflict = None;
            for &other in &bins {
                match self.value(other) {
                    TRUE => {}
                    UNDEF => self.enqueue(other, BINARY_REASON | false_lit.0),
                    _ => {
                        conflict = Some(Conflict::Binary(false_lit, other));
                        break;
                    }
                }
            }
            self.binaries[false_lit.code()] = bins;
            if conflict.is_some() {
                return conflict;
            }

            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = w.cref as usize;
                let base = c + HEADER;
                if self.arena[base] == false_lit.0 {
                    self.arena.swap(base, base + 1);
                }
                let first = Lit(self.arena[base]);
                if first != w.blocker && self.value(first) == TRUE {
                    ws[j] = Watcher { cref: w.cref, blocker: first };
                    j += 1;
                    continue;
                }
                let len = self.arena[c] as usize;
                let mut moved = false;
                for k in 2..len {
                    let l = Lit(self.arena[base + k]);
                    if self.value(l) != FALSE {
                        self.arena.swap(base + 1, base + k);
                        self.watches[l.code()].push(Watcher { cref: w.cref, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher { cref: w.cref, blocker: first };
                j += 1;
                if self.value(first) == FALSE {
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                    conflict = Some(Conflict::Long(w.cref));
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: Var) {
        let a = &mut self.activity[v.index()];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in self.activity.iter_mut() {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap.contains(v.0) {
            self.heap.decrease(v.0, &self.activity);
        }
    }

    fn bump_clause(&mut self, c: u32) {
        let idx = c as usize + 2;
        let act = f32::from_bits(self.arena[idx]) + self.cla_inc;
        self.arena[idx] = act.to_bits();
        if act > 1e20 {
            for &l in &self.learnts {
                let k = l as usize + 2;
                self.arena[k] = (f32::from_bits(self.arena[k]) * 1e-20).to_bits();
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// Literals of the clause behind a reason or conflict, excluding the
    /// implied literal when `skip_first` is set.
    fn reason_lits(&self, reason: u32, skip_first: bool, out: &mut Vec<Lit>) {
        out.clear();
        if reason & BINARY_REASON != 0 && reason != NO_REASON {
            out.push(Lit(reason & !BINARY_REASON));
        } else {
            let len = self.clause_len(reason);
            let start = usize::from(skip_first);
            out.extend((start..len).map(|i| self.lit_at(reason, i)));
        }
    }

    fn analyze(&mut self, conflict: Conflict) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut path = 0;
        let mut index = self.trail.len();
        let mut buf = Vec::new();
        let mut uip;
        let current = self.decision_level();

        match conflict {
            Conflict::Binary(a, b) => {
                buf.clear();
                buf.push(a);
                buf.push(b);
            }
            Conflict::Long(c) => {
                if self.arena[c as usize + 1] & LEARNT != 0 {
                    self.bump_clause(c);
                }
                self.reason_lits(c, false, &mut buf);
            }
        }
        loop {
            for &q in &buf {
                let v = q.var();
                if self.seen[v.index()] == 0 && self.level[v.index()] > 0 {
                    self.seen[v.index()] = 1;
                    self.bump_var(v);
                    if self.level[v.index()] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] != 0 {
                    break;
                }
            }
            let lit = self.trail[index];
            uip = lit;
            self.seen[lit.var().index()] = 0;
            path -= 1;
            if path == 0 {
                break;
            }
            let r = self.reason[lit.var().index()];
            if r & BINARY_REASON == 0 && self.arena[r as usize + 1] & LEARNT != 0 {
                self.bump_clause(r);
            }
            self.reason_lits(r, true, &mut buf);
        }
        learnt[0] = !uip;

        // recursive minimization
        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt);
        let mut abstract_levels = 0u32;
        for l in &learnt[1..] {
            abstract_levels |= 1 << (self.level[l.var().index()] & 31);
        }
        let mut kept = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[l.var().index()] == NO_REASON || !self.redundant(l, abstract_levels) {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);
        for l in std::mem::take(&mut self.to_clear) {
            self.seen[l.var().index()] = 0;
        }

        // backjump level: put the deepest remaining literal second
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[learnt[1].var().index()];
        }
        (learnt, bt)
    }

    fn redundant(&mut self, l: Lit, abstract_levels: u32) -> bool {
        self.stack.clear();
        self.stack.push(l);
        let top = self.to_clear.len();
        let mut buf = Vec::new();
        while let Some(q) = self.stack.pop() {
            let r = self.reason[q.var().index()];
            self.reason_lits(r, true, &mut buf);
            for &x in &buf {
                let v = x.var().index();
                if self.seen[v] == 0 && self.level[v] > 0 {
                    if self.reason[v] != NO_REASON && (abstract_levels >> (self.level[v] & 31)) & 1 != 0 {
                        self.seen[v] = 1;
                        self.stack.push(x);
                        self.to_clear.push(x);
                    } else {
                        for k in self.to_clear.drain(top..) {
                            self.seen[k.var().index()] = 0;
                        }
                        return false;
                    }
                }
            }
        }
        true
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        self.stamp += 1;
        let mut n = 0;
        for l in lits {
            let lv = self.level[l.var().index()] as usize;
            if self.level_stamp.len() <= lv {
                self.level_stamp.resize(lv + 1, 0);
            }
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                n += 1;
            }
        }
        n
    }

    fn locked(&self, c: u32) -> bool {
        let l = self.lit_at(c, 0);
        self.value(l) == TRUE && self.reason[l.var().index()] == c
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<u32> = Vec::new();
        let mut keep: Vec<u32> = Vec::new();
        for &c in &self.learnts {
            let lbd = self.arena[c as usize + 1] >> 2;
            if lbd <= 2 || self.locked(c) {
                keep.push(c);
            } else {
                cands.push(c);
            }
        }
        cands.sort_by(|&a, &b| {
            let la = self.arena[a as usize + 1] >> 2;
            let lb = self.arena[b as usize + 1] >> 2;
            let aa = f32::from_bits(self.arena[a as usize + 2]);
            let ab = f32::from_bits(self.arena[b as usize + 2]);
            lb.cmp(&la).then(aa.partial_cmp(&ab).unwrap_or(std::cmp::Ordering::Equal))
        });
        let remove = cands.len() / 2;
        for &c in &cands[..remove] {
            self.arena[c as usize + 1] |= DELETED;
            self.wasted += HEADER + self.clause_len(c);
        }
        keep.extend_from_slice(&cands[remove..]);
        self.learnts = keep;
        for ws in self.watches.iter_mut() {
            ws.retain(|w| self.arena[w.cref as usize + 1] & DELETED == 0);
        }
        if self.wasted * 2 > self.arena.len() {
            self.collect_garbage();
        }
    }

    fn collect_garbage(&mut self) {
        let mut fresh: Vec<u32> = Vec::with_capacity(self.arena.len() - self.wasted);
        let mut forward = rustc_hash::FxHashMap::default();
        let mut relocate = |c: u32, arena: &[u32], fresh: &mut Vec<u32>| {
            let len = arena[c as usize] as usize;
            let n = fresh.len() as u32;
            fresh.extend_from_slice(&arena[c as usize..c as usize + HEADER + len]);
            forward.insert(c, n);
            n
        };
        for c in self.originals.iter_mut() {
            *c = relocate(*c, &self.arena, &mut fresh);
        }
        for c in self.learnts.iter_mut() {
            *c = relocate(*c, &self.arena, &mut fresh);
        }
        for ws in self.watches.iter_mut() {
            for w in ws.iter_mut() {
                w.cref = forward[&w.cref];
            }
        }
        for r in self.reason.iter_mut() {
            if *r != NO_REASON && *r & BINARY_REASON == 0 {
                // reasons of unassigned variables are stale; drop them
                *r = forward.get(r).copied().unwrap_or(NO_REASON);
            }
        }
        self.arena = fresh;
        self.wasted = 0;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.values[Var(v).positive().code()] == UNDEF {
                return Some(Lit::new(Var(v), self.phase[v as usize]));
            }
        }
        None
    }

    /// Decides the current clause set.
    pub fn solve(&mut self, conflict_limit: Option<u64>, deadline: Option<Instant>) -> SolveStatus {
        if !self.ok {
            return SolveStatus::Unsat;
        }
        self.cancel_until(0);
        if self.propagate().is_some() {
            self.ok = false;
            return SolveStatus::Unsat;
        }
        let start_conflicts = self.stats.conflicts;
        let mut restart = 0u32;
        loop {
            let limit = luby(restart) * RESTART_UNIT;
            restart += 1;
            match self.search(limit, start_conflicts, conflict_limit, deadline) {
                Some(status) => {
                    if status == SolveStatus::Sat {
                        self.model = (0..self.num_vars())
                            .map(|v| self.values[Var(v as u32).positive().code()] == TRUE)
                            .collect();
                    }
                    self.cancel_until(0);
                    return status;
                }
                None => self.stats.restarts += 1,
            }
        }
    }

    fn search(
        &mut self,
        restart_after: u64,
        start_conflicts: u64,
        conflict_limit: Option<u64>,
        deadline: Option<Instant>,
    ) -> Option<SolveStatus> {
        let mut local = 0u64;
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                local += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Some(SolveStatus::Unsat);
                }
                let (learnt, bt) = self.analyze(conflict);
                self.cancel_until(bt);
                match learnt.len() {
                    1 => self.enqueue(learnt[0], NO_REASON),
                    2 => {
                        self.attach_binary(learnt[0], learnt[1]);
                        self.enqueue(learnt[0], BINARY_REASON | learnt[1].0);
                    }
                    _ => {
                        let lbd = self.lbd(&learnt);
                        let c = self.alloc(&learnt, true, lbd);
                        self.learnts.push(c);
                        self.attach(c);
                        self.bump_clause(c);
                        self.enqueue(learnt[0], c);
                    }
                }
                self.var_inc /= VAR_DECAY;
                self.cla_inc /= CLAUSE_DECAY;

                let used = self.stats.conflicts - start_conflicts;
                if conflict_limit.is_some_and(|lim| used >= lim) {
                    return Some(SolveStatus::BudgetExceeded);
                }
                if used.is_multiple_of(256) && deadline.is_some_and(|d| Instant::now() >= d) {
                    return Some(SolveStatus::BudgetExceeded);
                }
            } else {
                if local >= restart_after {
                    self.cancel_until(0);
                    return None;
                }
                if self.stats.conflicts >= self.next_reduce {
                    self.reduce_count += 1;
                    self.next_reduce = self.stats.conflicts + FIRST_REDUCE + REDUCE_STEP * self.reduce_count;
                    self.reduce_db();
                }
                match self.pick_branch() {
                    None => return Some(SolveStatus::Sat),
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }
}

fn luby(mut i: u32) -> u64 {
    // finite subsequence containing index i, then its size and position
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = i as u64;
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    i = seq;
    1u64 << i
}

/// Binary max-heap of variables ordered by activity.
#[derive(Default)]
struct VarHeap {
    heap: Vec<u32>,
    index: Vec<i32>,
}

impl VarHeap {
    fn grow(&mut self, n: usize) {
        if self.index.len() < n {
            self.index.resize(n, -1);
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.index[v as usize] >= 0
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        self.index[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.up(self.heap.len() - 1, act);
    }

    /// Restores order after `v`'s activity increased.
    fn decrease(&mut self, v: u32, act: &[f64]) {
        let i = self.index[v as usize] as usize;
        self.up(i, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.index[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last as usize] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn better(a: u32, b: u32, act: &[f64]) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if !Self::better(v, p, act) {
                break;
            }
            self.heap[i] = p;
            self.index[p as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && Self::better(self.heap[r], self.heap[l], act) { r } else { l };
            if !Self::better(self.heap[c], v, act) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.index[self.heap[i] as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.index[v as usize] = i as i32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Vec<Lit> {
        v.iter().map(|&x| Lit::from_dimacs(x)).collect()
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn unit_and_contradiction() {
        let mut s = Solver::new();
        s.add_clause(&d(&[1]));
        assert_eq!(s.solve(None, None), SolveStatus::Sat);
        assert!(s.model()[0]);
        s.add_clause(&d(&[-1]));
        assert_eq!(s.solve(None, None), SolveStatus::Unsat);
    }

    /// Pigeons `p` into holes `h`: variable `i*h + j + 1` puts pigeon i in hole j.
    pub(crate) fn pigeonhole(p: i64, h: i64) -> Vec<Vec<Lit>> {
        let var = |i: i64, j: i64| i * h + j + 1;
        let mut cls = Vec::new();
        for i in 0..p {
            cls.push(d(&(0..h).map(|j| var(i, j)).collect::<Vec<_>>()));
        }
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    cls.push(d(&[-var(a, j), -var(b, j)]));
                }
            }
        }
        cls
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for (p, h, expect) in [(4, 3, SolveStatus::Unsat), (3, 3, SolveStatus::Sat), (7, 6, SolveStatus::Unsat)] {
            let mut s = Solver::new();
            for c in pigeonhole(p, h) {
                s.add_clause(&c);
            }
            assert_eq!(s.solve(None, None), expect, "php({p},{h})");
        }
    }

    #[test]
    fn conflict_budget_is_reported() {
        let mut s = Solver::new();
        for c in pigeonhole(9, 8) {
            s.add_clause(&c);
        }
        assert_eq!(s.solve(Some(10), None), SolveStatus::BudgetExceeded);
        // the budget does not poison later calls
        assert_eq!(s.solve(None, None), SolveStatus::Unsat);
    }
}

use std::collections::{BTreeSet, HashSet};

use heesch_core::cnf::{SolveSession, SolveStatus, SolverBackend};
use heesch_core::encoder::{build_formula, corona_transforms, corona_transforms_with, CoronaGeometry, CoronaOptions};
use heesch_core::engine::validate_witness;
use heesch_core::polyform::enumerate_free;
use heesch_core::{Cell, EncodeMode, GridKind, Shape};

fn monomino(grid: GridKind) -> Shape {
    Shape::new(grid, [Cell::ORIGIN]).unwrap()
}

fn shape(grid: GridKind, cells: &[(i32, i32)]) -> Shape {
    Shape::new(grid, cells.iter().map(|&(x, y)| Cell::new(x, y))).unwrap()
}

/// Rings of cells around the origin, grown by halo steps.
fn rings(grid: GridKind, n: usize) -> Vec<BTreeSet<Cell>> {
    let mut seen: HashSet<Cell> = HashSet::from([Cell::ORIGIN]);
    let mut out = vec![BTreeSet::from([Cell::ORIGIN])];
    for _ in 0..n {
        let next: BTreeSet<Cell> =
            out.last().unwrap().iter().flat_map(|&p| grid.halo_neighbors(p)).filter(|q| !seen.contains(q)).collect();
        seen.extend(next.iter().copied());
        out.push(next);
    }
    out
}

fn placed_cells(shape: &Shape, level: &[heesch_core::Transform]) -> BTreeSet<Cell> {
    level.iter().map(|&t| shape.image(t)[0]).collect()
}

#[test]
fn monomino_levels_are_rings() {
    for grid in GridKind::ALL {
        let s = monomino(grid);
        let sets = corona_transforms(&s, 3).unwrap();
        let r = rings(grid, 3);
        for k in 0..=3 {
            assert_eq!(placed_cells(&s, &sets.levels[k]), r[k], "{grid} level {k}");
        }
    }
}

#[test]
fn literal_monomino_levels_are_balls() {
    for grid in GridKind::ALL {
        let s = monomino(grid);
        let sets = corona_transforms_with(&s, 3, CoronaOptions::LITERAL).unwrap();
        let r = rings(grid, 3);
        assert_eq!(placed_cells(&s, &sets.levels[1]), r[1]);
        for k in 2..=3 {
            // everything adjacent to a ring k-1 cell: the ball of radius k
            let ball: BTreeSet<Cell> = r[..=k].iter().flatten().copied().collect();
            assert_eq!(placed_cells(&s, &sets.levels[k]), ball, "{grid} level {k}");
        }
    }
}

fn count_models(f: &heesch_core::cnf::CnfFormula) -> usize {
    let n = f.num_vars();
    assert!(n <= 22, "too many variables for enumeration: {n}");
    (0..1u32 << n).filter(|&b| f.evaluate(&(0..n).map(|i| b >> i & 1 == 1).collect::<Vec<_>>())).count()
}

#[test]
fn square_monomino_has_exactly_one_first_corona() {
    // literal F_1: 9 shape variables and 9 cell variables, every neighbour used
    let mut g = CoronaGeometry::with_options(&monomino(GridKind::Square), CoronaOptions::LITERAL);
    for mode in [EncodeMode::HOLE_FREE, EncodeMode::HOLES_ALLOWED] {
        let (f, map) = g.build_formula(1, mode).unwrap();
        assert_eq!((map.num_shape_vars(), map.num_cell_vars()), (9, 9));
        assert_eq!(count_models(&f), 1);
    }
}

#[test]
fn first_corona_has_no_lower_level_contacts() {
    // with one corona there is no level two below anything, so the pair
    // clauses between shape variables only come from overlaps
    let s = shape(GridKind::Square, &[(0, 0), (1, 0)]);
    let mut g = CoronaGeometry::with_options(&s, CoronaOptions::LITERAL);
    let (f, map) = g.build_formula(1, EncodeMode::HOLES_ALLOWED).unwrap();
    let shape_vars = map.num_shape_vars() as u32;
    for c in f.clauses() {
        if c.len() == 2 && c.iter().all(|l| !l.is_positive() && l.var().0 < shape_vars) {
            let a = map.level(1).iter().chain(map.level(0)).find(|e| e.1 == c[0].var()).unwrap().0;
            let b = map.level(1).iter().chain(map.level(0)).find(|e| e.1 == c[1].var()).unwrap().0;
            let (ca, cb): (HashSet<Cell>, HashSet<Cell>) = (s.image(a).into_iter().collect(), s.image(b).into_iter().collect());
            assert!(!ca.is_disjoint(&cb), "{a} and {b} do not overlap");
        }
    }
}

#[test]
fn variables_are_laid_out_level_by_level() {
    let s = shape(GridKind::Hex, &[(0, 0), (1, 0), (1, 1)]);
    let (f, map) = build_formula(&s, 2, EncodeMode::HOLE_FREE).unwrap();
    let mut next = 0u32;
    for k in 0..=2 {
        let level = map.level(k);
        assert!(level.windows(2).all(|w| w[0].0 < w[1].0), "level {k} sorted");
        for &(t, v) in level {
            assert_eq!(v.0, next);
            assert_eq!(map.shape_var(k, t), Some(v));
            next += 1;
        }
    }
    assert_eq!(next as usize, map.num_shape_vars());
    // every cell of every candidate has exactly one variable, after the shape variables
    let mut expected: BTreeSet<Cell> = BTreeSet::new();
    for k in 0..=2 {
        for &(t, _) in map.level(k) {
            expected.extend(s.image(t));
        }
    }
    let cells: BTreeSet<Cell> = map.cells().map(|(p, _)| p).collect();
    assert_eq!(cells, expected);
    for (i, (p, v)) in map.cells().enumerate() {
        assert_eq!(v.0 as usize, map.num_shape_vars() + i);
        assert_eq!(map.cell_var(p), Some(v));
    }
    assert!(f.num_vars() as usize >= map.num_shape_vars() + map.num_cell_vars());
    assert!(f.clauses().flatten().all(|l| l.var().0 < f.num_vars()));
}

#[test]
fn smaller_formula_is_not_a_subformula() {
    // F_1 lets level-1 copies ignore their own halo; F_2 does not
    let s = shape(GridKind::Square, &[(0, 0), (1, 0), (2, 0), (2, 1)]);
    let mut g = CoronaGeometry::with_options(&s, CoronaOptions::LITERAL);
    let (f1, m1) = g.build_formula(1, EncodeMode::HOLES_ALLOWED).unwrap();
    let (f2, m2) = g.build_formula(2, EncodeMode::HOLES_ALLOWED).unwrap();
    let rename = |c: &[heesch_core::cnf::Lit]| -> Option<Vec<String>> {
        let mut names: Vec<String> = c
            .iter()
            .map(|l| {
                let v = l.var();
                let shape = (0..=1).find_map(|k| m1.level(k).iter().find(|e| e.1 == v).map(|e| format!("s{k}{}", e.0)));
                let name = shape.or_else(|| m1.cells().find(|e| e.1 == v).map(|e| format!("c{}", e.0)))?;
                Some(format!("{}{name}", if l.is_positive() { "+" } else { "-" }))
            })
            .collect::<Option<_>>()?;
        names.sort();
        Some(names)
    };
    let rename2 = |c: &[heesch_core::cnf::Lit]| -> Option<Vec<String>> {
        let mut names: Vec<String> = c
            .iter()
            .map(|l| {
                let v = l.var();
                let shape = (0..=2).find_map(|k| m2.level(k).iter().find(|e| e.1 == v).map(|e| format!("s{k}{}", e.0)));
                let name = shape.or_else(|| m2.cells().find(|e| e.1 == v).map(|e| format!("c{}", e.0)))?;
                Some(format!("{}{name}", if l.is_positive() { "+" } else { "-" }))
            })
            .collect::<Option<_>>()?;
        names.sort();
        Some(names)
    };
    let in_f2: HashSet<Vec<String>> = f2.clauses().filter_map(rename2).collect();
    let missing = f1.clauses().filter_map(rename).filter(|c| !in_f2.contains(c)).count();
    assert!(missing > 0);
}

#[test]
fn models_decode_to_valid_witnesses() {
    for grid in GridKind::ALL {
        for s in enumerate_free(grid, 4, true).unwrap() {
            for mode in [EncodeMode::HOLE_FREE, EncodeMode::HOLES_ALLOWED] {
                let (f, map) = build_formula(&s, 1, mode).unwrap();
                let mut session = SolveSession::from_formula(f.clone(), SolverBackend::Builtin);
                if session.solve().unwrap() != SolveStatus::Sat {
                    continue;
                }
                let model = session.model().unwrap().to_vec();
                assert!(f.evaluate(&model));
                let w = map.decode_model(&model);
                assert_eq!(w.coronas(), 1);
                let v = validate_witness(&s, &w, EncodeMode::HOLES_ALLOWED);
                assert!(v.is_empty(), "{grid} {s}: {:?}", v);
            }
        }
    }
}

#[test]
fn pruning_keeps_satisfiability() {
    let shapes = [
        shape(GridKind::Square, &[(0, 0), (1, 0), (2, 0), (1, 1)]),
        shape(GridKind::Hex, &[(0, 0), (1, 0), (2, 0)]),
        shape(GridKind::Iamond, &[(0, 0), (1, 1), (3, 0)]),
    ];
    for s in shapes {
        for n in 1..=2 {
            let mut answers = Vec::new();
            for opts in [CoronaOptions::default(), CoronaOptions::LITERAL] {
                let (f, _) = CoronaGeometry::with_options(&s, opts).build_formula(n, EncodeMode::HOLES_ALLOWED).unwrap();
                answers.push(SolveSession::from_formula(f, SolverBackend::Builtin).solve().unwrap());
            }
            assert_eq!(answers[0], answers[1], "{s} n={n}");
        }
    }
}

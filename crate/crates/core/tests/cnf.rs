use heesch_core::cnf::{
    export_dimacs, format_output, import_model, parse_dimacs, Budget, CnfFormula, ExternalSolver, Lit, SolveSession,
    SolveStatus, Solver, SolverBackend, SolverOutput,
};
use proptest::prelude::*;

fn formula(num_vars: u32, clauses: &[Vec<i64>]) -> CnfFormula {
    let mut f = CnfFormula::with_vars(num_vars);
    for c in clauses {
        let lits: Vec<Lit> = c.iter().map(|&d| Lit::from_dimacs(d)).collect();
        f.add_clause(&lits).unwrap();
    }
    f
}

fn assignment(bits: u32, n: u32) -> Vec<bool> {
    (0..n).map(|i| bits >> i & 1 == 1).collect()
}

/// All satisfying assignments as bit masks.
fn brute_force(f: &CnfFormula) -> Vec<u32> {
    let n = f.num_vars();
    (0..1u32 << n).filter(|&b| f.evaluate(&assignment(b, n))).collect()
}

fn solve_builtin(f: &CnfFormula) -> (SolveStatus, Vec<bool>) {
    let mut s = Solver::new();
    s.ensure_vars(f.num_vars() as usize);
    for c in f.clauses() {
        s.add_clause(c);
    }
    let st = s.solve(None, None);
    (st, if st == SolveStatus::Sat { s.model().to_vec() } else { Vec::new() })
}

fn pigeonhole(p: i64, h: i64) -> CnfFormula {
    let var = |i: i64, j: i64| i * h + j + 1;
    let mut clauses = Vec::new();
    for i in 0..p {
        clauses.push((0..h).map(|j| var(i, j)).collect());
    }
    for j in 0..h {
        for a in 0..p {
            for b in a + 1..p {
                clauses.push(vec![-var(a, j), -var(b, j)]);
            }
        }
    }
    formula((p * h) as u32, &clauses)
}

#[test]
fn solve_examples() {
    let (st, m) = solve_builtin(&formula(1, &[vec![1]]));
    assert_eq!(st, SolveStatus::Sat);
    assert!(m[0]);
    assert_eq!(solve_builtin(&formula(1, &[vec![1], vec![-1]])).0, SolveStatus::Unsat);
    let php = pigeonhole(4, 3);
    assert!(brute_force(&php).is_empty());
    assert_eq!(solve_builtin(&php).0, SolveStatus::Unsat);
    assert_eq!(solve_builtin(&pigeonhole(3, 3)).0, SolveStatus::Sat);
}

#[test]
fn blocking_and_idempotence() {
    let mut s = SolveSession::new(SolverBackend::Builtin);
    let x = s.new_var();
    let y = s.new_var();
    s.add_clause(&[x.positive(), y.positive()]).unwrap();
    s.add_clause(&[x.positive()]).unwrap();
    assert_eq!(s.solve().unwrap(), SolveStatus::Sat);
    assert_eq!(s.value(x), Some(true));
    assert_eq!(s.solve().unwrap(), SolveStatus::Sat);
    s.add_clause(&[x.negative()]).unwrap();
    assert_eq!(s.solve().unwrap(), SolveStatus::Unsat);
    assert_eq!(s.solve().unwrap(), SolveStatus::Unsat);
}

#[test]
fn empty_clause_makes_session_unsat() {
    let mut s = SolveSession::new(SolverBackend::Builtin);
    s.new_var();
    s.add_clause(&[]).unwrap();
    assert_eq!(s.solve().unwrap(), SolveStatus::Unsat);
}

#[test]
fn budget_is_not_unsat() {
    let mut s = SolveSession::from_formula(pigeonhole(9, 8), SolverBackend::Builtin);
    s.set_budget(Budget { conflicts: Some(10), time: None });
    assert_eq!(s.solve().unwrap(), SolveStatus::BudgetExceeded);
    assert!(s.model().is_none());
}

#[test]
fn dimacs_examples() {
    let f = formula(2, &[vec![1, -2]]);
    assert_eq!(export_dimacs(&f), "p cnf 2 1\n1 -2 0\n");
    assert_eq!(import_model("s UNSATISFIABLE\n", 2).unwrap(), SolverOutput::Unsat);
    assert!(import_model("s SATISFIABLE\nv 1 x 0\n", 2).is_err());
    assert!(import_model("", 2).is_err());
}

#[test]
fn external_round_trip_through_a_script() {
    // a "solver" that reads the file and answers with a fixed model
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("fake.sh");
    std::fs::write(&script, "#!/bin/sh\ngrep -q '^p cnf 3 2' \"$1\" || exit 1\nprintf 's SATISFIABLE\\nv -1 2\\nv 3 0\\n'\n").unwrap();
    let ext = ExternalSolver::new(format!("sh {}", script.display()));
    let f = formula(3, &[vec![-1, 2], vec![3]]);
    let mut s = SolveSession::from_formula(f.clone(), SolverBackend::External(ext));
    assert_eq!(s.solve().unwrap(), SolveStatus::Sat);
    assert!(f.evaluate(s.model().unwrap()));
}

fn clause_strategy(max_var: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..=max_var, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v }), 1..=4)
}

fn formula_strategy(max_vars: u32) -> impl Strategy<Value = CnfFormula> {
    (1..=max_vars).prop_flat_map(|n| {
        let m = (n as usize) * 5;
        prop::collection::vec(clause_strategy(n as i64), 0..=m).prop_map(move |cs| formula(n, &cs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn agrees_with_brute_force(f in formula_strategy(12)) {
        let sols = brute_force(&f);
        let (st, model) = solve_builtin(&f);
        prop_assert_eq!(st == SolveStatus::Sat, !sols.is_empty());
        if st == SolveStatus::Sat {
            prop_assert!(f.evaluate(&model));
        }
    }

    #[test]
    fn adding_a_clause_shrinks_the_solution_set(f in formula_strategy(10), extra in clause_strategy(10)) {
        let extra: Vec<i64> = extra.into_iter().filter(|d| d.unsigned_abs() <= f.num_vars() as u64).collect();
        prop_assume!(!extra.is_empty());
        let mut g = f.clone();
        g.add_clause(&extra.iter().map(|&d| Lit::from_dimacs(d)).collect::<Vec<_>>()).unwrap();
        let before = brute_force(&f);
        let after = brute_force(&g);
        prop_assert!(after.iter().all(|b| before.contains(b)));

        // and incrementally: a session never goes from UNSAT back to SAT
        let mut s = SolveSession::from_formula(f.clone(), SolverBackend::Builtin);
        let first = s.solve().unwrap();
        s.add_clause(&extra.iter().map(|&d| Lit::from_dimacs(d)).collect::<Vec<_>>()).unwrap();
        let second = s.solve().unwrap();
        prop_assert!(!(first == SolveStatus::Unsat && second == SolveStatus::Sat));
        prop_assert_eq!(second == SolveStatus::Sat, !after.is_empty());
        if let Some(m) = s.model() {
            prop_assert!(g.evaluate(m));
        }
    }

    #[test]
    fn dimacs_round_trip(f in formula_strategy(8)) {
        prop_assert_eq!(parse_dimacs(&export_dimacs(&f)).unwrap(), f.clone());
        let model: Vec<bool> = (0..f.num_vars()).map(|i| i % 3 == 1).collect();
        let text = format_output(&SolverOutput::Sat(model.clone()));
        prop_assert_eq!(import_model(&text, f.num_vars()).unwrap(), SolverOutput::Sat(model));
    }
}

#[test]
fn larger_formulas_agree_with_brute_force() {
    // a few formulas near the top of the brute-force range
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    for round in 0..12 {
        let n = 17 + (round % 4) as u32;
        let m = (n as f64 * 4.26) as usize;
        let clauses: Vec<Vec<i64>> = (0..m)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let v = (next() % n as u64) as i64 + 1;
                        if next() & 1 == 0 {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let f = formula(n, &clauses);
        let any = (0..1u32 << n).any(|b| f.evaluate(&assignment(b, n)));
        let (st, model) = solve_builtin(&f);
        assert_eq!(st == SolveStatus::Sat, any, "round {round}");
        if any {
            assert!(f.evaluate(&model));
        }
    }
}

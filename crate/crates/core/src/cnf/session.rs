//! Incremental solve sessions over the built-in or an external solver.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::dimacs::{export_dimacs, import_model, SolverOutput};
use super::{CnfError, CnfFormula, Lit, SolveStatus, Solver, Var};

/// Resource limits applied to each solve call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub conflicts: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { conflicts: None, time: None };

    pub fn is_unlimited(&self) -> bool {
        self.conflicts.is_none() && self.time.is_none()
    }
}

/// A solver program that reads a DIMACS file and prints SAT-competition output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolver {
    template: String,
}

impl ExternalSolver {
    /// `template` is a shell command. Every `{}` is replaced by the path of
    /// the formula file; without a `{}` the path is appended.
    pub fn new(template: impl Into<String>) -> Self {
        ExternalSolver { template: template.into() }
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    fn command_line(&self, path: &str) -> String {
        let quoted = format!("'{}'", path.replace('\'', r"'\''"));
        if self.template.contains("{}") {
            self.template.replace("{}", &quoted)
        } else {
            format!("{} {}", self.template, quoted)
        }
    }

    /// Runs the solver on `formula`. A deadline kills the process and yields
    /// `Unknown`.
    pub fn run(&self, formula: &CnfFormula, deadline: Option<Instant>) -> Result<SolverOutput, CnfError> {
        let mut file = tempfile::Builder::new().prefix("heesch-").suffix(".cnf").tempfile()?;
        file.write_all(export_dimacs(formula).as_bytes())?;
        file.flush()?;
        let path = file.path().to_string_lossy().into_owned();
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(self.command_line(&path))
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolverOutput::Unknown);
            }
            std::thread::sleep(Duration::from_millis(2));
        }
        let text = reader
            .join()
            .map_err(|_| CnfError::External("output reader panicked".into()))??;
        // SAT-competition solvers exit with 10/20, so the exit code is not checked
        import_model(&text, formula.num_vars())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum SolverBackend {
    #[default]
    Builtin,
    External(ExternalSolver),
}

/// A growing formula with its solver. Clauses persist across solve calls.
pub struct SolveSession {
    formula: CnfFormula,
    backend: SolverBackend,
    builtin: Solver,
    /// Clauses of `formula` already handed to the built-in solver.
    synced: usize,
    contradicted: bool,
    model: Option<Vec<bool>>,
    budget: Budget,
}

impl SolveSession {
    pub fn new(backend: SolverBackend) -> Self {
        Self::from_formula(CnfFormula::new(), backend)
    }

    pub fn from_formula(formula: CnfFormula, backend: SolverBackend) -> Self {
        SolveSession {
            formula,
            backend,
            builtin: Solver::new(),
            synced: 0,
            contradicted: false,
            model: None,
            budget: Budget::UNLIMITED,
        }
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn new_var(&mut self) -> Var {
        self.formula.new_var()
    }

    /// Adds a clause. An empty clause makes the session unsatisfiable.
    pub fn add_clause(&mut self, clause: &[Lit]) -> Result<(), CnfError> {
        if clause.is_empty() {
            self.contradicted = true;
            return Ok(());
        }
        self.formula.add_clause(clause)
    }

    /// The model of the last satisfiable call.
    pub fn model(&self) -> Option<&[bool]> {
        self.model.as_deref()
    }

    pub fn value(&self, v: Var) -> Option<bool> {
        self.model.as_ref().map(|m| m[v.index()])
    }

    pub fn conflicts(&self) -> u64 {
        self.builtin.stats().conflicts
    }

    pub fn solve(&mut self) -> Result<SolveStatus, CnfError> {
        self.model = None;
        if self.contradicted {
            return Ok(SolveStatus::Unsat);
        }
        let deadline = self.budget.time.map(|t| Instant::now() + t);
        match &self.backend {
            SolverBackend::Builtin => {
                self.builtin.ensure_vars(self.formula.num_vars() as usize);
                for i in self.synced..self.formula.num_clauses() {
                    self.builtin.add_clause(self.formula.clause(i));
                }
                self.synced = self.formula.num_clauses();
                let status = self.builtin.solve(self.budget.conflicts, deadline);
                if status == SolveStatus::Sat {
                    let model = self.builtin.model().to_vec();
                    debug_assert!(self.formula.evaluate(&model));
                    self.model = Some(model);
                }
                Ok(status)
            }
            SolverBackend::External(ext) => match ext.run(&self.formula, deadline)? {
                SolverOutput::Unsat => Ok(SolveStatus::Unsat),
                SolverOutput::Unknown => Ok(SolveStatus::BudgetExceeded),
                SolverOutput::Sat(model) => {
                    if !self.formula.evaluate(&model) {
                        return Err(CnfError::External("reported model violates the formula".into()));
                    }
                    self.model = Some(model);
                    Ok(SolveStatus::Sat)
                }
            },
        }
    }
}

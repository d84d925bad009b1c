//! Clause databases, a built-in CDCL solver and DIMACS interchange.

mod dimacs;
mod session;
mod solver;

use std::fmt;

use thiserror::Error;

pub use dimacs::{export_dimacs, format_output, import_model, parse_dimacs, SolverOutput};
pub use session::{Budget, ExternalSolver, SolveSession, SolverBackend};
pub use solver::{SolveStatus, Solver, SolverStats};

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("clause is empty")]
    EmptyClause,
    #[error("literal {lit} refers to a variable above the declared count {num_vars}")]
    VariableRange { lit: i64, num_vars: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("external solver: {0}")]
    External(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A propositional variable, numbered from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn positive(self) -> Lit {
        Lit(self.0 << 1)
    }

    #[inline]
    pub fn negative(self) -> Lit {
        Lit((self.0 << 1) | 1)
    }

    /// DIMACS number (1-based).
    pub fn dimacs(self) -> i64 {
        self.0 as i64 + 1
    }
}

/// A variable with a polarity, packed as `2·var + negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(pub(crate) u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        if positive {
            var.positive()
        } else {
            var.negative()
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }

    /// Builds a literal from a non-zero DIMACS integer.
    pub fn from_dimacs(d: i64) -> Lit {
        assert!(d != 0, "DIMACS literal 0 is the clause terminator");
        Lit::new(Var((d.unsigned_abs() - 1) as u32), d > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var().dimacs();
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Truth value under a total assignment indexed by variable.
    #[inline]
    pub fn eval(self, model: &[bool]) -> bool {
        model[self.var().index()] == self.is_positive()
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A conjunction of clauses over `num_vars` variables, stored flat.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    lits: Vec<Lit>,
    ends: Vec<u32>,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vars(num_vars: u32) -> Self {
        CnfFormula { num_vars, ..Self::default() }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.ends.len()
    }

    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars - 1)
    }

    pub fn add_clause(&mut self, clause: &[Lit]) -> Result<(), CnfError> {
        if clause.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        if let Some(l) = clause.iter().find(|l| l.var().0 >= self.num_vars) {
            return Err(CnfError::VariableRange { lit: l.to_dimacs(), num_vars: self.num_vars });
        }
        self.lits.extend_from_slice(clause);
        self.ends.push(self.lits.len() as u32);
        Ok(())
    }

    /// Like [`add_clause`](Self::add_clause) for clauses built from variables
    /// this formula handed out.
    pub(crate) fn push_clause(&mut self, clause: &[Lit]) {
        debug_assert!(!clause.is_empty());
        debug_assert!(clause.iter().all(|l| l.var().0 < self.num_vars));
        self.lits.extend_from_slice(clause);
        self.ends.push(self.lits.len() as u32);
    }

    pub fn clause(&self, i: usize) -> &[Lit] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] as usize };
        &self.lits[start..self.ends[i] as usize]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[Lit]> + '_ {
        (0..self.ends.len()).map(move |i| self.clause(i))
    }

    /// Whether `model` satisfies every clause.
    pub fn evaluate(&self, model: &[bool]) -> bool {
        model.len() >= self.num_vars as usize && self.clauses().all(|c| c.iter().any(|l| l.eval(model)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_codes() {
        let l = Lit::from_dimacs(-3);
        assert_eq!(l.var(), Var(2));
        assert!(!l.is_positive());
        assert_eq!((!l).to_dimacs(), 3);
    }

    #[test]
    fn formula_invariants() {
        let mut f = CnfFormula::with_vars(2);
        assert!(matches!(f.add_clause(&[]), Err(CnfError::EmptyClause)));
        assert!(matches!(f.add_clause(&[Lit::from_dimacs(3)]), Err(CnfError::VariableRange { .. })));
        f.add_clause(&[Lit::from_dimacs(1), Lit::from_dimacs(-2)]).unwrap();
        assert!(f.evaluate(&[true, true]));
        assert!(!f.evaluate(&[false, true]));
    }
}

//! DIMACS CNF text and SAT-competition solver output.

use std::fmt::Write as _;

use super::{CnfError, CnfFormula, Lit};

/// Parsed result of a solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutput {
    Sat(Vec<bool>),
    Unsat,
    /// `s UNKNOWN`, typically a solver timeout.
    Unknown,
}

pub fn export_dimacs(f: &CnfFormula) -> String {
    let mut out = String::with_capacity(16 + f.lits.len() * 6);
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        for l in c {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

fn parse_int(tok: &str, line: usize) -> Result<i64, CnfError> {
    tok.parse::<i64>()
        .map_err(|_| CnfError::Parse { line, message: format!("expected an integer, found {tok:?}") })
}

/// Reads DIMACS CNF. Clauses may span lines; `c` lines are comments.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut formula: Option<CnfFormula> = None;
    let mut declared = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('c') || s.starts_with('%') {
            continue;
        }
        if let Some(rest) = s.strip_prefix('p') {
            if formula.is_some() {
                return Err(CnfError::Parse { line, message: "duplicate header".into() });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "cnf" {
                return Err(CnfError::Parse { line, message: "header must be `p cnf V C`".into() });
            }
            let v = parse_int(toks[1], line)?;
            let c = parse_int(toks[2], line)?;
            if v < 0 || c < 0 || v > u32::MAX as i64 / 2 {
                return Err(CnfError::Parse { line, message: "negative or oversized header count".into() });
            }
            formula = Some(CnfFormula::with_vars(v as u32));
            declared = c as usize;
            continue;
        }
        let f = formula
            .as_mut()
            .ok_or_else(|| CnfError::Parse { line, message: "clause before `p cnf` header".into() })?;
        for tok in s.split_whitespace() {
            let d = parse_int(tok, line)?;
            if d == 0 {
                f.add_clause(&current)?;
                current.clear();
            } else {
                if d.unsigned_abs() > f.num_vars() as u64 {
                    return Err(CnfError::VariableRange { lit: d, num_vars: f.num_vars() });
                }
                current.push(Lit::from_dimacs(d));
            }
        }
    }
    let f = formula.ok_or(CnfError::Parse { line: last_line, message: "missing `p cnf` header".into() })?;
    if !current.is_empty() {
        return Err(CnfError::Parse { line: last_line, message: "last clause is not 0-terminated".into() });
    }
    if f.num_clauses() != declared {
        return Err(CnfError::Parse {
            line: last_line,
            message: format!("header declares {declared} clauses, found {}", f.num_clauses()),
        });
    }
    Ok(f)
}

/// Parses solver output for a formula over `num_vars` variables. Variables
/// the solver leaves unassigned default to false.
pub fn import_model(text: &str, num_vars: u32) -> Result<SolverOutput, CnfError> {
    let mut status: Option<SolverOutput> = None;
    let mut model = vec![false; num_vars as usize];
    let mut terminated = false;
    let mut saw_values = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if let Some(rest) = s.strip_prefix("s ") {
            let st = match rest.trim() {
                "SATISFIABLE" => SolverOutput::Sat(Vec::new()),
                "UNSATISFIABLE" => SolverOutput::Unsat,
                "UNKNOWN" => SolverOutput::Unknown,
                other => return Err(CnfError::Parse { line, message: format!("unknown status {other:?}") }),
            };
            if status.is_some() {
                return Err(CnfError::Parse { line, message: "duplicate status line".into() });
            }
            status = Some(st);
        } else if let Some(rest) = s.strip_prefix('v') {
            saw_values = true;
            for tok in rest.split_whitespace() {
                let d = parse_int(tok, line)?;
                if d == 0 {
                    terminated = true;
                    continue;
                }
                if terminated {
                    return Err(CnfError::Parse { line, message: "value after terminating 0".into() });
                }
                let v = d.unsigned_abs();
                if v > num_vars as u64 {
                    return Err(CnfError::VariableRange { lit: d, num_vars });
                }
                model[v as usize - 1] = d > 0;
            }
        }
    }
    match status {
        None => Err(CnfError::Parse { line: 0, message: "no `s` status line".into() }),
        Some(SolverOutput::Sat(_)) => {
            if !saw_values || !terminated {
                return Err(CnfError::Parse { line: 0, message: "satisfiable output without 0-terminated values".into() });
            }
            Ok(SolverOutput::Sat(model))
        }
        Some(other) => Ok(other),
    }
}

/// Formats a solve result in SAT-competition conventions.
pub fn format_output(output: &SolverOutput) -> String {
    match output {
        SolverOutput::Unsat => "s UNSATISFIABLE\n".into(),
        SolverOutput::Unknown => "s UNKNOWN\n".into(),
        SolverOutput::Sat(model) => {
            let mut out = String::from("s SATISFIABLE\n");
            for chunk in model.chunks(10).enumerate() {
                out.push('v');
                for (j, &b) in chunk.1.iter().enumerate() {
                    let v = (chunk.0 * 10 + j + 1) as i64;
                    let _ = write!(out, " {}", if b { v } else { -v });
                }
                out.push('\n');
            }
            out.push_str("v 0\n");
            out
        }
    }
}

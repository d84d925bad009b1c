//! Batch classification and the TSV report.

use std::fmt::Write as _;
use std::time::Duration;

use heesch_core::engine::{run, Measures};
use heesch_core::polyform::{enumerate_free, parse_shape};
use heesch_core::{EngineConfig, GridKind, HeeschResult, Shape};
use rayon::prelude::*;

/// One input shape, or why its line could not be read.
#[derive(Debug, Clone)]
pub struct ShapeInput {
    pub id: String,
    pub shape: Result<Shape, String>,
}

/// Reads a shape file: one `[id:] x,y x,y ...` per line, `#` comments.
pub fn read_shapes(text: &str, grid: GridKind) -> Vec<ShapeInput> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_shape(line, grid) {
            Ok(p) => out.push(ShapeInput { id: p.id.unwrap_or_else(|| format!("L{}", i + 1)), shape: Ok(p.shape) }),
            Err(e) => out.push(ShapeInput { id: format!("L{}", i + 1), shape: Err(e.to_string()) }),
        }
    }
    out
}

/// Every free polyform of order `n`, holed ones included so that the
/// report shows their rejection. Ids are `n-index`.
pub fn enumerate_shapes(grid: GridKind, n: usize, exclude_holed: bool) -> Result<Vec<ShapeInput>, String> {
    let shapes = enumerate_free(grid, n, exclude_holed).map_err(|e| e.to_string())?;
    Ok(shapes
        .into_iter()
        .enumerate()
        .map(|(i, s)| ShapeInput { id: format!("{n}-{}", i + 1), shape: Ok(s) })
        .collect())
}

#[derive(Debug, Clone)]
pub struct Record {
    pub id: String,
    pub size: Option<usize>,
    pub result: Result<HeeschResult, String>,
}

impl Record {
    pub fn status(&self) -> &str {
        match &self.result {
            Ok(r) => r.status.as_str(),
            Err(_) => "ERROR",
        }
    }
}

fn classify(input: &ShapeInput, config: &EngineConfig, measures: Measures) -> Record {
    let result = match &input.shape {
        Ok(s) => run(s, config, measures).map_err(|e| e.to_string()),
        Err(e) => Err(e.clone()),
    };
    Record { id: input.id.clone(), size: input.shape.as_ref().ok().map(|s| s.len()), result }
}

/// Classifies all inputs on `jobs` worker threads. Records come back in
/// input order.
pub fn run_batch(inputs: &[ShapeInput], config: &EngineConfig, measures: Measures, jobs: usize) -> Vec<Record> {
    if jobs <= 1 {
        return inputs.iter().map(|s| classify(s, config, measures)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| inputs.par_iter().map(|s| classify(s, config, measures)).collect())
}

pub const REPORT_HEADER: &str = "# id\tsize\th_c\th_h\tstatus\titerations\ttime_s\tnote";

fn seconds(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64())
}

pub fn format_record(r: &Record) -> String {
    let size = r.size.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
    match &r.result {
        Ok(h) => {
            let show = |m: &Option<heesch_core::engine::MeasureResult>| {
                m.as_ref().map(|m| m.value.to_string()).unwrap_or_else(|| "-".into())
            };
            format!(
                "{}\t{size}\t{}\t{}\t{}\t{}\t{}\t",
                r.id,
                show(&h.h_c),
                show(&h.h_h),
                h.status,
                h.stats.solver_calls,
                seconds(h.elapsed)
            )
        }
        Err(e) => format!("{}\t{size}\t-\t-\tERROR\t0\t0.000\t{}", r.id, e.replace(['\t', '\n'], " ")),
    }
}

pub fn format_report(records: &[Record]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(out, "{}", format_record(r));
    }
    out
}

//! Table-style summaries: per order, the count of finite shapes and how
//! they spread over Heesch numbers.

use std::collections::BTreeMap;
use std::fmt;

use heesch_core::engine::MeasureResult;
use heesch_core::Status;

use crate::batch::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    HoleFree,
    HolesAllowed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramRow {
    pub size: usize,
    pub non_tilers: usize,
    /// `counts[h]` shapes have Heesch number `h`.
    pub counts: Vec<usize>,
}

impl fmt::Display for HistogramRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.size, self.non_tilers)?;
        for c in &self.counts {
            write!(f, " | {c}")?;
        }
        Ok(())
    }
}

fn value(r: &Record, m: Measure) -> Option<usize> {
    let h = r.result.as_ref().ok()?;
    if h.status != Status::Finite {
        return None;
    }
    let mr: &Option<MeasureResult> = match m {
        Measure::HoleFree => &h.h_c,
        Measure::HolesAllowed => &h.h_h,
    };
    mr.as_ref()?.value.exact()
}

/// One row per order present in `records`. Every row has columns up to the
/// largest value seen in any row.
pub fn histogram(records: &[Record], m: Measure) -> Vec<HistogramRow> {
    let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in records {
        let Some(n) = r.size else { continue };
        let e = by_size.entry(n).or_default();
        if let Some(h) = value(r, m) {
            e.push(h);
        }
    }
    let width = by_size.values().flatten().max().map_or(1, |&h| h + 1);
    by_size
        .into_iter()
        .map(|(size, hs)| {
            let mut counts = vec![0; width];
            for h in &hs {
                counts[*h] += 1;
            }
            HistogramRow { size, non_tilers: hs.len(), counts }
        })
        .collect()
}

pub fn format_histogram(rows: &[HistogramRow], m: Measure) -> String {
    let name = match m {
        Measure::HoleFree => "H_c",
        Measure::HolesAllowed => "H_h",
    };
    let width = rows.first().map_or(1, |r| r.counts.len());
    let mut out = String::from("n | non-tilers");
    for h in 0..width {
        out.push_str(&format!(" | {name}={h}"));
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{r}\n"));
    }
    out
}

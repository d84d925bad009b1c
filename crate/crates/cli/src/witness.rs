//! Witness files: `#` header lines naming the grid, shape and mode, then one
//! `k: o tx ty` line per placement.

use std::fmt::Write as _;

use heesch_core::engine::{validate_witness, Violation};
use heesch_core::polyform::parse_shape;
use heesch_core::{EncodeMode, GridKind, Shape, Transform, Witness};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("witness is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn mode_name(mode: EncodeMode) -> &'static str {
    if mode.holes_allowed {
        "holes-allowed"
    } else {
        "hole-free"
    }
}

pub fn emit_witness(w: &Witness, mode: EncodeMode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# grid {}", w.shape.grid());
    let _ = writeln!(out, "# shape {}", w.shape.serialize());
    let _ = writeln!(out, "# mode {}", mode_name(mode));
    let _ = writeln!(out, "# coronas {}", w.coronas());
    for (k, p) in w.placements() {
        let t = p.transform;
        let _ = writeln!(out, "{k}: {} {} {}", t.orientation, t.tx, t.ty);
    }
    out
}

/// Reads a witness and re-validates it.
pub fn parse_witness(text: &str) -> Result<(Witness, EncodeMode), WitnessError> {
    let mut grid: Option<GridKind> = None;
    let mut shape: Option<Shape> = None;
    let mut mode = EncodeMode::HOLE_FREE;
    let mut levels: Vec<Vec<heesch_core::Placement>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |message: String| WitnessError::Malformed { line, message };
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        if let Some(h) = s.strip_prefix('#') {
            let (key, val) = h.trim().split_once(' ').unwrap_or((h.trim(), ""));
            match key {
                "grid" => grid = Some(val.trim().parse().map_err(bad)?),
                "shape" => {
                    let g = grid.ok_or_else(|| bad("shape given before grid".into()))?;
                    shape = Some(parse_shape(val, g).map_err(|e| bad(e.to_string()))?.shape);
                }
                "mode" => {
                    mode = match val.trim() {
                        "hole-free" => EncodeMode::HOLE_FREE,
                        "holes-allowed" => EncodeMode::HOLES_ALLOWED,
                        other => return Err(bad(format!("unknown mode {other:?}"))),
                    }
                }
                _ => {}
            }
            continue;
        }
        let shape = shape.as_ref().ok_or_else(|| bad("placement before `# shape` header".into()))?;
        let (k, rest) = s.split_once(':').ok_or_else(|| bad("expected `k: o tx ty`".into()))?;
        let k: usize = k.trim().parse().map_err(|_| bad(format!("bad level {k:?}")))?;
        let nums: Vec<i32> = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("bad integer {t:?}"))))
            .collect::<Result<_, _>>()?;
        if nums.len() != 3 || !(0..=255).contains(&nums[0]) {
            return Err(bad("expected `k: o tx ty`".into()));
        }
        let t = Transform::new(nums[0] as u8, nums[1], nums[2]);
        let p = shape.place(t).map_err(|e| bad(e.to_string()))?;
        if k > levels.len() {
            return Err(bad(format!("level {k} follows level {}", levels.len().saturating_sub(1))));
        }
        if k == levels.len() {
            levels.push(Vec::new());
        }
        levels[k].push(p);
    }
    let shape = shape.ok_or(WitnessError::Malformed { line: 0, message: "missing `# shape` header".into() })?;
    let w = Witness { shape, levels };
    let violations = validate_witness(&w.shape, &w, mode);
    if !violations.is_empty() {
        return Err(WitnessError::Invalid(violations));
    }
    Ok((w, mode))
}

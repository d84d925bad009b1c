//! Batch driver for Heesch-number classification: shape input, parallel
//! runs, TSV reports, histograms, witness files and SVG drawings.

pub mod batch;
pub mod histogram;
pub mod svg;
pub mod witness;

pub use batch::{format_report, read_shapes, run_batch, Record, ShapeInput};
pub use histogram::{histogram, HistogramRow, Measure};
pub use svg::render_svg;
pub use witness::{emit_witness, parse_witness, WitnessError};

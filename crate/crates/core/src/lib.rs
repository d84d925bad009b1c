//! Heesch numbers of polyominoes, polyhexes and polyiamonds.
//!
//! Corona existence is encoded as a CNF formula and decided with a SAT
//! solver; holes in candidate coronas are found by flood fill and ruled out
//! with blocking clauses.

pub mod cnf;
pub mod encoder;
pub mod engine;
pub mod lattice;
pub mod periodic;
pub mod polyform;
pub mod raster;

pub use encoder::{CoronaGeometry, EncodeMode};
pub use engine::{heesch_numbers, EngineConfig, HeeschResult, HeeschValue, Status, Witness};
pub use lattice::{Cell, GridKind, Transform};
pub use polyform::{Placement, Shape, ShapeError};

pub type Point64 = lattice::Point<f64>;
pub type Point32 = lattice::Point<f32>;

//! Exact lattice-normalized volumes of rational polytopes.
//!
//! A polytope `P` is presented as the degree-one cross section of a pointed
//! cone `C`. Three independent algorithms compute the volume of the pyramid
//! `conv(0, P)`: summation over a placing triangulation of `C`, descent in the
//! face lattice, and Lawrence's signed decomposition via a triangulation of the
//! dual cone. `Vol P` is then `k` times that value, `k` being the grading
//! denominator.

pub mod arith;
pub mod cone;
pub mod corpus;
pub mod descent;
pub mod engine;
pub mod error;
pub mod input;
pub mod lawrence;
pub mod primal;
pub mod report;
pub mod select;
pub mod triangulate;
pub mod verify;
pub mod volume;

pub use engine::{run, RunOptions};
pub use error::{Error, Result};
pub use input::{InputMode, ProblemInput};
pub use report::VolumeReport;
pub use select::Algorithm;
pub use volume::{Precision, VolumeValue};

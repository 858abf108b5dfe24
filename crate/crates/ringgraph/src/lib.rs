//! Graphs with rings embedded in surfaces.
//!
//! The crate models embedded graphs with distinguished boundary rings
//! (rotation system + edge signs + ring faces + genus surplus) and builds
//! the machinery that is useful around them: surface surgery (cutting along
//! cycles and curves, cylindrical excision), homotopy and edge-width,
//! frames, disk-bounding curves, list coloring with exact extension counts,
//! criticality and kernel extraction, hyperbolicity and strong
//! hyperbolicity certificates, discharging verifiers, sleeve
//! decompositions, and a deterministic corpus generator with verification
//! suites on top.
//!
//! See `examples/` for one runnable program per capability and the
//! `ringgraph` binary for the scriptable command line.

pub mod canon;
pub mod cli;
pub mod coloring;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod hyperbolic;
pub mod sleeve;
pub mod suites;
pub mod surgery;
pub mod topology;

pub use error::{Error, Result};
pub use graph::{EGraph, FaceWalk, Faces, RingSpec, SurfaceSummary};

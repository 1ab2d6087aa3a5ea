//! Simultaneous straight-line grid embedding of a 3-connected planar graph
//! and its dual.
//!
//! Given a 3-connected planar graph `G` with a fixed embedding and outer
//! face, this crate draws `G` and its dual together on the integer grid
//! `(2n - 2) x (2n - 2)`, where `n` is the number of vertices plus faces of
//! `G`. Every edge is a straight segment except a single edge with one bend;
//! each dual vertex lies strictly inside its primal face (the outer dual
//! vertex strictly outside), and the only crossings are between each primal
//! edge and its dual counterpart.
//!
//! Pipeline: [`quad`] builds the vertex-face incidence graph (a
//! quadrangulation), [`labeling`] orders its vertices into a canonical
//! sequence of singleton and pair groups, [`placement`] turns that order
//! into grid coordinates, and [`verify`] re-checks the finished drawing with
//! exact integer arithmetic. [`generate`] produces test instances and
//! [`render`] writes an SVG.

pub mod generate;
pub mod graph;
pub mod labeling;
pub mod placement;
pub mod quad;
pub mod render;
pub mod verify;

pub use graph::{GraphError, PlanarGraph, VertexId};

//! Lattice polygons, regular subdivisions from integer lifts, and divisor
//! theory on metric graphs.

pub mod census;
pub mod chipgraph;
pub mod formats;
pub mod polygon;
pub mod subdivision;

//! Finite bipartite graphs, their metric invariants, and the smallest
//! generalized quadrangle.

pub mod doily;
pub mod graph;
pub mod io;
pub mod metrics;

pub use doily::{build_doily, Doily};
pub use graph::{Color, LabeledGraph, Vertex, VertexKey, MAX_VERTICES};
pub use metrics::{
    bipartite_classes, components, diameter, girth, is_connected, is_generalized_m_gon, Extent,
    GeneralizedPolygonReport,
};

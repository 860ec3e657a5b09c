//! Graphs, simplicial complexes and Δ-complexes.

mod complex;
mod delta;
mod graph;

pub use complex::{flag_complex, ComplexJson, Simplex, SimplicialComplex, Subdivision};
pub use delta::{CellChain, DeltaComplex, DeltaSubdivision};
pub use graph::{Graph, GraphJson};

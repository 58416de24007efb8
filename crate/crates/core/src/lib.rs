//! Monochromatic connected matchings and tight cycles in 2-coloured
//! 3-uniform hypergraphs.

pub mod bits;
pub mod cycles;
pub mod generate;
pub mod hypergraph;
pub mod io;
pub mod matcher;
pub mod oracle;
pub mod reduced;

pub use bits::BitSet;
pub use hypergraph::{Color, Coloring, Hypergraph3, HypergraphError, Pair, PseudoPath, Triple, Vertex};

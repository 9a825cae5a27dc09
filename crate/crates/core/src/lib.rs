//! Schubert decompositions of quiver Grassmannians, with a point-counting oracle over finite fields.
//!
//! Representations carry an ordered basis; cells are indexed by subsets of that basis and
//! parametrised by echelon charts with maximal-index pivots.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod hypothesis;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod representation;
pub mod schubert;

pub use error::{Error, Result};
pub use quiver::{Quiver, QuiverMorphism, Subquiver, VertexOrder};
pub use representation::{DimVector, OrderedBasis, Representation};
pub use schubert::CellIndex;

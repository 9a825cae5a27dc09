//! Schubert cells: indices, echelon charts, defining equations and the tree-extension theorems.

mod cells;
mod equations;
mod retract;
mod tree;

pub use cells::{block_le, cell_partial_orders, enumerate_cells, preceq, CellIndex, CellOrders};
pub(crate) use cells::combinations;
pub use equations::{cell_coordinates, generate_equations, CellEquation, CellEquationSystem, Fibred};
pub use retract::{iota, pi, CellPoint};
pub use tree::{
    fibration_fibres, peel, tree_cell_dimension, tree_cell_dimension_with, tree_cell_emptiness, CellEmptiness,
    EndKind, GrassmannianFibre, PeelOrder, PeelStep, Peeling,
};

//! List colouring on graphs of bounded diameter: structural metrics,
//! recognition of the forbidden-subgraph classes the solvers rely on, exact
//! and polynomial-time list-colouring algorithms, and the hardness gadgets.

pub mod builtin;
pub mod colouring;
pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metric;
pub mod recognition;
pub mod solvers;

pub use colouring::{Answer, Colour, ColourSet, Colouring, ListAssignment, Verdict};
pub use graph::{Distance, Graph, GraphError};

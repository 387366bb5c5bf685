//! Exact counting of walks, trails, paths, Eulerian trails and Hamiltonian
//! cycles in simple undirected graphs, computed three independent ways:
//!
//! * [`oracle`]: exhaustive depth-first enumeration, the ground truth;
//! * [`nilpotent`]: powers of polynomial matrices over commuting
//!   generators with `x^2 = 0`;
//! * [`fock`]: creation, annihilation and number operators applied to
//!   basis states of explicit qubit registers.
//!
//! [`report`], [`verify`], [`worked_example`] and [`bench`] drive the
//! engines from the command line.

pub mod bench;
pub mod caps;
pub mod corpus;
pub mod error;
pub mod fock;
pub mod graph;
pub mod nilpotent;
pub mod oracle;
pub mod worked_example;
pub mod report;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{adjacency_matrix, parse_edge_list, walk_count, CountMatrix, EdgeSlotIndex, Graph};
pub use oracle::{Oracle, WalkClass, WalkSeq};

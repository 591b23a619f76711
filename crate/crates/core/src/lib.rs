//! Toolkit for triangle-free 1-planar graphs: combinatorial drawings and
//! their planarization, exact and heuristic edge coloring, a discharging
//! ledger with exact rational charges, structural lemma checks and a seeded
//! instance generator.

pub mod discharge;
pub mod drawing;
pub mod edge_color;
pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod lemma;

pub use error::{Error, Result};

//! Block-gluing analysis of two-dimensional Hom shifts.
//!
//! A Hom shift `X_G` is the set of graph homomorphisms from the grid `Z²` to a
//! finite graph `G`. This crate measures how far apart two square patterns
//! must be placed before they can coexist, through the walk graphs `Δ_G^n`,
//! square covers, square decompositions of cycles and explicit witness paths.
//!
//! ```
//! use homshift::cli::corpus;
//! use homshift::walkspace::delta_diameter;
//!
//! let c4 = corpus::builtin("c4").unwrap();
//! let report = delta_diameter(&c4, 3, 200_000);
//! assert_eq!(report.value, 2);
//! ```

pub mod classify;
pub mod cli;
pub mod covers;
pub mod cycles;
pub mod error;
pub mod gluing;
pub mod graph_core;
pub mod transform;
pub mod walkspace;

pub use error::{Error, Result};
pub use graph_core::{Graph, Walk, V};

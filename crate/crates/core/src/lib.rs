//! Parity complexes and the free strict ω-categories they generate.
//!
//! The crate builds parity complexes (simplices, cubes, globes, products,
//! joins), enumerates and composes their `(M, P)` cells, and evaluates
//! pasting diagrams in finite strict n-categories. On top of that it has
//! nerves, cosimplicial n-categories and their descent categories, chain
//! complexes with the `ϑ` construction, and homotopy groups by equivalences.

// Matrix and level code indexes several parallel arrays at once.
#![allow(clippy::needless_range_loop)]

pub mod chain;
pub mod complex;
pub mod constructions;
pub mod cosimplicial;
pub mod descent;
pub mod error;
pub mod excise;
pub mod freecat;
pub mod functor;
pub mod homotopy;
pub mod json;
pub mod ncat;
pub mod order;
pub mod simplicial;

pub use chain::ChainComplex;
pub use complex::{ElemSet, Element, ElementSpec, ParityComplex, Sign, ValidationReport, Violation};
pub use cosimplicial::{CosimplicialNCat, Level, LevelMap};
pub use error::{Error, Result};
pub use freecat::{FreeCell, ProductComplex};
pub use ncat::{CellSpec, CompSpec, FiniteNCat, StrictCat};
pub use order::TriangleOrder;
pub use simplicial::SimplicialSet;

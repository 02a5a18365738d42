//! Homology, cohomology and persistent homology of cell complexes over
//! GF(2) through homological discrete vector fields (HDVFs).
//!
//! The crate is `no_std` and only needs `alloc`. Modules, bottom-up:
//!
//! - [`field_linalg`]: bitset vectors and matrices over GF(2).
//! - [`complex`]: cell complexes, chains, cubical and dual complexes.
//! - [`hdvf`]: vector fields, their reductions, W/M operations and completion.
//! - [`explicit_basis`]: explicitness of homology bases and the construction
//!   of a perfect field realizing an explicit basis.
//! - [`tripartition`]: trees, cotrees and tri-partitions as layers of
//!   perfect fields.
//! - [`persistence`]: persistent homology by completion in filtration order.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complex;
pub mod explicit_basis;
pub mod field_linalg;
pub mod hdvf;
pub mod persistence;
pub mod tripartition;

pub use complex::{Cell, CellId, CellSpec, Chain, ChainComplex, ComplexError};
pub use field_linalg::{Gf2Matrix, Gf2Vector, LinalgError};
pub use hdvf::{Hdvf, HdvfError, Label, Reduction, ReductionLayer};

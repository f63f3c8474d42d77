//! Exact arithmetic for the free tridendriform algebra on planar reduced
//! trees, its realizations on surjections (WQSym) and on matrix-valued
//! sequences with the prefix-sum Rota–Baxter operator, and three
//! independent routes to the discrete Magnus expansion.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and seeded randomness live in the `tridend` companion crate.
//!
//! Module map:
//!
//! - [`tree`]: planar reduced trees, enumeration, descents, contraction order.
//! - [`surjection`]: packed words, WQSym products, leveled trees and `Ψ`.
//! - [`series`]: truncated graded series over a basis and the three
//!   tridendriform products, `exp*`/`log*`, the free morphism `F_a`.
//! - [`sequence`]: matrix sequences, summation, partial diagonals, `F̃_a`.
//! - [`magnus`]: pre-Lie recursion, closed tree formula, discrete
//!   Mielnik–Plebański–Strichartz sums and convention resolution.

#![no_std]

extern crate alloc;

mod error;
pub mod laws;
pub mod linalg;
pub mod magnus;
pub mod sequence;
pub mod series;
pub mod surjection;
pub mod tree;

pub use error::{Error, Result};
pub use linalg::{Matrix, Q};
pub use magnus::{ConventionLedger, Conventions, Flavor, MagnusResult, MagnusVariant, SignRule};
pub use sequence::{FastEvaluator, GradedSeq, MatSeq, TOrientation};
pub use series::{TriBasis, TriOp, TriSeries, TriTarget};
pub use surjection::{LevelOrientation, LeveledTree, Surjection};
pub use tree::{DescentOrientation, DescentStats, Tree};

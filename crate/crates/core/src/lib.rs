//! Exhaustive and numerical verification of ternary algebraic structures.
//!
//! A *semiheap* is a set with a ternary product `[x, y, z]` obeying the
//! para-associative law
//!
//! ```text
//! [[x1, x2, x3], x4, x5] = [x1, [x4, x3, x2], x5] = [x1, x2, [x3, x4, x5]]
//! ```
//!
//! and a *heap* is a semiheap in which every element is biunitary,
//! `[y, x, x] = y = [x, x, y]`. Heaps and groups are two views of the same
//! thing: `[x, y, z] = x y⁻¹ z` in one direction, `x · y = [x, e, y]` in the
//! other.
//!
//! The crate is `no_std` and only needs `alloc`. Finite structures live on the
//! carrier `0..n` and every law is checked over the whole tuple space, with the
//! lexicographically first counterexample reported on failure. The
//! [`numeric`] module realizes matrix Lie groups as Lie heaps and checks the
//! differential-geometric statements by sampling, with finite differences as
//! an independent oracle.
#![no_std]

extern crate alloc;

pub mod actions;
pub mod budget;
pub mod bundles;
pub mod corpus;
pub mod enumeration;
mod error;
pub mod functors;
pub mod group;
pub mod numeric;
pub mod perm;
pub mod semiheap;
pub mod table;
pub mod translations;

pub use crate::error::{Error, Result, Violation};
pub use crate::group::FiniteGroup;
pub use crate::semiheap::{FiniteHeap, FiniteSemiheap, PointedSemiheap, SemiheapHom};
pub use crate::table::TernaryTable;

//! Finite gyrogroups given by Cayley and gyration tables, together with their
//! left- and right-Cayley graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`] – permutations of `{0, .., n-1}` (gyrations, graph automorphisms).
//! * [`gyrogroup`] – tables, axiom verification and elementwise operations.
//! * [`subgyro`] – generated closures, (L-)subgyrogroups, left cosets.
//! * [`cayley`] – L/R-Cayley graphs, undirectedness, components, gyration side conditions.
//! * [`analysis`] – vertex-transitivity by automorphism search and structural predicates.
//! * [`theorems`] – hypothesis/conclusion checks and exhaustive generating-set sweeps.
//! * [`io`] – table file format, cycle notation, builtin gyrogroups, graph export.
//! * [`cli`] – the `gyrocay` command line.

pub mod analysis;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod gyrogroup;
pub mod io;
pub mod perm;
pub mod subgyro;
pub mod theorems;

pub use error::{GyroError, Result};
pub use gyrogroup::{CayleyTable, Element, GyrationTable, Gyrogroup};
pub use perm::Permutation;

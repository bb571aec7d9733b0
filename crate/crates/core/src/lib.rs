//! Geodesic languages, fellow travelling and growth series for
//! virtually abelian and small matrix groups.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod automaton;
pub mod error;
pub mod fellow;
pub mod group;
pub mod growth;
pub mod polytope;

pub use error::{Error, Result};

//! Exact arithmetic for the group of orientation-preserving piecewise linear
//! homeomorphisms of `[0,1]` and its subgroups `F`, `P^a`, `P^Q`.
//!
//! Everything is computed over arbitrary-precision rationals; equality of
//! group elements is structural equality of canonical breakpoint sequences.
//! The `harness` module binds the algebraic identities of the class functions
//! `alpha`, `beta`, `gamma` and the monitored-information machinery to seeded
//! randomized property suites.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod ladder;

pub mod exactnum;
pub mod harness;
pub mod pagroup;
pub mod pgroup;
pub mod plmap;
pub mod thompson;

pub use error::{Error, Result};

//! High-precision evaluation of Ramanujan's theta functions and the
//! Weber–Ramanujan class invariants `G_n`, `g_n`, together with the degree-2
//! P–Q modular equation machinery, a nested-radical corpus of explicit
//! values, and integer-relation detection.
//!
//! The crate is `no_std` (it needs `alloc`). Everything numeric goes through
//! [`hpreal::BigReal`], a binary floating-point type with a per-value working
//! precision and correctly rounded basic operations.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod hpreal;
pub mod invariants;
pub mod modeq;
pub mod qseries;
pub mod radicals;
pub mod relations;
pub mod verify;

pub use error::{Error, Result};
pub use hpreal::{BigReal, PrecisionContext};

#![no_std]
//! Exact root-system and character arithmetic for equal-rank real forms,
//! discrete-series reduction, and numerical checks of Hamiltonian induction
//! on matrix models.

extern crate alloc;

pub mod character;
pub mod dseries;
pub mod elliptic;
pub mod error;
pub mod hamind;
pub mod lie;
pub mod multiplicity;
pub mod pipeline;
pub mod rootsys;
pub mod weight;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{RealRootSystem, Subsystem};
pub use weight::Weight;

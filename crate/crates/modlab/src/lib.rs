//! A computational laboratory for module theory over the finite rings Z/n.
//!
//! The crate provides exact Smith-normal-form linear algebra, finitely
//! presented modules with canonical invariant factors, localization at
//! multiplicative sets, Hom/tensor/character functors with Ext¹ and Tor₁,
//! certified deciders for injectivity, S-injectivity (three independent
//! routes), flatness and S-flatness, and an enumeration harness that checks
//! the structural theorems relating these notions on complete desk-scale
//! families — including counterexample hunting and mutation hooks that prove
//! the checks can fail.

pub mod cli;
pub mod decide;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod module;
pub mod ring;

pub use error::{Error, Result};

//! Exact lattice computations for twisted character modules of tori and of
//! compact connected Lie groups with torsion-free fundamental group.

pub mod cli;
pub mod error;
pub mod examples;
pub mod kview;
pub mod lattice;
pub mod orbit;
pub mod rl;
pub mod scene;
pub mod torus;
pub mod weyl;

pub use error::{Error, Result};

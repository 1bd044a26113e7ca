//! Exact computation of spectral torsion densities for Connes-type perturbed
//! Dirac operators, with independent oracles for every trace, sphere-moment
//! and residue identity involved.

pub mod clifford;
pub mod error;
pub mod forms;
pub mod halfline;
pub mod scalar;
pub mod sphere;
pub mod symbol;
pub mod torsion;

pub use error::{Error, Result};

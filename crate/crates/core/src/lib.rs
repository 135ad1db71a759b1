//! Regularised Dirac vacuum energy in a scalar field: closed forms,
//! independent numerical oracles, homogeneous matter and its stability
//! response, the non-relativistic ground state, and a 1D lattice check.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod matter;
pub mod nls;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod response;

pub use error::{Error, Result};
pub use potential::FieldValue;

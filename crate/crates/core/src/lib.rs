//! Control-field-free multiple electromagnetically induced transparency in an
//! array of two-level atoms coupled to a one-dimensional waveguide.

pub mod array_model;
pub mod error;
pub mod linalg;
pub mod open_system;
pub mod resonances;
pub mod scattering;

pub use error::{Error, Result};

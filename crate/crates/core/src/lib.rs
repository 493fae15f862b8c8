//! Exact combinatorial and polyhedral tools for realizations of the associahedron.

pub mod atlas;
pub mod error;
pub mod exactlin;
pub mod genperm;
pub mod hl;
pub mod io;
pub mod polygon;
pub mod realization;
pub mod santos;
pub mod secondary;

pub use error::{Error, Result};

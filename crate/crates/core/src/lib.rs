#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cone;
pub mod degeneration;
pub mod error;
pub mod jordan;
pub mod lattice;
pub mod matrix;
pub mod polygon;
pub mod sample;
pub mod scalar;
pub mod sparse;
pub mod surface;
pub mod weights;

pub use error::{Error, Result};

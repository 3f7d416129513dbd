//! Non-semisimple quantum representations of braid groups and of the
//! mapping class group of the four-punctured sphere.

pub mod braiding;
pub mod cli;
pub mod error;
pub mod graph_basis;
pub mod groups;
pub mod linalg;
pub mod m04;
pub mod qscalar;
pub mod weight_modules;

pub use error::{Error, Result};
pub use num_complex::Complex64;

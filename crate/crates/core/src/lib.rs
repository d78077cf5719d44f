pub mod coefficients;
pub mod curve;
pub mod error;
pub mod groebner;
pub mod io;
pub mod lfihd;
pub mod linalg;
pub mod poly;
pub mod sample;
pub mod selftest;
pub mod stability;

pub use error::{Error, Result};

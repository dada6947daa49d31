pub mod classical;
pub mod classify;
pub mod data;
pub mod error;
pub mod euler;
pub mod field;
pub mod group;
pub mod lie;
pub mod matrix;
pub mod numtheory;
pub mod perm;
pub mod primegraph;
pub mod schreier;

pub use error::{Error, Result};

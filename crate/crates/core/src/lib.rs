pub mod catalog;
pub mod error;
pub mod freeness;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod moduli;
pub mod render;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{incident, join, meet, Arrangement, Line, Point};
pub use scalar::{FieldCtx, Scalar};

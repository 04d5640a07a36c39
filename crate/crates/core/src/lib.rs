//! Resonances of the radial step potential `V0 * 1_{|x| <= 1}` in even
//! dimension, computed sheet by sheet on the logarithmic Riemann surface.

pub mod asymptotics;
pub mod counting;
pub mod engine;
pub mod error;
pub mod maps;
pub mod scaled;
pub mod special;
pub mod validation;

pub use error::{Error, Result};
pub use scaled::ScaledComplex;

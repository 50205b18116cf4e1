//! Finite unital rings, the projective line over a ring with its distant
//! relation and radical parallelism, the induced transformations of the
//! affine chart, and the parabola models built from them.

pub mod chaintrafo;
pub mod error;
pub mod models;
pub mod projline;
pub mod radpar;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{Elem, Ring, RingDescriptor};

pub mod asymptotics;
pub mod bounds;
pub mod combinatorics;
pub mod enumerator;
pub mod error;
pub mod exact;
pub mod interval;
pub mod sdp;
pub mod tables;
pub mod word;
pub mod zonal;

pub use error::{Error, Result};
pub use interval::BoundInterval;

pub mod charts;
pub mod error;
pub mod fields;
pub mod lifts;
pub mod structures;
pub mod symkernel;
pub mod verify;

pub use error::{Error, Result};

#![no_std]

extern crate alloc;

pub mod criterion;
pub mod error;
pub mod f2;
pub mod grassmann;
pub mod matrix;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub mod realstruct;
pub mod siegel;
pub mod subvariety;

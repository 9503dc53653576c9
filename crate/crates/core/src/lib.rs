#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exact;
pub mod homology;
pub mod multiplets;
pub mod poly;
pub mod prolong;
pub mod susy;
pub mod twist;

pub use error::{Error, Result};

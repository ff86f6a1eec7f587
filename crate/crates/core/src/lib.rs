//! Finite double categories, lax span-valued functors, discrete double
//! fibrations, and the equivalences that relate them.

pub mod cat;
pub mod corpus;
pub mod dbl;
pub mod doc;
pub mod elements;
pub mod equiv;
pub mod fiber;
pub mod lax;
pub mod modules;
pub mod prof;
pub mod error;
pub mod finset;
pub mod report;

pub use error::{Error, Result};
pub use report::{Report, Violation};

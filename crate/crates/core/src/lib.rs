pub mod cli;
pub mod error;
pub mod factor;
pub mod fib;
pub mod fold;
mod memo;
pub mod poly;
pub mod rational;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use factor::{FactorizationRecord, PhiRoute, TargetKind};
pub use fib::PrimitivePartTable;
pub use fold::PalindromeFold;
pub use poly::IntPoly;
pub use rational::ExactRational;

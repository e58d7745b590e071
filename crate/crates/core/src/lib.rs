//! Self-similar groups acting on regular rooted trees, the fixed-point
//! process of their Haar measure, and exceptional sets of post-critically
//! finite polynomials.

pub mod catalog;
pub mod dynamics;
pub mod error;
pub mod fpp;
pub mod group;
pub mod numeric;
pub mod perm;
pub mod tree;

pub use error::{Error, Result};

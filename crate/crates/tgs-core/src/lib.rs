//! Exact computations with Lie triple systems in the rank-two exceptional
//! symmetric spaces EIII, EIV and the compact group G2.
//!
//! All arithmetic is exact over Q(i, sqrt2, sqrt3, sqrt5, sqrt7).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod identities;
pub mod lie;
pub mod linalg;
pub mod lts;
pub mod catalog;
pub mod cayley;
pub mod parse;
pub mod rational;
pub mod roots;
pub mod scalar;
pub mod space;

pub use error::Error;
pub use rational::Rational;
pub use scalar::Scalar;

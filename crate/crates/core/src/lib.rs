//! Graphs whose connected components are the classes of equivalence relations
//! on sequences, rationals, sets and structures, evaluated on finitely
//! representable points with explicit fuel bounds.

pub mod error;
pub mod fsjump;
pub mod graphings;
pub mod indexrel;
pub mod machines;
pub mod rational;
pub mod seq;
pub mod structures;
pub mod tri;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use seq::EPSeq;
pub use tri::{Fuel, Tri};

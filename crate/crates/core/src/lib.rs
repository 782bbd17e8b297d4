//! Supercharacter theories of unitriangular and triangular matrix groups over
//! prime fields, with exact cyclotomic arithmetic.

pub mod acceptance;
pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod groups;
pub mod hopf;
pub mod induce;
pub mod sct;
pub mod table;
pub mod tri;
pub mod ut;
mod par;

pub use error::{Error, Result};

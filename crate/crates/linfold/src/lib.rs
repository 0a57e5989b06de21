//! Classification of real linear maps living in eigenspaces of order-two
//! (anti)-automorphisms of `gl(V)`: normal forms with sign characteristics,
//! orbit equivalence, miniversal unfoldings, and eigenvalue sweeps.

pub mod error;
pub mod linalg;
pub mod structure;
pub mod decomp;
pub mod reduction;
pub mod normalform;
pub mod unfolding;
pub mod catalog;
pub mod cli;

pub use error::{Error, Result};
pub use linalg::{Mat, Vector};

//! Exact extremal densities, submeasures and combinatorial indices on groups.
//!
//! Finite groups are handled exactly through rational linear programming;
//! `Z^d` and free groups through quotient reductions and certified bounds
//! over finite windows.

pub mod cli;
pub mod comb;
pub mod dens;
pub mod error;
pub mod grp;
pub mod lang;
pub mod meas;
pub mod rational;
pub mod ratlp;

pub use error::{Error, Result};
pub use grp::{Element, Group, GroupSpec, Subset, Window};
pub use meas::Measure;
pub use rational::Rational;

//! Exact arithmetic for commutative pre-semifields of odd order: finite
//! fields, biprojective and Dembowski–Ostrom products, planarity
//! certificates, nuclei, autotopisms and isotopisms.

pub mod error;
pub mod families;
pub mod gf;
pub mod isotopy;
pub mod linmap;
pub mod planarity;
pub mod serial;
pub mod structure;

pub use error::{Error, Result};

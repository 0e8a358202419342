//! Fusion systems of finite groups, twisted cohomology, stable elements and
//! nerves of transporter and linking categories.

pub mod check;
pub mod cohom;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod module;
pub mod nerve;
pub mod perm;
pub mod stable;

pub use error::{Error, Result};

//! Two-pop-stack sortable permutations.
//!
//! Membership is decided by simulation or by forbidden patterns. Counts are exact,
//! refined by ascents, and the class maps onto polyominoes on twisted cylinders of
//! widths 2 and 3.

pub mod analysis;
pub mod enumeration;
pub mod error;
pub mod patterns;
pub mod perm;
pub mod policy;
pub mod polyomino;
pub mod popstack;
pub mod sweep;

pub use error::{Error, Result};
pub use perm::{Composition, Permutation};
pub use policy::Policy;

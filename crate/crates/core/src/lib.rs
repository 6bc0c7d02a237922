//! Braid monodromy of a complex polynomial in one variable.
//!
//! Loops around the branch points of `w = P(z)` are lifted numerically to
//! geometric braids, turned into words in the Artin generators, and compared
//! with exact braid-group algebra (Garside normal forms, the Artin action on
//! the free group, bounded conjugacy search).

pub mod braid;
pub mod cli;
pub mod engine;
pub mod error;
pub mod extract;
pub mod io;
pub mod loops;
pub mod perm;
pub mod poly;
pub mod svg;
pub mod tracker;

pub use braid::{BraidWord, GarsideNF};
pub use engine::{MonodromyOptions, MonodromyResult, TheoremReport, Verdict};
pub use error::{Error, Result};
pub use loops::{Loop, LoopSystem};
pub use perm::{PermGroupReport, Permutation};
pub use poly::{CriticalData, Polynomial};
pub use tracker::{FiberTrack, TrackOptions};

pub use num_complex::Complex64;

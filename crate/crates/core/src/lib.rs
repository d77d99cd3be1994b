//! Additive h-bases for integer intervals.
//!
//! A set `A ⊆ ℕ` is an *h-basis* of `[0, n]` when every integer in that
//! interval is a sum of exactly `h` elements of `A` (repetition allowed). This
//! crate builds such bases by combining a Sidon-type set, a greedy complement
//! in a cyclic group and a digit set; it verifies every claimed basis with an
//! exact sumset computation, evaluates the classical size bounds, and computes
//! extremal values `n(h, k)` for small `k` by branch and bound.
//!
//! Each capability has a runnable program under `examples/`.

pub mod bits;
pub mod bounds;
pub mod cli;
pub mod construct;
pub mod cover;
pub mod error;
pub mod format;
pub mod primes;
pub mod search;
pub mod sidon;
pub mod sumset;

pub use error::{Error, Result};
pub use sumset::{BasisSet, Certificate, CoverageMap, ResidueSet};

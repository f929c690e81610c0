//! Exact computation in the lattice of antichains of subsets of a finite
//! universe (at most eight ground elements): lattice operators, downset
//! vectors, canonical forms under relabeling, interval posets and their
//! reductions, exact interval cardinalities, interval partitions, the
//! pair-coefficient recursion for Dedekind numbers, and the derived counting
//! sequences.
//!
//! ```
//! use antichains::{Interval, SizeMemo, Universe};
//!
//! let u = Universe::new(6).unwrap();
//! let memo = SizeMemo::new();
//! let a6 = antichains::interval_size(&Interval::full(u), &memo);
//! assert_eq!(a6.to_string(), "7828354");
//! ```

pub mod bitset;
pub mod error;
pub mod lattice;
pub mod partitions;
pub mod pcoeff;
pub mod poset;
pub mod sequences;
pub mod size;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Antichain, CanonicalForm, DownsetVector, SubsetMask, Universe};
pub use poset::{Interval, IntervalGraph, IntervalPoset};
pub use size::{
    enumerate_interval, for_each_in_interval, interval_size, interval_size_pair, size_leveled,
    Parity, SizeMemo,
};
pub use text::{format_antichain, parse_antichain};

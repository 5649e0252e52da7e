//! Exact cohomology of line bundles on complete simplicial toric
//! Deligne–Mumford stacks, H-triviality tests, and the search for degenerate
//! piecewise-linear functions that produce infinite H-trivial families.
//!
//! Nothing in this crate uses floating point. Integer data is `BigInt`,
//! rational data is `BigRational`.
//!
//! Ray indices are 0-based in the API and in fan files; reports render index
//! sets 1-based.

pub mod catalog;
pub mod cohomline;
pub mod error;
pub mod exactlin;
pub mod exec;
pub mod fan;
pub mod homology;
pub mod picard;
pub mod plsearch;
pub mod stack;

pub use error::{ComputeError, FanError};
pub use exec::Execution;
pub use fan::StackyFan;
pub use stack::Stack;

//! Exhaustive exploration of the tree of numerical semigroups.
//!
//! Numerical semigroups of genus g are obtained from those of genus g-1 by
//! removing one generator at or above the conductor, which arranges all of
//! them into an infinite tree rooted at the trivial semigroup. This crate
//! provides:
//!
//! - [`semigroup`]: the canonical finite representation and per-element
//!   machinery (enumeration, nu-sequence, divisor-gap sets, generator tests);
//! - [`tree`]: parent/child navigation, weak/strong classification of
//!   effective generators, and an exhaustive parallelizable walker;
//! - [`classes`]: predicates for ordinary, symmetric, pseudo-symmetric,
//!   hyperelliptic, Arf, and irreducible semigroups, plus the explicit
//!   pseudo-symmetric families;
//! - [`chains`]: infinite-chain analysis through the gcd of the members
//!   below the conductor;
//! - [`tree_a`]: the abstract label tree with Fibonacci level sizes and its
//!   generalized level recursion;
//! - [`stats`]: per-genus aggregates and evidence tables;
//! - [`naive`]: a deliberately simple enumerator used to cross-validate the
//!   optimized walker;
//! - [`verify`]: named property suites runnable from the CLI.

pub mod chains;
pub mod classes;
pub mod naive;
pub mod semigroup;
pub mod stats;
pub mod tree;
pub mod tree_a;
pub mod verify;

pub use semigroup::{Semigroup, SemigroupError};
pub use tree::{NodeKind, Strength, TreeNode};

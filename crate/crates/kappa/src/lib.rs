//! Commutative monoids with summation over infinite index sets.
//!
//! The crate models sums indexed by sets of cardinality up to a fixed aleph.
//! It covers cardinal arithmetic, free and Diophantine monoids with their
//! universal extensions, and braiding certificates between families.
//! Two-generated presentations come with a realizability decider, and a
//! small gallery of further examples completes the set.

pub mod braiding;
pub mod cardinals;
pub mod cyclic;
pub mod diophantine;
pub mod dsl;
pub mod free_vectors;
pub mod gallery;
pub mod laws;
pub mod monoid;
pub mod presentations;

pub use cardinals::{card_leq, card_mul, card_sum, CardError, CardinalBound, ExtCard};
pub use laws::{check_axioms, LawReport, LawSubject};
pub use monoid::{Budget, CardBoundMode, Decision, Family, KappaMonoid, MonoidError, Truth};

//! Two-generated `aleph0`-monoids given by relations between forms.
//!
//! Every element is represented by a form `a X1 + b X2` with `a, b <= aleph0`,
//! and the presented monoid is the quotient of the free monoid on two
//! generators by the congruence generated by the relations. Equality is
//! semi-decided: rewriting finds chains, and valuations into small monoids
//! that respect the relations refute. On top of that sit `add`-membership
//! and the realizability conditions for two-generated monoids.

mod form;
mod presented;
mod realize;
mod rewrite;
mod valuation;

pub use form::{Coef, Form};
pub use presented::PresentedMonoid;
pub use realize::{
    corollary_checks, realizable_two_gen, Check, Condition, ConditionCheck, ConditionWitness, CorollaryCase,
    CorollaryReport, RealizabilityReport, DEFAULT_STEPS,
};
pub use rewrite::{forms_equal, in_add, AddWitness, RewriteChain, RewriteStep, TwoGenPresentation, Verdict};
pub use valuation::{NatCongruence, Target, Valuation, Value};

#[cfg(test)]
pub(crate) use rewrite::tests::strategies as tests_support;

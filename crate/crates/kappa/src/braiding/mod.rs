//! Braidings between families and the certificates that witness them.
//!
//! Two families are braided when they can be cut into small blocks linked by
//! elements `u`, `v` so that block sums telescope. A certificate describes the
//! blocks finitely: a prefix followed by a repeating cycle over `omega`,
//! weighted layers of such for larger multiplicities, or collapsed blocks
//! with equal sums when the block bound is uncountable.
//!
//! Braidedness over a presented monoid is only semi-decidable, and the
//! search here answers unknown rather than guess.

mod cert;
mod search;
mod text;
mod transform;
mod verify;

pub use cert::{BraidBlock, Certificate, CollapsedBlock, CollapsedCertificate, LayeredCertificate, OmegaCertificate};
pub use search::{braid_find, BraidHost, BraidVerdict, Obstruction};
pub use text::{parse_certificate, parse_family_body, CertParseError};
pub use transform::{compose, flip, reflexive, CompositionRoute};
pub use verify::{telescope, verify, VerifyOutcome};

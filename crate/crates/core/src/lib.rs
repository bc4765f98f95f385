//! Exact strongly clean decompositions in rings complete with respect to an
//! ideal `I`, computed in the quotient `R/I^N`.
//!
//! Given `x`, [`engine::decompose`] returns an idempotent `e` commuting with
//! `x` such that `x - e` is a unit and `(exe)^n ∈ I`, together with the
//! inverse of `x - e`, as a [`engine::CleanCertificate`] that
//! [`engine::verify_certificate`] rechecks by multiplication alone.
//!
//! The supported complete rings are `M_k(Z_p)` and skew power series over
//! small finite rings; see [`adic`]. [`oracle`] decides the same questions by
//! exhaustive search on small rings.

pub mod adic;
pub mod cli;
pub mod engine;
pub mod error;
pub mod finite;
pub mod format;
pub mod lifting;
mod linalg;
pub mod oracle;
pub mod regularity;
pub mod selftest;

pub use adic::{AdicElem, AdicRing, CompleteRingSpec, PeirceBlocks};
pub use engine::{decompose, verify_certificate, CleanCertificate, Verdict, Violation};
pub use error::{Error, Result};
pub use finite::{EndoTag, FiniteElem, FiniteRing, FiniteRingSpec, Value};

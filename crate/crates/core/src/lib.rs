//! Automorphism groups of compact Riemann surfaces of genus `p + 1`, `p` prime:
//! Fuchsian signature enumeration, surface-kernel epimorphism search, the
//! homology-module kernel count for good primes, regular (hyper)map invariants,
//! and equivariant Jacobian splittings.

pub mod arith;
pub mod census;
pub mod characters;
pub mod counting;
pub mod cyclotomic;
pub mod epi;
pub mod error;
pub mod groups;
pub mod homology;
pub mod jacobian;
pub mod signatures;

pub use error::{Error, Result};

//! Exact characteristic-class calculus for Schubert cells in generalized
//! flag varieties G/P.
//!
//! The pipeline: finite root systems from Cartan data ([`root_system`]),
//! Weyl groups as signed permutations of positive roots ([`weyl`]),
//! torus-fixed-point localization of Schubert classes ([`gkm`]),
//! Chern-Schwartz-MacPherson and Segre classes of Schubert cells
//! ([`classes`]), and signed Euler characteristics of generic
//! multi-intersections of Schubert cells ([`euler`]), with an independent
//! inclusion-exclusion oracle for projective space ([`oracle`]).
//!
//! All arithmetic is exact (`num::BigRational`); no floating point
//! appears anywhere. Every structure is immutable after construction and
//! safe to share across threads.

#![forbid(unsafe_code)]

pub mod cache;
pub mod classes;
pub mod error;
pub mod euler;
pub mod gkm;
pub mod oracle;
pub mod poly;
pub mod ratio;
pub mod report;
pub mod root_system;
pub mod weyl;

pub use cache::{resolve_space, CacheOutcome};
pub use classes::{CohClass, Space};
pub use error::Error;
pub use euler::{NfoldReport, NfoldRow, OrthoReport, TripleReport, TripleRow};
pub use oracle::{CrossReport, CrossRow};
pub use gkm::{GkmClass, MultTable, SchubertBasis};
pub use poly::RootPoly;
pub use root_system::RootSystem;
pub use weyl::{Elem, ParabolicData, WeylGroup};

/// Version tag baked into cache fingerprints; bump on any convention change.
pub const FORMAT_VERSION: u32 = 1;

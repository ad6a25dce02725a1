//! Numerical certification of homogeneity, superadditivity and concavity
//! for functions on open convex cones.
//!
//! Any two of these three properties imply the third exactly when the
//! function's liminf at the apex of the cone is nonnegative. This crate
//! samples the defining inequalities, estimates the apex liminf, searches
//! for counterexamples and applies the resulting deduction rules.
//!
//! ```
//! use conelaw::checkers::{check_homogeneity, Status, DEFAULT_HOMOGENEITY_LAMBDAS};
//! use conelaw::{fields::make_photon_entropy, SampleConfig};
//!
//! let s = make_photon_entropy();
//! let cfg = SampleConfig::new(7, 500, s.sampling_range());
//! let v = check_homogeneity(&s, &cfg, &DEFAULT_HOMOGENEITY_LAMBDAS, 1e-9).unwrap();
//! assert_eq!(v.status, Status::Satisfied);
//! ```

pub mod cf;
pub mod checkers;
pub mod domain;
pub mod error;
pub mod falsifier;
pub mod fields;
pub mod numdiff;
pub mod property;
pub mod report;
mod serde_ext;

pub use domain::{Point, Region, SampleConfig};
pub use error::{Error, Result};
pub use fields::ScalarField;
pub use property::PropertyId;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/checkers.md")]
    mod checkers {}
    #[doc = include_str!("../../../book/src/deduction.md")]
    mod deduction {}
    #[doc = include_str!("../../../book/src/falsifier.md")]
    mod falsifier {}
    #[doc = include_str!("../../../book/src/chain.md")]
    mod chain {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}

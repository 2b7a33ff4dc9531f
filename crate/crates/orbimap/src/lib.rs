//! Exact computation with the finite structures underlying smooth maps
//! between quotients of Euclidean space by finite orthogonal group actions.
//!
//! A quotient chart is `ℝⁿ` together with a finite group of orthogonal
//! rational matrices; a map between two charts is presented by a polynomial
//! lift plus a group homomorphism making the lift equivariant.  Everything
//! this crate computes about such maps — completions, identity-lift orbits,
//! pullback bundles, exponential charts, neighborhood strata — reduces to
//! finite group theory and exact rational linear algebra, so every answer is
//! reproducible to the bit.
//!
//! # Layout
//!
//! - [`linalg`] — rational matrices, reduced-echelon subspaces, nullspaces.
//! - [`groups`] — finite orthogonal matrix groups, subgroups, homomorphisms,
//!   enumeration, and averaging (Reynolds) operators.
//! - [`polymap`] — sparse rational polynomial maps, coefficient spaces, and
//!   exact equivariance tests and subspaces.
//! - [`orbifold`] — quotient charts, affine atlas embeddings and their
//!   verification, and the identity-lift group of a chart.
//! - [`maps`] — the four presentations of a quotient-space map (complete,
//!   completable, complete-reduced, reduced), forgetful projections between
//!   them, fibers, and the identity-lift action with exact orbit/stabilizer
//!   data.
//! - [`bundles`] — pullbacks of tangent bundles as fiber representations,
//!   bundle equivalence, admissible subspaces, orbisections, and glued
//!   fibers over several completions.
//! - [`strata`] — the flat exponential chart and the stratification of a
//!   perturbation neighborhood by surviving completions, with DOT/JSON
//!   export.
//! - [`json`] — serde-friendly wire formats shared with the `orbimap`
//!   command-line tool.
//! - [`fixtures`] — small ready-made charts and maps used in examples,
//!   tests, and the command-line `example` subcommand.
//!
//! # Example
//!
//! The constant self-map of the half-line `ℝ/±1` is completed by exactly
//! two homomorphisms, and the two completions pull the tangent bundle back
//! to inequivalent bundles:
//!
//! ```
//! use orbimap::bundles::{pullback, pullbacks_equivalent};
//! use orbimap::fixtures::constant_map_fixture;
//! use orbimap::maps::complete_lifts_over;
//!
//! let completions = complete_lifts_over(&constant_map_fixture());
//! assert_eq!(completions.len(), 2);
//! let a = pullback(&completions[0]);
//! let b = pullback(&completions[1]);
//! assert!(!pullbacks_equivalent(&a, &b).unwrap());
//! ```
//!
//! The guide under `book/` walks through each layer; its code blocks are
//! compiled and run as part of `cargo test` via the hidden doctest modules
//! below.

pub mod bundles;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod maps;
pub mod orbifold;
pub mod polymap;
pub mod strata;

pub use error::{Error, Result};

// Compile and run every Rust code block in the guide as a doctest.  One
// module per chapter keeps failure origins identifiable.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod guide_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/charts-and-groups.md")]
pub mod guide_charts_and_groups {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/equivariant-lifts.md")]
pub mod guide_equivariant_lifts {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/four-notions.md")]
pub mod guide_four_notions {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/identity-lifts.md")]
pub mod guide_identity_lifts {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pullback-bundles.md")]
pub mod guide_pullback_bundles {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/exponential-chart.md")]
pub mod guide_exponential_chart {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/strata.md")]
pub mod guide_strata {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod guide_cli {}

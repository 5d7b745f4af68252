//! Mid-arc triangle iteration.
//!
//! Replacing each vertex of a triangle by the midpoint of the opposite arc of
//! its circumcircle, over and over, converges to a pair of antipodal
//! equilateral triangles. This crate computes the iteration in floating point
//! and in exact rationals, builds the classical triangles that sit beside it
//! (Morley, Napoleon, excentral, contact), measures how they relate, and
//! renders figures.
//!
//! ```
//! use midarc::arcs::{limit_triangles, to_angular};
//! use midarc::classic::morley;
//! use midarc::analysis::similarity;
//! use midarc::euclid::LabeledTriangle;
//!
//! let t = LabeledTriangle::from_coords([(0.0, 0.0), (4.0, 0.0), (1.0, 3.0)])?;
//! let (even, _odd) = limit_triangles(&to_angular(&t)?);
//! assert!(similarity(&even.to_labeled()?, &morley(&t)?).sides_parallel);
//! # Ok::<(), midarc::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doctests of this crate.

pub mod analysis;
pub mod arcs;
pub mod classic;
pub mod cli;
pub mod error;
pub mod euclid;
pub mod figures;
pub mod suite;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/midarc-step.md")]
    mod midarc_step {}
    #[doc = include_str!("../../../book/src/closed-form.md")]
    mod closed_form {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/classic-triangles.md")]
    mod classic_triangles {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/figures-and-cli.md")]
    mod figures_and_cli {}
}

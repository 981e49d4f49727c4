//! Independent numerical oracles for the mtm test suites.
//!
//! Everything in this crate is deliberately written from first principles
//! (series, continued fractions, adaptive quadrature, straight-line
//! re-implementations) so that library results can be checked against code
//! that shares none of the library's numerical shortcuts. It is only ever a
//! `dev-dependency`; nothing here ships in the runtime crates.

pub mod ks;
pub mod mh;
pub mod quad;
pub mod special;
pub mod stats;

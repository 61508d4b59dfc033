//! Exact computations with Rota-Baxter operators of nonzero weight on Lie
//! algebras and finite groups: matched pairs, bicrossed products, projection
//! decompositions, quadratic structures and Manin triples.

pub mod error;
pub mod group;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod matched_group;
pub mod matched_lie;
pub mod quadratic;
pub mod rb_group;
pub mod rb_lie;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, Report};

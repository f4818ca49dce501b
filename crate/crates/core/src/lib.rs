//! Exact supermatrix algebra and super Plücker relations.

pub mod acceptance;
pub mod algebra;
pub mod budget;
pub mod error;
pub mod expr;
pub mod grassmann;
pub mod int;
pub mod minors;
pub mod poly;
pub mod relations;
pub mod sft11;
pub mod superscalar;
pub mod supermatrix;
pub mod system;

pub use error::{Error, Result};

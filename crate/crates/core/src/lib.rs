//! Exact computational tools for Artin-Schreier covers of the affine line in
//! characteristic `p` and their automorphism p-groups.

pub mod additive;
pub mod asw;
pub mod cover;
pub mod error;
pub mod families;
pub mod ff;
pub mod grp;
pub mod poly;

pub use error::{Error, Result};
pub use ff::{Fe, Field, FieldCtx};
pub use poly::Poly;

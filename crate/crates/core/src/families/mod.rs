//! Explicit families of big actions.

mod base_change;
mod gamma;
mod special;
mod universal;
mod witt;

pub use base_change::base_change;
pub use gamma::{gamma_family, GammaFamilyParams};
pub use special::{special_equations, special_family, t_polynomial};
pub use universal::{iso_criterion_n2, n4_t_constraint, universal_equations, universal_p5, UniversalParams};
pub use witt::{witt_g_last, WittLift};

use crate::additive::{lcm, TwistedPoly};
use crate::cover::CoverSpec;
use crate::error::Result;
use crate::ff::{Embedding, Field, FieldCtx};

/// Parameters for any of the constructible families.
#[derive(Clone, Debug)]
pub enum FamilyParams {
    Special { p: u32, n: usize },
    Gamma(GammaFamilyParams),
    Universal(UniversalParams),
    BaseChange { base: Box<FamilyParams>, s0: TwistedPoly },
}

impl FamilyParams {
    pub fn build(&self, bound: usize) -> Result<CoverSpec> {
        match self {
            FamilyParams::Special { p, n } => special_family(*p, *n),
            FamilyParams::Gamma(params) => gamma_family(params, bound),
            FamilyParams::Universal(params) => universal_p5(params, bound),
            FamilyParams::BaseChange { base, s0 } => base_change(&base.build(bound)?, s0, bound),
        }
    }
}

/// Smallest default-field overfield of both, with the two embeddings.
pub(crate) fn common_field(a: &Field, b: &Field) -> Result<(Field, Embedding, Embedding)> {
    let m = lcm(a.degree(), b.degree());
    let target = if m == a.degree() {
        a.clone()
    } else if m == b.degree() {
        b.clone()
    } else {
        FieldCtx::default_field(a.p(), m)?
    };
    Ok((target.clone(), Embedding::new(a, &target)?, Embedding::new(b, &target)?))
}

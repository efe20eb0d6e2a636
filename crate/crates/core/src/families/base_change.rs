use super::common_field;
use crate::additive::{subspace_poly, zero_set, TwistedPoly};
use crate::asw::reduce;
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Pulls the cover back along `X ↦ S0(X)`: `f_i ← f_i(S0(X))`, `V ← S0^{-1}(V)`.
pub fn base_change(spec: &CoverSpec, s0: &TwistedPoly, bound: usize) -> Result<CoverSpec> {
    if s0.is_zero() || !s0.is_separable() {
        return Err(Error::NotSeparable);
    }
    let (common, e_spec, e_s0) = common_field(&spec.ambient, s0.field())?;
    let s0 = s0.map_field(&e_s0);
    let pv = subspace_poly(&common, &spec.v_basis.iter().map(|y| e_spec.apply(y)).collect::<Vec<_>>())?;
    let zs = zero_set(&(&pv * &s0), bound)?;
    let inner = s0.to_poly();
    let functions: Vec<_> = spec
        .functions
        .iter()
        .map(|c| {
            let f: Poly = c.reduced.map_field(&e_spec).compose(&inner).map_field(&zs.embedding);
            reduce(&f)
        })
        .collect();
    CoverSpec::from_classes(&zs.field, functions, zs.basis)
}

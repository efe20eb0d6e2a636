use crate::additive::{independent_over_fp, palindromic, zero_set, TwistedPoly};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx};
use crate::poly::Poly;

/// `f_i = X·(γ_i S_1)(X) + c_i X` with `γ_i ∈ F_{p^d}` independent over `F_p`.
#[derive(Clone, Debug)]
pub struct GammaFamilyParams {
    pub s: usize,
    pub d: usize,
    pub gammas: Vec<Fe>,
    pub s1: TwistedPoly,
    pub constants: Vec<Fe>,
}

impl GammaFamilyParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ParameterConstraintViolated(m.into()));
        let field = self.s1.field();
        let n = self.gammas.len();
        if self.d == 0 || !self.s.is_multiple_of(self.d) {
            return bad("d must divide s");
        }
        if n == 0 || n > self.d {
            return bad("need 1 <= n <= d");
        }
        if self.constants.len() != n {
            return bad("one constant per gamma");
        }
        if self.s1.degree() != Some(self.s) {
            return bad("S1 must have F-degree s");
        }
        if self.gammas.iter().chain(&self.constants).any(|g| !FieldCtx::same(g.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        if !self.gammas[0].is_one() {
            return bad("gamma_1 must be 1");
        }
        if self.gammas.iter().any(|g| &g.frobenius(self.d as i64) != g) {
            return bad("gammas must lie in F_{p^d}");
        }
        if !independent_over_fp(&self.gammas) {
            return Err(Error::DependentGammas);
        }
        let supported = self.s1.coeffs().iter().enumerate().all(|(i, c)| c.is_zero() || i % self.d == 0);
        if !supported {
            return Err(Error::SupportViolation);
        }
        Ok(())
    }

    pub fn functions(&self) -> Vec<Poly> {
        let field = self.s1.field();
        let x = Poly::x(field);
        self.gammas
            .iter()
            .zip(&self.constants)
            .map(|(g, c)| &(&x * &self.s1.scale_left(g).to_poly()) + &Poly::monomial(c.clone(), 1))
            .collect()
    }
}

pub fn gamma_family(params: &GammaFamilyParams, bound: usize) -> Result<CoverSpec> {
    params.validate()?;
    let fs = params.functions();
    let zs = zero_set(&palindromic(&fs[0])?, bound)?;
    let lifted: Vec<Poly> = fs.iter().map(|f| f.map_field(&zs.embedding)).collect();
    CoverSpec::new(&lifted, zs.basis)
}

use super::witt::witt_g_last;
use crate::additive::{zero_set, TwistedPoly, DEFAULT_AMBIENT_BOUND};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::ff::{linalg, Fe, FieldCtx};
use crate::poly::Poly;

/// `T(X, y) = Σ_{i=1}^{p-1} (-1)^{i+1}/i · X^i y^{p-i}`.
pub fn t_polynomial(p: u32, y: &Fe) -> Poly {
    let field = y.field();
    let terms = (1..p).map(|i| {
        let sign = if i % 2 == 1 { 1 } else { p - 1 };
        let c = sign * linalg::inv_mod(i, p) % p;
        (y.pow((p - i) as u64).scale(c), i as usize)
    });
    Poly::from_terms(field, terms)
}

/// The unreduced equations `g_1, ..., g_n` over `F_p`:
/// `S^{i+1}/(i+1)!` with `S = X^p - X`, and the Witt lift in slot `p-1`.
pub fn special_equations(p: u32, n: usize) -> Result<Vec<Poly>> {
    if p < 3 || n == 0 || n > p as usize - 1 {
        return Err(Error::OutOfRange(n));
    }
    let k = FieldCtx::prime(p)?;
    let s = Poly::x(&k).wp();
    let mut fact = 1u32;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        fact = fact * (i as u32 + 1) % p;
        if i == p as usize - 1 {
            out.push(witt_g_last(p)?);
        } else {
            out.push(s.pow(i as u64 + 1).scale_int(linalg::inv_mod(fact, p) as i64));
        }
    }
    Ok(out)
}

/// The family with `L(y) = exp(S(y) J)` and `V = Z(℘∘℘)`.
pub fn special_family(p: u32, n: usize) -> Result<CoverSpec> {
    let eqs = special_equations(p, n)?;
    let k = eqs[0].field().clone();
    let wp = TwistedPoly::wp(&k);
    let zs = zero_set(&(&wp * &wp), DEFAULT_AMBIENT_BOUND)?;
    let lifted: Vec<Poly> = eqs.iter().map(|g| g.map_field(&zs.embedding)).collect();
    CoverSpec::new(&lifted, zs.basis)
}

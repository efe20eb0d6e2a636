//! Hard-coded universal families at `p = 5`, `s_1 = 1`, `n ∈ {2, 3, 4}`.

use crate::additive::{palindromic, zero_set, TwistedPoly};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::ff::{Fe, Field};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub enum UniversalParams {
    N2 { b0: Fe, b5: Fe },
    N3 { b0: Fe, c7: Fe, c9: Fe },
    N4 { b0: Fe, c7: Fe, d8: Fe, d11: Fe, d13: Fe },
}

fn violated<T>(msg: &str) -> Result<T> {
    Err(Error::ParameterConstraintViolated(msg.into()))
}

/// `2F^0 + (3b^24 + 3)F + 2b^24 F^2`, whose kernel holds the admissible `t = d8 - c7`.
pub fn n4_t_constraint(b0: &Fe) -> TwistedPoly {
    let k = b0.field();
    let b24 = b0.pow(24);
    let c = |v: i64| Fe::from_int(k, v);
    TwistedPoly::from_coeffs(k, vec![c(2), &(&b24 * &c(3)) + &c(3), &b24 * &c(2)])
}

impl UniversalParams {
    pub fn n(&self) -> usize {
        match self {
            UniversalParams::N2 { .. } => 2,
            UniversalParams::N3 { .. } => 3,
            UniversalParams::N4 { .. } => 4,
        }
    }

    pub fn b0(&self) -> &Fe {
        match self {
            UniversalParams::N2 { b0, .. } | UniversalParams::N3 { b0, .. } | UniversalParams::N4 { b0, .. } => b0,
        }
    }

    fn all(&self) -> Vec<&Fe> {
        match self {
            UniversalParams::N2 { b0, b5 } => vec![b0, b5],
            UniversalParams::N3 { b0, c7, c9 } => vec![b0, c7, c9],
            UniversalParams::N4 { b0, c7, d8, d11, d13 } => vec![b0, c7, d8, d11, d13],
        }
    }

    pub fn field(&self) -> &Field {
        self.b0().field()
    }

    pub fn validate(&self) -> Result<()> {
        let b0 = self.b0();
        if b0.p() != 5 {
            return violated("universal families are for p = 5");
        }
        if self.all().iter().any(|a| !a.same_field(b0)) {
            return Err(Error::FieldMismatch);
        }
        if b0.is_zero() {
            return violated("b0 must be nonzero");
        }
        if let UniversalParams::N4 { c7, d8, .. } = self {
            if !b0.pow(96).is_one() {
                return violated("b0^96 = 1 required");
            }
            if !n4_t_constraint(b0).evaluate(&(d8 - c7)).is_zero() {
                return violated("2t + (3b0^24 + 3)t^5 + 2b0^24 t^25 = 0 required for t = d8 - c7");
            }
        }
        Ok(())
    }
}

/// The displayed `f_1, ..., f_n` over the parameter field.
pub fn universal_equations(params: &UniversalParams) -> Result<Vec<Poly>> {
    params.validate()?;
    let k = params.field().clone();
    let b = params.b0().clone();
    let c = |v: i64| Fe::from_int(&k, v);
    let bp = |e: u64| b.pow(e);
    let binv = |e: u64| b.pow(e).inv().unwrap();
    let poly = |terms: Vec<(Fe, usize)>| Poly::from_terms(&k, terms);

    let f1 = poly(vec![(c(1), 6), (&c(2) * &(&(&bp(24) + &c(1)) * &binv(4)), 2)]);
    let f2_head = |x_coeff: Fe| {
        poly(vec![
            (bp(5), 11),
            (&c(4) * &bp(25), 7),
            (&c(3) * &(&(&(&c(4) * &bp(48)) + &c(1)) * &binv(3)), 3),
            (x_coeff, 1),
        ])
    };
    let twist = |u: &Fe| &c(2) * &(&(u - &u.pow(5)) * &binv(5));
    let f3_head = |c7: &Fe, x_coeff: Fe| {
        poly(vec![
            (&c(4) * &bp(10), 16),
            (&c(4) * &bp(30), 12),
            (&c(4) * &bp(50), 8),
            (c7.pow(5), 6),
            (&c(4) * &(&(&bp(72) + &c(1)) * &binv(2)), 4),
            (&(&c(2) * c7) * &(&(&(&c7.pow(4) * &bp(24)) + &c(1)) * &binv(4)), 2),
            (x_coeff, 1),
        ])
    };

    Ok(match params {
        UniversalParams::N2 { b5, .. } => vec![f1, f2_head(b5.clone())],
        UniversalParams::N3 { c7, c9, .. } => vec![f1, f2_head(twist(c7)), f3_head(c7, c9.clone())],
        UniversalParams::N4 { c7, d8, d11, d13, .. } => {
            let b3 = binv(3);
            let (b24, b48) = (bp(24), bp(48));
            let x3 = [
                (&b24 + &b48, c7.pow(25)),
                (&(&c(2) + &(&c(4) * &b24)) + &(&c(4) * &b48), c7.pow(5)),
                (c(3), c7.clone()),
                (&(&c(4) * &b48) + &(&c(4) * &b24), d8.pow(25)),
                (&(&b24 + &c(3)) + &(&c(3) * &b48), d8.pow(5)),
            ]
            .iter()
            .fold(Fe::zero(&k), |acc, (u, v)| &acc + &(&(u * v) * &b3));
            let x7 = &bp(25) * &(&(&(&c(4) * &d8.pow(25)) + &(&c(4) * &c7.pow(5))) + &c7.pow(25));
            let f4 = poly(vec![
                (&c(2) * &bp(15), 21),
                (bp(35), 17),
                (&c(4) * &bp(55), 13),
                (&d8.pow(5) * &bp(5), 11),
                (&c(3) * &bp(75), 9),
                (x7, 7),
                (d11.pow(5), 6),
                (x3, 3),
                (&(&c(2) * d11) * &(&(&(&d11.pow(4) * &bp(24)) + &c(1)) * &binv(4)), 2),
                (d13.clone(), 1),
            ]);
            vec![f1, f2_head(twist(c7)), f3_head(c7, twist(d11)), f4]
        }
    })
}

/// Builds the cover with `V = Z(Ad_{f_1})` over its splitting field.
pub fn universal_p5(params: &UniversalParams, bound: usize) -> Result<CoverSpec> {
    let fs = universal_equations(params)?;
    let zs = zero_set(&palindromic(&fs[0])?, bound)?;
    let lifted: Vec<Poly> = fs.iter().map(|f| f.map_field(&zs.embedding)).collect();
    CoverSpec::new(&lifted, zs.basis)
}

/// Isomorphism test for two `n = 2` parameter pairs:
/// `(b0'/b0)^24 = 1` and `b5' = ±(b0'/b0) b5`.
pub fn iso_criterion_n2(a: &UniversalParams, b: &UniversalParams) -> Result<bool> {
    let (UniversalParams::N2 { b0, b5 }, UniversalParams::N2 { b0: b0p, b5: b5p }) = (a, b) else {
        return Err(Error::Mismatch);
    };
    if !b0.same_field(b0p) || !b5.same_field(b5p) || !b0.same_field(b5) {
        return Err(Error::FieldMismatch);
    }
    let r = b0p.div(b0)?;
    let scaled = &r * b5;
    Ok(r.pow(24).is_one() && (b5p == &scaled || b5p == &(-&scaled)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldCtx;

    #[test]
    fn n2_generic() {
        let k = FieldCtx::default_field(5, 2).unwrap();
        let p = UniversalParams::N2 { b0: Fe::gen(&k), b5: Fe::zero(&k) };
        let spec = universal_p5(&p, 120).unwrap();
        assert_eq!(spec.degrees(), vec![6, 11]);
        assert_eq!(spec.v(), 2);
        let r = crate::cover::verify_cover(&spec).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.ramification.ratio.unwrap().to_string(), "625/110");
    }

    #[test]
    fn iso_examples() {
        let k = FieldCtx::prime(5).unwrap();
        let e = |v| Fe::from_int(&k, v);
        let p11 = UniversalParams::N2 { b0: e(1), b5: e(1) };
        let p12 = UniversalParams::N2 { b0: e(1), b5: e(2) };
        assert!(iso_criterion_n2(&p11, &p11).unwrap());
        assert!(!iso_criterion_n2(&p11, &p12).unwrap());
        let p14 = UniversalParams::N2 { b0: e(1), b5: e(4) };
        assert!(iso_criterion_n2(&p11, &p14).unwrap());
    }

    #[test]
    fn n4_rejects_bad_b0() {
        let k = FieldCtx::default_field(5, 3).unwrap();
        let b0 = Fe::gen(&k);
        assert!(!b0.pow(96).is_one());
        let z = Fe::zero(&k);
        let p = UniversalParams::N4 { b0, c7: z.clone(), d8: z.clone(), d11: z.clone(), d13: z };
        assert!(matches!(universal_p5(&p, 120), Err(Error::ParameterConstraintViolated(_))));
    }
}

//! Artin-Schreier classes modulo `℘(k[X])` and the digit-sum filtration `Σ_n`.

use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::poly::Poly;
use std::fmt;

/// Reduced representative (exponents prime to p, no constant term) plus the
/// class of the absorbed constant in `F_q / ℘(F_q) ≅ F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ASClass {
    pub reduced: Poly,
    pub const_class: u32,
}

impl ASClass {
    pub fn is_zero(&self) -> bool {
        self.reduced.is_zero() && self.const_class == 0
    }

    pub fn degree(&self) -> Option<usize> {
        self.reduced.degree()
    }
}

impl fmt::Display for ASClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [const class {}]", self.reduced, self.const_class)
    }
}

impl fmt::Debug for ASClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ASClass({self})")
    }
}

/// `f = reduced + ℘(witness) + constant`, with `witness(0) = 0`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: Poly,
    pub witness: Poly,
    pub constant: Fe,
}

/// Rewrites `c X^{pa}` as `c^{1/p} X^a` from the top down, recording the ℘-preimage.
pub fn reduce_with_witness(f: &Poly) -> Reduction {
    let field = f.field().clone();
    let p = f.p() as usize;
    let mut c: Vec<Fe> = f.coeffs().to_vec();
    let mut w: Vec<Fe> = vec![Fe::zero(&field); c.len() / p.max(1) + 1];
    for e in (1..c.len()).rev() {
        if e % p != 0 || c[e].is_zero() {
            continue;
        }
        let a = e / p;
        let b = c[e].frobenius(-1);
        c[e] = Fe::zero(&field);
        c[a] = &c[a] + &b;
        w[a] = &w[a] + &b;
    }
    let constant = c.first().cloned().unwrap_or_else(|| Fe::zero(&field));
    if let Some(c0) = c.first_mut() {
        *c0 = Fe::zero(&field);
    }
    Reduction { reduced: Poly::from_coeffs(&field, c), witness: Poly::from_coeffs(&field, w), constant }
}

pub fn reduce(f: &Poly) -> ASClass {
    let r = reduce_with_witness(f);
    ASClass { reduced: r.reduced, const_class: r.constant.trace() }
}

/// Sum of base-p digits.
pub fn digit_sum(mut a: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut s = 0;
    while a > 0 {
        s += (a % p) as u32;
        a /= p;
    }
    s
}

/// `d_p(f) = max S_p(a)` over the support; `None` stands for `-∞` (the zero polynomial).
pub fn dp_order(f: &Poly) -> Option<u32> {
    let p = f.p();
    f.support().map(|a| digit_sum(a as u64, p)).max()
}

/// Minimal `n` with `f ∈ Σ_n`.
pub fn sigma_level(f: &Poly) -> Result<u32> {
    dp_order(f).ok_or(Error::ZeroPolynomial)
}

/// Part of `f` supported on `{a0 · p^r : r ≥ 0}`.
pub fn monomial_orbit_project(f: &Poly, a0: u64) -> Result<Poly> {
    let p = f.p() as u64;
    if a0.is_multiple_of(p) {
        return Err(Error::BadIndex(a0));
    }
    let in_orbit = |mut a: u64| {
        while a.is_multiple_of(p) && a > a0 {
            a /= p;
        }
        a == a0
    };
    Ok(Poly::from_terms(f.field(), f.terms().filter(|(a, _)| in_orbit(*a as u64)).map(|(a, c)| (c.clone(), a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldCtx;

    #[test]
    fn reduce_examples() {
        let k = FieldCtx::prime(5).unwrap();
        let x10 = Poly::monomial(Fe::one(&k), 10);
        assert_eq!(reduce(&x10).reduced, Poly::monomial(Fe::one(&k), 2));
        let x3 = Poly::monomial(Fe::one(&k), 3);
        assert!(reduce(&x3.wp()).is_zero());
        let g = Poly::from_ints(&k, &[0, 0, 3, 0, 0, 0, 4, 0, 0, 0, 3]);
        let r = reduce(&g);
        assert_eq!(r.reduced, Poly::from_ints(&k, &[0, 0, 1, 0, 0, 0, 4]));
        assert_eq!(r.const_class, 0);
    }

    #[test]
    fn witness_reassembles() {
        let k = FieldCtx::default_field(5, 2).unwrap();
        let t = Fe::gen(&k);
        let f = Poly::from_terms(&k, [(t.clone(), 50), (Fe::one(&k), 10), (t.scale(2), 3), (t.clone(), 0)]);
        let r = reduce_with_witness(&f);
        let back = &(&r.reduced + &r.witness.wp()) + &Poly::constant(r.constant.clone());
        assert_eq!(back, f);
        assert!(r.witness.coeff(0).is_zero());
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(11, 5), 3);
        assert_eq!(digit_sum(125, 5), 1);
        assert_eq!(digit_sum(21, 5), 5);
    }

    #[test]
    fn levels() {
        let k = FieldCtx::prime(5).unwrap();
        assert_eq!(dp_order(&Poly::zero(&k)), None);
        assert_eq!(dp_order(&Poly::from_ints(&k, &[0, 0, 4, 0, 0, 0, 1])), Some(2));
        assert_eq!(sigma_level(&Poly::from_ints(&k, &[1])).unwrap(), 0);
        assert_eq!(sigma_level(&Poly::zero(&k)).unwrap_err(), Error::ZeroPolynomial);
        let k3 = FieldCtx::prime(3).unwrap();
        assert_eq!(sigma_level(&Poly::from_ints(&k3, &[0, 0, 0, 0, 0, 2, 0, 1])).unwrap(), 3);
    }

    #[test]
    fn projections() {
        let k = FieldCtx::prime(5).unwrap();
        let f = Poly::from_terms(&k, [(Fe::one(&k), 6), (Fe::one(&k), 30), (Fe::one(&k), 2)]);
        let pr = monomial_orbit_project(&f, 6).unwrap();
        assert_eq!(pr, Poly::from_terms(&k, [(Fe::one(&k), 6), (Fe::one(&k), 30)]));
        let w = Poly::monomial(Fe::one(&k), 3).wp();
        assert!(reduce(&monomial_orbit_project(&w, 3).unwrap()).is_zero());
        assert!(monomial_orbit_project(&f, 7).unwrap().is_zero());
        assert_eq!(monomial_orbit_project(&f, 10).unwrap_err(), Error::BadIndex(10));
    }
}

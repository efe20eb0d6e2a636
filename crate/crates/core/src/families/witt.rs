//! Length-two Witt lift of `S(X)^p / p!` with `S = X^p - X`, done over the integers.

use crate::error::{Error, Result};
use crate::ff::{linalg, FieldCtx};
use crate::poly::Poly;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact integer polynomial, little-endian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittLift {
    pub coeffs: Vec<BigInt>,
}

impl WittLift {
    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WittLift { coeffs: out }
    }

    fn add_monomial(&mut self, c: i64, k: usize) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, BigInt::zero());
        }
        self.coeffs[k] += c;
    }

    /// `(X^p - X)^p - X^{p^2} + X^p`.
    pub fn numerator(p: u32) -> Self {
        let p = p as usize;
        let mut base = WittLift { coeffs: vec![BigInt::zero(); p + 1] };
        base.coeffs[p] = BigInt::one();
        base.coeffs[1] = -BigInt::one();
        let mut acc = WittLift { coeffs: vec![BigInt::one()] };
        for _ in 0..p {
            acc = acc.mul(&base);
        }
        acc.add_monomial(-1, p * p);
        acc.add_monomial(1, p);
        acc
    }

    /// Exact division by `p`, checking that every nonzero coefficient has p-adic valuation one.
    pub fn divide_by_p(&self, p: u32) -> Result<Self> {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                out.push(BigInt::zero());
                continue;
            }
            if !(c % &pb).is_zero() {
                return Err(Error::DivisibilityViolation(format!("coefficient of X^{k} is {c}, not divisible by {p}")));
            }
            if (c % &p2).is_zero() {
                return Err(Error::DivisibilityViolation(format!("coefficient of X^{k} is {c}, divisible by {p}^2")));
            }
            out.push(c / &pb);
        }
        Ok(WittLift { coeffs: out })
    }
}

/// Reduction mod p of `((X^p - X)^p - X^{p^2} + X^p) / p!`, over `F_p`.
pub fn witt_g_last(p: u32) -> Result<Poly> {
    if p < 3 {
        return Err(Error::OutOfRange(p as usize));
    }
    let field = FieldCtx::prime(p)?;
    let q = WittLift::numerator(p).divide_by_p(p)?;
    let fact: u64 = (1..p as u64).fold(1, |acc, k| acc * k % p as u64);
    let inv = linalg::inv_mod(fact as u32, p) as i64;
    let pb = BigInt::from(p);
    let coeffs: Vec<i64> = q
        .coeffs
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            debug_assert!(!r.is_negative());
            r.to_i64().unwrap() * inv
        })
        .collect();
    let g = Poly::from_ints(&field, &coeffs);
    let expected = 1 + (p as usize - 1) * p as usize;
    if g.degree() != Some(expected) {
        return Err(Error::DivisibilityViolation(format!("degree {:?}, expected {expected}", g.degree())));
    }
    Ok(g)
}

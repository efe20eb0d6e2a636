//! Dense univariate polynomials over a finite field.

use crate::error::{Error, Result};
use crate::ff::{Embedding, Fe, Field, FieldCtx};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `Σ c_k X^k`, trailing zeros trimmed.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        FieldCtx::same(&self.field, &other.field) && self.c == other.c
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// `C(n, k) mod p` via Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

fn small_binom(n: u64, k: u64, p: u32) -> u64 {
    let p64 = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p64) % p64;
        den = den * ((i + 1) % p64) % p64;
    }
    num * crate::ff::linalg::inv_mod(den as u32, p) as u64 % p64
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Self::monomial(c, 0)
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(Fe::one(field), 1)
    }

    pub fn monomial(c: Fe, k: usize) -> Self {
        let field = c.field().clone();
        let mut v = vec![Fe::zero(&field); k + 1];
        v[k] = c;
        Self::from_coeffs(&field, v)
    }

    pub fn from_coeffs(field: &Field, c: Vec<Fe>) -> Self {
        assert!(c.iter().all(|a| FieldCtx::same(a.field(), field)), "field mismatch");
        let mut p = Poly { field: field.clone(), c };
        p.trim();
        p
    }

    /// From integer coefficients (reduced mod p).
    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::from_coeffs(field, c.iter().map(|&v| Fe::from_int(field, v)).collect())
    }

    /// From `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Fe, usize)>) -> Self {
        let mut v: Vec<Fe> = Vec::new();
        for (c, k) in terms {
            if v.len() <= k {
                v.resize(k + 1, Fe::zero(field));
            }
            v[k] = &v[k] + &c;
        }
        Self::from_coeffs(field, v)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Fe::is_zero) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Fe {
        self.c.get(k).cloned().unwrap_or_else(|| Fe::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.c.last()
    }

    /// Exponents with nonzero coefficients, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(k, _)| k)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Fe)> + '_ {
        self.c.iter().enumerate().filter(|(_, a)| !a.is_zero())
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if FieldCtx::same(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn try_compose(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.compose(other))
    }

    pub fn scale(&self, a: &Fe) -> Poly {
        Self::from_coeffs(&self.field, self.c.iter().map(|c| c * a).collect())
    }

    pub fn scale_int(&self, k: i64) -> Poly {
        let k = k.rem_euclid(self.p() as i64) as u32;
        Self::from_coeffs(&self.field, self.c.iter().map(|c| c.scale(k)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::constant(Fe::one(&self.field));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(g(X))` by Horner's rule, jumping over runs of zero coefficients with `g^gap`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut terms: Vec<(usize, &Fe)> = self.terms().collect();
        terms.reverse();
        let mut acc = Poly::zero(&self.field);
        for (i, (a, c)) in terms.iter().enumerate() {
            acc = &acc + &Poly::constant((*c).clone());
            let next = terms.get(i + 1).map_or(0, |t| t.0);
            acc = match a - next {
                0 => acc,
                1 => &acc * g,
                gap => &acc * &g.pow(gap as u64),
            };
        }
        acc
    }

    pub fn evaluate(&self, a: &Fe) -> Fe {
        assert!(FieldCtx::same(&self.field, a.field()), "field mismatch");
        self.c.iter().rev().fold(Fe::zero(&self.field), |acc, c| &(&acc * a) + c)
    }

    pub fn try_evaluate(&self, a: &Fe) -> Result<Fe> {
        if !FieldCtx::same(&self.field, a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.evaluate(a))
    }

    /// `f(X + y)`, expanding each monomial with binomials mod p.
    pub fn shift(&self, y: &Fe) -> Poly {
        let Some(deg) = self.degree() else {
            return self.clone();
        };
        if y.is_zero() {
            return self.clone();
        }
        let p = self.p();
        let mut ypow = Vec::with_capacity(deg + 1);
        ypow.push(Fe::one(&self.field));
        for i in 1..=deg {
            ypow.push(&ypow[i - 1] * y);
        }
        let mut out = vec![Fe::zero(&self.field); deg + 1];
        for (a, ca) in self.terms() {
            for (b, slot) in out.iter_mut().enumerate().take(a + 1) {
                let bin = binom_mod(a as u64, b as u64, p);
                if bin != 0 {
                    *slot += &(ca * &ypow[a - b]).scale(bin);
                }
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    /// `f(X + y)` by repeated multiplication with `X + y`; used to cross-check `shift`.
    pub fn shift_horner(&self, y: &Fe) -> Poly {
        let lin = Poly::from_coeffs(&self.field, vec![y.clone(), Fe::one(&self.field)]);
        self.compose(&lin)
    }

    /// `Δ_y f = f(X + y) - f(X)`.
    pub fn delta(&self, y: &Fe) -> Poly {
        &self.shift(y) - self
    }

    /// Applies `a ↦ a^{p^k}` to every coefficient.
    pub fn frobenius_coeffs(&self, k: i64) -> Poly {
        Self::from_coeffs(&self.field, self.c.iter().map(|c| c.frobenius(k)).collect())
    }

    /// `f^p`, computed as `Σ c_k^p X^{pk}`.
    pub fn pth_power(&self) -> Poly {
        let p = self.p() as usize;
        Poly::from_terms(&self.field, self.terms().map(|(k, c)| (c.frobenius(1), k * p)))
    }

    /// `℘(f) = f^p - f`.
    pub fn wp(&self) -> Poly {
        &self.pth_power() - self
    }

    pub fn map_field(&self, emb: &Embedding) -> Poly {
        Poly::from_coeffs(emb.target(), self.c.iter().map(|c| emb.apply(c)).collect())
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.c[dd].inv()?;
        let mut r = self.c.clone();
        let mut q = vec![Fe::zero(&self.field); self.c.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let coef = &r[top] * &lead_inv;
            if !coef.is_zero() {
                let shift = top - dd;
                for (j, dj) in d.c.iter().enumerate() {
                    r[shift + j] -= &(&coef * dj);
                }
                q[shift] = coef;
            }
            r.pop();
        }
        Ok((Self::from_coeffs(&self.field, q), Self::from_coeffs(&self.field, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m).expect("nonzero modulus")
    }

    /// `self^p mod m`, using that the p-th power is additive.
    pub fn pth_power_mod(&self, m: &Poly) -> Poly {
        self.pth_power().rem(m).expect("nonzero modulus")
    }

    /// Renders with variable `X`; coefficients as polynomials in `t`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coef = format!("{c:#}");
            out.push(match (k, coef.as_str()) {
                (0, _) => coef,
                (_, "1") => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        out.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("X"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(&Fe, &Fe) -> Fe) -> Poly {
    assert!(FieldCtx::same(&a.field, &b.field), "field mismatch");
    let n = a.c.len().max(b.c.len());
    let c = (0..n).map(|k| op(&a.coeff(k), &b.coeff(k))).collect();
    Poly::from_coeffs(&a.field, c)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.field, self.c.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert!(FieldCtx::same(&self.field, &rhs.field), "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![Fe::zero(&self.field); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(&self.field, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
